"""Model layer: closed forms, exact references, bands, and error sweeps."""

import math
import warnings

import numpy as np
import pytest

from selfrwa import (
    CosineParams,
    CutoffWarning,
    MorseParams,
    NoSelfOscillatorError,
    UnboundLevelError,
    cosine_lattice_potential,
    cosine_numeric_fock,
    cosine_rwa_energy,
    cosine_rwa_second_order,
    error_sweep_cosine,
    error_sweep_morse,
    mathieu_bands,
    morse_exact,
    morse_numeric_fock,
    morse_rwa_full,
    morse_rwa_second_order,
    morse_veff,
    rwa_energy,
    superlattice_rwa_energy,
)

DEEP = CosineParams.from_g0sq(10.0, 1.0)


def test_cosine_params():
    assert DEEP.g0 == pytest.approx(math.sqrt(10.0), rel=1e-15)
    assert DEEP.g0sq == pytest.approx(10.0, rel=1e-15)
    assert DEEP.omega == pytest.approx(math.sqrt(10.0), rel=1e-15)
    CosineParams(0.0, 1.0)  # free particle is allowed
    with pytest.raises(ValueError):
        CosineParams(-1.0, 1.0)
    with pytest.raises(ValueError):
        CosineParams(1.0, 0.0)


def test_morse_params():
    p = MorseParams(10.0, 1.0)
    assert p.omega == pytest.approx(math.sqrt(2.0) * 10.0, rel=1e-15)
    assert p.n_max == 13
    assert MorseParams(2.0, 1.0).n_max == 2
    assert p.b == 0.0
    with pytest.raises(ValueError):
        MorseParams(0.0, 1.0)
    with pytest.raises(ValueError):
        MorseParams(1.0, -0.5)


def test_cosine_rwa_energy_frozen():
    expected = [
        -8.44930368215625,
        -5.407212638169003,
        -2.480620007896735,
        0.3365615095518155,
        3.050178593372671,
        5.665844910192731,
    ]
    for n, ref in enumerate(expected):
        assert cosine_rwa_energy(DEEP, n) == pytest.approx(ref, rel=1e-13)


def test_cosine_rwa_energy_matches_generic_engine():
    V = cosine_lattice_potential(10.0, 1.0)
    for n in range(8):
        assert cosine_rwa_energy(DEEP, n) == pytest.approx(rwa_energy(V, n), rel=1e-12)


def test_cosine_rwa_harmonic_limit():
    # q -> 0 at fixed g0: the well bottom -g0^2 plus half the lattice
    # frequency g0 q
    e0 = cosine_rwa_energy(CosineParams(1.0, 1e-8), 0)
    assert e0 == pytest.approx(-1.0 + 5e-9, abs=1e-15)


def test_cosine_rwa_rejects_free_particle():
    with pytest.raises(NoSelfOscillatorError):
        cosine_rwa_energy(CosineParams(0.0, 1.0), 0)
    with pytest.raises(ValueError):
        cosine_rwa_energy(DEEP, -1)


def test_cosine_second_order_variants_coincide():
    # For the pure cosine lattice the printed and re-derived quadratic
    # truncations give identical numbers; both are kept so the Morse case
    # (where they differ) shares one interface.
    for n in range(5):
        a = cosine_rwa_second_order(DEEP, n, "printed")
        b = cosine_rwa_second_order(DEEP, n, "derivation")
        assert a == pytest.approx(b, rel=1e-13)
    assert cosine_rwa_second_order(DEEP, 0) == pytest.approx(-8.450111169915813, rel=1e-13)
    with pytest.raises(ValueError):
        cosine_rwa_second_order(DEEP, 0, "bogus")


def test_second_order_tracks_full_form_in_deep_lattice():
    p = CosineParams.from_g0sq(100.0, 1.0)
    for n in range(4):
        full = cosine_rwa_energy(p, n)
        quad = cosine_rwa_second_order(p, n)
        assert abs(full - quad) < 2e-3 * abs(full)


def test_superlattice_single_component_reduces_to_cosine():
    for n in range(6):
        joint = superlattice_rwa_energy([(math.sqrt(10.0), 1.0)], n)
        assert joint == cosine_rwa_energy(DEEP, n)


def test_superlattice_two_components_against_engine():
    from selfrwa import cosine_sum_potential

    comps = [(2.0, 1.0), (1.5, 2.2)]
    V = cosine_sum_potential(comps)
    for n in range(4):
        assert superlattice_rwa_energy(comps, n) == pytest.approx(rwa_energy(V, n), rel=1e-12)
    with pytest.raises(ValueError):
        superlattice_rwa_energy([], 0)
    with pytest.raises(ValueError):
        superlattice_rwa_energy([(0.0, 1.0)], 0)


def test_mathieu_band_symmetry_and_grid():
    bs = mathieu_bands(DEEP, 31, 4, 30)
    assert bs.k_grid[0] == pytest.approx(-0.5)
    assert bs.k_grid[-1] == pytest.approx(0.5)
    assert bs.energies.shape == (4, 31)
    # E_n(k) = E_n(-k)
    np.testing.assert_allclose(bs.energies, bs.energies[:, ::-1], atol=1e-10)
    # bands are ordered and separated by gaps in a deep lattice
    for i in range(3):
        assert bs.energies[i + 1].min() > bs.energies[i].max()


def test_mathieu_band_frozen_values():
    bs = mathieu_bands(DEEP, 31, 2, 30)
    assert bs.energies[0, 15] == pytest.approx(-8.450769029625661, rel=1e-12)
    assert bs.band_center(0) == pytest.approx(-8.450769029365173, rel=1e-12)
    assert bs.band_width(0) == pytest.approx(5.047e-10, rel=1e-3)


def test_mathieu_variational_monotonicity():
    # Enlarging the plane-wave basis can only lower each level.
    small = mathieu_bands(DEEP, 11, 4, 14)
    big = mathieu_bands(DEEP, 11, 4, 22)
    assert np.all(big.energies <= small.energies + 1e-12)


def test_mathieu_free_particle_folds_exactly():
    q = 1.3
    bs = mathieu_bands(CosineParams(0.0, q), 21, 3, 24)
    k = bs.k_grid
    np.testing.assert_allclose(bs.energies[0], 0.5 * k**2, atol=1e-12)
    np.testing.assert_allclose(bs.energies[1], 0.5 * (q - np.abs(k)) ** 2, atol=1e-12)


def test_mathieu_cutoff_warning():
    deep = CosineParams.from_g0sq(40.0, 1.0)
    with pytest.warns(CutoffWarning):
        mathieu_bands(deep, 11, 6, 14)
    with warnings.catch_warnings():
        warnings.simplefilter("error", CutoffWarning)
        mathieu_bands(deep, 11, 6, 40)


def test_mathieu_validation():
    with pytest.raises(ValueError):
        mathieu_bands(DEEP, 1, 2, 30)
    with pytest.raises(ValueError):
        mathieu_bands(DEEP, 11, 2, 9)


def test_cosine_numeric_fock_well_levels():
    st = cosine_numeric_fock(DEEP, 256, 5)
    assert st.dim == 256
    assert len(st.levels) == 5
    # lowest well level sits a tunneling-scale hair above the band value
    assert st.levels[0] == pytest.approx(-8.450769029, abs=1e-6)
    assert abs(st.levels[0] - cosine_rwa_energy(DEEP, 0)) < 5e-3
    # wide basis spans neighboring wells, so the flag reports the raw shift
    assert st.converged == (st.shift <= 1e-6)


def test_cosine_numeric_fock_validation():
    with pytest.raises(ValueError):
        cosine_numeric_fock(DEEP, 32, 2)
    with pytest.raises(ValueError):
        cosine_numeric_fock(DEEP, 256, 100)
    with pytest.raises(NoSelfOscillatorError):
        cosine_numeric_fock(CosineParams(0.0, 1.0), 256, 2)


def test_morse_exact_frozen():
    p = MorseParams(10.0, 1.0)
    expected = [6.9460678118654755, 20.088203435596427, 32.23033905932738, 43.37247468305833]
    for n, ref in enumerate(expected):
        assert morse_exact(p, n) == pytest.approx(ref, rel=1e-14)
    with pytest.raises(UnboundLevelError):
        morse_exact(p, 14)


def test_morse_numeric_fock_matches_exact():
    p = MorseParams(10.0, 1.0)
    st = morse_numeric_fock(p, 512, 4)
    for n in range(4):
        assert st.levels[n] == pytest.approx(morse_exact(p, n), abs=1e-6)
    with pytest.raises(UnboundLevelError):
        morse_numeric_fock(MorseParams(2.0, 1.0), 512, 5)
    with pytest.raises(ValueError):
        morse_numeric_fock(p, 128, 2)


def test_morse_numeric_fock_displaced_well():
    # The offset b only moves the well; the spectrum must not change.
    p = MorseParams(10.0, 0.5, b=0.3)
    st = morse_numeric_fock(p, 765, 4)
    for n in range(4):
        assert st.levels[n] == pytest.approx(morse_exact(p, n), abs=1e-6)


def test_morse_numeric_fock_stiff_well_floor():
    # At alpha = 1 the e^(-2 alpha x) matrix entries reach ~1e11 and
    # eigensolver conditioning leaves a ~1e-5 accuracy floor; the basis
    # size is near-optimal, larger ones get worse.
    p = MorseParams(10.0, 1.0, b=0.3)
    st = morse_numeric_fock(p, 765, 4)
    for n in range(4):
        assert st.levels[n] == pytest.approx(morse_exact(p, n), abs=5e-5)


def test_morse_rwa_full_frozen():
    p = MorseParams(10.0, 1.0)
    expected = [7.295631066640482, 22.347858911332395, 38.34612806074091, 55.33953356665924]
    for n, ref in enumerate(expected):
        assert morse_rwa_full(p, n) == pytest.approx(ref, rel=1e-13)


def test_morse_second_order_variants_differ():
    p = MorseParams(10.0, 1.0)
    assert morse_rwa_second_order(p, 0, "derivation") == pytest.approx(7.2898178118654755, rel=1e-13)
    assert morse_rwa_second_order(p, 0, "printed") == pytest.approx(5.522050858899107, rel=1e-13)
    with pytest.raises(ValueError):
        morse_rwa_second_order(p, 0, "other")


def test_morse_veff_values():
    assert morse_veff(1.0, 0.0) == 0.0
    assert morse_veff(1.0, 1.0) == pytest.approx(1.676034421453144, rel=1e-13)
    assert morse_veff(1.0, 1.0, normalized=True) == 1.0
    # depends on alpha and x only through their product
    assert morse_veff(2.0, 0.5) == pytest.approx(morse_veff(1.0, 1.0), rel=1e-14)
    assert morse_veff(0.5, -1.0) == pytest.approx(morse_veff(0.5, 1.0), rel=1e-14)
    with pytest.raises(ValueError):
        morse_veff(0.0, 1.0)


def test_error_sweep_cosine_deep_lattice():
    tab = error_sweep_cosine(1.0, [10.0], 3, 256)
    assert tab.kind == "absolute"
    rows = {(r.parameter, r.n): r for r in tab.rows}
    assert rows[(10.0, 0)].error == pytest.approx(1.4653e-3, rel=1e-3)
    for r in tab.rows:
        assert r.error >= 0.0 and math.isfinite(r.error)
        assert r.error == pytest.approx(abs(r.e_approx - r.e_reference), rel=1e-12)
    # output is sorted by (parameter, n)
    keys = [(r.parameter, r.n) for r in tab.rows]
    assert keys == sorted(keys)


def test_error_sweep_cosine_validation():
    with pytest.raises(ValueError):
        error_sweep_cosine(1.0, [], 3, 256)
    with pytest.raises(ValueError):
        error_sweep_cosine(1.0, [10.0], 9, 256)
    with pytest.raises(ValueError):
        error_sweep_cosine(1.0, [0.0], 3, 256)


def test_error_sweep_morse_relative_deltas():
    tab = error_sweep_morse(1.0, [10.0, 20.0], 2, "derivation")
    assert tab.kind == "relative"
    rows = {(r.parameter, r.n): r for r in tab.rows}
    assert rows[(10.0, 0)].error == pytest.approx(0.049488431, rel=1e-6)
    assert rows[(20.0, 0)].error == pytest.approx(0.024523555, rel=1e-6)
    for r in tab.rows:
        ref = abs(r.e_approx - r.e_reference) / abs(r.e_reference)
        assert r.error == pytest.approx(ref, rel=1e-12)
    printed = error_sweep_morse(1.0, [10.0], 0, "printed")
    assert printed.rows[0].error == pytest.approx(0.205010517, rel=1e-6)


def test_error_sweep_morse_unbound_grid():
    with pytest.raises(UnboundLevelError):
        error_sweep_morse(1.0, [2.0, 10.0], 5, "derivation")
    with pytest.raises(ValueError):
        error_sweep_morse(1.0, [10.0], 2, "bogus")
