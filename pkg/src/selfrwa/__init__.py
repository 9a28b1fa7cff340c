"""Spectral toolkit for the self-consistent rotating-wave approximation.

Closed-form approximate bound-state energies for H = p^2/2 + V(x) built on
the oscillator hidden in V's quadratic Taylor term, with exact references
(Bloch bands, analytic Morse levels, Fock-basis diagonalization), error
sweeps, and a verification suite for the underlying diagonal
matrix-element identities.
"""

from .identities import (
    IdentityReport,
    check_sumintrel,
    default_suite,
    identity_cosine,
    identity_gaussian,
    identity_hermite,
    suite_passes,
)
from .models import (
    BandStructure,
    CosineParams,
    CutoffWarning,
    DegenerateNormalizationError,
    ErrorRow,
    ErrorTable,
    MorseParams,
    SpectrumTable,
    UnboundLevelError,
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
    superlattice_rwa_energy,
)
from .oplib import (
    LadderRep,
    NoSelfOscillatorError,
    OrderingCoeffs,
    TruncationError,
    build_ladder,
    diag_power_expectation,
    falling_factorial,
    fock_diagonal,
    fock_diagonal_oracle,
    rwa_energy,
    weyl_to_normal,
)
from .potentials import (
    TaylorPotential,
    constant_potential,
    cosine_lattice_potential,
    cosine_potential,
    cosine_sum_potential,
    even_power_potential,
    gaussian_potential,
    harmonic_potential,
    hermite_even_potential,
    morse_even_potential,
    morse_potential,
)
from .specfun import (
    ConvergenceError,
    PoleError,
    QuadratureRule,
    SymmetricMatrix,
    bessel_j0,
    gauss_hermite,
    hermite,
    hyp2f1_terminating,
    laguerre,
    sym_eigen,
    symtridiag_eigen,
)

__version__ = "0.1.0"
