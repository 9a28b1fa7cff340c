"""Ladder-operator algebra and the diagonal matrix-element engine.

The core objects are truncated Fock-space matrices for a, a+, x, p at a
chosen frequency, the Weyl-to-normal ordering combinatorics, and the double
series for diagonal elements <n|V(x)|n>, from which the rotating-wave energy
of any smooth potential with positive curvature follows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .potentials import TaylorPotential
from .specfun import gauss_hermite

__all__ = [
    "LadderRep",
    "NoSelfOscillatorError",
    "OrderingCoeffs",
    "TruncationError",
    "build_ladder",
    "diag_power_expectation",
    "falling_factorial",
    "fock_diagonal",
    "fock_diagonal_oracle",
    "rwa_energy",
    "weyl_to_normal",
]


class TruncationError(RuntimeError):
    """The diagonal series did not pass the tail test within the term cap.

    Carries the partial sum and the magnitude of the last term so callers
    can report how far the sum got.
    """

    def __init__(self, message: str, partial: float, last_term: float) -> None:
        super().__init__(f"{message} (partial={partial!r}, last_term={last_term!r})")
        self.partial = partial
        self.last_term = last_term


class NoSelfOscillatorError(ValueError):
    """V''(0) <= 0: no harmonic reference oscillator exists at the origin."""


@dataclass(frozen=True)
class LadderRep:
    """Truncated Fock-space matrices at frequency omega (hbar = m = 1)."""

    dim: int
    omega: float
    a: np.ndarray
    a_dag: np.ndarray
    n_op: np.ndarray
    x_op: np.ndarray
    p_op: np.ndarray


def build_ladder(dim: int, omega: float) -> LadderRep:
    """Annihilation/creation/number/position/momentum matrices.

    The commutator [a, a+] equals the identity on the top-left
    (dim-1) x (dim-1) block; the bottom-right corner carries the usual
    truncation defect -(dim-1).
    """
    if dim < 2:
        raise ValueError("dim must be at least 2")
    if omega <= 0:
        raise ValueError("omega must be positive")
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1)
    a_dag = a.T.copy()
    n_op = np.diag(np.arange(dim, dtype=float))
    x_op = (a_dag + a) / math.sqrt(2.0 * omega)
    p_op = 1j * math.sqrt(omega / 2.0) * (a_dag - a)
    for arr in (a, a_dag, n_op, x_op, p_op):
        arr.setflags(write=False)
    return LadderRep(dim=dim, omega=float(omega), a=a, a_dag=a_dag, n_op=n_op, x_op=x_op, p_op=p_op)


@dataclass(frozen=True)
class OrderingCoeffs:
    """Normal-ordered expansion of the Weyl-symmetrized power :N^k:_W.

    terms holds (l, coeff) with :N^k:_W = sum_l coeff(l) a+^(k-l) a^(k-l);
    coefficients are exact rationals l!/2^l C(k,l)^2.
    """

    k: int
    terms: tuple[tuple[int, Fraction], ...]

    def coeff(self, l: int) -> Fraction:
        return self.terms[l][1]


def weyl_to_normal(k: int) -> OrderingCoeffs:
    """Exact coefficients l!/2^l * C(k,l)^2 for l = 0..k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    terms = tuple(
        (l, Fraction(math.factorial(l) * math.comb(k, l) ** 2, 2**l)) for l in range(k + 1)
    )
    return OrderingCoeffs(k=k, terms=terms)


def falling_factorial(N: int, j: int) -> int:
    """N!/(N-j)! for j <= N, zero when j > N (annihilation below vacuum)."""
    if N < 0 or j < 0:
        raise ValueError("arguments must be nonnegative")
    if j > N:
        return 0
    out = 1
    for i in range(j):
        out *= N - i
    return out


def diag_power_expectation(k: int, N: int) -> int:
    """Exact <N|(a+ + a)^k|N>: zero for odd k, central-binomial sum for even k."""
    if k < 0 or N < 0:
        raise ValueError("arguments must be nonnegative")
    if k % 2 == 1:
        return 0
    half = k // 2
    coeffs = weyl_to_normal(half)
    total = sum(coeffs.coeff(l) * falling_factorial(N, half - l) for l in range(half + 1))
    total *= math.comb(k, half)
    assert total.denominator == 1
    return int(total)


def fock_diagonal(
    V: TaylorPotential, omega: float, n: int, tol: float = 1e-14, kmax: int = 200
) -> float:
    """Full diagonal element D_n = <n|V(x)|n> in the omega-Fock basis.

    Evaluates the double series
        D_n = sum_l (2 omega)^(-l) / (2^l l!) sum_j V^(2j+2l)(0)
              / ((2 omega)^j j!^2) * n!/(n-j)!
    where the j sum terminates at n. The l sum stops once the last two terms
    are each within tol of the accumulated value in relative magnitude, with
    a hard cap of kmax terms; failing that, or hitting a non-finite term
    (derivatives growing faster than the weights shrink), raises
    TruncationError with the partial sum attached.
    """
    if omega <= 0:
        raise ValueError("omega must be positive")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if kmax < 4:
        raise ValueError("kmax must be at least 4")
    if n < 0:
        raise ValueError("n must be nonnegative")
    jmax = min(n, kmax)
    inner = [
        falling_factorial(n, j) / (math.factorial(j) ** 2 * (2.0 * omega) ** j)
        for j in range(jmax + 1)
    ]
    acc = 0.0
    prev = math.inf
    prefac = 1.0
    seen_nonzero = False
    for l in range(kmax + 1):
        term = prefac * sum(c * V.even_coeff(j + l) for j, c in enumerate(inner))
        if not math.isfinite(term):
            raise TruncationError(
                f"series term left double range at l={l} for {V.label}", acc, term
            )
        acc += term
        # The stop rule only arms after a nonzero term: polynomials can open
        # with a run of exact zeros before their single contributing order.
        seen_nonzero = seen_nonzero or term != 0.0
        if seen_nonzero and abs(term) <= tol * abs(acc) and abs(prev) <= tol * abs(acc):
            return acc
        prev = term
        prefac /= 4.0 * omega * (l + 1)
    if not seen_nonzero:
        return 0.0
    raise TruncationError(
        f"no convergence within kmax={kmax} terms for {V.label}", acc, abs(prev)
    )


def _hermite_row(n: int, x: np.ndarray) -> np.ndarray:
    hk, hkm1 = np.ones_like(x), np.zeros_like(x)
    for k in range(n):
        hk, hkm1 = 2.0 * x * hk - 2.0 * k * hkm1, hk
    return hk


def fock_diagonal_oracle(
    V: TaylorPotential, omega: float, n: int, quad_order: int = 90
) -> float:
    """Quadrature route to <n|V(x)|n>, independent of the series engine.

    Integrates V(u/sqrt(omega)) against the weight e^(-u^2) H_n(u)^2 with a
    Gauss-Hermite rule and divides by the oscillator normalization.
    """
    if omega <= 0:
        raise ValueError("omega must be positive")
    if quad_order < 2 * n + 8:
        raise ValueError("quad_order must be at least 2n + 8")
    rule = gauss_hermite(quad_order)
    u = rule.nodes
    hn = _hermite_row(n, u)
    integrand = np.asarray(V.value_at(u / math.sqrt(omega)), dtype=float) * hn * hn
    return float(
        np.sum(rule.weights * integrand) / (math.sqrt(math.pi) * 2.0**n * math.factorial(n))
    )


def rwa_energy(V: TaylorPotential, n: int, tol: float = 1e-14, kmax: int = 200) -> float:
    """Rotating-wave energy (omega/2)(n+1/2) + D_n at omega = sqrt(V''(0)).

    Keeping only equal-power ladder products of V's Taylor series gives the
    same result as first-order perturbation theory around the curvature
    oscillator, which is why the single diagonal element suffices.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    curv = V.curvature()
    if curv <= 0:
        raise NoSelfOscillatorError(
            f"V''(0) = {curv!r} for {V.label}; need positive curvature"
        )
    omega = math.sqrt(curv)
    return 0.5 * omega * (n + 0.5) + fock_diagonal(V, omega, n, tol=tol, kmax=kmax)
