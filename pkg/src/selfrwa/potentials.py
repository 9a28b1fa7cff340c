"""Potentials exposed through pointwise values and even derivatives at the origin.

Every spectral routine in this package consumes a potential through the same
narrow interface: V(x) pointwise (vectorized over numpy arrays) and the even
derivative values V^(2m)(0). Odd derivatives never enter because diagonal
Fock-basis matrix elements vanish for odd parity.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "TaylorPotential",
    "constant_potential",
    "cosine_potential",
    "cosine_lattice_potential",
    "cosine_sum_potential",
    "even_power_potential",
    "gaussian_potential",
    "harmonic_potential",
    "hermite_even_potential",
    "morse_potential",
    "morse_even_potential",
]


class TaylorPotential:
    """A potential V(x) with even Taylor derivative data at x = 0.

    even_coeff(m) returns the derivative value V^(2m)(0) (not the series
    coefficient), so even_coeff(0) = V(0) and even_coeff(1) = V''(0).
    """

    def __init__(self, label: str, value_fn, even_deriv_fn) -> None:
        self.label = label
        self._value = value_fn
        self._even = even_deriv_fn

    def __repr__(self) -> str:
        return f"TaylorPotential({self.label!r})"

    def value_at(self, x):
        return self._value(x)

    def even_coeff(self, m: int) -> float:
        if m < 0:
            raise ValueError("m must be nonnegative")
        return float(self._even(m))

    def curvature(self) -> float:
        return self.even_coeff(1)

    def v0(self) -> float:
        return self.even_coeff(0)


def constant_potential(c: float = 1.0) -> TaylorPotential:
    return TaylorPotential(
        f"const({c:g})",
        lambda x: c * np.ones_like(np.asarray(x, dtype=float)),
        lambda m: c if m == 0 else 0.0,
    )


def harmonic_potential(omega: float) -> TaylorPotential:
    """V = omega^2 x^2 / 2."""
    return TaylorPotential(
        f"harmonic(omega={omega:g})",
        lambda x: 0.5 * omega**2 * np.asarray(x, dtype=float) ** 2,
        lambda m: omega**2 if m == 1 else 0.0,
    )


def even_power_potential(k: int) -> TaylorPotential:
    """V = x^(2k)."""
    return TaylorPotential(
        f"x^{2 * k}",
        lambda x: np.asarray(x, dtype=float) ** (2 * k),
        lambda m: float(math.factorial(2 * k)) if m == k else 0.0,
    )


def cosine_potential(q: float) -> TaylorPotential:
    """V = cos(q x)."""
    return TaylorPotential(
        f"cos({q:g}x)",
        lambda x: np.cos(q * np.asarray(x, dtype=float)),
        lambda m: (-1.0) ** m * q ** (2 * m),
    )


def cosine_lattice_potential(g0sq: float, q: float) -> TaylorPotential:
    """V = -g0^2 cos(q x); curvature g0^2 q^2 gives the lattice frequency g0 q."""
    return TaylorPotential(
        f"-{g0sq:g}cos({q:g}x)",
        lambda x: -g0sq * np.cos(q * np.asarray(x, dtype=float)),
        lambda m: -g0sq * (-1.0) ** m * q ** (2 * m),
    )


def cosine_sum_potential(components) -> TaylorPotential:
    """V = -sum_k g_k^2 cos(q_k x) for components [(g_k, q_k), ...]."""
    comps = [(float(g), float(q)) for g, q in components]
    label = "+".join(f"-{g * g:g}cos({q:g}x)" for g, q in comps)
    return TaylorPotential(
        label,
        lambda x: sum(-g * g * np.cos(q * np.asarray(x, dtype=float)) for g, q in comps),
        lambda m: sum(-g * g * (-1.0) ** m * q ** (2 * m) for g, q in comps),
    )


def _gaussian_deriv(m: int, alpha_sq: float) -> float:
    # V^(2m)(0) = (-alpha^2)^m (2m)!/m!; lgamma form, +-inf once the
    # factorial ratio leaves double range (the engine treats that as
    # a truncation failure rather than crashing).
    try:
        mag = math.exp(
            math.lgamma(2 * m + 1) - math.lgamma(m + 1) + m * math.log(abs(alpha_sq))
        ) if alpha_sq != 0 and m > 0 else (1.0 if m == 0 else 0.0)
    except OverflowError:
        mag = math.inf
    sign = (-1.0) ** m if alpha_sq > 0 else 1.0
    return sign * mag


def gaussian_potential(alpha: float, alpha_sq: float | None = None) -> TaylorPotential:
    """V = exp(-alpha^2 x^2).

    alpha_sq overrides alpha^2; values in (-1, 0) give the growing-Gaussian
    continuation (imaginary alpha) that still has finite Fock diagonals.
    """
    a2 = alpha * alpha if alpha_sq is None else alpha_sq
    return TaylorPotential(
        f"exp(-{a2:g}x^2)",
        lambda x: np.exp(-a2 * np.asarray(x, dtype=float) ** 2),
        lambda m: _gaussian_deriv(m, a2),
    )


def _morse_even_deriv(m: int, lam: float, alpha: float) -> float:
    if m == 0:
        return 0.0
    return lam * lam * ((2.0 * alpha) ** (2 * m) - 2.0 * alpha ** (2 * m))


def morse_potential(lam: float, alpha: float) -> TaylorPotential:
    """V = lam^2 (1 - exp(-alpha x))^2, centered at the origin."""
    return TaylorPotential(
        f"morse(lam={lam:g},alpha={alpha:g})",
        lambda x: lam * lam * (1.0 - np.exp(-alpha * np.asarray(x, dtype=float))) ** 2,
        lambda m: _morse_even_deriv(m, lam, alpha),
    )


def morse_even_potential(lam: float, alpha: float) -> TaylorPotential:
    """Even part of the Morse potential: lam^2 (1 - 2cosh(alpha x) + cosh(2 alpha x))."""
    return TaylorPotential(
        f"morse_even(lam={lam:g},alpha={alpha:g})",
        lambda x: lam
        * lam
        * (
            1.0
            - 2.0 * np.cosh(alpha * np.asarray(x, dtype=float))
            + np.cosh(2.0 * alpha * np.asarray(x, dtype=float))
        ),
        lambda m: _morse_even_deriv(m, lam, alpha),
    )


def _hermite_even_deriv(k: int, m: int) -> float:
    # d^(2k)/dx^(2k) H_{2m} at 0: 4^k (2m)!/(2m-2k)! H_{2m-2k}(0),
    # zero beyond k = m; H_{2j}(0) = (-1)^j (2j)!/j!.
    if k > m:
        return 0.0
    j = m - k
    h0 = (-1) ** j * math.factorial(2 * j) // math.factorial(j)
    return float(4**k * (math.factorial(2 * m) // math.factorial(2 * j)) * h0)


def _hermite_values(n: int, x):
    x = np.asarray(x, dtype=float)
    hk, hkm1 = np.ones_like(x), np.zeros_like(x)
    for k in range(n):
        hk, hkm1 = 2.0 * x * hk - 2.0 * k * hkm1, hk
    return hk


def hermite_even_potential(m: int) -> TaylorPotential:
    """V = H_{2m}(x), the even Hermite polynomial as a test potential."""
    return TaylorPotential(
        f"H_{2 * m}",
        lambda x: _hermite_values(2 * m, x),
        lambda k: _hermite_even_deriv(k, m),
    )
