"""Special functions and dense/tridiagonal symmetric eigensolvers.

Small numeric kernels shared by the operator algebra and the model layer:
Laguerre/Hermite recurrences, Bessel J0, the terminating Gauss
hypergeometric sum, Gauss-Hermite rules and symmetric eigensolvers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg
import scipy.special

__all__ = [
    "ConvergenceError",
    "PoleError",
    "QuadratureRule",
    "SymmetricMatrix",
    "bessel_j0",
    "gauss_hermite",
    "hermite",
    "hyp2f1_terminating",
    "laguerre",
    "sym_eigen",
    "symtridiag_eigen",
]


class PoleError(ValueError):
    """A Pochhammer pole of the lower parameter lies inside the sum range."""


class ConvergenceError(RuntimeError):
    """Eigensolver failed to converge."""


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Hermite nodes/weights for the weight e^(-x^2)."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def integrate(self, f) -> float:
        """Approximate integral of f(x) e^(-x^2) dx over the real line."""
        return float(np.sum(self.weights * f(self.nodes)))


class SymmetricMatrix:
    """Dense real symmetric matrix; symmetry enforced at construction.

    Entries are stored as a numpy array; asymmetric input is rejected rather
    than silently symmetrized so that construction bugs surface early.
    """

    def __init__(self, entries) -> None:
        a = np.asarray(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise ValueError("matrix is not exactly symmetric")
        self._a = a

    @classmethod
    def from_upper(cls, entries) -> "SymmetricMatrix":
        """Build from possibly asymmetric input by averaging with its transpose."""
        a = np.asarray(entries, dtype=float)
        return cls(0.5 * (a + a.T))

    @property
    def dim(self) -> int:
        return self._a.shape[0]

    def entries(self) -> np.ndarray:
        return self._a.copy()

    def entry(self, i: int, j: int) -> float:
        return float(self._a[i, j])


def laguerre(n: int, x: float) -> float:
    """Laguerre polynomial L_n(x) by the three-term recurrence.

    Stable for the index range used here (n up to a few thousand).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    lk, lkm1 = 1.0, 0.0  # L_0, L_{-1}
    for k in range(n):
        lk, lkm1 = ((2 * k + 1 - x) * lk - k * lkm1) / (k + 1), lk
    return lk


def hermite(n: int, x: float) -> float:
    """Physicists' Hermite polynomial H_n(x)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    hk, hkm1 = 1.0, 0.0
    for k in range(n):
        hk, hkm1 = 2.0 * x * hk - 2.0 * k * hkm1, hk
    return hk


def bessel_j0(x: float) -> float:
    """Bessel function J0(x), |x| <= 1e4."""
    if abs(x) > 1e4:
        raise ValueError("bessel_j0 is specified for |x| <= 1e4")
    return float(scipy.special.j0(x))


def hyp2f1_terminating(neg_n: int, b, c, z) -> float | Fraction:
    """Terminating Gauss hypergeometric series 2F1(-n, b; c; z).

    First parameter must be a nonpositive integer; the sum then terminates
    after n+1 terms. Rational inputs are summed exactly in Fraction
    arithmetic, everything else in floating point. A Pochhammer pole of c
    before termination raises PoleError.
    """
    if neg_n > 0 or neg_n != int(neg_n):
        raise ValueError("first parameter must be a nonpositive integer")
    n = -int(neg_n)
    exact = all(isinstance(v, (int, Fraction)) for v in (b, c, z))
    if exact:
        b, c, z = Fraction(b), Fraction(c), Fraction(z)
        total = Fraction(1)
        term = Fraction(1)
    else:
        b, c, z = float(b), float(c), float(z)
        total = 1.0
        term = 1.0
    for k in range(n):
        ck = c + k
        if ck == 0:
            raise PoleError(f"lower parameter hits a pole at k={k + 1}")
        term = term * (-n + k) * (b + k) * z / (ck * (k + 1))
        total += term
    return total if exact else float(total)


def gauss_hermite(order: int) -> QuadratureRule:
    """Gauss-Hermite rule for the weight e^(-x^2) on the real line.

    Backed by scipy's recurrence construction rather than squared
    Jacobi-eigenvector components: the latter lose all relative accuracy
    in the ~1e-100 tail weights, which matters for integrands that grow
    against the weight. Nodes agree with the Jacobi eigenvalues to 1e-13.
    Near the top of the order range the outermost weights drop below
    double range (node^2 > 745) and flush to zero.
    """
    if not 1 <= order <= 400:
        raise ValueError("order must be in 1..400")
    nodes, w = scipy.special.roots_hermite(order)
    return QuadratureRule(nodes, w, order)


def sym_eigen(A: SymmetricMatrix | np.ndarray, vectors: bool = False):
    """Eigenvalues (ascending) of a dense symmetric matrix.

    With vectors=True also returns the orthonormal eigenvector matrix
    (columns). Residuals satisfy ||A v - w v|| <= 1e-9 ||A||_F per pair.
    """
    a = A.entries() if isinstance(A, SymmetricMatrix) else np.asarray(A, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    try:
        if vectors:
            w, v = scipy.linalg.eigh(a)
            return w, v
        return scipy.linalg.eigh(a, eigvals_only=True)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise ConvergenceError(str(exc)) from exc


def symtridiag_eigen(diag, offdiag, vectors: bool = False):
    """Eigenvalues (ascending) of a symmetric tridiagonal matrix.

    With vectors=True returns (values, vectors) with vectors in columns.
    """
    d = np.asarray(diag, dtype=float)
    e = np.asarray(offdiag, dtype=float)
    if e.shape[0] != d.shape[0] - 1:
        raise ValueError("offdiag must be one shorter than diag")
    if d.shape[0] == 1:
        return (d.copy(), np.ones((1, 1))) if vectors else d.copy()
    try:
        if vectors:
            return scipy.linalg.eigh_tridiagonal(d, e)
        return scipy.linalg.eigvalsh_tridiagonal(d, e)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise ConvergenceError(str(exc)) from exc
