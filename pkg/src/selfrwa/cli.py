"""Command-line front end: band structures, error sweeps, identity reports.

Every subcommand emits deterministic UTF-8 CSV: floats as shortest
round-trip decimals, a '#'-prefixed header recording each effective
parameter, fixed row ordering. Figures are opt-in (--fig) and are written
next to --out. Exit codes: 0 success, 1 usage, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from dataclasses import dataclass

import numpy as np

from . import identities as idn
from . import models as md
from .oplib import (
    NoSelfOscillatorError,
    TruncationError,
    build_ladder,
    diag_power_expectation,
    fock_diagonal,
    fock_diagonal_oracle,
    rwa_energy,
)
from .potentials import (
    TaylorPotential,
    cosine_lattice_potential,
    cosine_potential,
    even_power_potential,
    gaussian_potential,
    morse_even_potential,
)
from .specfun import ConvergenceError, gauss_hermite

__all__ = ["RunConfig", "main"]

_NUMERIC_ERRORS = (
    TruncationError,
    ConvergenceError,
    NoSelfOscillatorError,
    md.UnboundLevelError,
    md.DegenerateNormalizationError,
    RuntimeError,
)


@dataclass(frozen=True)
class RunConfig:
    """Validated flag values for one subcommand invocation."""

    subcommand: str
    g0sq: float = 10.0
    q: float = 1.0
    g0sq_min: float = 1.0
    g0sq_max: float = 40.0
    lambda_min: float = 2.0
    lambda_max: float = 20.0
    alpha: float | None = None
    steps: int = 40
    kpoints: int = 101
    bands: int = 6
    mmax: int = 40
    dim: int = 765
    nmax: int = 5
    variant: str = "derivation"
    out: str | None = None
    tol: float = 1e-8
    fig: bool = False


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1; argparse's default of 2 is reserved for
    # numerical failures here
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _emit(lines, out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _header(cfg: RunConfig, pairs) -> list[str]:
    lines = [f"# selfrwa {cfg.subcommand}"]
    lines.extend(f"# {k}={_fmt(v)}" for k, v in pairs)
    return lines


def _fig_path(cfg: RunConfig) -> str | None:
    # --fig without --out is rejected during validation
    if not cfg.fig:
        return None
    return os.path.splitext(cfg.out)[0] + ".png"


def cmd_bands(cfg: RunConfig) -> int:
    p = md.CosineParams.from_g0sq(cfg.g0sq, cfg.q)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", md.CutoffWarning)
        bs = md.mathieu_bands(p, cfg.kpoints, cfg.bands, cfg.mmax)
    lines = _header(
        cfg,
        [("g0sq", cfg.g0sq), ("q", cfg.q), ("kpoints", cfg.kpoints),
         ("bands", cfg.bands), ("mmax", cfg.mmax)],
    )
    lines.extend(f"# warning: {w.message}" for w in caught)
    lines.append("k,n,energy")
    for i, k in enumerate(bs.k_grid):
        for n in range(cfg.bands):
            lines.append(f"{_fmt(float(k))},{n},{_fmt(float(bs.energies[n, i]))}")
    _emit(lines, cfg.out)
    fig = _fig_path(cfg)
    if fig:
        from .plots import render_bands

        render_bands(bs, fig)
    return 0


def cmd_cosine_errors(cfg: RunConfig) -> int:
    grid = np.linspace(cfg.g0sq_min, cfg.g0sq_max, cfg.steps)
    lines = _header(
        cfg,
        [("q", cfg.q), ("g0sq_min", cfg.g0sq_min), ("g0sq_max", cfg.g0sq_max),
         ("steps", cfg.steps), ("nmax", cfg.nmax), ("dim", cfg.dim)],
    )
    lines.append("g0sq,n,E_rwa,E_num,delta")
    all_rows = []
    for g in grid:
        try:
            tab = md.error_sweep_cosine(cfg.q, [float(g)], cfg.nmax, cfg.dim)
        except _NUMERIC_ERRORS as exc:
            lines.append(f"# failed g0sq={_fmt(float(g))}: {exc}")
            continue
        for r in tab.rows:
            all_rows.append(r)
            lines.append(
                f"{_fmt(r.parameter)},{r.n},{_fmt(r.e_approx)},"
                f"{_fmt(r.e_reference)},{_fmt(r.error)}"
            )
    _emit(lines, cfg.out)
    fig = _fig_path(cfg)
    if fig and all_rows:
        from .plots import render_errors

        render_errors(md.ErrorTable(tuple(all_rows), "absolute"), fig, "g0^2")
    return 0


def cmd_morse_errors(cfg: RunConfig) -> int:
    alpha = 1.0 if cfg.alpha is None else cfg.alpha
    grid = np.linspace(cfg.lambda_min, cfg.lambda_max, cfg.steps)
    lines = _header(
        cfg,
        [("alpha", alpha), ("lambda_min", cfg.lambda_min),
         ("lambda_max", cfg.lambda_max), ("steps", cfg.steps),
         ("nmax", cfg.nmax), ("variant", cfg.variant)],
    )
    lines.append("lambda,n,E_rwa,E_exact,Delta,variant")
    all_rows = []
    for lam in grid:
        lam = float(lam)
        p = md.MorseParams(lam, alpha)
        n_eff = min(cfg.nmax, p.n_max)
        if n_eff < cfg.nmax:
            lines.append(
                f"# lambda={_fmt(lam)}: levels {n_eff + 1}..{cfg.nmax} unbound"
                f" (n_max={p.n_max})"
            )
        if n_eff < 0:
            continue
        try:
            tab = md.error_sweep_morse(alpha, [lam], n_eff, cfg.variant)
        except _NUMERIC_ERRORS as exc:
            lines.append(f"# failed lambda={_fmt(lam)}: {exc}")
            continue
        for r in tab.rows:
            all_rows.append(r)
            lines.append(
                f"{_fmt(r.parameter)},{r.n},{_fmt(r.e_approx)},"
                f"{_fmt(r.e_reference)},{_fmt(r.error)},{cfg.variant}"
            )
    _emit(lines, cfg.out)
    fig = _fig_path(cfg)
    if fig and all_rows:
        from .plots import render_errors

        render_errors(md.ErrorTable(tuple(all_rows), "relative"), fig, "lambda")
    return 0


def cmd_veff(cfg: RunConfig) -> int:
    alphas = (0.1, 1.0, 10.0) if cfg.alpha is None else (cfg.alpha,)
    xs = np.linspace(-3.0, 3.0, cfg.steps)
    lines = _header(
        cfg, [("alpha", ",".join(f"{a:g}" for a in alphas)), ("steps", cfg.steps)]
    )
    lines.append("x,alpha,v_normalized")
    rows = []
    for a in alphas:
        for x in xs:
            v = md.morse_veff(a, float(x), normalized=True)
            rows.append((float(x), a, v))
            lines.append(f"{_fmt(float(x))},{_fmt(a)},{_fmt(v)}")
    _emit(lines, cfg.out)
    fig = _fig_path(cfg)
    if fig:
        from .plots import render_veff

        render_veff(rows, fig)
    return 0


def cmd_identities(cfg: RunConfig) -> int:
    reports = idn.default_suite(cfg.tol)
    lines = _header(cfg, [("tol", cfg.tol)])
    lines.append(
        "name,n,q,alpha_sq,m,lhs_sum,rhs_closed,quad_oracle,"
        "abs_diff_lhs_quad,abs_diff_rhs_quad,status,note"
    )
    for r in reports:
        par = r.parameters
        cells = [
            r.name,
            _fmt(par.get("n", "")),
            _fmt(par.get("q", "")),
            _fmt(par.get("alpha_sq", "")),
            _fmt(par.get("m", "")),
            _fmt(r.lhs_sum),
            "" if r.rhs_closed is None else _fmt(r.rhs_closed),
            _fmt(r.quad_oracle),
            _fmt(r.abs_diff_lhs_quad),
            "" if r.abs_diff_rhs_quad is None else _fmt(r.abs_diff_rhs_quad),
            r.status,
            r.note,
        ]
        lines.append(",".join(cells))
    _emit(lines, cfg.out)
    return 0 if idn.suite_passes(reports) else 2


def _selftest_checks():
    def ordering():
        worst = 0
        for k in range(0, 7):
            for N in range(0, 9):
                rep = build_ladder(N + k + 2, 1.0)
                x = rep.a + rep.a_dag
                mat = np.linalg.matrix_power(x, k) if k else np.eye(rep.dim)
                worst = max(worst, abs(diag_power_expectation(k, N) - mat[N, N]))
        return worst, 1e-9

    def engine_quad():
        worst = 0.0
        for V in (cosine_potential(1.0), cosine_lattice_potential(4.0, 1.5),
                  gaussian_potential(0.4), even_power_potential(2),
                  morse_even_potential(8.0, 0.4)):
            worst = max(worst, abs(fock_diagonal(V, 1.0, 3) - fock_diagonal_oracle(V, 1.0, 3)))
        return worst, 1e-8

    def pt_identity():
        p = md.CosineParams.from_g0sq(10.0, 1.0)
        V = cosine_lattice_potential(10.0, 1.0)
        shifted = TaylorPotential(
            "V-harmonic",
            lambda x: V.value_at(x) - 0.5 * p.omega**2 * np.asarray(x, dtype=float) ** 2,
            lambda m: 0.0,
        )
        worst = 0.0
        for n in range(3):
            pt = p.omega * (n + 0.5) + fock_diagonal_oracle(shifted, p.omega, n)
            worst = max(worst, abs(rwa_energy(V, n) - pt))
        return worst, 1e-9

    def morse_chain():
        p = md.MorseParams(10.0, 1.0)
        return max(
            abs(md.morse_rwa_full(p, n) - rwa_energy(morse_even_potential(10.0, 1.0), n))
            for n in range(4)
        ), 1e-9

    def identity_spots():
        gaps = [
            idn.identity_cosine(5, 1.0).abs_diff_lhs_quad,
            idn.identity_gaussian(2, 1.0).abs_diff_lhs_quad,
            idn.identity_hermite(3, 2).abs_diff_lhs_quad,
            abs(idn.check_sumintrel(even_power_potential(2), 3).lhs_sum - 18.75),
        ]
        return max(gaps), 1e-8

    def band_folding():
        bs = md.mathieu_bands(md.CosineParams(0.0, 1.0), 5, 4, 40)
        worst = 0.0
        for i, k in enumerate(bs.k_grid):
            folded = np.sort([0.5 * (k + m) ** 2 for m in range(-6, 7)])[:4]
            worst = max(worst, float(np.abs(bs.energies[:, i] - folded).max()))
        return worst, 1e-12

    def quad_moments():
        rule = gauss_hermite(20)
        worst = 0.0
        exact = np.sqrt(np.pi)
        for m in range(5):
            mom = float(np.sum(np.asarray(rule.weights) * np.asarray(rule.nodes) ** (2 * m)))
            worst = max(worst, abs(mom - exact) / exact)
            exact *= (2 * m + 1) / 2.0
        return worst, 1e-12

    return [
        ("ordering-vs-matrix", ordering),
        ("engine-vs-quadrature", engine_quad),
        ("perturbation-identity", pt_identity),
        ("morse-closed-vs-engine", morse_chain),
        ("identity-spot-checks", identity_spots),
        ("free-particle-folding", band_folding),
        ("quadrature-moments", quad_moments),
    ]


def cmd_selftest(cfg: RunConfig) -> int:
    lines = _header(cfg, [])
    ok_all = True
    for name, fn in _selftest_checks():
        value, bound = fn()
        ok = value <= bound
        ok_all = ok_all and ok
        lines.append(f"{'PASS' if ok else 'FAIL'} {name:24s} {value:.3e} <= {bound:.0e}")
    _emit(lines, cfg.out)
    return 0 if ok_all else 2


_DISPATCH = {
    "bands": cmd_bands,
    "cosine-errors": cmd_cosine_errors,
    "morse-errors": cmd_morse_errors,
    "veff": cmd_veff,
    "identities": cmd_identities,
    "selftest": cmd_selftest,
}


def _build_parser() -> _Parser:
    parser = _Parser(prog="selfrwa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def add_common(sp):
        sp.add_argument("--out", type=str, default=None, help="CSV output path (default stdout)")
        sp.add_argument("--fig", action="store_true", help="also render a PNG next to --out")

    sp = sub.add_parser("bands", help="Bloch bands of the cosine lattice")
    sp.add_argument("--g0sq", type=float, default=10.0)
    sp.add_argument("--q", type=float, default=1.0)
    sp.add_argument("--kpoints", type=int, default=101)
    sp.add_argument("--bands", type=int, default=6)
    sp.add_argument("--mmax", type=int, default=40)
    add_common(sp)

    sp = sub.add_parser("cosine-errors", help="lattice closed form vs Fock reference")
    sp.add_argument("--q", type=float, default=1.0)
    sp.add_argument("--g0sq-min", type=float, default=1.0)
    sp.add_argument("--g0sq-max", type=float, default=40.0)
    sp.add_argument("--steps", type=int, default=40)
    sp.add_argument("--nmax", type=int, default=5)
    sp.add_argument("--dim", type=int, default=765)
    add_common(sp)

    sp = sub.add_parser("morse-errors", help="Morse approximants vs the analytic levels")
    sp.add_argument("--alpha", type=float, default=None)
    sp.add_argument("--lambda-min", type=float, default=2.0)
    sp.add_argument("--lambda-max", type=float, default=20.0)
    sp.add_argument("--steps", type=int, default=37)
    sp.add_argument("--nmax", type=int, default=5)
    sp.add_argument("--variant", choices=("printed", "derivation", "full"), default="derivation")
    add_common(sp)

    sp = sub.add_parser("veff", help="normalized effective Morse potential")
    sp.add_argument("--alpha", type=float, default=None)
    sp.add_argument("--steps", type=int, default=121)
    add_common(sp)

    sp = sub.add_parser("identities", help="matrix-element identity suite report")
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--out", type=str, default=None)

    sp = sub.add_parser("selftest", help="cross-oracle invariant table")
    sp.add_argument("--out", type=str, default=None)
    return parser


_USAGE_MESSAGES = {
    "fig": "--fig requires --out to derive the figure path",
    "nmax": "--nmax must not exceed 8 for cosine-errors",
    "alpha": "--alpha must be positive",
}


def _validate(cfg: RunConfig) -> str | None:
    if cfg.fig and cfg.out is None:
        return _USAGE_MESSAGES["fig"]
    if cfg.subcommand == "cosine-errors":
        if cfg.nmax > 8:
            return _USAGE_MESSAGES["nmax"]
        if cfg.dim - 64 < min(cfg.dim // 4, (cfg.nmax + 2) * 16):
            return "--dim too small for the shrunken-basis self-check"
    if cfg.subcommand == "bands" and cfg.mmax < cfg.bands + 8:
        return "--mmax must be at least bands + 8"
    if cfg.alpha is not None and cfg.alpha <= 0:
        return _USAGE_MESSAGES["alpha"]
    if cfg.steps < 1:
        return "--steps must be at least 1"
    if cfg.kpoints < 2:
        return "--kpoints must be at least 2"
    if cfg.bands < 1:
        return "--bands must be at least 1"
    if cfg.nmax < 0:
        return "--nmax must be nonnegative"
    if cfg.tol <= 0:
        return "--tol must be positive"
    return None


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    known = {f.name for f in RunConfig.__dataclass_fields__.values()}
    values = {k.replace("-", "_"): v for k, v in vars(args).items()}
    cfg = RunConfig(**{k: v for k, v in values.items() if k in known})
    problem = _validate(cfg)
    if problem is not None:
        sys.stderr.write(f"selfrwa: error: {problem}\n")
        return 1
    try:
        return _DISPATCH[cfg.subcommand](cfg)
    except _NUMERIC_ERRORS as exc:
        sys.stderr.write(f"selfrwa: numerical failure: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
