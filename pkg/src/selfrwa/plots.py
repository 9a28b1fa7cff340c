"""Figure rendering for the CLI's --fig flag.

Each renderer takes already-computed table data and writes a PNG next to
the CSV; nothing here feeds back into the numerics.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .models import BandStructure, ErrorTable


def render_bands(bs: BandStructure, path: str) -> None:
    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    for n in range(bs.energies.shape[0]):
        ax.plot(bs.k_grid, bs.energies[n], lw=1.2)
    ax.set_xlabel("k")
    ax.set_ylabel("E_n(k)")
    ax.set_title(f"g0^2={bs.g0**2:g}, q={bs.q:g}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_errors(tab: ErrorTable, path: str, xlabel: str) -> None:
    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    levels = sorted({r.n for r in tab.rows})
    for n in levels:
        pts = [(r.parameter, r.error) for r in tab.rows if r.n == n]
        ax.semilogy([p for p, _ in pts], [e for _, e in pts], marker=".", lw=1.0, label=f"n={n}")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(f"{tab.kind} error")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_veff(rows, path: str) -> None:
    """rows: (x, alpha, value) tuples, alpha-major order."""
    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    alphas = sorted({a for _, a, _ in rows})
    for a in alphas:
        pts = [(x, v) for x, aa, v in rows if aa == a]
        ax.plot([x for x, _ in pts], [v for _, v in pts], lw=1.2, label=f"alpha={a:g}")
    ax.set_xlabel("x")
    ax.set_ylabel("normalized V_eff")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
