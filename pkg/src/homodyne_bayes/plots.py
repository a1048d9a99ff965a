"""Figure rendering for the CLI report paths.

Every subcommand that writes a delimited report can also save a matplotlib
figure next to it.  Rendering uses the Agg backend only; nothing here opens
a window.
"""
from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .bayes import PosteriorGrid
from .experiment import ExperimentResult


def _save(fig, path) -> None:
    try:
        fig.savefig(path, dpi=150, bbox_inches="tight")
    except OSError as exc:
        raise OSError(f"cannot write figure to {path!r}: {exc}") from exc
    finally:
        plt.close(fig)


def save_posterior_figure(
    curves: list[tuple[int, PosteriorGrid]], path, phi_star: float | None = None
) -> None:
    """Overlay posterior densities for several sample counts."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for m, grid in curves:
        ax.plot(grid.phis, grid.density, label=f"M = {m}")
    if phi_star is not None:
        ax.axvline(phi_star, color="k", lw=0.8, ls=":", label="true phase")
    ax.set_xlabel("phase (rad)")
    ax.set_ylabel("posterior density")
    ax.legend(fontsize="small")
    _save(fig, path)


def save_gamma_figure(series: dict[float, tuple[list[int], list[float]]], path) -> None:
    """Posterior/Gaussian variance ratio against sample count, per true phase."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for phi_star, (ms, gammas) in series.items():
        ax.plot(ms, gammas, marker="o", ms=3, label=f"phi* = {phi_star:g}")
    ax.axhline(1.0, color="k", lw=0.8, ls=":")
    ax.set_xscale("log")
    ax.set_xlabel("sample count M")
    ax.set_ylabel("variance ratio vs Gaussian")
    ax.legend(fontsize="small")
    _save(fig, path)


def save_ratio_figure(rs: list[float], ratios: list[float], path) -> None:
    """Optimal-vs-achievable variance ratio across squeezing strengths."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(rs, ratios)
    ax.axhline(1.0, color="k", lw=0.8, ls=":")
    ax.set_xlabel("squeezing r")
    ax.set_ylabel("variance ratio vs optimal")
    _save(fig, path)


def save_experiment_figure(result: ExperimentResult, path) -> None:
    """Two panels: accuracy ratio A and variance ratio V against budget M."""
    rows = [row for row in result.aggregates if math.isfinite(row.a_ratio)]
    fig, (ax_a, ax_v) = plt.subplots(1, 2, figsize=(9.0, 3.6))
    ms = [row.m for row in rows]
    for ax, vals, errs, name in (
        (ax_a, [r.a_ratio for r in rows], [r.a_stderr for r in rows], "A"),
        (ax_v, [r.v_ratio for r in rows], [r.v_stderr for r in rows], "V"),
    ):
        safe_errs = [e if math.isfinite(e) else 0.0 for e in errs]
        ax.errorbar(ms, vals, yerr=safe_errs, marker="o", ms=3, capsize=2)
        ax.axhline(1.0, color="k", lw=0.8, ls=":")
        ax.set_xscale("log")
        ax.set_xlabel("budget M")
        ax.set_ylabel(name)
    scheme = result.config.scheme.value
    fig.suptitle(f"scheme = {scheme}, r = {result.config.r:g}, "
                 f"phi* = {result.config.phi_star:g}")
    fig.tight_layout()
    _save(fig, path)


__all__ = [
    "save_posterior_figure",
    "save_gamma_figure",
    "save_ratio_figure",
    "save_experiment_figure",
]
