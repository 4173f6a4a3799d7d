"""Static figures for the report subcommands (PNG/PDF/SVG by file suffix)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _figure(width: float = 6.0):
    golden = (np.sqrt(5) - 1) / 2
    return plt.subplots(figsize=(width, width * golden))


def plot_convergence(ns, errors, path, title="Harmonic oscillator eigenvalue error"):
    """Semilog plot of per-level errors against N; ``errors`` has one row per N."""
    errors = np.asarray(errors, dtype=float)
    fig, ax = _figure()
    floor = np.finfo(float).tiny
    for level in range(errors.shape[1]):
        ax.semilogy(ns, np.maximum(errors[:, level], floor), "o-", label=f"level {level}")
    ax.set_xlabel("N")
    ax.set_ylabel("|E_n - (n + 1/2)|")
    ax.set_title(title)
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_spectrum(values, path, exact=None):
    fig, ax = _figure()
    idx = np.arange(len(values))
    ax.plot(idx, values, "o", label="N x N")
    if exact is not None:
        ax.plot(idx, exact, "x", label="exact")
        ax.legend()
    ax.set_xlabel("level")
    ax.set_ylabel("energy")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_lagrangian(drho, dimensionless, unitful, path):
    fig, ax = _figure()
    ax.plot(drho, dimensionless, "o", label="(2 pi/N) L(drho)")
    ax.plot(drho, unitful, "-", label="L_N eps / hbar")
    ax.set_xlabel("displacement")
    ax.set_ylabel("phase [rad]")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
