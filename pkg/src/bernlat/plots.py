"""Figure rendering for sweep and bound reports."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def plot_sweep(rows, path):
    """Log-log error/bound curves versus degree, saved to `path`.

    `rows` are dicts with keys n, sup_error, bernstein_error,
    bound_main, bound_simple.
    """
    ns = [r["n"] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for key, style, label in (
        ("sup_error", "o-", "measured sup error"),
        ("bernstein_error", "s--", "Bernstein operator error"),
        ("bound_main", "^-", "optimized bound"),
        ("bound_simple", "v--", "simple bound"),
    ):
        ys = [r[key] for r in rows]
        if any(y > 0 for y in ys):
            ax.loglog(ns, ys, style, label=label, markersize=4)
    ax.set_xlabel("degree n")
    ax.set_ylabel("uniform error")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_bound(rows, path):
    """rho and its minimizing cutoff versus degree, saved to `path`."""
    ns = [r["n"] for r in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 4.0))
    ax1.loglog(ns, [r["rho"] for r in rows], "o-", markersize=4)
    ax1.set_xlabel("degree n")
    ax1.set_ylabel("rho")
    ax1.grid(True, which="both", alpha=0.3)
    ax2.loglog(ns, [max(r["t_star"], 1) for r in rows], "o-", label="minimizer t*", markersize=4)
    ax2.loglog(ns, [max(r["t_default"], 1) for r in rows], "s--", label="default cutoff", markersize=4)
    ax2.set_xlabel("degree n")
    ax2.set_ylabel("cutoff")
    ax2.grid(True, which="both", alpha=0.3)
    ax2.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
