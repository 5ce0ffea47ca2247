"""Figures for the benchmark report."""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .codec import ProfileRow  # noqa: E402


def plot_profile(rows: Sequence[ProfileRow], path: str | Path, title: str | None = None) -> Path:
    """Log-log plot of mean counted operations per decode against K."""
    Ks = [r.K for r in rows]
    fig, ax = plt.subplots(figsize=(5.5, 4))
    ax.loglog(Ks, [r.gaussian_mean for r in rows], "o-", label="Gaussian elimination")
    ax.loglog(Ks, [r.newton_mean for r in rows], "s-", label="Newton interpolation")
    # reference slopes anchored at the first point
    k0 = Ks[0]
    ax.loglog(Ks, [rows[0].gaussian_mean * (k / k0) ** 3 for k in Ks], ":", color="grey", label="$K^3$")
    ax.loglog(Ks, [rows[0].newton_mean * (k / k0) ** 2 for k in Ks], "--", color="grey", label="$K^2$")
    ax.set_xlabel("K")
    ax.set_ylabel("mean field mul+inv per decode")
    ax.set_xticks(Ks)
    ax.set_xticklabels([str(k) for k in Ks])
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path)
    plt.close(fig)
    return path
