"""Matplotlib figures for reports: the disc atlas in the log-multiplier plane
and a rendered escape field."""

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.patches import Circle  # noqa: E402

from .render import colorize  # noqa: E402
from .yoccoz_lune import DEFAULT_FACTOR, comparison_curve  # noqa: E402


def disc_atlas_figure(discs, path, factor=DEFAULT_FACTOR, marks=None, dpi=120):
    """Tangent discs in the tau-plane with the comparison curve.

    ``marks`` maps labels to tau values drawn as points.
    """
    fig, ax = plt.subplots(figsize=(5, 7))
    for disc in discs:
        ax.add_patch(Circle((disc.center.real, disc.center.imag), disc.radius,
                            fill=False, lw=0.9, color="tab:red" if disc.sharpened else "tab:blue"))
        ax.annotate(f"{disc.p}/{disc.q}", (disc.center.real + disc.radius, disc.center.imag),
                    fontsize=6, xytext=(2, 0), textcoords="offset points", va="center")
    nu = np.linspace(1e-4, 0.5, 800)
    ax.plot(comparison_curve(nu, factor), 2 * math.pi * nu, color="black", lw=0.8,
            label=f"{factor:g} nu^2 log(1/nu+1)")
    for label, tau in (marks or {}).items():
        tau = complex(tau)
        ax.plot([tau.real], [tau.imag], "k.", ms=5)
        ax.annotate(label, (tau.real, tau.imag), fontsize=7, xytext=(3, 3), textcoords="offset points")
    right = max([2 * d.radius for d in discs] + [complex(t).real for t in (marks or {}).values()] + [0.5])
    ax.set_xlim(0, right * 1.05)
    ax.set_ylim(0, math.pi + 0.1)
    ax.set_xlabel("Re tau = log|zeta|")
    ax.set_ylabel("Im tau = Arg zeta")
    ax.set_aspect("equal")
    ax.legend(loc="lower right", fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path


def escape_field_figure(field, path, title="", dpi=120):
    rgb = colorize(field)
    re, im = field.coords.real, field.coords.imag
    extent = (re.min(), re.max(), im.min(), im.max())
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.imshow(rgb, extent=extent, origin="upper", interpolation="nearest")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
