"""
Critical values against the common angle.

For b = 0..m-1 the critical values of stars with b backward edges lie on
y = (n - 2b) sin x at x = 2 pi omega / (n - 2b). Points on the b = 0 curve are
maxima; all others are saddles.
"""

import csv
import logging
import math
import os
from dataclasses import dataclass
from typing import List, Tuple

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import numpy as np

from core.catalog import admissible_omegas

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MarkedPoint:
    b: int
    omega: int
    x: float
    critical_value: float

    @property
    def is_maximum(self) -> bool:
        return self.b == 0


@dataclass(frozen=True)
class PlotResult:
    svg_path: str
    csv_path: str
    points: Tuple[MarkedPoint, ...]


def marked_points(n: int) -> List[MarkedPoint]:
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    points = []
    for b in range((n - 1) // 2):
        d = n - 2 * b
        for omega in admissible_omegas(n, b):
            x = 2 * math.pi * omega / d
            points.append(MarkedPoint(b, omega, x, d * math.sin(x)))
    return points


def _check_writable(path: str):
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(directory) or not os.access(directory, os.W_OK):
        raise ValueError(f"cannot write to {path}: directory {directory} is not writable")


def plot_values(n: int, out: str) -> PlotResult:
    """Write the SVG figure to out and the marked points to a companion CSV."""
    points = marked_points(n)
    _check_writable(out)
    stem, suffix = os.path.splitext(out)
    if suffix.lower() == '.csv':
        raise ValueError(f"{out} would collide with the companion CSV; use an .svg name")
    csv_path = stem + '.csv'

    xs = np.linspace(0.0, math.pi, 401)[1:-1]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for b in range((n - 1) // 2):
        d = n - 2 * b
        ax.plot(xs, d * np.sin(xs), linewidth=1.0, label=f"{d} sin x (b={b})")
    maxima = [p for p in points if p.is_maximum]
    saddles = [p for p in points if not p.is_maximum]
    ax.scatter([p.x for p in maxima], [p.critical_value for p in maxima],
               marker='^', s=60, color='crimson', zorder=3, label='maxima')
    if saddles:
        ax.scatter([p.x for p in saddles], [p.critical_value for p in saddles],
                   marker='o', s=30, facecolors='none', edgecolors='black', zorder=3, label='saddles')
    ax.set_xlim(0.0, math.pi)
    ax.set_xlabel('|alpha_i|')
    ax.set_ylabel('critical value')
    ax.set_title(f"Critical values of the signed area, n={n}")
    ax.legend(loc='upper right', fontsize='small')
    fig.savefig(out, format='svg')
    plt.close(fig)

    with open(csv_path, 'w', newline='') as handle:
        writer = csv.writer(handle)
        writer.writerow(['b', 'omega', 'x', 'critical_value'])
        for p in points:
            writer.writerow([p.b, p.omega, repr(p.x), repr(p.critical_value)])

    logger.info(f"Wrote {out} and {csv_path} with {len(points)} marked points")
    return PlotResult(out, csv_path, tuple(points))
