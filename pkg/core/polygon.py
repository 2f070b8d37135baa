"""
Inscribed Polygon Geometry
==========================

Configurations of an n-gon inscribed in the unit circle, with the first vertex
pinned at angle 0. A configuration is the vector of the first n-1 central angles
(a point of the (n-1)-torus); the closing angle is derived from them.

The signed area here is sum(sin(alpha_i)) over all n edges, twice the planar
signed area of the inscribed polygon.
"""

import math
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

# Angles are plain floats in (-pi, pi]
Angle = float
GradientVector = np.ndarray
HessianMatrix = np.ndarray


def normalize_angle(x: float) -> Angle:
    """Representative of x modulo 2*pi in (-pi, pi]."""
    if not math.isfinite(x):
        raise ValueError(f"angle must be finite, got {x}")
    y = x - TWO_PI * math.ceil((x - math.pi) / TWO_PI)
    if y <= -math.pi:
        y += TWO_PI
    elif y > math.pi:
        y -= TWO_PI
    return y


def normalize_angles(x: np.ndarray) -> np.ndarray:
    """Vectorized normalize_angle."""
    y = x - TWO_PI * np.ceil((x - np.pi) / TWO_PI)
    y = np.where(y <= -np.pi, y + TWO_PI, y)
    return np.where(y > np.pi, y - TWO_PI, y)


@dataclass(frozen=True)
class Configuration:
    """Point of the reduced configuration space: the angles alpha_1..alpha_{n-1}."""

    n: int
    alphas: Tuple[Angle, ...]

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"n must be at least 3, got {self.n}")
        if len(self.alphas) != self.n - 1:
            raise ValueError(f"expected {self.n - 1} angles for n={self.n}, got {len(self.alphas)}")
        object.__setattr__(self, 'alphas', tuple(normalize_angle(float(a)) for a in self.alphas))

    @classmethod
    def from_array(cls, alphas: Sequence[float]) -> 'Configuration':
        return cls(len(alphas) + 1, tuple(float(a) for a in alphas))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.alphas, dtype=float)

    def all_angles(self) -> np.ndarray:
        """alpha_1..alpha_n including the closing angle."""
        return np.append(self.as_array(), closing_angle(self))


def closing_angle(cfg: Configuration) -> Angle:
    return normalize_angle(-math.fsum(cfg.alphas))


def signed_area(cfg: Configuration) -> float:
    return math.fsum(math.sin(a) for a in cfg.alphas) + math.sin(closing_angle(cfg))


def gradient(cfg: Configuration) -> GradientVector:
    """Partial derivatives cos(alpha_i) - cos(alpha_n)."""
    return np.cos(cfg.as_array()) - math.cos(closing_angle(cfg))


def hessian(cfg: Configuration) -> HessianMatrix:
    """Diagonal -sin(alpha_i) - p, off-diagonal -p, with p = sin(alpha_n)."""
    p = math.sin(closing_angle(cfg))
    size = cfg.n - 1
    return -np.diag(np.sin(cfg.as_array())) - p * np.ones((size, size))


def sign_flip(cfg: Configuration) -> Configuration:
    return Configuration(cfg.n, tuple(-a for a in cfg.alphas))


# Batched versions for arrays of shape (k, n-1); rows are configurations.

def closing_angles(alphas: np.ndarray) -> np.ndarray:
    return normalize_angles(-alphas.sum(axis=-1))


def signed_area_batch(alphas: np.ndarray) -> np.ndarray:
    return np.sin(alphas).sum(axis=-1) + np.sin(closing_angles(alphas))


def gradient_batch(alphas: np.ndarray) -> np.ndarray:
    return np.cos(alphas) - np.cos(closing_angles(alphas))[..., None]


def hessian_batch(alphas: np.ndarray) -> np.ndarray:
    size = alphas.shape[-1]
    p = np.sin(closing_angles(alphas))[..., None, None]
    diagonal = np.sin(alphas)[..., :, None] * np.eye(size)
    return -diagonal - p * np.ones((size, size))


def torus_coordinates(alphas: np.ndarray) -> np.ndarray:
    """Map angles into [0, 2*pi) for periodic spatial indexing."""
    coords = np.mod(np.asarray(alphas, dtype=float) + np.pi, TWO_PI)
    coords[coords >= TWO_PI] = 0.0
    return coords


def toroidal_distance(a: np.ndarray, b: np.ndarray) -> Union[float, np.ndarray]:
    """Max over the last axis of the circular distance; one value per row for batches."""
    diff = np.abs(normalize_angles(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)))
    if diff.ndim > 1:
        return diff.max(axis=-1) if diff.shape[-1] else np.zeros(diff.shape[:-1])
    return float(diff.max()) if diff.size else 0.0


def transfer_to_ellipse(cfg: Configuration, a: float, b: float) -> List[Tuple[float, float]]:
    """Vertices (a cos phi_i, b sin phi_i) with phi_1 = 0 and phi_{i+1} = phi_i + alpha_i.

    The affine map of the circle onto the ellipse multiplies areas by a*b, so the
    planar signed area of the result is (a*b/2) * signed_area(cfg).
    """
    if not (a > 0 and b > 0):
        raise ValueError(f"semi-axes must be positive, got a={a}, b={b}")
    phis = np.concatenate(([0.0], np.cumsum(cfg.as_array())))
    return [(a * math.cos(phi), b * math.sin(phi)) for phi in phis]


def vertices(cfg: Configuration) -> List[Tuple[float, float]]:
    return transfer_to_ellipse(cfg, 1.0, 1.0)


def shoelace_area(points: Sequence[Tuple[float, float]]) -> float:
    """Signed area of the closed polygon through points."""
    xs = np.array([p[0] for p in points], dtype=float)
    ys = np.array([p[1] for p in points], dtype=float)
    return 0.5 * float(np.dot(xs, np.roll(ys, -1)) - np.dot(np.roll(xs, -1), ys))
