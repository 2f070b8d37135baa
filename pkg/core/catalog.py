"""
Critical Configuration Catalog
==============================

Symbolic enumeration of the critical points of the signed area. A configuration
is critical iff all |alpha_i| are equal to a common theta; with edge signs
eps_i (f forward, b backward) the closing relation (f - b) * theta = 2 * pi * omega
fixes theta for f != b, while f == b (n even) leaves theta free (zigzag trains).
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.spatial import cKDTree

from core.config import Config
from core.critical_class import CriticalClass
from core.polygon import (
    TWO_PI, Configuration, gradient, torus_coordinates,
)

logger = logging.getLogger(__name__)

SPEC_THETA_TOL = 1e-9


@dataclass(frozen=True)
class SignPattern:
    """Edge orientations: +1 forward, -1 backward."""

    signs: Tuple[int, ...]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"signs must be +1 or -1, got {self.signs}")
        object.__setattr__(self, 'signs', tuple(int(s) for s in self.signs))

    @classmethod
    def from_string(cls, text: str) -> 'SignPattern':
        mapping = {'+': 1, '-': -1, '−': -1}
        try:
            return cls(tuple(mapping[ch] for ch in text.strip()))
        except KeyError as exc:
            raise ValueError(f"invalid sign pattern {text!r}") from exc

    @classmethod
    def forward(cls, n: int) -> 'SignPattern':
        return cls((1,) * n)

    @classmethod
    def with_backward(cls, n: int, backward: Sequence[int]) -> 'SignPattern':
        """Pattern of length n with backward edges at the given 0-based positions."""
        backward = set(backward)
        return cls(tuple(-1 if i in backward else 1 for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.signs)

    @property
    def f(self) -> int:
        return self.signs.count(1)

    @property
    def b(self) -> int:
        return self.signs.count(-1)

    def mirrored(self) -> 'SignPattern':
        return SignPattern(tuple(-s for s in self.signs))

    def rotated(self, shift: int) -> 'SignPattern':
        """Cyclic rotation: position i of the result is position i + shift of self."""
        shift %= self.n
        return SignPattern(self.signs[shift:] + self.signs[:shift])

    def __str__(self):
        return ''.join('+' if s > 0 else '-' for s in self.signs)


def star_theta(f: int, b: int, omega: int) -> float:
    return TWO_PI * abs(omega) / abs(f - b)


@dataclass(frozen=True)
class CriticalSpec:
    """Symbolic critical configuration."""

    n: int
    critical_class: CriticalClass
    pattern: SignPattern
    omega: int
    theta: Optional[float]  # None for a whole train branch

    def __post_init__(self):
        if self.pattern.n != self.n:
            raise ValueError(f"pattern length {self.pattern.n} does not match n={self.n}")
        f, b, cls = self.f, self.b, self.critical_class

        if cls in (CriticalClass.REGULAR_STAR, CriticalClass.ZIGZAG_STAR):
            if f == b:
                raise ValueError("stars need f != b")
            if cls is CriticalClass.REGULAR_STAR and min(f, b) != 0:
                raise ValueError("regular stars have all edges in one direction")
            if cls is CriticalClass.ZIGZAG_STAR and min(f, b) == 0:
                raise ValueError("zigzag stars need both edge directions")
            if self.omega == 0 or (self.omega > 0) != (f > b):
                raise ValueError(f"omega={self.omega} inconsistent with f={f}, b={b}")
            expected = star_theta(f, b, self.omega)
            if not 0.0 < expected < math.pi:
                raise ValueError(f"theta={expected} outside (0, pi)")
            if self.theta is None or abs(self.theta - expected) > SPEC_THETA_TOL:
                raise ValueError(f"theta={self.theta} does not match 2*pi*|omega|/|f-b|={expected}")
        elif cls is CriticalClass.ZIGZAG_TRAIN:
            if f != b:
                raise ValueError("zigzag trains need f == b")
            if self.omega != 0:
                raise ValueError("zigzag trains have omega = 0")
            if self.theta is not None and not 0.0 < self.theta < math.pi:
                raise ValueError(f"train theta must lie in (0, pi), got {self.theta}")
        elif cls is CriticalClass.DEGENERATE_STAR:
            if b != 0 or self.omega != 0 or self.theta != 0.0:
                raise ValueError("degenerate star is the all-forward pattern with omega = 0, theta = 0")
        elif cls is CriticalClass.COMPLETE_FOLD:
            if self.n % 2 or b != 0 or self.omega != self.n // 2 or self.theta != math.pi:
                raise ValueError("complete fold exists for even n: all-forward, omega = n/2, theta = pi")

    @property
    def f(self) -> int:
        return self.pattern.f

    @property
    def b(self) -> int:
        return self.pattern.b

    @property
    def m(self) -> int:
        return (self.n - 1) // 2

    @property
    def key(self) -> Tuple[str, str, int]:
        """Identity of the spec: class, pattern and winding number."""
        return (str(self.critical_class), str(self.pattern), self.omega)

    def __str__(self):
        theta = 'free' if self.theta is None else f"{self.theta:.6f}"
        return f"{self.critical_class} n={self.n} {self.pattern} omega={self.omega} theta={theta}"


@dataclass(frozen=True)
class NotCritical:
    gradient_norm: float
    reason: str = 'gradient above tolerance'


@dataclass(frozen=True)
class CatalogEntry:
    spec: CriticalSpec
    morse_index: Optional[int]
    critical_value: float
    multiplicity_note: str

    def __post_init__(self):
        if (self.morse_index is not None) != self.spec.critical_class.is_isolated_star:
            raise ValueError("morse index is present exactly for regular and zigzag stars")


def _m(n: int) -> int:
    return (n - 1) // 2


def _check_n(n: int):
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")


def degenerate_star(n: int) -> CriticalSpec:
    return CriticalSpec(n, CriticalClass.DEGENERATE_STAR, SignPattern.forward(n), 0, 0.0)


def complete_fold(n: int) -> CriticalSpec:
    return CriticalSpec(n, CriticalClass.COMPLETE_FOLD, SignPattern.forward(n), n // 2, math.pi)


def star_spec(pattern: SignPattern, omega: int) -> CriticalSpec:
    """Regular or zigzag star for a pattern with f != b and a signed winding number."""
    f, b = pattern.f, pattern.b
    cls = CriticalClass.REGULAR_STAR if min(f, b) == 0 else CriticalClass.ZIGZAG_STAR
    return CriticalSpec(pattern.n, cls, pattern, omega, star_theta(f, b, omega))


def admissible_omegas(n: int, b: int) -> range:
    """Signed winding numbers for patterns with b backward edges (f != b)."""
    f = n - b
    if f > b:
        return range(1, _m(n) - b + 1)
    return range(-1, -(_m(n) - f) - 1, -1)


def _specs_with_b(n: int, b: int) -> Iterator[CriticalSpec]:
    omegas = admissible_omegas(n, b)
    for backward in itertools.combinations(range(n), b):
        pattern = SignPattern.with_backward(n, backward)
        for omega in omegas:
            yield star_spec(pattern, omega)


def enumerate_isolated(n: int) -> List[CriticalSpec]:
    """All isolated critical points, ordered by b, the degenerate star (odd n) after b = m."""
    _check_n(n)
    specs: List[CriticalSpec] = []
    for b in range(n + 1):
        if 2 * b == n:
            continue
        if n % 2 and b == _m(n) + 1:
            specs.append(degenerate_star(n))
        specs.extend(_specs_with_b(n, b))
    logger.debug(f"Enumerated {len(specs)} isolated critical points for n={n}")
    return specs


def count_by_b(n: int, b: int) -> int:
    _check_n(n)
    if not 0 <= b <= n:
        raise ValueError(f"b must lie in 0..{n}, got {b}")
    f = n - b
    if f == b:
        raise ValueError(f"f == b == {b}: critical points form zigzag trains, not isolated points")
    if f > b:
        return math.comb(n, b) * (_m(n) - b)
    return math.comb(n, f) * (_m(n) - f)


def critical_value(spec: CriticalSpec) -> float:
    """(f - b) sin(theta) for stars, which is (n - 2b) sin(2 pi omega / (n - 2b)); 0 otherwise."""
    if spec.critical_class.is_isolated_star:
        d = spec.n - 2 * spec.b
        return d * math.sin(TWO_PI * spec.omega / d)
    return 0.0


def enumerate_train_branches(n: int) -> List[SignPattern]:
    if n < 4 or n % 2:
        raise ValueError(f"train branches exist for even n >= 4, got n={n}")
    return [SignPattern.with_backward(n, backward)
            for backward in itertools.combinations(range(n), n // 2)]


def train_spec(pattern: SignPattern, theta: Optional[float] = None) -> CriticalSpec:
    return CriticalSpec(pattern.n, CriticalClass.ZIGZAG_TRAIN, pattern, 0, theta)


def realize(spec: CriticalSpec, theta_override: Optional[float] = None) -> Configuration:
    """Configuration with alpha_i = eps_i * theta for i = 1..n-1."""
    theta = spec.theta
    if theta_override is not None:
        if spec.critical_class is CriticalClass.ZIGZAG_TRAIN:
            if not 0.0 < theta_override < math.pi:
                raise ValueError(f"train theta must lie in (0, pi), got {theta_override}")
        elif abs(theta_override - spec.theta) > SPEC_THETA_TOL:
            raise ValueError(f"theta {theta_override} inconsistent with {spec}")
        theta = theta_override
    if theta is None:
        raise ValueError("a theta in (0, pi) is required to realize a train branch")
    return Configuration(spec.n, tuple(s * theta for s in spec.pattern.signs[:-1]))


def classify(cfg: Configuration, tol: Optional[float] = None) -> Union[CriticalSpec, NotCritical]:
    """Recognize a critical configuration numerically.

    theta is the mean of |alpha_i|. Within 10*sqrt(tol) of 0 or pi the point is
    snapped to the degenerate star or the complete fold, because the gradient
    there is quadratic in the distance to the point.
    """
    tol = Config.CLASSIFY_TOL if tol is None else tol
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    n = cfg.n
    grad_norm = float(np.max(np.abs(gradient(cfg))))
    if grad_norm > tol:
        return NotCritical(grad_norm)

    angles = cfg.all_angles()
    theta = float(np.mean(np.abs(angles)))
    snap = 10.0 * math.sqrt(tol)
    if theta < snap:
        return degenerate_star(n)
    if math.pi - theta < snap and n % 2 == 0:
        return complete_fold(n)

    pattern = SignPattern(tuple(1 if a > 0 else -1 for a in angles))
    omega = int(round(float(np.sum(angles)) / TWO_PI))
    if pattern.f == pattern.b:
        return train_spec(pattern, theta)
    try:
        return star_spec(pattern, omega)
    except ValueError as exc:
        logger.warning(f"Critical point with theta={theta:.6g} matches no star: {exc}")
        return NotCritical(grad_norm, reason=str(exc))


def build_catalog(n: int) -> List[CatalogEntry]:
    from core.morse import degenerate_index, morse_index

    entries = []
    for spec in enumerate_isolated(n):
        if spec.critical_class is CriticalClass.DEGENERATE_STAR:
            note = f"degenerate; gradient index {degenerate_index(n)}"
            entries.append(CatalogEntry(spec, None, 0.0, note))
            continue
        note = f"one of {count_by_b(n, spec.b)} with b={spec.b}"
        entries.append(CatalogEntry(spec, morse_index(spec), critical_value(spec), note))
    return entries


def regular_star_extremum(n: int, omega: int) -> str:
    """Regular stars are maxima for omega < n/2, minima for omega > n/2, the fold at n/2."""
    _check_n(n)
    if not 1 <= omega <= n - 1:
        raise ValueError(f"omega must lie in 1..{n - 1}, got {omega}")
    if 2 * omega < n:
        return 'maximum'
    if 2 * omega > n:
        return 'minimum'
    return 'complete fold'


def branch_limits(pattern: SignPattern) -> Tuple[CriticalSpec, CriticalSpec]:
    """Endpoints of a train branch: theta -> 0 and theta -> pi."""
    if pattern.f != pattern.b:
        raise ValueError(f"pattern {pattern} is not a train pattern")
    return degenerate_star(pattern.n), complete_fold(pattern.n)


def absolute_maximum(n: int) -> Tuple[float, List[CriticalSpec]]:
    specs = [s for s in enumerate_isolated(n) if s.critical_class.is_isolated_star]
    best = max(critical_value(s) for s in specs)
    winners = [s for s in specs if abs(critical_value(s) - best) <= Config.CRITICAL_VALUE_TOL]
    return best, winners


def detect_collisions(n: int, radius: float = 1e-9) -> List[Tuple[CriticalSpec, CriticalSpec]]:
    """Pairs of distinct specs that realize to the same torus point."""
    specs = enumerate_isolated(n)
    points = np.array([realize(s).as_array() for s in specs])
    tree = cKDTree(torus_coordinates(points), boxsize=TWO_PI)
    pairs = tree.query_pairs(radius, p=np.inf)
    collisions = [(specs[i], specs[j]) for i, j in sorted(pairs)]
    if collisions:
        logger.warning(f"{len(collisions)} catalog collisions for n={n}")
    return collisions
