"""
Multi-start Newton Search on the Torus
======================================

Numerical oracle for the catalog: random starts on (-pi, pi]^(n-1) are refined
by damped Newton on the gradient map, converged points are clustered under the
periodic sup-distance, and each cluster representative is classified.

Features:
- Batched Newton steps with a pseudo-inverse, which is the minimum-norm step
  transverse to the train branches where the Hessian is singular
- Gradient descent on |grad|^2 when the Newton direction cannot be backtracked
- Counter-based random starts (Philox keyed by the seed), so a SearchConfig
  always yields the same clusters whatever the thread count
- Work split into chunks across a thread pool

Usage:
    cfg = SearchConfig.for_n(5)
    found = multistart_search(cfg)
    report = match_catalog(found, 5)
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from scipy.spatial import cKDTree

from core.catalog import (
    CriticalSpec, NotCritical, SignPattern, classify, enumerate_isolated, realize,
)
from core.config import Config
from core.critical_class import CriticalClass
from core.morse import morse_index, negative_count, numeric_spectrum
from core.polygon import (
    TWO_PI, Configuration, gradient_batch, hessian_batch, normalize_angles,
    toroidal_distance, torus_coordinates,
)

logger = logging.getLogger(__name__)

PINV_RCOND = 1e-10
MAX_HALVINGS = 40


@dataclass(frozen=True)
class SearchConfig:
    n: int
    starts: int
    seed: int
    newton_tol: float = Config.NEWTON_TOL
    max_iters: int = Config.NEWTON_MAX_ITERS
    cluster_radius: float = Config.CLUSTER_RADIUS
    threads: int = Config.SEARCH_THREADS
    chunk_size: int = Config.SEARCH_CHUNK

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"n must be at least 3, got {self.n}")
        if self.starts < 1:
            raise ValueError(f"starts must be positive, got {self.starts}")
        if self.newton_tol <= 0 or self.cluster_radius <= 0:
            raise ValueError("newton_tol and cluster_radius must be positive")
        if self.max_iters < 0 or self.threads < 1 or self.chunk_size < 1:
            raise ValueError("max_iters must be >= 0, threads and chunk_size >= 1")

    @classmethod
    def for_n(cls, n: int, seed: int = None, starts: int = None, **overrides) -> 'SearchConfig':
        return cls(n=n,
                   starts=starts if starts is not None else Config.default_starts(n),
                   seed=seed if seed is not None else Config.SEARCH_SEED,
                   **overrides)

    @property
    def classify_tol(self) -> float:
        return max(self.newton_tol, Config.CLASSIFY_TOL)

    @property
    def spread_tol(self) -> float:
        """Bound on max | |alpha_i| - theta | at a converged point."""
        return 10 * self.newton_tol


@dataclass(frozen=True)
class TrainPoint:
    """A point on the zigzag train branch of pattern, at common angle theta."""
    pattern: SignPattern
    theta: float

    @property
    def critical_class(self) -> CriticalClass:
        return CriticalClass.ZIGZAG_TRAIN


@dataclass(frozen=True)
class Unclassified:
    reason: str


Classification = Union[CriticalSpec, TrainPoint, Unclassified]


@dataclass(frozen=True)
class FoundPoint:
    configuration: Configuration
    gradient_norm: float
    classification: Classification
    iterations: int = 0
    cluster_size: int = 1


@dataclass(frozen=True)
class Diverged:
    configuration: Configuration
    gradient_norm: float
    iterations: int


def _sup_norm(g: np.ndarray) -> np.ndarray:
    return np.max(np.abs(g), axis=-1)


def _line_search(x: np.ndarray, direction: np.ndarray, merit: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Backtrack x + t*direction per row until the squared gradient norm decreases."""
    accepted = np.zeros(len(x), dtype=bool)
    x_new = x.copy()
    step = np.ones(len(x))
    for _ in range(MAX_HALVINGS):
        pending = ~accepted
        if not pending.any():
            break
        trial = normalize_angles(x[pending] + step[pending, None] * direction[pending])
        trial_merit = np.sum(gradient_batch(trial) ** 2, axis=-1)
        ok = trial_merit < merit[pending]
        idx = np.flatnonzero(pending)
        x_new[idx[ok]] = trial[ok]
        accepted[idx[ok]] = True
        step[pending] *= 0.5
    return x_new, accepted


def refine_batch(x0: np.ndarray, tol: float, max_iters: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Damped Newton on rows of x0. Returns (points, sup gradient norms, iteration counts)."""
    x = normalize_angles(np.array(x0, dtype=float, ndmin=2))
    iterations = np.zeros(len(x), dtype=int)
    stalled = np.zeros(len(x), dtype=bool)
    for _ in range(max_iters):
        g = gradient_batch(x)
        active = (_sup_norm(g) > tol) & ~stalled
        if not active.any():
            break
        idx = np.flatnonzero(active)
        xa, ga = x[idx], g[idx]
        merit = np.sum(ga ** 2, axis=-1)
        hess = hessian_batch(xa)
        newton_dir = -np.einsum('kij,kj->ki', np.linalg.pinv(hess, rcond=PINV_RCOND), ga)
        x_new, ok = _line_search(xa, newton_dir, merit)
        if not ok.all():
            # steepest descent on |grad|^2, whose gradient is H g
            fallback = np.flatnonzero(~ok)
            descent_dir = -np.einsum('kij,kj->ki', hess[fallback], ga[fallback])
            x_fb, ok_fb = _line_search(xa[fallback], descent_dir, merit[fallback])
            x_new[fallback] = x_fb
            stalled[idx[fallback[~ok_fb]]] = True
        x[idx] = x_new
        iterations[idx] += 1

    # one polishing step: accept a further Newton step only if it does not raise the gradient
    g = gradient_batch(x)
    polish = np.linalg.pinv(hessian_batch(x), rcond=PINV_RCOND)
    candidate = normalize_angles(x - np.einsum('kij,kj->ki', polish, g))
    better = _sup_norm(gradient_batch(candidate)) <= _sup_norm(g)
    x[better] = candidate[better]
    return x, _sup_norm(gradient_batch(x)), iterations


def newton_refine(cfg: Configuration, search: SearchConfig) -> Union[FoundPoint, Diverged]:
    x, norms, iterations = refine_batch(cfg.as_array()[None, :], search.newton_tol, search.max_iters)
    point = Configuration.from_array(x[0])
    if norms[0] > search.newton_tol:
        return Diverged(point, float(norms[0]), int(iterations[0]))
    return FoundPoint(point, float(norms[0]), classify_point(point, search.classify_tol), int(iterations[0]))


def classify_point(cfg: Configuration, tol: Optional[float] = None) -> Classification:
    result = classify(cfg, tol)
    if isinstance(result, NotCritical):
        return Unclassified(f"{result.reason} ({result.gradient_norm:.3g})")
    if result.critical_class is CriticalClass.ZIGZAG_TRAIN:
        return TrainPoint(result.pattern, result.theta)
    return result


def random_starts(search: SearchConfig) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(search.seed))
    return normalize_angles(rng.uniform(-np.pi, np.pi, size=(search.starts, search.n - 1)))


def cluster_points(points: np.ndarray, radius: float) -> np.ndarray:
    """Cluster labels under the periodic sup-distance.

    Points are first collapsed onto a grid of cell width radius, so repeated
    convergence to the same critical point costs one representative. Each
    unlabeled representative then claims every unlabeled representative within
    radius of it, in grid order.
    """
    if len(points) == 0:
        return np.zeros(0, dtype=int)
    coords = torus_coordinates(points)
    cells = np.floor(coords / radius).astype(np.int64)
    _, first, inverse = np.unique(cells, axis=0, return_index=True, return_inverse=True)
    reps = coords[first]
    tree = cKDTree(reps, boxsize=TWO_PI)

    rep_labels = np.full(len(reps), -1, dtype=int)
    next_label = 0
    for i in range(len(reps)):
        if rep_labels[i] >= 0:
            continue
        members = np.asarray(tree.query_ball_point(reps[i], radius, p=np.inf), dtype=int)
        members = members[rep_labels[members] < 0]
        rep_labels[members] = next_label
        rep_labels[i] = next_label
        next_label += 1
    return rep_labels[inverse.reshape(-1)]


def multistart_search(search: SearchConfig) -> List[FoundPoint]:
    starts = random_starts(search)
    chunks = [starts[i:i + search.chunk_size] for i in range(0, len(starts), search.chunk_size)]
    logger.info(f"Searching n={search.n}: {search.starts} starts in {len(chunks)} chunks on {search.threads} threads")

    with ThreadPoolExecutor(max_workers=search.threads) as pool:
        results = list(pool.map(lambda c: refine_batch(c, search.newton_tol, search.max_iters), chunks))

    points = np.concatenate([r[0] for r in results])
    norms = np.concatenate([r[1] for r in results])
    iterations = np.concatenate([r[2] for r in results])
    converged = norms <= search.newton_tol
    logger.info(f"{int(converged.sum())} of {len(points)} starts converged")

    points, norms, iterations = points[converged], norms[converged], iterations[converged]
    labels = cluster_points(points, search.cluster_radius)

    order = np.argsort(labels, kind='stable')
    _, bounds = np.unique(labels[order], return_index=True)
    found = []
    for members in np.split(order, bounds[1:]):
        if len(members) == 0:
            continue
        rep = members[np.argmin(norms[members])]
        cfg = Configuration.from_array(points[rep])
        found.append(FoundPoint(cfg, float(norms[rep]), classify_point(cfg, search.classify_tol),
                                int(iterations[rep]), len(members)))
    logger.info(f"{len(found)} clusters for n={search.n}")
    return found


def theta_spread(cfg: Configuration) -> float:
    """max | |alpha_i| - theta | with theta the mean of |alpha_i|."""
    magnitudes = np.abs(cfg.all_angles())
    return float(np.max(np.abs(magnitudes - magnitudes.mean())))


@dataclass
class MatchReport:
    n: int
    hits: Dict[Tuple, float] = field(default_factory=dict)
    misses: List[CriticalSpec] = field(default_factory=list)
    anomalies: List[Tuple[FoundPoint, str]] = field(default_factory=list)
    train_points: int = 0
    branch_endpoints: int = 0
    predicted: int = 0

    @property
    def hit_count(self) -> int:
        return len(self.hits)

    @property
    def complete(self) -> bool:
        return not self.misses and not self.anomalies


def match_catalog(found: List[FoundPoint], n: int, spread_tol: Optional[float] = None) -> MatchReport:
    """Compare found clusters with the isolated catalog; anything unexplained is an anomaly.

    spread_tol bounds max | |alpha_i| - theta | at every star and train point;
    pass SearchConfig.spread_tol so it follows the search tolerance.
    """
    spread_tol = 10 * Config.NEWTON_TOL if spread_tol is None else spread_tol
    predicted = enumerate_isolated(n)
    by_key = {spec.key: spec for spec in predicted}
    report = MatchReport(n, predicted=len(predicted))
    matched_keys = set()

    for point in found:
        label = point.classification
        if isinstance(label, Unclassified):
            report.anomalies.append((point, label.reason))
            continue
        if isinstance(label, TrainPoint):
            if n % 2 or label.pattern.f != label.pattern.b:
                report.anomalies.append((point, 'train point outside a train branch'))
            else:
                report.train_points += 1
        elif label.key in by_key:
            matched_keys.add(label.key)
            if label.critical_class.is_isolated_star:
                numeric_index = negative_count(numeric_spectrum(point.configuration))
                if numeric_index != morse_index(label):
                    report.anomalies.append((point, f"numeric index {numeric_index} != {morse_index(label)}"))
        elif n % 2 == 0 and label.critical_class in (CriticalClass.DEGENERATE_STAR, CriticalClass.COMPLETE_FOLD):
            report.branch_endpoints += 1
            continue
        else:
            report.anomalies.append((point, f"{label} not in the catalog"))
            continue
        if label.critical_class is not CriticalClass.DEGENERATE_STAR and theta_spread(point.configuration) >= spread_tol:
            report.anomalies.append((point, 'unequal |alpha_i| at a converged point'))

    found_points = np.array([p.configuration.as_array() for p in found]) if found else np.zeros((0, n - 1))
    for spec in predicted:
        target = realize(spec).as_array()
        if len(found_points):
            distance = float(np.min(toroidal_distance(found_points, target)))
        else:
            distance = math.inf
        if spec.key in matched_keys:
            report.hits[spec.key] = distance
        else:
            report.misses.append(spec)
    if report.anomalies:
        logger.warning(f"{len(report.anomalies)} anomalies in the n={n} search")
    return report
