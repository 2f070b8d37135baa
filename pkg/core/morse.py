"""
Hessian spectra, Morse indices and the index ledger of the torus.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from core.catalog import (
    CriticalSpec, count_by_b, realize, star_spec, enumerate_isolated,
)
from core.config import Config
from core.critical_class import CriticalClass
from core.polygon import Configuration, hessian
from utils.combinatorics import sign_power

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectrumReport:
    """Hessian eigenvalues with multiplicities at the configuration realizing spec."""

    spec: CriticalSpec
    eigenvalues: Tuple[Tuple[float, int], ...]
    p: float
    morse_index: int
    degenerate: bool
    source: str = 'closed form'

    def __post_init__(self):
        total = sum(mult for _, mult in self.eigenvalues)
        if total != self.spec.n - 1:
            raise ValueError(f"multiplicities sum to {total}, expected {self.spec.n - 1}")

    def values(self) -> List[float]:
        """The multiset expanded and sorted ascending."""
        return sorted(v for v, mult in self.eigenvalues for _ in range(mult))


@dataclass(frozen=True)
class LedgerRow:
    description: str
    count: int
    morse_index: int

    @property
    def contribution(self) -> int:
        return sign_power(self.morse_index) * self.count


@dataclass(frozen=True)
class IndexLedger:
    n: int
    contributions: Tuple[LedgerRow, ...]
    degenerate_index: int

    @property
    def total(self) -> int:
        return sum(row.contribution for row in self.contributions) + self.degenerate_index


def _require_star(spec: CriticalSpec):
    if not spec.critical_class.is_isolated_star:
        raise ValueError(f"{spec.critical_class} is not a nondegenerate critical point")


def canonical_rotation(spec: CriticalSpec) -> CriticalSpec:
    """Rotate the pattern so the closing edge is forward (p > 0); regular stars are kept."""
    _require_star(spec)
    if spec.critical_class is CriticalClass.REGULAR_STAR or spec.pattern.signs[-1] == 1:
        return spec
    last_forward = max(i for i, s in enumerate(spec.pattern.signs) if s == 1)
    return star_spec(spec.pattern.rotated(last_forward + 1), spec.omega)


def negative_count(eigenvalues: Sequence[float], tol: float = None) -> int:
    tol = Config.EIGEN_TOL if tol is None else tol
    return int(sum(1 for v in eigenvalues if v < -tol))


def numeric_spectrum(cfg: Configuration) -> List[float]:
    return sorted(float(v) for v in np.linalg.eigvalsh(hessian(cfg)))


def group_multiset(values: Sequence[float], tol: float = None) -> Tuple[Tuple[float, int], ...]:
    tol = Config.EIGEN_TOL if tol is None else tol
    groups: List[List[float]] = []
    for v in sorted(values):
        if groups and abs(v - groups[-1][-1]) <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    return tuple((float(np.mean(g)), len(g)) for g in groups)


def spectra_match(a: Sequence[float], b: Sequence[float], tol: float = None) -> bool:
    tol = Config.EIGEN_TOL if tol is None else tol
    if len(a) != len(b):
        return False
    return all(abs(x - y) <= tol for x, y in zip(sorted(a), sorted(b)))


def closed_form_spectrum(spec: CriticalSpec) -> SpectrumReport:
    """Hessian spectrum from the characteristic factorization.

    Zigzag stars are rotated so that p = sin(alpha_n) > 0. The factorization
    (l^2 + (b+f-1) p l + (b-f) p^2) (l - p)^(b-1) (l + p)^(f-2) needs f >= 2;
    for f = 1 the numeric spectrum is reported instead.
    """
    _require_star(spec)
    n, f, b = spec.n, spec.f, spec.b

    if spec.critical_class is CriticalClass.REGULAR_STAR:
        p = spec.pattern.signs[-1] * math.sin(spec.theta)
        eigenvalues = ((-n * p, 1), (-p, n - 2))
        index = negative_count([-n * p] + [-p] * (n - 2))
        return SpectrumReport(spec, eigenvalues, p, index, False)

    rotated = canonical_rotation(spec)
    p = math.sin(rotated.theta)
    if f < 2:
        logger.debug(f"Numeric fallback for {rotated}")
        values = numeric_spectrum(realize(rotated))
        return SpectrumReport(rotated, group_multiset(values), p, negative_count(values), False,
                              source='numeric')

    disc = math.sqrt((b + f - 1) ** 2 - 4 * (b - f))
    roots = (p * (-(b + f - 1) - disc) / 2, p * (-(b + f - 1) + disc) / 2)
    eigenvalues = [(roots[0], 1), (roots[1], 1)]
    if b > 1:
        eigenvalues.append((p, b - 1))
    if f > 2:
        eigenvalues.append((-p, f - 2))
    expanded = [v for v, mult in eigenvalues for _ in range(mult)]
    return SpectrumReport(rotated, tuple(eigenvalues), p, negative_count(expanded), False)


def morse_index(spec: CriticalSpec) -> int:
    """f - 1 for f > b, f for f < b."""
    _require_star(spec)
    return spec.f - 1 if spec.f > spec.b else spec.f


def _check_odd(n: int):
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and at least 3, got {n}")


def degenerate_index(n: int) -> int:
    """Local degree of the gradient map at the degenerate star: 2 (-1)^m C(n-2, m-1)."""
    _check_odd(n)
    m = (n - 1) // 2
    return 2 * sign_power(m) * math.comb(n - 2, m - 1)


def degenerate_index_by_sum(n: int) -> int:
    """-2 sum_{b<m} (-1)^b C(n,b) (m-b), the index forced by the isolated points."""
    _check_odd(n)
    m = (n - 1) // 2
    return -2 * sum(sign_power(b) * math.comb(n, b) * (m - b) for b in range(m))


def verify_index_identity(n: int) -> bool:
    return degenerate_index(n) == degenerate_index_by_sum(n)


def quadratic_root_signs(f: int, b: int) -> Tuple[int, int]:
    """Signs of the two zigzag quadratic roots at p = 1, read off product and sum."""
    product = b - f
    total = -(b + f - 1)
    if product < 0:
        return (-1, 1)
    return (-1, -1) if total < 0 else (1, 1)


def poincare_hopf_ledger(n: int) -> IndexLedger:
    _check_odd(n)
    rows = []
    for b in range(n + 1):
        f = n - b
        count = count_by_b(n, b)
        if count == 0:
            continue
        kind = 'regular star' if b in (0, n) else 'zigzag star'
        index = f - 1 if f > b else f
        rows.append(LedgerRow(f"{kind} b={b} (f={f})", count, index))
    ledger = IndexLedger(n, tuple(rows), degenerate_index(n))
    if ledger.total != 0:
        logger.warning(f"Index sum for n={n} is {ledger.total}, expected 0")
    return ledger


@dataclass(frozen=True)
class SpectrumCheck:
    spec: CriticalSpec
    spectrum_ok: bool
    index_ok: bool
    listed_index_ok: bool

    @property
    def passed(self) -> bool:
        return self.spectrum_ok and self.index_ok and self.listed_index_ok


def spectrum_check(n: int) -> List[SpectrumCheck]:
    """Checks every isolated star.

    The closed form is compared with the canonically rotated realization; the
    index rule is checked there and again at the catalog's own realization.
    """
    results = []
    for spec in enumerate_isolated(n):
        if not spec.critical_class.is_isolated_star:
            continue
        report = closed_form_spectrum(spec)
        numeric = numeric_spectrum(realize(report.spec))
        listed = numeric_spectrum(realize(spec))
        results.append(SpectrumCheck(spec,
                                     spectra_match(report.values(), numeric),
                                     negative_count(numeric) == morse_index(spec),
                                     negative_count(listed) == morse_index(spec)))
    return results
