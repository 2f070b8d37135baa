import sys
import os

# Add the parent directory to the path so we can import from core
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import math
from collections import Counter

import numpy as np
import pytest

from core.catalog import (
    CriticalSpec, NotCritical, SignPattern, absolute_maximum, admissible_omegas, branch_limits,
    build_catalog, classify, complete_fold, count_by_b, critical_value, degenerate_star,
    detect_collisions, enumerate_isolated, enumerate_train_branches, realize,
    regular_star_extremum, star_spec, train_spec,
)
from core.critical_class import CriticalClass
from core.polygon import Configuration, gradient, signed_area


def test_sign_pattern_basics():
    pattern = SignPattern.from_string('++-+-')
    assert (pattern.n, pattern.f, pattern.b) == (5, 3, 2)
    assert str(pattern.mirrored()) == '--+-+'
    assert str(pattern.rotated(2)) == '-+-++'
    assert SignPattern.with_backward(4, [0, 3]).signs == (-1, 1, 1, -1)
    with pytest.raises(ValueError):
        SignPattern.from_string('+x')


def test_critical_class_labels():
    assert str(CriticalClass.ZIGZAG_STAR) == 'ZigzagStar'
    assert CriticalClass.from_label('DegenerateStar') is CriticalClass.DEGENERATE_STAR
    with pytest.raises(ValueError):
        CriticalClass.from_label('Saddle')


@pytest.mark.parametrize('n, expected', [(3, 3), (4, 2), (5, 15), (6, 16), (7, 77)])
def test_catalog_counts(n, expected):
    assert len(enumerate_isolated(n)) == expected


def test_n7_breakdown():
    specs = enumerate_isolated(7)
    by_b = Counter(s.b for s in specs if s.critical_class.is_isolated_star)
    assert [by_b[b] for b in range(8)] == [3, 14, 21, 0, 0, 21, 14, 3]
    classes = [s.critical_class for s in specs]
    assert classes.count(CriticalClass.DEGENERATE_STAR) == 1
    # degenerate star sits between the b = 2 group and the b = 5 group
    position = classes.index(CriticalClass.DEGENERATE_STAR)
    assert specs[position - 1].b == 2 and specs[position + 1].b == 5


def test_even_n_has_no_degenerate_star_entry():
    classes = {s.critical_class for s in enumerate_isolated(6)}
    assert classes == {CriticalClass.REGULAR_STAR, CriticalClass.ZIGZAG_STAR}


def test_count_by_b_edges():
    assert count_by_b(7, 1) == 14
    assert count_by_b(7, 3) == 0
    with pytest.raises(ValueError):
        count_by_b(6, 3)
    assert list(admissible_omegas(7, 6)) == [-1, -2]


def test_spec_validation():
    pattern = SignPattern.forward(5)
    with pytest.raises(ValueError):
        CriticalSpec(5, CriticalClass.REGULAR_STAR, pattern, 1, 1.0)
    with pytest.raises(ValueError):
        star_spec(pattern, -1)
    with pytest.raises(ValueError):
        star_spec(SignPattern.from_string('++++-'), 2)  # theta = 4 pi / 3 > pi
    with pytest.raises(ValueError):
        complete_fold(5)


def test_realized_specs_are_critical_with_predicted_values():
    for n in range(3, 10):
        for spec in enumerate_isolated(n):
            cfg = realize(spec)
            assert np.max(np.abs(gradient(cfg))) < 1e-12
            assert abs(signed_area(cfg) - critical_value(spec)) <= 1e-12


def test_classify_inverts_realize():
    for n in (3, 4, 5, 6, 7):
        for spec in enumerate_isolated(n):
            assert classify(realize(spec)) == spec


def test_classify_special_points():
    assert classify(Configuration(5, (0.0,) * 4)) == degenerate_star(5)
    assert classify(Configuration(6, (math.pi,) * 5)) == complete_fold(6)
    pattern = SignPattern.from_string('+-+-')
    result = classify(realize(train_spec(pattern, 1.0)))
    assert result.critical_class is CriticalClass.ZIGZAG_TRAIN
    assert result.pattern == pattern
    assert result.theta == pytest.approx(1.0)


def test_classify_rejects_regular_points():
    result = classify(Configuration(4, (0.3, 0.5, 1.7)))
    assert isinstance(result, NotCritical)
    assert result.gradient_norm > 0.1
    with pytest.raises(ValueError):
        classify(Configuration(4, (0.3, 0.5, 1.7)), tol=0.0)


def test_train_branches():
    branches = enumerate_train_branches(6)
    assert len(branches) == 20
    assert all(p.f == p.b == 3 for p in branches)
    with pytest.raises(ValueError):
        enumerate_train_branches(5)
    with pytest.raises(ValueError):
        realize(train_spec(branches[0]))
    cfg = realize(train_spec(branches[0]), theta_override=2.0)
    assert np.max(np.abs(gradient(cfg))) < 1e-12
    assert signed_area(cfg) == pytest.approx(0.0, abs=1e-12)
    low, high = branch_limits(branches[0])
    assert low.critical_class is CriticalClass.DEGENERATE_STAR
    assert high.critical_class is CriticalClass.COMPLETE_FOLD


@pytest.mark.parametrize('n', [4, 6])
def test_train_gradient_vanishes_along_every_branch(n):
    thetas = np.linspace(0.0, math.pi, 102)[1:-1]
    for pattern in enumerate_train_branches(n):
        for theta in thetas:
            cfg = realize(train_spec(pattern), theta_override=float(theta))
            assert np.max(np.abs(gradient(cfg))) < 1e-12, (pattern, theta)
            assert signed_area(cfg) == pytest.approx(0.0, abs=1e-12)


def test_catalog_entries():
    entries = build_catalog(5)
    assert len(entries) == 15
    degenerate = [e for e in entries if e.spec.critical_class is CriticalClass.DEGENERATE_STAR]
    assert len(degenerate) == 1 and degenerate[0].morse_index is None
    assert all(e.morse_index is not None for e in entries if e.spec.critical_class.is_isolated_star)


def test_extremal_stars():
    assert regular_star_extremum(7, 2) == 'maximum'
    assert regular_star_extremum(7, 5) == 'minimum'
    assert regular_star_extremum(6, 3) == 'complete fold'
    best, winners = absolute_maximum(7)
    assert best == pytest.approx(7 * math.sin(4 * math.pi / 7))
    assert [(w.b, w.omega) for w in winners] == [(0, 2)]


def test_no_collisions():
    for n in (5, 6, 7):
        assert detect_collisions(n) == []
