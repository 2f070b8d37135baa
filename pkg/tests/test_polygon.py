import sys
import os

# Add the parent directory to the path so we can import from core
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import math

import numpy as np
import pytest

from core.polygon import (
    Configuration, closing_angle, gradient, gradient_batch, hessian, hessian_batch,
    normalize_angle, normalize_angles, shoelace_area, sign_flip, signed_area,
    signed_area_batch, toroidal_distance, transfer_to_ellipse, vertices,
)


def test_normalize_angle_range():
    assert normalize_angle(math.pi) == math.pi
    assert normalize_angle(-math.pi) == math.pi
    assert normalize_angle(3 * math.pi) == pytest.approx(math.pi)
    assert normalize_angle(0.5) == 0.5
    assert normalize_angle(2 * math.pi + 0.25) == pytest.approx(0.25)
    with pytest.raises(ValueError):
        normalize_angle(float('nan'))


def test_vectorized_normalization_agrees():
    xs = np.linspace(-10, 10, 101)
    expected = [normalize_angle(float(x)) for x in xs]
    assert np.allclose(normalize_angles(xs), expected)


def test_configuration_validation():
    with pytest.raises(ValueError):
        Configuration(2, (0.1,))
    with pytest.raises(ValueError):
        Configuration(4, (0.1, 0.2))
    cfg = Configuration.from_array([7.0, -7.0])
    assert cfg.n == 3
    assert all(-math.pi < a <= math.pi for a in cfg.alphas)


def test_regular_triangle_area():
    theta = 2 * math.pi / 3
    cfg = Configuration(3, (theta, theta))
    assert closing_angle(cfg) == pytest.approx(theta)
    assert signed_area(cfg) == pytest.approx(3 * math.sin(theta))
    assert np.allclose(gradient(cfg), 0.0, atol=1e-12)
    assert signed_area(sign_flip(cfg)) == pytest.approx(-signed_area(cfg))


@pytest.mark.parametrize('n', range(3, 11))
def test_gradient_and_hessian_match_finite_differences(n):
    rng = np.random.default_rng(n)
    h = 1e-5
    x = rng.uniform(-math.pi, math.pi, size=(1000, n - 1))
    eye = np.eye(n - 1)
    fd_grad = np.stack([
        (signed_area_batch(x + h * e) - signed_area_batch(x - h * e)) / (2 * h) for e in eye
    ], axis=-1)
    assert np.max(np.abs(gradient_batch(x) - fd_grad)) < 1e-6
    fd_hess = np.stack([
        (gradient_batch(x + h * e) - gradient_batch(x - h * e)) / (2 * h) for e in eye
    ], axis=-1)
    assert np.max(np.abs(hessian_batch(x) - fd_hess)) < 1e-4


@pytest.mark.parametrize('n', [3, 5, 8])
def test_signed_area_is_periodic_in_each_coordinate(n):
    rng = np.random.default_rng(100 + n)
    x = rng.uniform(-math.pi, math.pi, size=(50, n - 1))
    for i in range(n - 1):
        shifted = x.copy()
        shifted[:, i] += 2 * math.pi
        assert np.allclose(signed_area_batch(shifted), signed_area_batch(x), atol=1e-12)
        assert np.allclose(gradient_batch(shifted), gradient_batch(x), atol=1e-12)
    cfg = Configuration.from_array(x[0])
    moved = Configuration.from_array(x[0] + 2 * math.pi * np.eye(n - 1)[0])
    assert signed_area(moved) == pytest.approx(signed_area(cfg), abs=1e-12)


def test_scalar_and_batched_versions_agree():
    cfg = Configuration(5, (0.3, -1.2, 2.0, 2.9))
    x = cfg.as_array()
    assert signed_area_batch(x) == pytest.approx(signed_area(cfg))
    assert np.allclose(gradient_batch(x), gradient(cfg))
    assert np.allclose(hessian_batch(x[None, :])[0], hessian(cfg))


def test_shoelace_is_half_signed_area():
    cfg = Configuration(6, (0.4, 1.1, -0.3, 2.2, 0.9))
    assert shoelace_area(vertices(cfg)) == pytest.approx(0.5 * signed_area(cfg))


def test_ellipse_transfer_scales_area():
    cfg = Configuration(5, (1.0, 1.2, 1.3, 1.4))
    points = transfer_to_ellipse(cfg, 2.0, 0.5)
    assert shoelace_area(points) == pytest.approx(0.5 * signed_area(cfg))
    with pytest.raises(ValueError):
        transfer_to_ellipse(cfg, 0.0, 1.0)


def test_toroidal_distance_wraps():
    a = np.array([math.pi - 1e-3, 0.0])
    b = np.array([-math.pi + 1e-3, 0.5])
    assert toroidal_distance(a, b) == pytest.approx(0.5)


def test_toroidal_distance_batches_rows():
    rows = np.array([[math.pi - 1e-3, 0.0], [0.0, 0.0], [1.0, -1.0]])
    target = np.array([-math.pi + 1e-3, 0.5])
    distances = toroidal_distance(rows, target)
    assert distances.shape == (3,)
    assert distances[0] == pytest.approx(0.5)
    assert distances[1] == pytest.approx(math.pi - 1e-3)
    assert distances[2] == pytest.approx(math.pi - 1 + 1e-3)
