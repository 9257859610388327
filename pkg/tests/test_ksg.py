"""The k-nearest-neighbor mutual information estimator."""

import math

import numpy as np
import pytest
from scipy.special import digamma

from infoproc import ksg
from infoproc.errors import DegenerateDistanceError, DomainError


def brute_force_ksg(x, y, k):
    """Direct O(N^2) evaluation of the first Kraskov estimator."""
    x = x[:, None] if x.ndim == 1 else x
    y = y[:, None] if y.ndim == 1 else y
    n = len(x)
    z = np.hstack([x, y])
    acc = 0.0
    for i in range(n):
        dz = np.max(np.abs(z - z[i]), axis=1)
        eps = np.sort(dz)[k]
        nx = (np.max(np.abs(x - x[i]), axis=1) < eps).sum() - 1
        ny = (np.max(np.abs(y - y[i]), axis=1) < eps).sum() - 1
        acc += digamma(nx + 1) + digamma(ny + 1)
    return digamma(k) + digamma(n) - acc / n


@pytest.mark.parametrize("dim_x,dim_y", [(1, 1), (2, 1), (2, 3)])
@pytest.mark.parametrize("k", [1, 3, 5])
def test_matches_brute_force(dim_x, dim_y, k):
    rng = np.random.default_rng(4)
    x = rng.normal(size=(300, dim_x))
    y = 0.5 * x[:, :1] + rng.normal(size=(300, dim_y))
    assert ksg.ksg_mi(x, y, k=k) == pytest.approx(brute_force_ksg(x, y, k), abs=1e-10)


@pytest.mark.parametrize("rho", [0.0, 0.3, 0.6, 0.9])
def test_gaussian_analytic_oracle(rho):
    rng = np.random.default_rng(7)
    n = 4000
    x = rng.normal(size=n)
    y = rho * x + math.sqrt(1 - rho * rho) * rng.normal(size=n)
    analytic = -0.5 * math.log(1 - rho * rho) if rho else 0.0
    assert ksg.ksg_mi(x, y) == pytest.approx(analytic, abs=0.02)


def test_estimate_is_exactly_translation_and_scale_invariant():
    # shifting, or rescaling x and y by the same positive factor, preserves
    # every neighbor relation, so the estimate is bit-identical
    rng = np.random.default_rng(12)
    x = rng.normal(size=500)
    y = 0.7 * x + rng.normal(size=500)
    base = ksg.ksg_mi(x, y)
    assert ksg.ksg_mi(x + 100.0, y - 3.0) == pytest.approx(base, abs=1e-9)
    assert ksg.ksg_mi(2.0 * x, 2.0 * y) == pytest.approx(base, abs=1e-9)


def test_estimator_consistency_improves_with_n():
    rho = 0.8
    analytic = -0.5 * math.log(1 - rho * rho)
    rng = np.random.default_rng(21)
    errs = []
    for n in (200, 2000):
        x = rng.normal(size=n)
        y = rho * x + math.sqrt(1 - rho * rho) * rng.normal(size=n)
        errs.append(abs(ksg.ksg_mi(x, y) - analytic))
    assert errs[1] < errs[0]


def test_duplicate_points_raise():
    x = np.asarray([0.0, 0.0, 0.0, 1.0, 2.0])
    y = np.asarray([0.0, 0.0, 0.0, 1.0, 2.0])
    with pytest.raises(DegenerateDistanceError):
        ksg.ksg_mi(x, y, k=1)


def test_argument_validation():
    rng = np.random.default_rng(0)
    x = rng.normal(size=50)
    with pytest.raises(DomainError):
        ksg.ksg_mi(x, rng.normal(size=49))
    with pytest.raises(DomainError):
        ksg.ksg_mi(x, x + 1.0, k=0)
    with pytest.raises(DomainError):
        ksg.ksg_mi(x, x + 1.0, k=50)
    with pytest.raises(DomainError):
        ksg.ksg_mi(np.asarray([1.0, np.nan]), np.asarray([0.0, 1.0]))


def test_jitter_properties():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(100, 2))
    x[:, 1] = 5.0  # a constant dimension
    out = ksg.jitter(x, 1e-8, seed=1)
    assert out.shape == x.shape
    assert np.abs(out[:, 0] - x[:, 0]).max() < 1e-6
    assert len(np.unique(out[:, 1])) == 100  # constant column became distinct
    again = ksg.jitter(x, 1e-8, seed=1)
    np.testing.assert_array_equal(out, again)
    untouched = ksg.jitter(x, 0.0, seed=1)
    np.testing.assert_array_equal(untouched, x)


def test_jitter_enables_estimation_on_discrete_data():
    rng = np.random.default_rng(8)
    x = rng.integers(0, 4, size=600).astype(float)
    y = x.copy()
    with pytest.raises(DegenerateDistanceError):
        ksg.ksg_mi(x, y)
    xj = ksg.jitter(x[:, None], 1e-10, seed=0)
    yj = ksg.jitter(y[:, None], 1e-10, seed=1)
    # the true MI is H(X) = 2 bits = 1.386 nats
    assert ksg.ksg_mi(xj, yj) > 1.0
