import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gammaineq import means as M
from gammaineq.errors import DomainError

pos = st.floats(min_value=1e-3, max_value=100.0, allow_nan=False)
order = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)


@mp.workdps(50)
def oracle_lp(p, a, b):
    p, a, b = mp.mpf(p), mp.mpf(a), mp.mpf(b)
    if p == -1:
        return float((b - a) / (mp.log(b) - mp.log(a)))
    if p == 0:
        return float(mp.exp((b * mp.log(b) - a * mp.log(a)) / (b - a) - 1))
    return float(((b ** (p + 1) - a ** (p + 1)) / ((p + 1) * (b - a))) ** (1 / p))


def test_log_mean_examples():
    assert M.log_mean(3.7, 3.7) == 3.7
    assert M.log_mean(1.0, math.e) == pytest.approx(math.e - 1, rel=1e-15)
    assert M.log_mean(1.0, 2.0) == pytest.approx(1 / math.log(2), rel=1e-15)


def test_gen_log_mean_examples():
    assert M.gen_log_mean(1.0, 2.0, 4.0) == pytest.approx(3.0, rel=1e-15)
    assert M.gen_log_mean(-1.0, 1.0, 2.0) == pytest.approx(1 / math.log(2), rel=1e-15)
    assert M.gen_log_mean(0.0, 1.0, math.e) == pytest.approx(math.exp(1 / (math.e - 1)), rel=1e-14)
    t = 1.0
    s = 2 * t * t / ((1 + 2 * t) * math.log(1 + 2 * t))
    assert M.gen_log_mean(-2.0, s, t) == pytest.approx(math.sqrt(2 / (3 * math.log(3))), rel=1e-14)
    assert M.gen_log_mean(M.GenLogMeanParams(1.0, 2.0, 4.0)) == pytest.approx(3.0)


def test_against_oracle():
    rng = np.random.default_rng(11)
    for _ in range(300):
        p = float(rng.uniform(-5, 5))
        a, b = (float(v) for v in rng.uniform(1e-3, 100, 2))
        assert M.gen_log_mean(p, a, b) == pytest.approx(oracle_lp(p, a, b), rel=1e-12)


def test_large_orders_do_not_overflow():
    v = M.gen_log_mean(400.0, 1.0, 1e3)
    assert math.isfinite(v) and 1.0 < v < 1e3
    assert M.gen_log_mean(400.0, 1.0, 1e3) == pytest.approx(oracle_lp(400, 1, 1e3), rel=1e-12)
    assert M.gen_log_mean(-400.0, 1.0, 1e3) == pytest.approx(oracle_lp(-400, 1, 1e3), rel=1e-12)


def test_near_equal_arguments():
    a = 2.0
    b = a * (1 + 1e-10)
    assert M.gen_log_mean(-2.0, a, b) == pytest.approx(a, rel=1e-9)
    assert M.gen_log_mean(3.0, a, a) == a


@given(order, pos, pos)
@settings(max_examples=300, deadline=None)
def test_mean_property(p, a, b):
    v = M.gen_log_mean(p, a, b)
    lo, hi = min(a, b), max(a, b)
    assert lo * (1 - 1e-14) <= v <= hi * (1 + 1e-14)


@given(order, pos, pos)
@settings(max_examples=300, deadline=None)
def test_symmetry(p, a, b):
    assert M.gen_log_mean(p, a, b) == pytest.approx(M.gen_log_mean(p, b, a), rel=1e-13)


@given(order, pos, pos, st.sampled_from([0.1, 10.0]))
@settings(max_examples=200, deadline=None)
def test_homogeneity(p, a, b, lam):
    assert M.gen_log_mean(p, lam * a, lam * b) == pytest.approx(lam * M.gen_log_mean(p, a, b), rel=1e-12)


@given(pos, pos)
@settings(max_examples=200, deadline=None)
def test_branch_continuity(a, b):
    for p0, ref in ((-1.0, M.log_mean(a, b)), (0.0, M.identric_mean(a, b))):
        for dp in (-1e-7, 1e-7, -2e-6, 2e-6):
            assert M.gen_log_mean(p0 + dp, a, b) == pytest.approx(ref, rel=1e-5)


def test_monotone_in_order():
    ps = np.linspace(-5, 5, 201)
    for a, b in ((0.3, 7.0), (1.0, 1.5), (20.0, 0.01)):
        vals = [M.gen_log_mean(p, a, b) for p in ps]
        assert all(x <= y * (1 + 1e-13) for x, y in zip(vals, vals[1:]))


@pytest.mark.parametrize("a, b", [(0.0, 1.0), (-1.0, 2.0), (1.0, math.inf)])
def test_domain_errors(a, b):
    with pytest.raises(DomainError):
        M.gen_log_mean(1.0, a, b)
    with pytest.raises(DomainError):
        M.log_mean(a, b)


def test_enclosure_contains_oracle():
    rng = np.random.default_rng(12)
    for _ in range(200):
        p = float(rng.choice([-3.0, -2.0, -1.0, 0.0, 0.5, 2.0]))
        a, b = (float(v) for v in rng.uniform(1e-3, 100, 2))
        e = M.gen_log_mean_enclosure(p, a, b)
        assert oracle_lp(p, a, b) in e
        assert e.width <= 1e-12 * e.hi


@pytest.mark.parametrize("p", [2e-6, -3e-6, 1e-5, -1e-3, 0.3, -0.5, -0.999, -1.001])
def test_orders_near_branches(p):
    for a, b in ((1.0, 2.0), (1e-3, 90.0), (5.0, 5.5)):
        assert M.gen_log_mean(p, a, b) == pytest.approx(oracle_lp(p, a, b), rel=1e-13)
