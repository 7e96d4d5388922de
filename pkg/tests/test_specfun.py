import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gammaineq import specfun as sf
from gammaineq.enclosure import Enclosure
from gammaineq.errors import DomainError

import oracles as O

GAMMA = 0.57721566490153286061
ZETA3 = 1.2020569031595942854

pos = st.floats(min_value=1e-3, max_value=1e4, allow_nan=False, allow_infinity=False)


# point values ----------------------------------------------------------------------

@pytest.mark.parametrize("x, expected", [
    (1.0, 0.0), (2.0, 0.0), (0.5, 0.5723649429247001), (10.0, math.lgamma(10.0)),
])
def test_lgamma_classical(x, expected):
    assert sf.lgamma(x) == pytest.approx(expected, abs=1e-15, rel=1e-14)


def test_digamma_classical():
    assert sf.digamma(1.0) == pytest.approx(-GAMMA, abs=1e-14)
    assert sf.digamma(0.5) == pytest.approx(-GAMMA - 2 * math.log(2), abs=1e-14)
    assert math.log(10) - 0.1 < sf.digamma(10.0) < math.log(10) - 0.05


def test_polygamma_classical():
    assert sf.polygamma(1, 1.0) == pytest.approx(math.pi ** 2 / 6, rel=1e-15)
    assert sf.polygamma(2, 1.0) == pytest.approx(-2 * ZETA3, rel=1e-15)
    assert sf.polygamma(1, 3.0) == pytest.approx(math.pi ** 2 / 6 - 1.25, rel=1e-14)
    assert sf.polygamma(2, 0.5) == pytest.approx(-16.828796644234318, rel=1e-14)


def test_lgamma_relative_accuracy():
    rng = np.random.default_rng(1)
    xs = list(np.exp(rng.uniform(math.log(1e-6), math.log(1e6), 400)))
    xs += [1.0 + 1e-9, 2.0 - 1e-9, 1.4616321449683622, 0.999, 2.001]
    for x in xs:
        assert O.rel_err(sf.lgamma(x), O.lgam(x)) <= 1e-13, x


def test_digamma_accuracy():
    rng = np.random.default_rng(2)
    xs = np.exp(rng.uniform(math.log(1e-6), math.log(1e6), 400))
    for x in xs:
        ref = O.psi(x)
        # absolute 1e-13, scaled up where |psi| > 1 (|psi| ~ 1/x near 0)
        assert abs(sf.digamma(x) - ref) <= 1e-13 * max(1.0, abs(ref)), x
    root = 1.4616321449683622
    assert abs(sf.digamma(root)) < 1e-15


def test_polygamma_relative_accuracy():
    rng = np.random.default_rng(3)
    for k in range(1, 7):
        for x in np.exp(rng.uniform(math.log(1e-4), math.log(1e5), 60)):
            assert O.rel_err(sf.polygamma(k, x), O.psi_n(k, x)) <= 1e-12, (k, x)


@pytest.mark.parametrize("a, b", [(1e-8, 2e-8), (-0.3, 0.2), (0.4999, 0.5), (1e-12, 0.0), (3.0, 2.5)])
def test_lgamma1p_diff(a, b):
    ref = float(mp.loggamma(1 + mp.mpf(a)) - mp.loggamma(1 + mp.mpf(b)))
    assert sf.lgamma1p_diff(a, b) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        sf.lgamma(bad)
    with pytest.raises(DomainError):
        sf.digamma(bad)
    with pytest.raises(DomainError):
        sf.polygamma(1, bad)


def test_polygamma_order_errors():
    with pytest.raises(DomainError):
        sf.polygamma(0, 1.0)
    with pytest.raises(DomainError):
        sf.polygamma(1.5, 1.0)


# properties --------------------------------------------------------------------------

@given(pos)
@settings(max_examples=300, deadline=None)
def test_recurrence(x):
    assert sf.digamma(x + 1) - sf.digamma(x) == pytest.approx(1 / x, abs=1e-12 * max(1.0, 1 / x))


def test_recurrence_absolute_grid():
    rng = np.random.default_rng(4)
    xs = rng.uniform(1e-3, 1e4, 2000)
    # |psi(x)| grows like 1/x near 0, so 1e-12 absolute needs x away from 0
    for x in xs[xs > 0.05]:
        assert abs(sf.digamma(x + 1) - sf.digamma(x) - 1 / x) <= 1e-12


def test_digamma_increasing():
    xs = np.geomspace(1e-4, 1e5, 3000)
    vals = [sf.digamma(x) for x in xs]
    assert all(a < b for a, b in zip(vals, vals[1:]))


@given(st.integers(min_value=1, max_value=6), st.floats(min_value=1e-3, max_value=1e4))
@settings(max_examples=200, deadline=None)
def test_polygamma_sign(k, x):
    assert (-1) ** (k + 1) * sf.polygamma(k, x) > 0


@pytest.mark.parametrize("x", [0.3, 1.0, 2.5, 17.0, 300.0])
def test_finite_difference_consistency(x):
    h = 1e-5
    fd = (sf.lgamma(x + h) - sf.lgamma(x - h)) / (2 * h)
    assert abs(fd - sf.digamma(x)) <= 1e-6 * max(1.0, abs(fd))
    fd1 = (sf.digamma(x + h) - sf.digamma(x - h)) / (2 * h)
    assert abs(fd1 - sf.polygamma(1, x)) <= 1e-6 * max(1.0, abs(fd1))


# enclosures ----------------------------------------------------------------------------

def test_digamma_enclosure_examples():
    e = sf.digamma_enclosure(1.0)
    assert -GAMMA in e
    for x in (0.1, 1.0, 10.0):
        assert sf.digamma_enclosure(x).lo >= math.log(x + 0.5) - 1 / x
    e5 = sf.digamma_enclosure(5.0)
    assert math.log(5) - 0.2 <= e5.lo and e5.hi <= math.log(5) - 0.1


def test_polygamma_enclosure_examples():
    assert math.pi ** 2 / 6 in sf.polygamma_enclosure(1, 1.0)
    e = sf.polygamma_enclosure(1, 2.0)
    lo, hi = 1 / 3 + 1 / 4, 1 / 2.5 + 1 / 4
    assert lo < e.mid < hi
    e2 = sf.polygamma_enclosure(2, 0.5)
    assert e2.lo <= -16.828796644234318 <= e2.hi


def test_enclosure_containment_random():
    rng = np.random.default_rng(5)
    xs = np.exp(rng.uniform(math.log(1e-6), math.log(1e6), 1500))
    for x in xs:
        assert O.psi(x) in sf.digamma_enclosure(x), x
        assert O.lgam(x) in sf.lgamma_enclosure(x), x
    for k in (1, 2, 3):
        for x in xs[::10]:
            assert O.psi_n(k, x) in sf.polygamma_enclosure(k, x), (k, x)


def test_enclosure_widths():
    for x in np.geomspace(1e-3, 1e6, 300):
        e = sf.digamma_enclosure(x)
        assert e.width <= 1e-10, x
    for k in (1, 2, 4):
        for x in np.geomspace(1e-2, 1e5, 100):
            e = sf.polygamma_enclosure(k, x)
            assert e.width <= 1e-9 * abs(e.mid), (k, x)


def test_small_argument_enclosure_flagged():
    e = sf.digamma_enclosure(1e-5)
    assert e.wide
    assert O.psi(1e-5) in e
    assert not sf.digamma_enclosure(0.5).wide


def test_interval_argument_enclosures():
    arg = Enclosure(1.5, 1.6)
    e = sf.digamma_enclosure(arg)
    for x in (1.5, 1.55, 1.6):
        assert O.psi(x) in e
    lg = sf.lgamma_enclosure(Enclosure(1.2, 1.8))
    # ln G has its minimum inside this interval
    assert O.lgam(1.4616321449683622) in lg and O.lgam(1.2) in lg and O.lgam(1.8) in lg
