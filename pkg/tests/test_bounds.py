import math

import mpmath as mp
import numpy as np
import pytest

from gammaineq import bounds as B
from gammaineq.context import CERT
from gammaineq.errors import DomainError, UnknownIdError

import oracles as O

GAMMA = 0.57721566490153286061


def test_psi_examples():
    lo, hi = B.psi_bounds("QICUI", 2.0)
    assert lo < 1 - GAMMA < hi
    lo1, hi1 = B.qicui_original(1.0)
    assert (lo1, hi1) == pytest.approx((5 / 12, 0.5))
    assert lo1 < (1 - GAMMA) - math.log(1.0) < hi1

    lo, hi = B.psi_bounds("LN", 5.0)
    assert (lo, hi) == pytest.approx((math.log(5) - 0.2, math.log(5) - 0.1))
    assert lo < 25 / 12 - GAMMA < hi

    for x in (0.01, 1.0, 300.0):
        assert B.psi_bounds("SHARP", x)[0] == B.psi_bounds("BETA", x)[0]
    assert B.psi_bounds("PSI-LN", 5.0) == B.psi_bounds("LN", 5.0)


def test_polygamma_examples():
    assert B.polygamma_bounds("HALF", 1, 1.0) == pytest.approx((1.5, 2.0))
    assert B.polygamma_bounds("BETA", 1, 1.0) == pytest.approx((1.5, 1 / 1.5 + 1))
    lo, hi = B.polygamma_bounds("BETA", 2, 2.0)
    assert (lo, hi) == pytest.approx((1 / 9 + 0.25, 1 / 6.25 + 0.25))
    assert lo < -O.psi_n(2, 2.0) < hi


def test_kuang_examples():
    assert B.log_upper_kuang(1.0) == pytest.approx(25 / 36, rel=1e-15)
    assert math.log(2) < B.log_upper_kuang(1.0)
    assert B.log_upper_kuang_substituted(1.0) == pytest.approx(25 / 36, rel=1e-15)
    gap = B.kuang_gap(1e6)
    assert 0 < gap < 1e-13
    enc = CERT.kuang_gap(1e6)
    assert enc.lo > 0 and enc.hi < 1e-13


def test_substituted_form_matches():
    for x in (0.01, 0.7, 3.0, 90.0):
        assert B.log_upper_kuang_substituted(1 / x) == pytest.approx(B.log_upper_kuang(x), rel=1e-14)


def _mp_psi_pair(key, x):
    x = mp.mpf(x)
    half = mp.mpf(1) / 2
    forms = {
        "QICUI": (mp.log(x) - half / x - 1 / (12 * x * x), mp.log(x) - half / x),
        "BETA": (mp.log(x + half) - 1 / x, mp.log(x + 1) - 1 / x),
        "LN": (mp.log(x) - 1 / x, mp.log(x) - half / x),
        "SHARP": (mp.log(x + half) - 1 / x, mp.log(x + mp.exp(-mp.euler)) - 1 / x),
    }
    return forms[key]


def _mp_poly_pair(key, k, x):
    x = mp.mpf(x)
    f1, f = mp.factorial(k - 1), mp.factorial(k)
    if key == "BETA":
        return f1 / (x + 1) ** k + f / x ** (k + 1), f1 / (x + mp.mpf(1) / 2) ** k + f / x ** (k + 1)
    return f1 / x ** k + f / (2 * x ** (k + 1)), f1 / x ** k + f / x ** (k + 1)


@mp.workdps(60)
def test_sandwich_holds_in_high_precision():
    # the mathematical statement, with every quantity at 60 digits
    for x in np.geomspace(1e-3, 1e4, 200):
        psi = mp.digamma(mp.mpf(x))
        for key in ("QICUI", "BETA", "LN", "SHARP"):
            lo, hi = _mp_psi_pair(key, x)
            assert lo < psi < hi, (key, x)
        X = mp.mpf(x)
        assert mp.log(1 + 1 / X) < 2 / (2 * X + 1) * (1 + 1 / (12 * X) - 1 / (12 * (X + 1)))
        for k in (1, 2, 3, 5):
            sv = (-1) ** (k + 1) * mp.psi(k, mp.mpf(x))
            for key in ("BETA", "HALF"):
                lo, hi = _mp_poly_pair(key, k, x)
                assert lo < sv < hi, (key, k, x)


@mp.workdps(40)
def test_closed_forms_match_high_precision():
    for x in np.geomspace(1e-3, 1e4, 200):
        for key in ("QICUI", "BETA", "LN", "SHARP"):
            got = B.psi_bounds(key, x)
            for g, ref in zip(got, _mp_psi_pair(key, x)):
                assert g == pytest.approx(float(ref), rel=1e-13, abs=1e-15)
        for k in (1, 3, 6):
            for key in ("BETA", "HALF"):
                got = B.polygamma_bounds(key, k, x)
                for g, ref in zip(got, _mp_poly_pair(key, k, x)):
                    assert g == pytest.approx(float(ref), rel=1e-14)


def test_sharp_nested_in_beta():
    for x in np.geomspace(1e-3, 1e4, 200):
        ls, hs = B.psi_bounds("SHARP", x)
        lb, hb = B.psi_bounds("BETA", x)
        assert ls == lb and hs <= hb


def test_width_decay():
    xs = np.geomspace(1.0, 1e4, 200)
    for key in ("QICUI", "BETA", "LN", "SHARP"):
        w = [np.subtract(*B.psi_bounds(key, x)[::-1]) for x in xs]
        assert all(a > b for a, b in zip(w, w[1:])), key


def test_errors():
    with pytest.raises(UnknownIdError):
        B.psi_bounds("NOPE", 1.0)
    with pytest.raises(UnknownIdError):
        B.polygamma_bounds("QICUI", 1, 1.0)
    with pytest.raises(DomainError):
        B.psi_bounds("LN", 0.0)
    with pytest.raises(DomainError):
        B.polygamma_bounds("BETA", 0, 1.0)
    with pytest.raises(DomainError):
        B.log_upper_kuang(-1.0)


def test_registry_shape():
    assert set(B.BOUND_PAIRS) == {"PSI-QICUI", "PSI-BETA", "PSI-LN", "PSI-SHARP",
                                  "POLY-BETA", "POLY-HALF", "LOG-KUANG"}
    for pair in B.BOUND_PAIRS.values():
        assert pair.formula and pair.domain
