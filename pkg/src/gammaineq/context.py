"""Evaluation contexts shared by every margin function.

A margin is written once against an ops object ``F``.  With :data:`FLOAT` it
runs in double precision using cancellation-free special forms; with
:data:`CERT` the same expression runs on :class:`~gammaineq.enclosure.Enclosure`
values and the result brackets the exact margin.
"""

from __future__ import annotations

import math

from . import enclosure as E
from . import means, specfun as sf
from .enclosure import Enclosure

EXP_NEG_GAMMA = math.exp(-sf.EULER_GAMMA)

# below these the float helpers switch to their power series
_XLOG_SERIES = 0.01
_SINH_SERIES = 0.1
_KUANG_SERIES_W = 1.0 / 3.0
_MEAN_SERIES = 0.01


def _xlog1p_excess_series(u: float) -> float:
    # (1+u) ln(1+u) - u = sum_{n>=2} (-1)^n u^n / (n(n-1))
    s = 0.0
    for n in range(14, 1, -1):
        s = s * u + (-1) ** n / (n * (n - 1))
    return s * u * u


def _l_minus_sinh_series(v: float):
    """v - sinh v = -sum_{n>=1} v^(2n+1)/(2n+1)!, with a bound on the tail."""
    v2 = v * v
    term = v
    s = 0.0
    for n in range(1, 9):
        term *= v2 / ((2 * n) * (2 * n + 1))
        s += term
    nxt = abs(term) * v2 / (18 * 19)
    return -s, 2.0 * nxt


def _kuang_series(w: float):
    """2 sum_{n>=2} (1/3 - 1/(2n+1)) w^(2n+1), with a bound on the tail."""
    w2 = w * w
    p = w * w2
    s = 0.0
    n_terms = 34
    for n in range(2, n_terms):
        p *= w2
        s += (1.0 / 3.0 - 1.0 / (2 * n + 1)) * p
    tail = (2.0 / 3.0) * p * w2 / (1.0 - w2)
    return 2.0 * s, tail


class FloatOps:
    """Double-precision context."""

    name = "float"

    @staticmethod
    def lift(v):
        return float(v)

    log = staticmethod(math.log)
    log1p = staticmethod(math.log1p)
    exp = staticmethod(math.exp)
    sqrt = staticmethod(math.sqrt)
    lgamma = staticmethod(sf.lgamma)
    digamma = staticmethod(sf.digamma)
    digamma_minus_log = staticmethod(sf.digamma_minus_log)
    lgamma1p_diff = staticmethod(sf.lgamma1p_diff)
    euler_gamma = sf.EULER_GAMMA
    exp_neg_gamma = EXP_NEG_GAMMA

    @staticmethod
    def psi_n(n, x):
        return sf.psi_n(n, x)

    @staticmethod
    def digamma1p(x):
        return sf.digamma(1.0 + x)

    @staticmethod
    def gen_log_mean(p, a, b):
        return means.gen_log_mean(p, a, b)

    @staticmethod
    def xlog1p_excess(u):
        """(1+u) ln(1+u) - u."""
        if abs(u) < _XLOG_SERIES:
            return _xlog1p_excess_series(u)
        return (1.0 + u) * math.log1p(u) - u

    @staticmethod
    def l_minus_sinh(v):
        """v - sinh(v)."""
        if abs(v) < _SINH_SERIES:
            return _l_minus_sinh_series(v)[0]
        return v - math.sinh(v)

    @staticmethod
    def kuang_gap(x):
        """2/(2x+1) [1 + 1/(12x) - 1/(12(x+1))] - ln(1 + 1/x)."""
        w = 1.0 / (2.0 * x + 1.0)
        if w <= _KUANG_SERIES_W:
            return _kuang_series(w)[0]
        return 2.0 * w * (1.0 + 1.0 / (12.0 * x) - 1.0 / (12.0 * (x + 1.0))) - math.log1p(1.0 / x)

    @staticmethod
    def integral_mean(i, s, t):
        """(1/(t-s)) * integral of psi^(i) over [s, t]."""
        d = t - s
        m = 0.5 * (s + t)
        h = 0.5 * abs(d)
        if h <= _MEAN_SERIES * m:
            # mean = sum_j f^(2j)(m) h^(2j) / (2j+1)!
            h2 = h * h
            return (sf.psi_n(i, m) + h2 / 6.0 * sf.psi_n(i + 2, m)
                    + h2 * h2 / 120.0 * sf.psi_n(i + 4, m)
                    + h2 ** 3 / 5040.0 * sf.psi_n(i + 6, m))
        if i == 0:
            return (sf.lgamma(t) - sf.lgamma(s)) / d
        return (sf.psi_n(i - 1, t) - sf.psi_n(i - 1, s)) / d


class CertOps:
    """Enclosure context: every value is an interval bracketing the exact one."""

    name = "certified"

    @staticmethod
    def lift(v):
        return E.lift(v)

    log = staticmethod(E.log)
    log1p = staticmethod(E.log1p)
    exp = staticmethod(E.exp)
    sqrt = staticmethod(E.sqrt)
    lgamma = staticmethod(sf.lgamma_enclosure)
    digamma = staticmethod(sf.digamma_enclosure)
    digamma_minus_log = staticmethod(sf.digamma_minus_log_enclosure)
    euler_gamma = E.constant(sf.EULER_GAMMA)
    exp_neg_gamma = E.exp(E.constant(-sf.EULER_GAMMA))

    @staticmethod
    def psi_n(n, x):
        return sf.psi_n_enclosure(n, x)

    @staticmethod
    def digamma1p(x):
        return sf.digamma_enclosure(1.0 + E.lift(x))

    @staticmethod
    def lgamma1p_diff(a, b, d=None):
        a, b = E.lift(a), E.lift(b)
        direct = sf.lgamma_enclosure(1.0 + a) - sf.lgamma_enclosure(1.0 + b)
        # mean value theorem with psi increasing
        span = 1.0 + a.hull(b)
        d = a - b if d is None else E.lift(d).intersect(a - b)
        mvt = d * sf.digamma_enclosure(span)
        return direct.intersect(mvt)

    @staticmethod
    def gen_log_mean(p, a, b):
        if isinstance(a, Enclosure) or isinstance(b, Enclosure):
            a, b = E.lift(a), E.lift(b)
            if a.lo == a.hi and b.lo == b.hi:
                return means.gen_log_mean_enclosure(p, a.lo, b.lo)
            # a mean of points in [a] and [b] lies in their hull
            return a.hull(b)
        return means.gen_log_mean_enclosure(p, a, b)

    @staticmethod
    def xlog1p_excess(u):
        u = E.lift(u)
        return (1.0 + u) * E.log1p(u) - u

    @staticmethod
    def l_minus_sinh(v):
        v = E.lift(v)
        if 0.0 <= v.lo and v.hi <= 1.0:
            # v - sinh v is decreasing
            s_hi, r_hi = _l_minus_sinh_series(v.hi)
            s_lo, r_lo = _l_minus_sinh_series(v.lo)
            mag = max(abs(v.hi) ** 3, 1e-300)
            return Enclosure(E.down(s_hi - r_hi - 40 * math.ulp(mag)),
                             E.up(s_lo + r_lo + 40 * math.ulp(mag)))
        return v - E.sinh(v)

    @staticmethod
    def kuang_gap(x):
        x = E.lift(x)
        w = 1.0 / (2.0 * x + 1.0)
        if w.hi <= _KUANG_SERIES_W:
            # all terms positive and increasing in w
            s_lo, _ = _kuang_series(w.lo)
            s_hi, tail = _kuang_series(w.hi)
            slack = 40 * 4 * math.ulp(s_hi)
            return Enclosure(max(0.0, E.down(s_lo - slack)), E.up(s_hi + tail + slack))
        return 2.0 * w * (1.0 + 1.0 / (12.0 * x) - 1.0 / (12.0 * (x + 1.0))) - E.log1p(1.0 / x)

    @staticmethod
    def integral_mean(i, s, t):
        S, T = E.lift(s), E.lift(t)
        if i == 0:
            diff = sf.lgamma_enclosure(T) - sf.lgamma_enclosure(S)
        else:
            diff = sf.psi_n_enclosure(i - 1, T) - sf.psi_n_enclosure(i - 1, S)
        direct = diff / (T - S)
        # psi^(i) is monotone, so its mean lies between the endpoint values
        ends = sf.psi_n_enclosure(i, S).hull(sf.psi_n_enclosure(i, T))
        return direct.intersect(ends)


FLOAT = FloatOps()
CERT = CertOps()


def get_ops(mode: str):
    if mode in ("float", FLOAT.name):
        return FLOAT
    if mode in ("certified", "cert"):
        return CERT
    raise ValueError(f"unknown mode {mode!r}; expected 'float' or 'certified'")
