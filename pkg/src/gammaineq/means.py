"""Logarithmic mean and the generalized logarithmic mean L_p.

    L_p(a, b) = [(b^(p+1) - a^(p+1)) / ((p+1)(b-a))]^(1/p)    p != -1, 0
    L_-1(a, b) = (b - a) / (ln b - ln a)                       logarithmic mean
    L_0(a, b)  = (1/e) (b^b / a^a)^(1/(b-a))                   identric mean

All branches are evaluated relative to the larger argument so that nothing
overflows for large |p| and nothing cancels when a and b are close.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import enclosure as E
from .enclosure import Enclosure
from .errors import DomainError

NEAR_EQUAL = 1e-8
NEAR_BRANCH = 1e-6


@dataclass(frozen=True)
class GenLogMeanParams:
    p: float
    a: float
    b: float

    def __post_init__(self):
        _check_pair(self.a, self.b)


def _check_pair(a, b):
    for v in (a, b):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise TypeError(f"expected a real number, got {type(v).__name__}")
        if not math.isfinite(v) or v <= 0.0:
            raise DomainError(f"means need positive finite arguments, got {v!r}")


def log_mean(a: float, b: float) -> float:
    """(b - a)/(ln b - ln a), with the limit a at a = b."""
    return gen_log_mean(-1.0, a, b)


def identric_mean(a: float, b: float) -> float:
    return gen_log_mean(0.0, a, b)


def gen_log_mean(p, a: float | None = None, b: float | None = None) -> float:
    """L_p(a, b).  Accepts either ``(p, a, b)`` or a :class:`GenLogMeanParams`."""
    if isinstance(p, GenLogMeanParams):
        p, a, b = p.p, p.a, p.b
    _check_pair(a, b)
    p = float(p)
    lo, hi = (float(a), float(b)) if a <= b else (float(b), float(a))
    d = hi - lo
    if d <= NEAR_EQUAL * hi:
        return 0.5 * (lo + hi)
    if abs(p + 1.0) <= NEAR_BRANCH:
        return d / math.log1p(d / lo)
    if abs(p) <= NEAR_BRANCH:
        # (b ln b - a ln a)/(b - a) = ln a + (b/d) log1p(d/a)
        return lo * math.exp((hi / d) * math.log1p(d / lo) - 1.0)
    if abs(p) <= 0.5:
        return hi * math.exp(_log_bracket_small_p(p, lo / hi, d / hi) / p)
    m = p + 1.0
    # ln(a/b) < 0; log1p only where a/b is near 1, else 1 - d/b loses digits
    rho = math.log1p(-d / hi) if lo >= 0.5 * hi else math.log(lo / hi)
    y = m * rho
    # L = b * [b (-expm1(m rho)) / (m d)]^(1/p)
    if y > 700.0:
        log_num = y + math.log(-math.expm1(-y)) - math.log(-m)
    else:
        log_num = math.log(-math.expm1(y) / m)
    log_bracket = math.log(hi) + log_num - math.log(d)
    return hi * math.exp(log_bracket / p)


def _log_bracket_small_p(p, r, one_minus_r):
    """ln[(1 - r^(p+1)) / ((p+1)(1 - r))] for 0 < r < 1 and small |p|.

    Written as log1p(X) - log1p(p) with X = -r expm1(p ln r)/(1 - r); both
    parts are O(p) with O(p eps) rounding, so dividing by p stays accurate.
    """
    x = -r * math.expm1(p * math.log(r)) / one_minus_r
    return math.log1p(x) - math.log1p(p)


def gen_log_mean_enclosure(p: float, a: float, b: float) -> Enclosure:
    """Enclosure of L_p(a, b) for exact (double) inputs.

    Always intersected with [min(a,b), max(a,b)], which holds for every mean.
    Branch formulas are used only when p is exactly -1 or 0.
    """
    _check_pair(a, b)
    lo, hi = (float(a), float(b)) if a <= b else (float(b), float(a))
    span = Enclosure(lo, hi)
    d = hi - lo
    if d == 0.0:
        return Enclosure.point(lo)
    if d <= NEAR_EQUAL * hi:
        return span
    D = E.lift(hi) - lo
    try:
        if p == -1.0:
            val = D / E.log1p(D / lo)
        elif p == 0.0:
            val = lo * E.exp((hi / D) * E.log1p(D / lo) - 1.0)
        else:
            m = p + 1.0
            rho = E.log1p(-(D / hi)) if lo >= 0.5 * hi else E.log(E.lift(lo) / hi)
            y = m * rho
            if y.hi > 700.0:
                return span
            num = -_expm1(y) / m
            bracket = (hi * num) / D
            val = hi * E.exp(E.log(bracket) / p)
    except (ZeroDivisionError, DomainError):
        return span
    return Enclosure(max(val.lo, lo), min(val.hi, hi))


def _expm1(x: Enclosure) -> Enclosure:
    return Enclosure(E.down(math.expm1(x.lo)), E.up(math.expm1(x.hi)))
