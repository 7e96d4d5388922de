"""Elementary sandwich bounds for psi, the polygammas and ln(1 + 1/x).

Each pair is registered data: a stable id, closed-form lower/upper functions,
a domain and a formula string.  Margin terms for the catalog are built from
the same constants, with the 1/x and k!/x^(k+1) singularities cancelled
analytically so margins stay accurate down to x -> 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

from .context import EXP_NEG_GAMMA, FLOAT
from .errors import DomainError, UnknownIdError
from .specfun import _check_k, _check_x


@dataclass(frozen=True)
class LogShift:
    """ln(x + c) - 1/x"""

    c: float
    # name of an exact constant on the context, used instead of the rounded c
    exact: Optional[str] = None

    def value(self, x):
        return math.log(x + self.c) - 1.0 / x

    def gap_terms(self, x, F):
        # psi(x) - [ln(x + c) - 1/x]
        c = getattr(F, self.exact) if self.exact else self.c
        X = F.lift(x)
        if x >= 1.0:
            return [F.digamma_minus_log(X), -F.log1p(c / X), 1.0 / X]
        return [F.digamma1p(X), -F.log(X + c)]

    def text(self):
        return f"ln(x + {self.c:.6g}) - 1/x"


@dataclass(frozen=True)
class LogPoly:
    """ln x - a/x - 1/(q x^2); q = None drops the last term"""

    a: float
    q: Optional[float] = None

    def value(self, x):
        v = math.log(x) - self.a / x
        return v - 1.0 / (self.q * x * x) if self.q else v

    def gap_terms(self, x, F):
        X = F.lift(x)
        if x >= 1.0:
            terms = [F.digamma_minus_log(X), self.a / X]
        else:
            terms = [F.digamma1p(X), -F.log(X), (self.a - 1.0) / X]
        if self.q:
            terms.append(1.0 / (self.q * (X * X)))
        return terms

    def text(self):
        s = f"ln x - {self.a:.6g}/x"
        return s + (f" - 1/({self.q:.6g} x^2)" if self.q else "")


@dataclass(frozen=True)
class PolyShape:
    """(k-1)!/(x + c)^k + w k!/x^(k+1), bounding (-1)^(k+1) psi^(k)(x)."""

    c: float
    w: float

    def value(self, k, x):
        return math.factorial(k - 1) / (x + self.c) ** k + self.w * math.factorial(k) / x ** (k + 1)

    def gap_terms(self, k, x, F):
        # (-1)^(k+1) psi^(k)(x) = (-1)^(k+1) psi^(k)(1+x) + k!/x^(k+1)
        X = F.lift(x)
        sign = 1.0 if k % 2 == 1 else -1.0
        g1 = sign * F.psi_n(k, 1.0 + X)
        return [g1, (1.0 - self.w) * math.factorial(k) / X ** (k + 1),
                -math.factorial(k - 1) / (X + self.c) ** k]

    def text(self):
        c = "x" if self.c == 0 else f"(x + {self.c:.6g})"
        w = "" if self.w == 1 else f"{self.w:.6g} "
        return f"(k-1)!/{c}^k + {w}k!/x^(k+1)"


@dataclass(frozen=True)
class BoundPair:
    id: str
    target: str
    lower: Optional[object]
    upper: Optional[object]
    domain: str
    formula: str
    arity: int = 1
    meta: dict = field(default_factory=dict, compare=False)

    def evaluate(self, *args):
        lo = self.lower.value(*args) if self.lower is not None else None
        hi = self.upper.value(*args) if self.upper is not None else None
        return lo, hi

    def with_constants(self, lower=None, upper=None) -> "BoundPair":
        """Copy with perturbed side shapes (used for sharpness probes and fixtures)."""
        return replace(self, lower=lower or self.lower, upper=upper or self.upper)


class KuangUpper:
    """2/(2x+1) [1 + 1/(12x) - 1/(12(x+1))], an upper bound for ln(1 + 1/x)."""

    def value(self, x):
        return log_upper_kuang(x)

    def gap_terms(self, x, F):
        return [F.kuang_gap(F.lift(x))]

    def text(self):
        return "2/(2x+1) [1 + 1/(12x) - 1/(12(x+1))]"


def log_upper_kuang(x: float) -> float:
    x = _check_x(x)
    return 2.0 / (2.0 * x + 1.0) * (1.0 + 1.0 / (12.0 * x) - 1.0 / (12.0 * (x + 1.0)))


def log_upper_kuang_substituted(t: float) -> float:
    """The same bound written for ln(1 + t): t(t^2 + 12t + 12)/(6(t+1)(t+2))."""
    t = _check_x(t)
    return t * (t * t + 12.0 * t + 12.0) / (6.0 * (t + 1.0) * (t + 2.0))


def kuang_gap(x: float) -> float:
    """log_upper_kuang(x) - ln(1 + 1/x), accurate for large x."""
    return FLOAT.kuang_gap(_check_x(x))


def _pairs():
    psi = "psi(x)"
    poly = "(-1)^(k+1) psi^(k)(x)"
    pairs = [
        BoundPair("PSI-QICUI", psi, LogPoly(0.5, 12.0), LogPoly(0.5), "x > 0",
                  "ln x - 1/(2x) - 1/(12x^2) < psi(x) < ln x - 1/(2x)"),
        BoundPair("PSI-BETA", psi, LogShift(0.5), LogShift(1.0), "x > 0",
                  "ln(x + 1/2) - 1/x < psi(x) < ln(x + 1) - 1/x"),
        BoundPair("PSI-LN", psi, LogPoly(1.0), LogPoly(0.5), "x > 0",
                  "ln x - 1/x < psi(x) < ln x - 1/(2x)"),
        BoundPair("PSI-SHARP", psi, LogShift(0.5), LogShift(EXP_NEG_GAMMA, "exp_neg_gamma"), "x > 0",
                  "ln(x + 1/2) - 1/x < psi(x) < ln(x + e^-gamma) - 1/x"),
        BoundPair("POLY-BETA", poly, PolyShape(1.0, 1.0), PolyShape(0.5, 1.0),
                  "k >= 1 integer, x > 0",
                  "(k-1)!/(x+1)^k + k!/x^(k+1) < (-1)^(k+1) psi^(k)(x) "
                  "< (k-1)!/(x+1/2)^k + k!/x^(k+1)", arity=2),
        BoundPair("POLY-HALF", poly, PolyShape(0.0, 0.5), PolyShape(0.0, 1.0),
                  "k >= 1 integer, x > 0",
                  "(k-1)!/x^k + k!/(2x^(k+1)) < (-1)^(k+1) psi^(k)(x) "
                  "< (k-1)!/x^k + k!/x^(k+1)", arity=2),
        BoundPair("LOG-KUANG", "ln(1 + 1/x)", None, KuangUpper(), "x > 0",
                  "ln(1 + 1/x) < 2/(2x+1) [1 + 1/(12x) - 1/(12(x+1))]"),
    ]
    return {p.id: p for p in pairs}


BOUND_PAIRS: dict[str, BoundPair] = _pairs()

_PSI_IDS = {"QICUI", "BETA", "LN", "SHARP"}
_POLY_IDS = {"BETA", "HALF"}


def get_pair(bound_id: str) -> BoundPair:
    try:
        return BOUND_PAIRS[bound_id]
    except KeyError:
        raise UnknownIdError(f"unknown bound id {bound_id!r}") from None


def psi_bounds(bound_id: str, x: float) -> tuple[float, float]:
    """(lower, upper) closed forms bracketing psi(x).

    ``bound_id`` is one of QICUI, BETA, LN, SHARP (the ``PSI-`` prefix is optional).
    """
    key = bound_id.upper().removeprefix("PSI-")
    if key not in _PSI_IDS:
        raise UnknownIdError(f"unknown psi bound id {bound_id!r}")
    x = _check_x(x)
    return get_pair("PSI-" + key).evaluate(x)


def polygamma_bounds(bound_id: str, k: int, x: float) -> tuple[float, float]:
    """(lower, upper) for the signed quantity (-1)^(k+1) psi^(k)(x)."""
    key = bound_id.upper().removeprefix("POLY-")
    if key not in _POLY_IDS:
        raise UnknownIdError(f"unknown polygamma bound id {bound_id!r}")
    k = _check_k(k)
    x = _check_x(x)
    return get_pair("POLY-" + key).evaluate(k, x)


def qicui_original(x: float) -> tuple[float, float]:
    """Bounds for psi(x+1) - ln x: (1/(2x) - 1/(12x^2), 1/(2x))."""
    x = _check_x(x)
    return 0.5 / x - 1.0 / (12.0 * x * x), 0.5 / x


def gap_terms(pair: BoundPair, side: str, args: tuple, F) -> list:
    """Terms whose sum is the margin of one side of ``pair`` at ``args``.

    The lower side margin is target - lower, the upper side margin is
    upper - target; both are positive where the bound holds.
    """
    shape = pair.lower if side == "lower" else pair.upper
    if shape is None:
        raise DomainError(f"{pair.id} has no {side} side")
    if isinstance(shape, KuangUpper):
        return shape.gap_terms(*args, F)
    terms = shape.gap_terms(*args, F)
    if side == "upper":
        terms = [-v for v in terms]
    return terms


def sides(pair: BoundPair) -> list[str]:
    return [s for s in ("lower", "upper") if getattr(pair, s) is not None]


__all__ = [
    "BoundPair", "BOUND_PAIRS", "get_pair", "psi_bounds", "polygamma_bounds",
    "log_upper_kuang", "log_upper_kuang_substituted", "kuang_gap", "qicui_original",
    "gap_terms", "sides", "LogShift", "LogPoly", "PolyShape", "KuangUpper",
]
