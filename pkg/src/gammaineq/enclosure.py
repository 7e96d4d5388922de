"""Closed intervals used as certified value carriers.

Arithmetic rounds outward by a fixed slack of ``SLACK_ULPS`` units in the last
place per operation.  That is a stated slack policy rather than true directed
rounding: IEEE-754 basic operations are correctly rounded (error <= 0.5 ulp) and
libm transcendentals are accurate to about 1 ulp, so 4 ulp per stage is
conservative for both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import DomainError

SLACK_ULPS = 4


def down(v: float, ulps: int = SLACK_ULPS) -> float:
    if math.isinf(v):
        return v
    return v - ulps * math.ulp(v)


def up(v: float, ulps: int = SLACK_ULPS) -> float:
    if math.isinf(v):
        return v
    return v + ulps * math.ulp(v)


@dataclass(frozen=True)
class Enclosure:
    """A closed interval ``[lo, hi]`` claimed to contain a real value.

    ``wide`` marks enclosures produced outside the regime where the width
    target is met (for instance digamma near zero).
    """

    lo: float
    hi: float
    wide: bool = False

    def __post_init__(self):
        if not (self.lo <= self.hi):
            raise ValueError(f"invalid enclosure [{self.lo!r}, {self.hi!r}]")

    @classmethod
    def point(cls, v: float) -> "Enclosure":
        return cls(float(v), float(v))

    @classmethod
    def around(cls, v: float, err: float, wide: bool = False) -> "Enclosure":
        return cls(down(v - err), up(v + err), wide)

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, v) -> bool:
        return self.lo <= v <= self.hi

    def contains(self, other: "Enclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def hull(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(min(self.lo, other.lo), max(self.hi, other.hi),
                         self.wide or other.wide)

    def intersect(self, other: "Enclosure") -> "Enclosure":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            # Two valid enclosures of one value cannot be disjoint.
            raise ArithmeticError(f"disjoint enclosures {self} and {other}")
        return Enclosure(lo, hi, self.wide and other.wide)

    # arithmetic ---------------------------------------------------------

    def _flag(self, other) -> bool:
        return self.wide or getattr(other, "wide", False)

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo, self.wide)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        return Enclosure(down(self.lo + o.lo), up(self.hi + o.hi), self._flag(o))

    __radd__ = __add__

    def __sub__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        return Enclosure(down(self.lo - o.hi), up(self.hi - o.lo), self._flag(o))

    def __rsub__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Enclosure(down(min(prods)), up(max(prods)), self._flag(o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        if o.lo <= 0.0 <= o.hi:
            raise ZeroDivisionError(f"division by enclosure containing zero: {o}")
        quots = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return Enclosure(down(min(quots)), up(max(quots)), self._flag(o))

    def __rtruediv__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise TypeError("only non-negative integer powers are supported")
        if n == 0:
            return Enclosure.point(1.0)
        lo, hi = self.lo, self.hi
        if n % 2 == 0 and lo < 0.0 < hi:
            top = max(-lo, hi) ** n
            return Enclosure(0.0, up(top, SLACK_ULPS * n), self.wide)
        a, b = lo ** n, hi ** n
        return Enclosure(down(min(a, b), SLACK_ULPS * n),
                         up(max(a, b), SLACK_ULPS * n), self.wide)

    def __repr__(self):
        flag = ", wide" if self.wide else ""
        return f"Enclosure({self.lo!r}, {self.hi!r}{flag})"


Number = Union[int, float]


def _lift(v):
    if isinstance(v, Enclosure):
        return v
    if isinstance(v, (int, float)):
        return Enclosure.point(float(v))
    return NotImplemented


def lift(v) -> Enclosure:
    out = _lift(v)
    if out is NotImplemented:
        raise TypeError(f"cannot lift {type(v).__name__} to an enclosure")
    return out


# monotone elementary functions ------------------------------------------

def log(x) -> Enclosure:
    x = lift(x)
    if x.lo <= 0.0:
        raise DomainError(f"log of enclosure reaching {x.lo!r}")
    return Enclosure(down(math.log(x.lo)), up(math.log(x.hi)), x.wide)


def log1p(x) -> Enclosure:
    x = lift(x)
    if x.lo <= -1.0:
        raise DomainError(f"log1p of enclosure reaching {x.lo!r}")
    return Enclosure(down(math.log1p(x.lo)), up(math.log1p(x.hi)), x.wide)


def exp(x) -> Enclosure:
    x = lift(x)
    return Enclosure(max(0.0, down(math.exp(x.lo))), up(math.exp(x.hi)), x.wide)


def sqrt(x) -> Enclosure:
    x = lift(x)
    if x.lo < 0.0:
        raise DomainError(f"sqrt of enclosure reaching {x.lo!r}")
    return Enclosure(max(0.0, down(math.sqrt(x.lo))), up(math.sqrt(x.hi)), x.wide)


def sinh(x) -> Enclosure:
    x = lift(x)
    return Enclosure(down(math.sinh(x.lo)), up(math.sinh(x.hi)), x.wide)


def constant(v: float) -> Enclosure:
    """Enclose an irrational constant given as its nearest double."""
    return Enclosure(math.nextafter(v, -math.inf), math.nextafter(v, math.inf))
