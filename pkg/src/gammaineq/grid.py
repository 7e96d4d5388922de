"""Sampling axes for margin scans."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

LAWS = ("lin", "log", "offset", "int")
ENDPOINT_OFFSETS = (1e-6, 1e-4, 1e-3)


@dataclass(frozen=True)
class Axis:
    """One scan variable.

    ``lin`` and ``log`` sample the closed range [lo, hi].  ``offset`` treats
    (lo, hi) as open: a linear grid on [lo + 1e-3, hi - 1e-3] plus the points
    lo + {1e-6, 1e-4} and hi - {1e-4, 1e-6}.  ``int`` enumerates the integers
    in [lo, hi] and ignores ``samples``.

    ``anchor`` names a point-dependent origin (for example the left end of the
    x range in the two-variable theorem); grid values are then offsets from it.
    """

    name: str
    lo: float
    hi: float
    law: str = "lin"
    samples: int = 100
    anchor: Optional[str] = None

    def __post_init__(self):
        if self.law not in LAWS:
            raise ValueError(f"unknown grid law {self.law!r}; expected one of {LAWS}")
        if not self.lo < self.hi and not (self.law == "int" and self.lo == self.hi):
            raise ValueError(f"empty range for {self.name}: [{self.lo}, {self.hi}]")
        if self.law != "int" and self.samples < 2:
            raise ValueError(f"{self.name}: need at least 2 samples, got {self.samples}")
        if self.law == "log" and self.lo <= 0:
            raise ValueError(f"{self.name}: log grid needs positive endpoints")
        if self.law == "offset" and self.hi - self.lo <= 2 * ENDPOINT_OFFSETS[-1]:
            raise ValueError(f"{self.name}: range too narrow for endpoint offsets")

    def values(self) -> list[float]:
        if self.law == "int":
            return [int(v) for v in range(int(self.lo), int(self.hi) + 1)]
        if self.law == "lin":
            pts = np.linspace(self.lo, self.hi, self.samples)
        elif self.law == "log":
            pts = np.geomspace(self.lo, self.hi, self.samples)
        else:
            inner = np.linspace(self.lo + ENDPOINT_OFFSETS[-1],
                                self.hi - ENDPOINT_OFFSETS[-1], self.samples)
            left = [self.lo + d for d in ENDPOINT_OFFSETS[:-1]]
            right = [self.hi - d for d in reversed(ENDPOINT_OFFSETS[:-1])]
            pts = np.concatenate([left, inner, right])
        return [float(v) for v in pts]

    def with_(self, **changes) -> "Axis":
        return replace(self, **changes)


def parse_region(text: str, name: str, default_law: str = "lin") -> Axis:
    """Parse ``lo:hi[:law]``; a bare number gives a one-point axis."""
    parts = text.split(":")
    if len(parts) not in (1, 2, 3):
        raise ValueError(f"bad region {text!r}; expected lo:hi[:lin|log]")
    law = parts[2] if len(parts) == 3 else default_law
    conv = _integer if law == "int" else float
    if len(parts) == 1:
        return FixedAxis(name, conv(parts[0]))
    return Axis(name, conv(parts[0]), conv(parts[1]), law)


def _integer(text: str) -> int:
    v = float(text)
    if not v.is_integer():
        raise ValueError(f"expected an integer, got {text!r}")
    return int(v)


@dataclass(frozen=True)
class FixedAxis:
    """A single value, used for slices such as plot data at fixed y."""

    name: str
    value: float
    anchor: Optional[str] = None
    law: str = "fixed"

    @property
    def samples(self) -> int:
        return 1

    def values(self) -> list[float]:
        return [self.value]

    def with_(self, **changes):
        changes.pop("samples", None)
        return replace(self, **changes)
