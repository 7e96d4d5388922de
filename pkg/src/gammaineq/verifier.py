"""Scan engine: evaluate margins on grids, escalate suspicious points, report.

A scan walks a tensor grid in a fixed order, evaluates every component margin
of a catalog record, and keeps the minimum.  In float mode a point whose margin
falls below the noise band -1e-12 * scale is re-evaluated with enclosures: it
is *cleared* when the enclosure proves the margin has the right sign, a
*persistent* violation when the enclosure lies entirely on the wrong side, and
*inconclusive* otherwise.  Persistent and inconclusive points are violations.

Work can be spread over processes (``GAMMAINEQ_WORKERS``); chunks are merged in
sample order so the report does not depend on the worker count.
"""

from __future__ import annotations

import json
import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

from . import bounds as B
from . import catalog
from .catalog import InequalityRecord, NOISE_REL
from .context import EXP_NEG_GAMMA
from .errors import DomainError, PreconditionError, RegionError, UnknownIdError
from .grid import Axis, FixedAxis

log = logging.getLogger(__name__)

REFINE_ITERS = 200
REFINE_REL = 1e-10
PARALLEL_MIN_POINTS = 4000
_EVAL_ERRORS = (ArithmeticError, DomainError, ValueError)


@dataclass(frozen=True)
class ScanConfig:
    """What to scan and how.

    ``region`` maps variable names to replacement axes; an override of an
    anchored variable (x in the two-variable theorem) is taken as absolute.
    ``samples`` sets the count of every non-integer axis, ``axis_samples``
    overrides single axes.  ``record`` scans an ad-hoc record instead of a
    catalog entry (always in-process).
    """

    ineq_id: str
    region: dict = field(default_factory=dict)
    samples: Optional[int] = None
    axis_samples: dict = field(default_factory=dict)
    mode: str = "float"
    refine: bool = False
    params: dict = field(default_factory=dict)
    workers: Optional[int] = None
    monotonicity: Optional[bool] = None
    keep_rows: bool = False
    record: Optional[InequalityRecord] = None

    def __post_init__(self):
        if self.mode not in ("float", "certified"):
            raise ValueError(f"mode must be 'float' or 'certified', got {self.mode!r}")
        if self.samples is not None and self.samples < 2:
            raise RegionError(f"need at least 2 samples, got {self.samples}")
        for name, n in self.axis_samples.items():
            if n < 2:
                raise RegionError(f"{name}: need at least 2 samples, got {n}")


@dataclass
class MonotoneVerdict:
    """Discrete monotonicity of q_xy(., y) on a grid of x values."""

    y: float
    x_lo: float
    x_hi: float
    samples: int
    decreasing: bool
    worst_step: float
    worst_x: float
    in_theorem_region: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class VerificationReport:
    ineq_id: str
    mode: str
    params: dict
    samples: int
    min_margin: float
    argmin: dict
    components: dict
    violations: list
    cleared: list
    nonfinite: list
    monotonicity: Optional[list] = None
    refined: Optional[dict] = None
    wall_time_ms: Optional[float] = None
    rows: Optional[list] = field(default=None, repr=False)
    variables: tuple = ()

    @property
    def ok(self) -> bool:
        mono_ok = all(v["decreasing"] for v in self.monotonicity or [])
        return not self.violations and not self.nonfinite and mono_ok

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "ineq_id": self.ineq_id,
            "mode": self.mode,
            "params": {k: v for k, v in self.params.items() if v is not None},
            "samples": self.samples,
            "min_margin": _num(self.min_margin),
            "argmin": self.argmin,
            "components": self.components,
            "violations": self.violations,
            "cleared": self.cleared,
            "nonfinite": self.nonfinite,
            "monotonicity": self.monotonicity,
            "refined": self.refined,
            "ok": self.ok,
        }
        if timing:
            out["wall_time_ms"] = self.wall_time_ms
        return out

    def to_json(self, timing: bool = False, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(timing), indent=indent)

    def to_csv(self) -> str:
        """Rows ``point_1[,point_2,...],margin`` (requires ``keep_rows``)."""
        if self.rows is None:
            raise ValueError("scan was run without keep_rows")
        return rows_to_csv(self.rows, len(self.variables))


def rows_to_csv(rows, dims: int) -> str:
    head = ",".join(f"point_{i + 1}" for i in range(dims)) + ",margin"
    lines = [head]
    for point, margin in rows:
        lines.append(",".join(repr(float(v)) for v in point) + "," + repr(float(margin)))
    return "\n".join(lines) + "\n"


def _num(v):
    if v is None or math.isfinite(v):
        return v
    return repr(v)


# grid construction -------------------------------------------------------------------

def resolve_record(config: ScanConfig) -> InequalityRecord:
    return config.record if config.record is not None else catalog.get(config.ineq_id)


def resolve_axes(record: InequalityRecord, config: ScanConfig) -> list:
    unknown = set(config.region) | set(config.axis_samples)
    unknown -= set(record.variables)
    if unknown:
        raise RegionError(f"{record.id} has no variable(s) {sorted(unknown)}; "
                          f"variables are {list(record.variables)}")
    axes = []
    for ax in record.axes:
        if ax.name in config.region:
            new = config.region[ax.name]
            new = new.with_(name=ax.name, anchor=None)
        else:
            new = ax
        n = config.axis_samples.get(ax.name, config.samples)
        if n is not None and isinstance(new, Axis) and new.law != "int":
            new = new.with_(samples=n)
        axes.append(new)
    return axes


def grid_points(record: InequalityRecord, axes: Sequence) -> tuple[list, list]:
    """Coordinates (in axis order) and the matching record points, outer axis first."""
    coords, points = [], []
    for combo in product(*(ax.values() for ax in axes)):
        c = {ax.name: v for ax, v in zip(axes, combo)}
        coords.append(combo)
        try:
            points.append(record.point_from(c, axes))
        except DomainError as exc:
            # anchored axes need the anchor variable inside its own range
            raise RegionError(f"{record.id}: region leaves the domain ({record.domain_text}) "
                              f"at {c}: {exc}") from None
    return coords, points


def _check_region(record, points, params):
    for p in points:
        if not record.check_point(p, params):
            try:
                record.in_domain(p, {**record.params, **params})
            except PreconditionError as exc:
                # name the violated hypothesis rather than the generic domain
                raise RegionError(f"{record.id} at {dict(zip(record.variables, p))}: {exc}") from None
            except (DomainError, ValueError, ZeroDivisionError):
                pass
            raise RegionError(f"{record.id}: region leaves the domain ({record.domain_text}) "
                              f"at {dict(zip(record.variables, p))}")


# evaluation --------------------------------------------------------------------------

def _eval_point(record, point, mode, params):
    try:
        res = record.evaluate(point, mode, params)
    except _EVAL_ERRORS as exc:
        return f"{type(exc).__name__}: {exc}"
    if mode == "float":
        return res
    return {c: (e.lo, e.hi) for c, e in res.items()}


def _eval_chunk(ineq_id, mode, params, points):
    record = catalog.get(ineq_id)
    return [_eval_point(record, p, mode, params) for p in points]


def worker_count(requested: Optional[int] = None) -> int:
    if requested is not None:
        n = requested
    else:
        env = os.environ.get("GAMMAINEQ_WORKERS")
        if env is None or env == "":
            n = os.cpu_count() or 1
        else:
            try:
                n = int(env)
            except ValueError:
                raise ValueError(f"GAMMAINEQ_WORKERS must be an integer, got {env!r}") from None
    return max(1, int(n))


def _evaluate_all(record, points, mode, params, workers, in_catalog):
    if workers <= 1 or not in_catalog or len(points) < PARALLEL_MIN_POINTS:
        return [_eval_point(record, p, mode, params) for p in points]
    n_chunks = workers * 4
    size = -(-len(points) // n_chunks)
    chunks = [points[i:i + size] for i in range(0, len(points), size)]
    out = []
    with ProcessPoolExecutor(max_workers=workers) as ex:
        futures = [ex.submit(_eval_chunk, record.id, mode, params, c) for c in chunks]
        # merge strictly in chunk order
        for fut in futures:
            out.extend(fut.result())
    return out


def _noise(scale):
    return -NOISE_REL * scale


def _certify(record, point, comp, params):
    """Enclosure of one component margin at ``point`` and its classification."""
    try:
        enc = record.evaluate(point, "certified", params)[comp]
    except _EVAL_ERRORS as exc:
        return {"lo": None, "hi": None, "status": "inconclusive", "error": str(exc)}
    return {"lo": enc.lo, "hi": enc.hi, "status": classify(enc.lo, enc.hi, record.strict)}


def classify(lo: float, hi: float, strict: bool) -> str:
    """cleared / persistent / inconclusive for a margin enclosure [lo, hi]."""
    if lo > 0 or (not strict and lo >= 0):
        return "cleared"
    if hi <= 0 if strict else hi < 0:
        return "persistent"
    return "inconclusive"


# refinement --------------------------------------------------------------------------

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(f, a: float, b: float, rel: float = REFINE_REL,
                   max_iter: int = REFINE_ITERS) -> tuple[float, float, int]:
    """Minimize ``f`` on [a, b] by golden-section search; (x, f(x), iterations).

    The search never leaves [a, b], which matters when b sits on a domain edge.
    """
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while it < max_iter and (b - a) > rel * max(abs(a), abs(b), 1e-300):
        it += 1
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (c, fc, it) if fc <= fd else (d, fd, it)


def _refine(record, axes, coords, best_idx, mode, params):
    base = dict(zip((ax.name for ax in axes), coords[best_idx]))
    best = None
    for ax in axes:
        if isinstance(ax, FixedAxis) or ax.law == "int":
            continue
        vals = ax.values()
        j = vals.index(base[ax.name])
        a, b = vals[max(j - 1, 0)], vals[min(j + 1, len(vals) - 1)]
        if a == b:
            continue

        def f(v, name=ax.name):
            c = dict(base)
            c[name] = v
            p = record.point_from(c, axes)
            if not record.check_point(p, params):
                return math.inf
            res = _eval_point(record, p, "float", params)
            if isinstance(res, str):
                return math.inf
            m = min(v for v, _ in res.values())
            return m if math.isfinite(m) else math.inf

        v, fv, it = golden_section(f, a, b)
        if best is None or fv < best["margin"]:
            c = dict(base)
            c[ax.name] = v
            best = {"axis": ax.name, "coords": c, "margin": fv, "iterations": it}
    if best is None:
        return None
    point = record.point_from(best["coords"], axes)
    best["point"] = dict(zip(record.variables, point))
    return best


# monotonicity ------------------------------------------------------------------------

def _q_values(xs, y):
    return [catalog.q_xy(x, y) for x in xs]


def monotone_verdict(y: float, xs: Sequence[float]) -> MonotoneVerdict:
    """Is q_xy(x_i, y) > q_xy(x_(i+1), y) for consecutive grid points?

    A step counts as a failure only beyond the rounding band
    1e-12 * (1 + |q_i| + |q_(i+1)|).
    """
    qs = _q_values(xs, y)
    worst, worst_x, ok = math.inf, xs[0], True
    for i in range(len(xs) - 1):
        step = qs[i] - qs[i + 1]
        band = NOISE_REL * (1.0 + abs(qs[i]) + abs(qs[i + 1]))
        if step <= -band:
            ok = False
        rel = step / band
        if rel < worst:
            worst, worst_x = rel, xs[i]
    boundary = catalog.thm2_boundary(y)
    return MonotoneVerdict(y=y, x_lo=xs[0], x_hi=xs[-1], samples=len(xs), decreasing=ok,
                           worst_step=worst * NOISE_REL, worst_x=worst_x,
                           in_theorem_region=xs[0] >= boundary)


def check_monotone(ineq_id: str, y: float, x_region, samples: int = 500) -> MonotoneVerdict:
    """Verdict on strict decrease of q_xy(., y) over ``x_region`` = (lo, hi) or an Axis.

    The region may extend left of the theorem's boundary as long as x + y + 1 > 0;
    ``in_theorem_region`` records whether it stays inside.
    """
    if ineq_id not in ("THM2-MONO", "THM2-NEG"):
        raise UnknownIdError(f"monotonicity checks apply to THM2-MONO, got {ineq_id!r}")
    if not -1.0 < y < -0.5:
        raise DomainError(f"y must lie in (-1, -1/2), got {y!r}")
    if isinstance(x_region, (Axis, FixedAxis)):
        xs = x_region.values()
    else:
        lo, hi = x_region
        xs = Axis("x", float(lo), float(hi), "lin", samples).values()
    if xs[0] + y + 1.0 <= 0:
        raise DomainError(f"need x + y + 1 > 0 on the region, got x = {xs[0]!r}")
    return monotone_verdict(y, xs)


# main entry --------------------------------------------------------------------------

def scan(config: ScanConfig) -> VerificationReport:
    """Evaluate a record over its grid; see the module docstring for the policy."""
    t0 = time.perf_counter()
    record = resolve_record(config)
    params = {**record.params, **config.params}
    for k in config.params:
        if k not in record.params:
            raise RegionError(f"{record.id} takes no parameter {k!r}")
    record.active_components(params)
    axes = resolve_axes(record, config)
    coords, points = grid_points(record, axes)
    if not points:
        raise RegionError(f"{record.id}: empty region")
    _check_region(record, points, params)

    in_catalog = config.record is None
    results = _evaluate_all(record, points, config.mode, params,
                            worker_count(config.workers), in_catalog)

    var = record.variables
    comp_min = {c: (math.inf, None) for c in record.active_components(params)}
    violations, cleared, nonfinite = [], [], []
    rows = [] if config.keep_rows else None
    best, best_idx = math.inf, None
    for idx, (point, res) in enumerate(zip(points, results)):
        pdict = dict(zip(var, point))
        if isinstance(res, str):
            nonfinite.append({"point": pdict, "error": res})
            if rows is not None:
                rows.append((point, math.nan))
            continue
        margins = {}
        for comp, val in res.items():
            if config.mode == "float":
                m, scale = val
            else:
                m = val[0]
            margins[comp] = m
            if not math.isfinite(m):
                nonfinite.append({"point": pdict, "component": comp, "margin": repr(m)})
                continue
            if m < comp_min[comp][0]:
                comp_min[comp] = (m, idx)
            if config.mode == "float":
                if m <= _noise(scale):
                    esc = _certify(record, point, comp, params)
                    entry = {"point": pdict, "component": comp, "margin": m, "escalated": esc}
                    if esc["status"] == "cleared":
                        log.info("%s: rounding artifact cleared at %s", record.id, pdict)
                        cleared.append(entry)
                    else:
                        violations.append(entry)
            else:
                lo, hi = val
                status = classify(lo, hi, record.strict)
                if status != "cleared":
                    violations.append({"point": pdict, "component": comp, "margin": lo,
                                       "escalated": {"lo": lo, "hi": hi, "status": status}})
        finite = [m for m in margins.values() if math.isfinite(m)]
        if finite:
            m = min(finite)
            if rows is not None:
                rows.append((point, m))
            if m < best:
                best, best_idx = m, idx
        elif rows is not None:
            rows.append((point, math.nan))

    argmin = dict(zip(var, points[best_idx])) if best_idx is not None else None
    components = {c: {"min_margin": _num(m) if i is not None else None,
                      "argmin": dict(zip(var, points[i])) if i is not None else None}
                  for c, (m, i) in comp_min.items()}

    refined = None
    if config.refine and best_idx is not None:
        refined = _refine(record, axes, coords, best_idx, config.mode, params)
        if refined is not None and refined["margin"] < best:
            best = refined["margin"]
            argmin = refined["point"]
            rpoint = tuple(refined["point"][v] for v in var)
            for comp, val in _eval_point(record, rpoint, "float", params).items():
                if isinstance(val, tuple) and val[0] <= _noise(val[1]):
                    esc = _certify(record, rpoint, comp, params)
                    entry = {"point": refined["point"], "component": comp,
                             "margin": val[0], "escalated": esc}
                    (cleared if esc["status"] == "cleared" else violations).append(entry)
        if refined is not None:
            refined = {k: v for k, v in refined.items() if k != "coords"}

    monotonicity = None
    want_mono = config.monotonicity
    if want_mono is None:
        want_mono = record.id == "THM2-MONO"
    if want_mono and set(var) == {"x", "y"}:
        monotonicity = _monotone_slices(record, axes, coords)

    return VerificationReport(
        ineq_id=record.id, mode=config.mode, params=params, samples=len(points),
        min_margin=best if best_idx is not None else math.nan, argmin=argmin,
        components=components, violations=violations, cleared=cleared,
        nonfinite=nonfinite, monotonicity=monotonicity, refined=refined,
        wall_time_ms=(time.perf_counter() - t0) * 1e3, rows=rows, variables=var)


def _monotone_slices(record, axes, coords):
    names = [ax.name for ax in axes]
    slices: dict = {}
    for c in coords:
        x, y = record.point_from(dict(zip(names, c)), axes)
        slices.setdefault(y, []).append(x)
    return [monotone_verdict(y, sorted(xs)).as_dict() for y, xs in slices.items()]


# sharpness ---------------------------------------------------------------------------

SHARP_CONSTANTS = ("lower_half", "upper_shift")


def perturbed_sharp_pair(constant: str, epsilon: float) -> B.BoundPair:
    """PSI-SHARP with one constant pushed the wrong way by ``epsilon``."""
    pair = B.get_pair("PSI-SHARP")
    if epsilon == 0:
        return pair
    if constant == "lower_half":
        return pair.with_constants(lower=B.LogShift(0.5 + epsilon))
    return pair.with_constants(upper=B.LogShift(EXP_NEG_GAMMA - epsilon))


def sharpness_probe(bound_id: str, constant: str, epsilon: float, x_region,
                    samples: int = 2000) -> Optional[float]:
    """First grid x where the perturbed PSI-SHARP side fails, or None.

    ``x_region`` is an Axis or a (lo, hi) pair sampled on a log grid.  A point
    counts only if the certified enclosure confirms the violation.
    """
    if bound_id != "PSI-SHARP":
        raise UnknownIdError(f"sharpness probes are defined for PSI-SHARP, got {bound_id!r}")
    if constant not in SHARP_CONSTANTS:
        raise ValueError(f"constant must be one of {SHARP_CONSTANTS}, got {constant!r}")
    if not (isinstance(epsilon, (int, float)) and epsilon >= 0 and math.isfinite(epsilon)):
        raise DomainError(f"epsilon must be a non-negative real, got {epsilon!r}")
    if constant == "upper_shift" and epsilon >= EXP_NEG_GAMMA:
        raise DomainError("epsilon must stay below e^-gamma for the upper shift")
    if isinstance(x_region, (Axis, FixedAxis)):
        axis = x_region.with_(name="x")
    else:
        lo, hi = x_region
        axis = Axis("x", float(lo), float(hi), "log", samples)
    side = "lower" if constant == "lower_half" else "upper"
    pair = perturbed_sharp_pair(constant, epsilon)
    record = catalog.bound_record(pair, f"PSI-SHARP[{constant}+{epsilon:g}]", (axis,))
    report = scan(ScanConfig(record.id, mode="float", params={}, record=record, workers=1))
    for v in report.violations:
        if v["component"] == side and v["escalated"]["status"] == "persistent":
            return v["point"]["x"]
    return None


__all__ = [
    "ScanConfig", "VerificationReport", "MonotoneVerdict", "scan", "check_monotone",
    "monotone_verdict", "sharpness_probe", "perturbed_sharp_pair", "golden_section",
    "classify", "worker_count", "resolve_axes", "grid_points", "rows_to_csv",
]
