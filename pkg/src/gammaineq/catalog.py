"""Registry of the inequalities under verification, as margin functions.

A margin is "right side minus left side": positive exactly where the
inequality holds.  Each record computes its margin as a short list of terms
whose sum is the margin; the float path uses the magnitude of those terms as
the scale of its rounding-noise band, and the certified path sums enclosures.

The two-variable functions are rewritten around s = y + 1 and z = x + s with
psi(z) = psi(1+z) - 1/z and ln G(z) = ln G(1+z) - ln z, so the 1/z and ln z
singularities cancel in closed form.  For instance

    q(x, y) = x psi(1+z) - [ln G(1+z) - ln G(1+s)] + (L - sinh L),  L = ln(1 + x/s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import bounds as B
from .context import CERT, FLOAT, get_ops
from .enclosure import Enclosure
from .errors import DegenerateInputError, DomainError, PreconditionError, UnknownIdError
from .grid import Axis

DEGENERATE_REL = 1e-12
NOISE_REL = 1e-12


# closed forms -----------------------------------------------------------------

def thm2_boundary(y: float) -> float:
    """Left end -2(y+1)^2/(1+2y) of the x range for a given y in (-1, -1/2)."""
    if not -1.0 < y < -0.5:
        raise DomainError(f"y must lie in (-1, -1/2), got {y!r}")
    s = y + 1.0
    return 2.0 * s * s / (1.0 - 2.0 * s)


def remark_boundary(t: float) -> float:
    """Left end -2t^2/(2t-1) of the x range for a given t in (0, 1/2)."""
    return 2.0 * t * t / (1.0 - 2.0 * t)


def _thm1_terms(t, F):
    T = F.lift(t)
    u = 2.0 * T
    a = T / (1.0 + u)
    two_t2 = 2.0 * (T * T)
    d = -two_t2 / (1.0 + u)  # a - t
    return [1.0 - F.digamma1p(T),
            -F.xlog1p_excess(u) / two_t2,
            -((1.0 + u) / two_t2) * F.lgamma1p_diff(a, T, d)]


def _q_terms(x, y, F):
    X = F.lift(x)
    S = F.lift(y) + 1.0
    Z = X + S
    return [X * F.digamma1p(Z),
            -F.lgamma1p_diff(Z, S, X),
            F.l_minus_sinh(F.log1p(X / S))]


def _neg_dq_terms(x, y, F):
    # -dq/dx = x [x/(2 s z^2) - psi'(1+z)]
    X = F.lift(x)
    S = F.lift(y) + 1.0
    Z = X + S
    return [(X * X) / (2.0 * S * (Z * Z)), -X * F.psi_n(1, 1.0 + Z)]


def _remark_terms(x, t, F):
    X = F.lift(x)
    T = F.lift(t)
    Z = X + T
    return [F.lgamma1p_diff(Z, T, X) / X,
            -F.log1p(X / T) / X,
            1.0 / Z,
            -F.digamma1p(Z),
            X / (2.0 * T * Z)]


def _batir_terms(a, b, F):
    L = F.gen_log_mean(-1.0, a, b)
    return [F.integral_mean(0, b, a), -F.digamma(L)]


def _intmean_terms(i, s, t, side, order, F):
    sign = 1.0 if i % 2 == 0 else -1.0
    mean = F.integral_mean(i, s, t)
    L = F.gen_log_mean(order, s, t)
    val = F.psi_n(i, L)
    if side == "lower":
        return [sign * mean, -sign * val]
    return [sign * val, -sign * mean]


def _fsum(terms):
    if any(isinstance(v, Enclosure) for v in terms):
        total = terms[0]
        for v in terms[1:]:
            total = total + v
        return total
    return math.fsum(terms)


def _scale(terms) -> float:
    return 1.0 + max(abs(v) for v in terms)


# validation -------------------------------------------------------------------

def _real(v, name):
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise DomainError(f"{name} must be a finite real, got {v!r}")
    return float(v)


def _check_t(t):
    t = _real(t, "t")
    if t <= 0:
        raise DomainError(f"t must be positive, got {t!r}")
    return t


def _check_xy(x, y):
    x, y = _real(x, "x"), _real(y, "y")
    if not -1.0 < y < -0.5:
        raise DomainError(f"y must lie in (-1, -1/2), got {y!r}")
    if x + y + 1.0 <= 0.0:
        raise DomainError(f"need x + y + 1 > 0, got x={x!r}, y={y!r}")
    return x, y


def _check_pair(a, b, what="a, b"):
    a, b = _real(a, "a"), _real(b, "b")
    if a <= 0 or b <= 0:
        raise DomainError(f"{what} must be positive, got {a!r}, {b!r}")
    if abs(a - b) <= DEGENERATE_REL * max(a, b):
        raise DegenerateInputError(f"{what} coincide: {a!r}, {b!r}")
    return a, b


def _default_order(i, side):
    return -i - 1.0 if side == "lower" else float(-i)


def _check_order(i, side, order):
    if side not in ("lower", "upper"):
        raise PreconditionError(f"side must be 'lower' or 'upper', got {side!r}")
    if side == "lower" and not order <= -i - 1:
        raise PreconditionError(f"lower side needs order <= {-i - 1}, got {order!r}")
    if side == "upper" and not order >= -i:
        raise PreconditionError(f"upper side needs order >= {-i}, got {order!r}")


# public margin functions --------------------------------------------------------

def margin_thm1(t: float) -> float:
    """(1 - psi(t)) - (1+2t)/(2t^2) [ln G(t/(1+2t)) - ln G(t)]; positive for all t > 0."""
    return math.fsum(_thm1_terms(_check_t(t), FLOAT))


def q_xy(x: float, y: float) -> float:
    """x psi(x+y+1) - ln G(x+y+1) + ln G(y+1) - x^2/(2(y+1)(x+y+1))."""
    x, y = _check_xy(x, y)
    return math.fsum(_q_terms(x, y, FLOAT))


def dq_dx(x: float, y: float) -> float:
    """Exact partial derivative of q_xy in x: x [psi'(x+y+1) - (x+2y+2)/(2(y+1)(x+y+1)^2)]."""
    x, y = _check_xy(x, y)
    return -math.fsum(_neg_dq_terms(x, y, FLOAT))


def margin_remark_ratio(x: float, t: float) -> float:
    """(1/x)[ln G(x+t) - ln G(t)] - psi(x+t) + x/(2t(x+t)).

    Positive iff [G(x+t)/G(t)]^(1/x) > exp[psi(x+t) - x/(2t(x+t))].
    """
    x, t = _real(x, "x"), _real(t, "t")
    if not 0.0 < t < 0.5:
        raise DomainError(f"t must lie in (0, 1/2), got {t!r}")
    if x == 0.0 or x < remark_boundary(t):
        raise DomainError(f"x must be nonzero and >= {remark_boundary(t)!r}, got {x!r}")
    return math.fsum(_remark_terms(x, t, FLOAT))


def margin_batir(a: float, b: float) -> float:
    """[ln G(a) - ln G(b)]/(a - b) - psi(L(a, b)) with L the logarithmic mean."""
    a, b = _check_pair(a, b)
    return math.fsum(_batir_terms(a, b, FLOAT))


def integral_mean(i: int, s: float, t: float) -> float:
    """(1/(t-s)) times the integral of psi^(i) over [s, t], in closed form."""
    if isinstance(i, bool) or not isinstance(i, int) or i < 0:
        raise DomainError(f"i must be a non-negative integer, got {i!r}")
    s, t = _check_pair(s, t, "s, t")
    return FLOAT.integral_mean(i, s, t)


def margin_intmean(i: int, side: str, order: float, s: float, t: float) -> float:
    """Signed margin of one side of the integral-mean sandwich.

    lower: (-1)^i [mean - psi^(i)(L_p(s,t))],  needs p <= -i-1
    upper: (-1)^i [psi^(i)(L_q(s,t)) - mean],  needs q >= -i
    """
    if isinstance(i, bool) or not isinstance(i, int) or i < 0:
        raise DomainError(f"i must be a non-negative integer, got {i!r}")
    order = _real(order, "order")
    _check_order(i, side, order)
    s, t = _check_pair(s, t, "s, t")
    return math.fsum(_intmean_terms(i, s, t, side, order, FLOAT))


# records ----------------------------------------------------------------------------

@dataclass(frozen=True)
class InequalityRecord:
    """One registered inequality.

    ``terms(point, component, F, params)`` returns the margin terms of one
    component (for sandwich bounds the components are the two sides).
    """

    id: str
    variables: tuple
    formula: str
    domain_text: str
    strict: bool
    components: tuple
    terms: Callable
    in_domain: Callable
    axes: tuple
    anchors: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    kind: str = "theorem"
    slice_var: Optional[str] = None

    def active_components(self, params=None) -> tuple:
        side = (params or {}).get("side")
        if side is None:
            return self.components
        if side not in self.components:
            raise UnknownIdError(f"{self.id} has no component {side!r}")
        return (side,)

    def point_from(self, coords: dict, axes=None) -> tuple:
        """Record point from grid coordinates, adding anchors of anchored axes."""
        vals = dict(coords)
        for ax in axes if axes is not None else self.axes:
            if ax.name in vals and ax.anchor:
                vals[ax.name] = vals[ax.name] + self.anchors[ax.anchor](vals)
        return tuple(vals[v] for v in self.variables)

    def check_point(self, point, params=None) -> bool:
        try:
            return bool(self.in_domain(point, {**self.params, **(params or {})}))
        except (DomainError, ValueError, ZeroDivisionError):
            return False

    def component_terms(self, point, component, F, params=None) -> list:
        return self.terms(point, component, F, {**self.params, **(params or {})})

    def evaluate(self, point, mode="float", params=None) -> dict:
        """Per-component results: (value, scale) in float mode, Enclosure in certified mode."""
        F = get_ops(mode)
        out = {}
        for comp in self.active_components(params):
            terms = self.component_terms(point, comp, F, params)
            if F is CERT:
                out[comp] = _fsum(terms)
            else:
                out[comp] = (math.fsum(terms), _scale(terms))
        return out

    def margin(self, point, mode="float", params=None):
        """Smallest component margin (a float, or an Enclosure in certified mode)."""
        if not self.check_point(point, params):
            raise DomainError(f"{self.id}: point {point!r} outside the domain")
        res = self.evaluate(point, mode, params)
        if mode == "float":
            return min(v for v, _ in res.values())
        return min(res.values(), key=lambda e: e.lo)


def _one(fn):
    def terms(point, comp, F, params):
        return fn(*point, F)
    return terms


def _negated(fn):
    def terms(point, comp, F, params):
        return [-v for v in fn(*point, F)]
    return terms


def _thm2_domain(point, params):
    x, y = point
    return -1.0 < y < -0.5 and x >= thm2_boundary(y)


def _remark_domain(point, params):
    x, t = point
    return 0.0 < t < 0.5 and x != 0.0 and x >= remark_boundary(t)


def _pair_domain(point, params):
    a, b = point[-2:]
    return a > 0 and b > 0 and abs(a - b) > DEGENERATE_REL * max(a, b)


def _intmean_domain(point, params):
    i = point[0]
    if not (isinstance(i, int) and i >= 0 and _pair_domain(point, params)):
        return False
    order = params.get("order")
    if order is not None:
        side = params.get("side")
        if side is None:
            return False
        _check_order(i, side, order)
    return True


def _intmean_record_terms(point, comp, F, params):
    i, s, t = point
    order = params.get("order")
    if order is None or params.get("side") != comp:
        order = _default_order(i, comp)
    return _intmean_terms(i, s, t, comp, order, F)


def bound_record(pair: B.BoundPair, record_id: Optional[str] = None,
                 axes: Optional[tuple] = None) -> InequalityRecord:
    """Catalog record for a sandwich bound pair (also used for perturbed pairs)."""
    if pair.arity == 2:
        variables = ("k", "x")
        default_axes = (Axis("k", 1, 6, "int"), Axis("x", 1e-4, 1e5, "log", 2000))

        def in_domain(point, params):
            k, x = point
            return isinstance(k, int) and k >= 1 and x > 0
    else:
        variables = ("x",)
        default_axes = (Axis("x", 1e-6, 1e6, "log", 10_000),)

        def in_domain(point, params):
            return point[0] > 0

    def terms(point, comp, F, params):
        return B.gap_terms(pair, comp, point, F)

    return InequalityRecord(
        id=record_id or pair.id, variables=variables, formula=pair.formula,
        domain_text=pair.domain, strict=True, components=tuple(B.sides(pair)),
        terms=terms, in_domain=in_domain, axes=axes or default_axes, kind="bound")


def _build():
    recs = [
        InequalityRecord(
            "THM1", ("t",),
            "(1+2t)/(2t^2) [ln G(t/(1+2t)) - ln G(t)] < 1 - psi(t)",
            "t > 0", True, ("main",), _one(_thm1_terms),
            lambda p, _: p[0] > 0,
            (Axis("t", 1e-6, 1e4, "log", 100_000),)),
        InequalityRecord(
            "THM2-NEG", ("x", "y"),
            "x psi(x+y+1) - ln G(x+y+1) + ln G(y+1) - x^2/(2(y+1)(x+y+1)) < 0",
            "y in (-1, -1/2), x >= -2(y+1)^2/(1+2y)", True, ("main",),
            _negated(_q_terms), _thm2_domain,
            (Axis("y", -1.0, -0.5, "offset", 50), Axis("x", 0.0, 100.0, "lin", 200, "boundary")),
            anchors={"boundary": lambda c: thm2_boundary(c["y"])}, slice_var="y"),
        InequalityRecord(
            "THM2-MONO", ("x", "y"),
            "d/dx [x psi(x+y+1) - ln G(x+y+1) + ln G(y+1) - x^2/(2(y+1)(x+y+1))] < 0",
            "y in (-1, -1/2), x >= -2(y+1)^2/(1+2y)", True, ("main",),
            _one(_neg_dq_terms), _thm2_domain,
            (Axis("y", -1.0, -0.5, "offset", 50), Axis("x", 0.0, 100.0, "lin", 200, "boundary")),
            anchors={"boundary": lambda c: thm2_boundary(c["y"])}, slice_var="y"),
        InequalityRecord(
            "REMARK-RATIO", ("x", "t"),
            "[G(x+t)/G(t)]^(1/x) > exp[psi(x+t) - x/(2t(x+t))]",
            "t in (0, 1/2), x >= -2t^2/(2t-1)", True, ("main",),
            _one(_remark_terms), _remark_domain,
            (Axis("t", 0.0, 0.5, "offset", 50), Axis("x", 0.0, 100.0, "lin", 200, "boundary")),
            anchors={"boundary": lambda c: remark_boundary(c["t"])}, kind="remark",
            slice_var="t"),
        InequalityRecord(
            "BATIR", ("a", "b"),
            "exp(psi(L(a,b))) < [G(a)/G(b)]^(1/(a-b)),  L(a,b) = (b-a)/(ln b - ln a)",
            "a, b > 0, a != b", True, ("main",), _one(_batir_terms), _pair_domain,
            (Axis("a", 1e-3, 100.0, "log", 100), Axis("b", 0.05, 99.95, "lin", 100)),
            kind="lemma"),
        InequalityRecord(
            "INTMEAN", ("i", "s", "t"),
            "(-1)^i psi^(i)(L_p(s,t)) <= (-1)^i/(t-s) int_s^t psi^(i) <= (-1)^i psi^(i)(L_q(s,t)),"
            " p <= -i-1, q >= -i",
            "i >= 0 integer, s, t > 0, s != t", False, ("lower", "upper"),
            _intmean_record_terms, _intmean_domain,
            (Axis("i", 0, 2, "int"), Axis("s", 1e-3, 100.0, "log", 40),
             Axis("t", 0.05, 99.95, "lin", 40)),
            params={"side": None, "order": None}, kind="lemma"),
    ]
    recs += [bound_record(p) for p in B.BOUND_PAIRS.values()]
    return {r.id: r for r in recs}


CATALOG: dict[str, InequalityRecord] = _build()


def get(ineq_id: str) -> InequalityRecord:
    try:
        return CATALOG[ineq_id]
    except KeyError:
        raise UnknownIdError(f"unknown inequality id {ineq_id!r}") from None


def ids() -> list[str]:
    return list(CATALOG)
