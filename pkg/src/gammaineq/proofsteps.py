"""Auxiliary functions of the positivity proof for the t/(1+2t) gamma ratio.

The proof splits t > 0 at 8/7.  For t >= 8/7 the elementary minorant
q_log(t)/(12 t^2) of p(t) is positive.  Below 8/7 a chain of sufficient
conditions reduces positivity to a polynomial sign:

    margin_triangle_sqrt >= 0  =>  margin_suffice3 >= 0  =>  margin_suffice2 >= 0
        =>  margin_suffice1 > 0  =>  p(t) > 0

Each link is available as a margin function so the chain can be re-checked
numerically, together with the polynomial checkpoints quoted along the way.
Polynomials accept :class:`fractions.Fraction` arguments and then return exact
rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import catalog, specfun as sf
from .context import FLOAT
from .errors import DomainError, UnknownIdError

SPLIT = 8.0 / 7.0

H_COEFFS = {
    0: (9, 54, 55, -60, -93, -18, 9),
    1: (54, 270, 220, -180, -186, -18),
    2: (270, 1080, 660, -360, -186),
    3: (1080, 3240, 1320, -360),
}
Q_CUBIC_COEFFS = (3, 11, 3, -3)


def _horner(coeffs, t):
    acc = 0
    for c in coeffs:
        acc = acc * t + c
    return acc


def _check_t(t, hi=None):
    if isinstance(t, bool) or not isinstance(t, (int, float, Fraction)):
        raise DomainError(f"t must be a real number, got {t!r}")
    t = float(t)
    if not math.isfinite(t) or t <= 0:
        raise DomainError(f"t must be positive and finite, got {t!r}")
    if hi is not None and not t < hi:
        raise DomainError(f"t must lie in (0, {hi:.17g}), got {t!r}")
    return t


# second half of the split -------------------------------------------------------

def p_of_t(t: float) -> float:
    """(1+2t)/(2t^2) * integral of psi over [t/(1+2t), t] - psi(t) + 1."""
    return catalog.margin_thm1(t)


def q_log(t: float) -> float:
    """4t - 3 ln(2t+1) - 1; increasing for t > 1/4 with minimum -3 ln(3/2)."""
    t = _check_t(t)
    return 4.0 * t - 3.0 * math.log1p(2.0 * t) - 1.0


def q_log_minorant(t: float) -> float:
    """q_log(t)/(12 t^2), the lower bound of p(t) from the psi(x+1) - ln x sandwich."""
    t = _check_t(t)
    return q_log(t) / (12.0 * t * t)


# sufficient conditions below the split ---------------------------------------------

def _log_parts(t):
    u = 2.0 * t
    ell = math.log1p(u)
    # (1+u) ln(1+u) - u > 0
    excess = FLOAT.xlog1p_excess(u)
    return u, ell, excess


def subst_s(t: float) -> float:
    """2t^2/((1+2t) ln(1+2t)), the logarithmic mean of t/(1+2t) and t."""
    t = _check_t(t)
    u, ell, _ = _log_parts(t)
    return 2.0 * t * t / ((1.0 + u) * ell)


def _t_minus_s(t):
    u, ell, excess = _log_parts(t)
    return t * excess / ((1.0 + u) * ell)


def margin_suffice1(t: float) -> float:
    """1 - [psi(t) - psi(s)] with s = subst_s(t), for t in (0, 8/7)."""
    t = _check_t(t, SPLIT)
    s = subst_s(t)
    d = _t_minus_s(t)
    # psi(t) - psi(s) = (t - s)/(s t) + psi(1+t) - psi(1+s)
    return math.fsum([1.0, -d / (s * t), -sf.digamma(1.0 + t), sf.digamma(1.0 + s)])


def _suffice_rhs(t):
    # (2t+1) ln(2t+1) / (t [(2t+1) ln(2t+1) - 2t]) = 1/(t - s)
    u, ell, excess = _log_parts(t)
    return (1.0 + u) * ell / (t * excess)


def suffice_arg(t: float) -> float:
    """[2t^3/((2t+1) ln(2t+1))]^(1/2), the geometric mean of subst_s(t) and t."""
    t = _check_t(t)
    return math.sqrt(t * subst_s(t))


def margin_suffice2(t: float) -> float:
    """(2t+1) ln(2t+1)/(t[(2t+1) ln(2t+1) - 2t]) - psi'(sqrt(t s)), for t in (0, 8/7)."""
    t = _check_t(t, SPLIT)
    return _suffice_rhs(t) - sf.polygamma(1, suffice_arg(t))


def margin_suffice3(t: float) -> float:
    """Same right side as margin_suffice2, minus the elementary majorant of psi'(sqrt(t s))."""
    t = _check_t(t, SPLIT)
    u, ell, _ = _log_parts(t)
    lhs = (1.0 + u) * ell / (2.0 * t ** 3) + 1.0 / (suffice_arg(t) + 0.5)
    return _suffice_rhs(t) - lhs


def q_cubic(t):
    """3t^3 + 11t^2 + 3t - 3."""
    return _horner(Q_CUBIC_COEFFS, t)


def h_sextic(t, order: int = 0):
    """h(t) = 9t^6 + 54t^5 + 55t^4 - 60t^3 - 93t^2 - 18t + 9 and its first three derivatives."""
    if isinstance(order, bool) or order not in H_COEFFS:
        raise DomainError(f"order must be 0, 1, 2 or 3, got {order!r}")
    return _horner(H_COEFFS[order], t)


def margin_triangle_sqrt(t: float) -> float:
    """sqrt(12t^2(t+1)/(t^2+6t+3)) - (3t^3+11t^2+3t-3)/(t^2+6t+3), for t in (0, 8/7)."""
    t = _check_t(t, SPLIT)
    den = t * t + 6.0 * t + 3.0
    return math.sqrt(12.0 * t * t * (t + 1.0) / den) - q_cubic(t) / den


# two-variable theorem -------------------------------------------------------------

def dq_dx_bound(x: float, y: float) -> float:
    """x [x(1+2y) + 2(y+1)^2] / (2(y+1)(x+y+1)^2), an upper bound for dq/dx."""
    x, y = catalog._check_xy(x, y)
    s = y + 1.0
    z = x + s
    return x * (x * (1.0 + 2.0 * y) + 2.0 * s * s) / (2.0 * s * z * z)


def boundary_q(y: float) -> float:
    """q_xy at the left end x0 = -2(y+1)^2/(1+2y) of the x range, in closed form.

    With t = -(y+1)/(2y+1) this is
    2(y+1)^2/(2y+1) [1 - psi(t)] - ln G(t) + ln G(y+1).
    """
    y = catalog._real(y, "y")
    if not -1.0 < y < -0.5:
        raise DomainError(f"y must lie in (-1, -1/2), got {y!r}")
    s = y + 1.0
    t = s / (1.0 - 2.0 * s)
    x0 = catalog.thm2_boundary(y)
    # 1 - psi(t) = 1 - psi(1+t) + 1/t and x0/t = 2s;
    # ln G(t) - ln G(s) = [ln G(1+t) - ln G(1+s)] - ln(1 + x0/s) since t - s = x0
    return math.fsum([-x0 * (1.0 - sf.digamma(1.0 + t)), -2.0 * s,
                      -sf.lgamma1p_diff(t, s, x0), math.log1p(x0 / s)])


def boundary_t(y: float) -> float:
    """t = -(y+1)/(2y+1), at which boundary_q(y) = -x0 * margin_thm1(t)."""
    s = y + 1.0
    return s / (1.0 - 2.0 * s)


# logarithmically completely monotonic family ----------------------------------------

def _log_derivative(k, x, beta):
    # (d/dx)^(k-1) ln(x + beta)
    if k == 1:
        return math.log(x + beta)
    return (-1) ** k * math.factorial(k - 2) / (x + beta) ** (k - 1)


def log_g_sign_check(alpha: float, beta: float, x: float, k: int) -> float:
    """(-1)^k (d/dx)^k of alpha [x + ln G(x) + ln x - (x+beta) ln(x+beta)].

    The k-th derivative is alpha [psi^(k-1)(1+x) - (d/dx)^(k-1) ln(x+beta)],
    since psi^(k-1)(x) + (-1)^(k-1) (k-1)!/x^k = psi^(k-1)(1+x).  Positive
    for every k when alpha > 0, beta >= 1 or alpha < 0, beta <= 1/2.
    """
    alpha, beta, x = (catalog._real(v, n) for v, n in ((alpha, "alpha"), (beta, "beta"), (x, "x")))
    if alpha == 0.0:
        raise DomainError("alpha must be nonzero")
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    if not x > max(0.0, -beta):
        raise DomainError(f"x must exceed max(0, -beta) = {max(0.0, -beta)!r}, got {x!r}")
    deriv = sf.psi_n(k - 1, 1.0 + x) - _log_derivative(k, x, beta)
    return (-1) ** k * alpha * deriv


# roots ----------------------------------------------------------------------------

@dataclass(frozen=True)
class RootBracket:
    lo: float
    hi: float
    f_id: str

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo


def localize_root(f_id: str, lo: float, hi: float, tol: float = 1e-12,
                  fn: Callable | None = None) -> RootBracket:
    """Bisect a sign change of a registered function down to width ``tol``."""
    f = fn or get_fn(f_id).eval
    flo, fhi = f(lo), f(hi)
    if not lo < hi:
        raise DomainError(f"empty bracket [{lo!r}, {hi!r}]")
    if flo == 0:
        return RootBracket(lo, lo, f_id)
    if fhi == 0:
        return RootBracket(hi, hi, f_id)
    if (flo > 0) == (fhi > 0):
        raise DomainError(f"{f_id}: no sign change on [{lo!r}, {hi!r}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0:
            return RootBracket(mid, mid, f_id)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return RootBracket(lo, hi, f_id)


def q_cubic_root() -> RootBracket:
    """The unique zero of q_cubic, bracketed inside (1/3, 1)."""
    return localize_root("q_cubic", 1.0 / 3.0, 1.0)


def sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


# registry -------------------------------------------------------------------------

@dataclass(frozen=True)
class ProofFn:
    """A named real function of one variable used in the proof, with its domain."""

    id: str
    eval: Callable
    domain: tuple
    formula: str

    def __call__(self, t):
        return self.eval(t)


def _registry():
    inf = math.inf
    fns = [
        ProofFn("p_of_t", p_of_t, (0.0, inf), "(1+2t)/(2t^2) int_{t/(1+2t)}^t psi - psi(t) + 1"),
        ProofFn("q_log", q_log, (0.0, inf), "4t - 3 ln(2t+1) - 1"),
        ProofFn("subst_s", subst_s, (0.0, inf), "2t^2/((1+2t) ln(1+2t))"),
        ProofFn("suffice1", margin_suffice1, (0.0, SPLIT), "1 - [psi(t) - psi(s)]"),
        ProofFn("suffice2", margin_suffice2, (0.0, SPLIT), "1/(t - s) - psi'(sqrt(t s))"),
        ProofFn("suffice3", margin_suffice3, (0.0, SPLIT),
                "1/(t - s) - (2t+1) ln(2t+1)/(2t^3) - 1/(sqrt(t s) + 1/2)"),
        ProofFn("triangle_sqrt", margin_triangle_sqrt, (0.0, SPLIT),
                "sqrt(12t^2(t+1)/(t^2+6t+3)) - q_cubic(t)/(t^2+6t+3)"),
        ProofFn("q_cubic", q_cubic, (-inf, inf), "3t^3 + 11t^2 + 3t - 3"),
    ]
    for n, name in enumerate(("h", "h1", "h2", "h3")):
        fns.append(ProofFn(name, lambda t, n=n: h_sextic(t, n), (-inf, inf),
                           f"d^{n}/dt^{n} (9t^6 + 54t^5 + 55t^4 - 60t^3 - 93t^2 - 18t + 9)"))
    return {f.id: f for f in fns}


PROOF_FNS: dict[str, ProofFn] = _registry()


def get_fn(fn_id: str) -> ProofFn:
    try:
        return PROOF_FNS[fn_id]
    except KeyError:
        raise UnknownIdError(f"unknown proof function {fn_id!r}") from None


# chain soundness --------------------------------------------------------------------

CHAIN = (("triangle_sqrt", "suffice3"), ("suffice3", "suffice2"), ("suffice2", "suffice1"))


def chain_exceptions(ts) -> dict:
    """Grid points where a link of the sufficiency chain fails.

    A link (A, B) fails at t when A >= 0 but B < 0 (B <= 0 for the last link,
    whose conclusion is strict).  Also returns the points t >= 8/7 where
    q_log <= 0 under the key "q_log".
    """
    out = {f"{a}=>{b}": [] for a, b in CHAIN}
    out["q_log"] = []
    for t in ts:
        if t >= SPLIT:
            if q_log(t) <= 0:
                out["q_log"].append(t)
            continue
        vals = {name: get_fn(name)(t) for name in ("triangle_sqrt", "suffice3", "suffice2", "suffice1")}
        for a, b in CHAIN:
            fails = vals[b] <= 0 if b == "suffice1" else vals[b] < 0
            if vals[a] >= 0 and fails:
                out[f"{a}=>{b}"].append(t)
    return out


def kuang_rational(t):
    """t(t^2 + 12t + 12)/(6(t+1)(t+2)), exact for Fraction input."""
    return t * (t * t + 12 * t + 12) / (6 * (t + 1) * (t + 2))


# checkpoints ------------------------------------------------------------------------

@dataclass(frozen=True)
class Checkpoint:
    """One reproducible value or claim.

    ``kind`` is ``exact`` (rational, compared exactly with Fraction arithmetic
    and to 1e-9 relative in double precision), ``value`` (compared to 1e-9
    relative) or ``claim`` (a boolean statement).
    """

    name: str
    kind: str
    computed: float
    expected: object
    ok: bool
    note: str = ""

    def as_dict(self) -> dict:
        exp = self.expected
        if isinstance(exp, Fraction):
            exp = str(exp) if exp.denominator != 1 else exp.numerator
        return {"name": self.name, "kind": self.kind, "computed": self.computed,
                "expected": exp, "ok": self.ok, "note": self.note}


REL_TOL = 1e-9


def _close(a, b, rel=REL_TOL):
    return abs(a - b) <= rel * max(abs(b), 1e-300) or a == b


def _exact(name, fn, arg: Fraction, expected: Fraction) -> Checkpoint:
    exact = fn(arg)
    computed = float(fn(float(arg)))
    ok = exact == expected and _close(computed, float(expected))
    return Checkpoint(name, "exact", computed, expected, ok)


def _claim(name, computed, ok, note) -> Checkpoint:
    return Checkpoint(name, "claim", float(computed), True, bool(ok), note)


def checkpoints() -> list[Checkpoint]:
    """Recompute every quoted checkpoint of the proof and the bound lemmas."""
    F = Fraction
    rows = [
        _exact("q_cubic(0)", q_cubic, F(0), F(-3)),
        _exact("q_cubic(1/3)", q_cubic, F(1, 3), F(-2, 3)),
        _exact("q_cubic(1)", q_cubic, F(1), F(14)),
        _exact("h(0)", h_sextic, F(0), F(9)),
        _exact("h(1/3)", h_sextic, F(1, 3), F(-700, 81)),
        _exact("h(8/7)", h_sextic, F(8, 7), F(-404759, 117649)),
        _exact("h'(0)", lambda t: h_sextic(t, 1), F(0), F(-18)),
        _exact("h''(0)", lambda t: h_sextic(t, 2), F(0), F(-186)),
        _exact("h'''(0)", lambda t: h_sextic(t, 3), F(0), F(-360)),
    ]
    ql = q_log(SPLIT)
    rows.append(_claim("q_log(8/7) > 0, 0.002 to 3 decimals", ql,
                       ql > 0 and math.floor(ql * 1000) / 1000 == 0.002,
                       "leading digits 0.002..."))
    root = q_cubic_root()
    rows.append(_claim("q_cubic zero in (1/3, 1)", root.mid,
                       1.0 / 3.0 < root.lo and root.hi < 1.0 and root.width <= 1e-12,
                       "bisection to 1e-12"))
    pt = p_of_t(SPLIT)
    rows.append(_claim("p(8/7) > q_log(8/7)/(12 (8/7)^2) > 0", pt,
                       pt > q_log_minorant(SPLIT) > 0, "split point"))
    rows.append(_claim("triangle_sqrt(1/3) > 0 with q_cubic(1/3) < 0",
                       margin_triangle_sqrt(1.0 / 3.0),
                       margin_triangle_sqrt(1.0 / 3.0) > 0 and q_cubic(1.0 / 3.0) < 0,
                       "non-positive branch"))
    rows.append(_exact("ln(1+t) majorant at t=1", kuang_rational, F(1), F(25, 36)))
    rows.append(_claim("ln 2 < 25/36", math.log(2.0), math.log(2.0) < 25 / 36,
                       "substituted logarithm bound"))
    return rows


__all__ = [
    "p_of_t", "q_log", "q_log_minorant", "subst_s", "suffice_arg", "margin_suffice1",
    "margin_suffice2", "margin_suffice3", "q_cubic", "h_sextic", "margin_triangle_sqrt",
    "dq_dx_bound", "boundary_q", "boundary_t", "log_g_sign_check", "RootBracket",
    "localize_root", "q_cubic_root", "sign_changes", "ProofFn", "PROOF_FNS", "get_fn",
    "chain_exceptions", "kuang_rational", "Checkpoint", "checkpoints", "SPLIT", "H_COEFFS",
]
