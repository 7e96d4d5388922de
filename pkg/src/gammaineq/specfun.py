"""Log-gamma, digamma and polygamma with matching certified enclosures.

Every evaluation shifts the argument upward with the recurrences

    ln G(x) = ln G(x+n) - ln(x (x+1) ... (x+n-1))
    psi^(k)(x) = psi^(k)(x+n) + (-1)^(k+1) k! sum_j (x+j)^-(k+1)

until it reaches the asymptotic regime, then sums the Stirling-type series
with Bernoulli numbers B_2 .. B_14.  On x > 0 the truncation error of these
series has the sign of, and is smaller than, the first omitted term, which
gives the enclosures their truncation half-width.  Rounding is covered by the
slack policy documented in :mod:`gammaineq.enclosure`.

Near the zeros of ln G (x = 1, 2) the float routine ``lgamma`` switches to the
Taylor expansion of ln G(2+z) in zeta values so that relative accuracy holds
there as well.  Enclosures always come from the asymptotic path.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from . import enclosure as E
from .enclosure import Enclosure
from .errors import DomainError

EULER_GAMMA = 0.5772156649015329
_HALF_LOG_2PI = 0.9189385332046728
_ONE_MINUS_GAMMA = 0.42278433509846713

# B_2, B_4, ..., B_14 and the first omitted B_16
_BERNOULLI = [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
              Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6)]
_B16 = Fraction(-3617, 510)
_NTERMS = len(_BERNOULLI)

# ln G: B_2j / (2j (2j-1)) x^-(2j-1)
_LGAMMA_C = [float(b / (2 * j * (2 * j - 1))) for j, b in enumerate(_BERNOULLI, 1)]
_LGAMMA_R = float(abs(_B16) / (16 * 15))
# psi: B_2j / (2j) x^-2j
_DIGAMMA_C = [float(b / (2 * j)) for j, b in enumerate(_BERNOULLI, 1)]
_DIGAMMA_R = float(abs(_B16) / 16)

# zeta(k) - 1 for k = 2..30, the Taylor coefficients of ln G(2+z) up to sign and 1/k
_ZETA_M1 = [
    0.6449340668482264, 0.2020569031595943, 0.08232323371113819,
    0.03692775514336993, 0.01734306198444914, 0.008349277381922827,
    0.00407735619794434, 0.0020083928260822143, 0.0009945751278180853,
    0.0004941886041194645, 0.0002460865533080483, 0.00012271334757848915,
    6.124813505870483e-05, 3.058823630702049e-05, 1.528225940865187e-05,
    7.637197637899763e-06, 3.81729326499984e-06, 1.908212716553939e-06,
    9.539620338727962e-07, 4.769329867878064e-07, 2.38450502727733e-07,
    1.1921992596531106e-07, 5.960818905125948e-08, 2.980350351465228e-08,
    1.4901554828365043e-08, 7.45071178983543e-09, 3.725334024788457e-09,
    1.862659723513049e-09, 9.313274324196682e-10,
]
_TAYLOR_C = [(-1) ** k * z / k for k, z in enumerate(_ZETA_M1, 2)]

_SHIFT_MIN = 8.0
_WIDE_BELOW = 1e-3


def _check_x(x: float) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise TypeError(f"expected a real number, got {type(x).__name__}")
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"argument must be positive and finite, got {x!r}")
    return x


def _check_k(k: int) -> int:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise DomainError(f"polygamma order must be an integer >= 1, got {k!r}")
    return k


@lru_cache(maxsize=None)
def _poly_coeffs(k: int):
    """Series coefficients and shift threshold for psi^(k), k >= 1.

    Magnitude of (-1)^(k+1) psi^(k)(x) ~ (k-1)!/x^k + k!/(2x^(k+1))
    + sum_j B_2j (2j+k-1)!/((2j)! x^(2j+k)).
    """
    coeffs = [float(b * math.factorial(2 * j + k - 1) / math.factorial(2 * j))
              for j, b in enumerate(_BERNOULLI, 1)]
    rem = float(abs(_B16) * math.factorial(15 + k) / math.factorial(16))
    # truncation relative to the leading term below ~1e-17
    ratio = rem / math.factorial(k - 1)
    threshold = max(_SHIFT_MIN, (ratio * 1e17) ** (1.0 / 16))
    return coeffs, rem, threshold


def _nshift(x: float, threshold: float) -> int:
    return max(0, math.ceil(threshold - x))


# asymptotic kernels: return (value, truncation bound, magnitude, stages) ---

def _lgamma_asym(x: float):
    lx = math.log(x)
    head = (x - 0.5) * lx - x + _HALF_LOG_2PI
    r = 1.0 / x
    r2 = r * r
    s = 0.0
    for c in reversed(_LGAMMA_C):
        s = s * r2 + c
    s *= r
    rem = _LGAMMA_R * r ** 15
    mag = abs((x - 0.5) * lx) + x + _HALF_LOG_2PI + abs(s)
    return head + s, rem, mag, _NTERMS + 6


def _digamma_tail(x: float):
    """psi(x) - ln(x) from the series, valid for x >= 8."""
    r = 1.0 / x
    r2 = r * r
    s = 0.0
    for c in reversed(_DIGAMMA_C):
        s = s * r2 + c
    s *= r2
    tail = -0.5 * r - s
    rem = _DIGAMMA_R * r2 ** 8
    return tail, rem, 0.5 * r + abs(s), _NTERMS + 4


def _polygamma_asym(k: int, x: float):
    """(-1)^(k+1) psi^(k)(x) from the series."""
    coeffs, rem_c, _ = _poly_coeffs(k)
    r = 1.0 / x
    r2 = r * r
    s = 0.0
    for c in reversed(coeffs):
        s = s * r2 + c
    rk = r ** k
    val = rk * (math.factorial(k - 1) + 0.5 * math.factorial(k) * r + s * r2)
    rem = rem_c * rk * r2 ** 8
    return val, rem, val + 2 * abs(s * r2 * rk), _NTERMS + k + 5


# float evaluation -----------------------------------------------------------

def _lgamma2p_small(z: float) -> float:
    """ln G(2+z) for |z| <= 0.5."""
    s = 0.0
    for c in reversed(_TAYLOR_C):
        s = s * z + c
    return z * (_ONE_MINUS_GAMMA + z * s)


def _lgamma_shifted(x: float) -> float:
    n = _nshift(x, _SHIFT_MIN)
    if n == 0:
        return _lgamma_asym(x)[0]
    prod = 1.0
    for j in range(n):
        prod *= x + j
    return _lgamma_asym(x + n)[0] - math.log(prod)


def lgamma(x: float) -> float:
    """Natural logarithm of the gamma function for x > 0."""
    x = _check_x(x)
    if x < 0.5:
        return lgamma1p(x) - math.log(x)
    if x < 1.5:
        z = x - 1.0
        return _lgamma2p_small(z) - math.log1p(z)
    if x < 2.5:
        return _lgamma2p_small(x - 2.0)
    return _lgamma_shifted(x)


def lgamma1p(x: float) -> float:
    """ln G(1+x), accurate for small |x|; requires x > -1."""
    x = float(x)
    if not math.isfinite(x) or x <= -1.0:
        raise DomainError(f"lgamma1p needs x > -1, got {x!r}")
    if -0.5 <= x <= 0.5:
        return _lgamma2p_small(x) - math.log1p(x)
    if x <= 1.5:
        return _lgamma2p_small(x - 1.0)
    return lgamma(1.0 + x)


def lgamma1p_diff(a: float, b: float, d: float | None = None) -> float:
    """ln G(1+a) - ln G(1+b) without cancellation when a and b are close to 0.

    ``d`` optionally supplies a - b when the caller knows it more accurately
    than the rounded subtraction.
    """
    a, b = float(a), float(b)
    if a <= -1.0 or b <= -1.0:
        raise DomainError("lgamma1p_diff needs arguments > -1")
    if not (abs(a) <= 0.5 and abs(b) <= 0.5):
        return lgamma1p(a) - lgamma1p(b)
    d = a - b if d is None else float(d)
    if d == 0.0:
        return 0.0
    # S(a) - S(b) with S(z) = ln G(2+z), using (a^k - b^k)/(a - b) = h_k
    h = 1.0
    bp = 1.0
    acc = 0.0
    for c in _TAYLOR_C:
        bp *= b
        h = a * h + bp
        acc += c * h
    s_diff = d * (_ONE_MINUS_GAMMA + acc)
    return s_diff - math.log1p(d / (1.0 + b))


def digamma(x: float) -> float:
    """psi(x) = G'(x)/G(x) for x > 0."""
    x = _check_x(x)
    n = _nshift(x, _SHIFT_MIN)
    acc = 0.0
    for j in range(n - 1, -1, -1):
        acc += 1.0 / (x + j)
    y = x + n
    return math.log(y) + _digamma_tail(y)[0] - acc


def digamma_minus_log(x: float) -> float:
    """psi(x) - ln x, free of the ln x cancellation for large x."""
    x = _check_x(x)
    if x >= _SHIFT_MIN:
        return _digamma_tail(x)[0]
    return digamma(x) - math.log(x)


def polygamma(k: int, x: float) -> float:
    """k-th derivative of psi, k >= 1, x > 0."""
    k = _check_k(k)
    x = _check_x(x)
    return _polygamma_unchecked(k, x)


def _polygamma_unchecked(k: int, x: float) -> float:
    _, _, threshold = _poly_coeffs(k)
    n = _nshift(x, threshold)
    acc = 0.0
    for j in range(n - 1, -1, -1):
        acc += (x + j) ** -(k + 1)
    val = _polygamma_asym(k, x + n)[0] + math.factorial(k) * acc
    return val if k % 2 == 1 else -val


def psi_n(n: int, x: float) -> float:
    """psi^(n) for n >= 0 (n = 0 is digamma)."""
    return digamma(x) if n == 0 else polygamma(n, x)


# enclosures -----------------------------------------------------------------

def _slack(mag: float, stages: int) -> float:
    return E.SLACK_ULPS * stages * math.ulp(mag)


def _lgamma_point_enclosure(x: float) -> Enclosure:
    n = _nshift(x, _SHIFT_MIN)
    y = x + n
    val, rem, mag, stages = _lgamma_asym(y)
    if n:
        prod = 1.0
        for j in range(n):
            prod *= x + j
        lp = math.log(prod)
        val -= lp
        mag += abs(lp) + n
        stages += 2 * n + 2
    return Enclosure.around(val, rem + _slack(mag, stages))


def _digamma_point_enclosure(x: float) -> Enclosure:
    n = _nshift(x, _SHIFT_MIN)
    acc = 0.0
    for j in range(n - 1, -1, -1):
        acc += 1.0 / (x + j)
    y = x + n
    tail, rem, mag, stages = _digamma_tail(y)
    ly = math.log(y)
    val = ly + tail - acc
    mag += ly + acc
    stages += 2 * n + 3
    return Enclosure.around(val, rem + _slack(mag, stages), wide=x < _WIDE_BELOW)


def _polygamma_point_enclosure(k: int, x: float) -> Enclosure:
    _, _, threshold = _poly_coeffs(k)
    n = _nshift(x, threshold)
    acc = 0.0
    for j in range(n - 1, -1, -1):
        acc += (x + j) ** -(k + 1)
    val, rem, mag, stages = _polygamma_asym(k, x + n)
    acc *= math.factorial(k)
    val += acc
    mag += acc
    stages += (k + 3) * n + 2
    enc = Enclosure.around(val, rem + _slack(mag, stages))
    return enc if k % 2 == 1 else -enc


def _as_arg(x) -> Enclosure | float:
    if isinstance(x, Enclosure):
        if x.lo <= 0.0:
            raise DomainError(f"argument enclosure must be positive, got {x}")
        return x
    return _check_x(x)


def lgamma_enclosure(x) -> Enclosure:
    """Enclosure of ln G over a point or over an argument enclosure."""
    x = _as_arg(x)
    if not isinstance(x, Enclosure):
        return _lgamma_point_enclosure(x)
    a, b = _lgamma_point_enclosure(x.lo), _lgamma_point_enclosure(x.hi)
    hi = max(a.hi, b.hi)  # convexity
    if x.lo == x.hi:
        return a
    psi_lo = _digamma_point_enclosure(x.lo)
    psi_hi = _digamma_point_enclosure(x.hi)
    if psi_lo.lo >= 0.0:
        lo = a.lo
    elif psi_hi.hi <= 0.0:
        lo = b.lo
    else:
        # tangent line at the left end bounds a convex function from below
        lo = E.down(a.lo + psi_lo.lo * (x.hi - x.lo))
    return Enclosure(min(lo, a.lo, b.lo), hi, a.wide or b.wide)


def digamma_enclosure(x) -> Enclosure:
    """Enclosure of psi; intersected with ln x - 1/x < psi(x) < ln x - 1/(2x)."""
    x = _as_arg(x)
    if isinstance(x, Enclosure):
        if x.lo == x.hi:
            return digamma_enclosure(x.lo)
        lo = _digamma_point_enclosure(x.lo)
        hi = _digamma_point_enclosure(x.hi)
        return Enclosure(lo.lo, hi.hi, lo.wide or hi.wide)
    enc = _digamma_point_enclosure(x)
    lx = math.log(x)
    sandwich = Enclosure(E.down(lx - 1.0 / x, 8), E.up(lx - 0.5 / x, 8))
    lo, hi = max(enc.lo, sandwich.lo), min(enc.hi, sandwich.hi)
    return Enclosure(lo, hi, enc.wide)


def digamma_minus_log_enclosure(x) -> Enclosure:
    """Enclosure of psi(x) - ln x."""
    x = _as_arg(x)
    if not isinstance(x, Enclosure) and x >= _SHIFT_MIN:
        tail, rem, mag, stages = _digamma_tail(x)
        return Enclosure.around(tail, rem + _slack(mag, stages))
    if isinstance(x, Enclosure) and x.lo >= _SHIFT_MIN:
        # psi(x) - ln x is increasing on (0, inf)
        a = digamma_minus_log_enclosure(x.lo)
        b = digamma_minus_log_enclosure(x.hi)
        return Enclosure(a.lo, b.hi)
    return digamma_enclosure(x) - E.log(x)


def polygamma_enclosure(k: int, x) -> Enclosure:
    """Enclosure of psi^(k), k >= 1, over a point or an argument enclosure."""
    k = _check_k(k)
    x = _as_arg(x)
    if not isinstance(x, Enclosure):
        return _polygamma_point_enclosure(k, x)
    a = _polygamma_point_enclosure(k, x.lo)
    if x.lo == x.hi:
        return a
    # psi^(k) is decreasing for odd k and increasing for even k
    b = _polygamma_point_enclosure(k, x.hi)
    return a.hull(b)


def psi_n_enclosure(n: int, x) -> Enclosure:
    return digamma_enclosure(x) if n == 0 else polygamma_enclosure(n, x)
