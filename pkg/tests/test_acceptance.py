"""The eight acceptance criteria, each at its stated size and tolerance."""

import math
import subprocess
import sys
import time
from fractions import Fraction as F

import mpmath as mp
import numpy as np

from gammaineq import bounds as B
from gammaineq import catalog as C
from gammaineq import proofsteps as P
from gammaineq import specfun as sf
from gammaineq import verifier as V
from gammaineq.cli import main
from gammaineq.errors import DegenerateInputError
from gammaineq.grid import Axis

NOISE = 1e-12
EULER = 0.57721566490153286061
ZETA3 = 1.2020569031595942854


def _log_uniform(rng, lo, hi, n):
    return np.exp(rng.uniform(math.log(lo), math.log(hi), n))


# 1 ------------------------------------------------------------------------------------

def test_1_checkpoint_reproduction(acceptance, capsys):
    t0 = time.perf_counter()
    code = main(["repro", "--format", "json"])
    elapsed = time.perf_counter() - t0
    capsys.readouterr()
    rows = {r.name: r for r in P.checkpoints()}
    exact = {
        "q_cubic(0)": (P.q_cubic, F(0), F(-3)),
        "q_cubic(1/3)": (P.q_cubic, F(1, 3), F(-2, 3)),
        "q_cubic(1)": (P.q_cubic, F(1), F(14)),
        "h(0)": (P.h_sextic, F(0), F(9)),
        "h(1/3)": (P.h_sextic, F(1, 3), F(-700, 81)),
        "h(8/7)": (P.h_sextic, F(8, 7), F(-404759, 117649)),
        "h'(0)": (lambda t: P.h_sextic(t, 1), F(0), F(-18)),
        "h''(0)": (lambda t: P.h_sextic(t, 2), F(0), F(-186)),
        "h'''(0)": (lambda t: P.h_sextic(t, 3), F(0), F(-360)),
    }
    ok = code == 0 and elapsed < 1.0
    for name, (fn, arg, expected) in exact.items():
        ok &= fn(arg) == expected  # exact rationals
        ok &= rows[name].ok
        ok &= abs(fn(float(arg)) - float(expected)) <= 1e-9 * max(1.0, abs(float(expected)))
    ql = P.q_log(8 / 7)
    ok &= ql > 0 and math.floor(ql * 1000) / 1000 == 0.002
    acceptance(1, "checkpoint reproduction", ok,
               f"{len(rows)} checkpoints, q_log(8/7)={ql:.6f}, {elapsed:.2f} s")
    assert ok


# 2 ------------------------------------------------------------------------------------

def test_2_gamma_ratio_scan(acceptance):
    t0 = time.perf_counter()
    fl = V.scan(V.ScanConfig("THM1", region={"t": Axis("t", 1e-6, 1e4, "log", 100_000)}))
    ce = V.scan(V.ScanConfig("THM1", region={"t": Axis("t", 1e-6, 1e4, "log", 1000)},
                             mode="certified"))
    elapsed = time.perf_counter() - t0
    persistent = [v for r in (fl, ce) for v in r.violations
                  if v["escalated"]["status"] == "persistent"]
    ok = (fl.samples == 100_000 and ce.samples == 1000 and fl.min_margin > 0
          and ce.min_margin > 0 and fl.ok and ce.ok and not persistent and elapsed < 10)
    acceptance(2, "one-variable gamma-ratio scan", ok,
               f"float min {fl.min_margin:.4e} at t={fl.argmin['t']:.3g}, "
               f"certified min {ce.min_margin:.4e}, {elapsed:.2f} s")
    assert ok


# 3 ------------------------------------------------------------------------------------

def test_3_two_variable_scan(acceptance):
    t0 = time.perf_counter()
    region = {"y": Axis("y", -0.999, -0.501, "lin", 50)}
    neg = V.scan(V.ScanConfig("THM2-NEG", region=region, axis_samples={"x": 200},
                              monotonicity=True, keep_rows=True))
    mono = V.scan(V.ScanConfig("THM2-MONO", region=region, axis_samples={"x": 200}))
    ys = Axis("y", -0.999, -0.501, "lin", 50).values()
    gaps = [abs(P.boundary_q(y) - C.q_xy(C.thm2_boundary(y), y)) for y in ys]
    starts = {}
    for point, _ in neg.rows:
        x, y = point
        starts[y] = min(x, starts.get(y, math.inf))
    elapsed = time.perf_counter() - t0
    slices = neg.monotonicity
    ok = (neg.samples == 50 * 200 and neg.ok and neg.min_margin > 0
          and len(slices) == 50 and all(s["decreasing"] for s in slices)
          and mono.ok and mono.min_margin > 0
          and all(starts[y] == C.thm2_boundary(y) for y in ys)
          and max(gaps) <= 1e-12 and elapsed < 10)
    acceptance(3, "two-variable q scan", ok,
               f"max q = {-neg.min_margin:.4e}, 50/50 slices decreasing, "
               f"boundary identity {max(gaps):.1e}, {elapsed:.2f} s")
    assert ok


# 4 ------------------------------------------------------------------------------------

@mp.workdps(30)
def _sandwich_failures(rng, n):
    xs = _log_uniform(rng, 1e-3, 1e4, n)
    fails = {pid: 0 for pid in B.BOUND_PAIRS}

    def check(pid, lo, ref, hi):
        scale = 1 + max(abs(ref), abs(lo or 0.0), abs(hi))
        below = lo is None or ref - mp.mpf(lo) > -NOISE * scale
        above = mp.mpf(hi) - ref > -NOISE * scale
        if not (below and above):
            fails[pid] += 1

    for x in xs:
        ref = mp.digamma(mp.mpf(x))
        for key in ("QICUI", "BETA", "LN", "SHARP"):
            lo, hi = B.psi_bounds(key, x)
            check(f"PSI-{key}", lo, ref, hi)
        check("LOG-KUANG", None, mp.log1p(1 / mp.mpf(x)), B.log_upper_kuang(x))
    ks = rng.integers(1, 7, n)
    for k, x in zip(ks, _log_uniform(rng, 1e-3, 1e4, n)):
        k = int(k)
        ref = (-1) ** (k + 1) * mp.psi(k, mp.mpf(x))
        for key in ("BETA", "HALF"):
            lo, hi = B.polygamma_bounds(key, k, x)
            check(f"POLY-{key}", lo, ref, hi)
    return fails


def _margin_ok(rec, point, params=None):
    (m, scale), = [v for v in rec.evaluate(point, "float", params).values()]
    return m > -NOISE * scale


def test_4_lemma_suite(acceptance):
    rng = np.random.default_rng(2024)
    fails = _sandwich_failures(rng, 10_000)

    batir = C.get("BATIR")
    batir_bad, n = 0, 0
    while n < 10_000:
        a, b = (float(v) for v in 100.0 * (1.0 - rng.random(2)))  # (0, 100]
        try:
            batir_bad += not _margin_ok(batir, (a, b))
        except DegenerateInputError:
            continue
        n += 1

    intmean = C.get("INTMEAN")
    intmean_bad = 0
    for i in (0, 1, 2):
        for s, t in _log_uniform(rng, 1e-3, 100, (1000, 2)):
            if abs(s - t) <= 1e-8 * max(s, t):
                continue
            for side, order in (("lower", -i - 1.0), ("upper", -float(i))):
                intmean_bad += not _margin_ok(intmean, (i, float(s), float(t)),
                                              {"side": side, "order": order})
    ok = not any(fails.values()) and batir_bad == 0 and intmean_bad == 0
    acceptance(4, "lemma suite", ok,
               f"sandwich failures {sum(fails.values())}/70000, BATIR {batir_bad}/10000, "
               f"INTMEAN {intmean_bad}/6000")
    assert ok, fails


# 5 ------------------------------------------------------------------------------------

def test_5_proof_chain(acceptance):
    below = np.linspace(1e-4, P.SPLIT * (1 - 1e-12), 10_000)
    above = np.linspace(P.SPLIT, 100.0, 10_000)
    exc = P.chain_exceptions(list(below) + list(above))
    total = sum(len(v) for v in exc.values())
    ok = len(exc) == 4 and total == 0
    acceptance(5, "proof-chain soundness", ok,
               ", ".join(f"{k}: {len(v)}" for k, v in exc.items()))
    assert ok


# 6 ------------------------------------------------------------------------------------

def test_6_sharpness(acceptance):
    lo = V.sharpness_probe("PSI-SHARP", "lower_half", 0.01, (10, 1e6))
    hi = V.sharpness_probe("PSI-SHARP", "upper_shift", 0.01, (1e-6, 1))
    lo0 = V.sharpness_probe("PSI-SHARP", "lower_half", 0.0, (10, 1e6))
    hi0 = V.sharpness_probe("PSI-SHARP", "upper_shift", 0.0, (1e-6, 1))
    lo0_wide = V.sharpness_probe("PSI-SHARP", "lower_half", 0.0, (1e-6, 1e6))
    hi0_wide = V.sharpness_probe("PSI-SHARP", "upper_shift", 0.0, (1e-6, 1e6))
    ok = (lo is not None and hi is not None
          and lo0 is None and hi0 is None and lo0_wide is None and hi0_wide is None)
    acceptance(6, "sharpness of the PSI-SHARP constants", ok,
               f"lower_half+0.01 fails at x={lo}, upper_shift-0.01 fails at x={hi}, none at eps=0")
    assert ok


# 7 ------------------------------------------------------------------------------------

def test_7_kernel(acceptance):
    consts = [
        abs(sf.digamma(1.0) + EULER),
        abs(sf.digamma(0.5) + EULER + 2 * math.log(2)),
        abs(sf.polygamma(1, 1.0) - math.pi ** 2 / 6),
        abs(sf.polygamma(2, 1.0) + 2 * ZETA3),
    ]
    rng = np.random.default_rng(77)
    xs = _log_uniform(rng, 1e-3, 1e4, 10_000)
    rec = max(abs(sf.digamma(x + 1) - sf.digamma(x) - 1 / x) for x in xs)
    misses = 0
    with mp.workdps(30):
        for x in _log_uniform(rng, 1e-6, 1e6, 10_000):
            misses += float(mp.digamma(mp.mpf(x))) not in sf.digamma_enclosure(x)
    ok = max(consts) <= 1e-12 and rec <= 1e-12 and misses == 0
    acceptance(7, "special-function kernel", ok,
               f"constants {max(consts):.1e}, recurrence {rec:.1e}, containment misses {misses}")
    assert ok


# 8 ------------------------------------------------------------------------------------

def test_8_determinism(acceptance):
    outs = []
    for workers in (1, 2, 8):
        proc = subprocess.run(
            [sys.executable, "-m", "gammaineq", "check", "THM1", "--format", "json",
             "--workers", str(workers)],
            capture_output=True, check=False)
        outs.append((proc.returncode, proc.stdout))
    ok = all(code == 0 for code, _ in outs) and len({out for _, out in outs}) == 1
    acceptance(8, "determinism across 1, 2, 8 workers", ok,
               f"{len(outs[0][1])} bytes, {len({out for _, out in outs})} distinct outputs")
    assert ok
