"""Walk through the t/(1+2t) gamma-ratio inequality: its margin, the split at 8/7,
and the chain of sufficient conditions that covers the small-t side.

    python3 demos/gamma_ratio_margin.py
"""

import numpy as np

from gammaineq import catalog, proofsteps as P, verifier as V
from gammaineq.grid import Axis

print("margin_thm1(t) = 1 - psi(t) - (1+2t)/(2t^2) [ln G(t/(1+2t)) - ln G(t)]")
for t in (1e-6, 1e-3, 0.1, 0.5, 1.0, 8 / 7, 10.0, 1e3):
    print(f"  t = {t:<10.4g} margin = {catalog.margin_thm1(t): .6e}")
print("ratio to 2t/3 as t -> 0:", ", ".join(
    f"{catalog.margin_thm1(t) / (2 * t / 3):.6f}" for t in (1e-2, 1e-4, 1e-6)))

# the margin behaves like 2t/3 near 0 and decays slowly at infinity, so the
# whole-line scan has its minimum at an end of the sampled range
rep = V.scan(V.ScanConfig("THM1", region={"t": Axis("t", 1e-6, 1e4, "log", 20_000)}))
print(f"\nfloat scan of 20000 log-spaced t: min {rep.min_margin:.4e} at t = {rep.argmin['t']:.3g}")

print("\nabove 8/7 an elementary minorant is enough:")
for t in (8 / 7, 2.0, 10.0):
    print(f"  t = {t:<6.4g} q_log/(12t^2) = {P.q_log_minorant(t):.3e} <= p(t) = {P.p_of_t(t):.3e}")

print("\nbelow 8/7 each condition implies the next:")
ts = np.linspace(1e-3, P.SPLIT * (1 - 1e-9), 2000)
for name in ("triangle_sqrt", "suffice3", "suffice2", "suffice1"):
    vals = [P.get_fn(name)(t) for t in ts]
    i = int(np.argmin(vals))
    print(f"  {name:<14} min {vals[i]:.3e} at t = {ts[i]:.4f}")
exc = P.chain_exceptions(list(ts))
print("  broken links:", {k: len(v) for k, v in exc.items()})

root = P.q_cubic_root()
print(f"\nq_cubic changes sign once on (1/3, 1), at t0 = {root.mid:.12f}")
for r in P.checkpoints():
    print(f"  {'ok ' if r.ok else 'BAD'} {r.name}")
