"""Why 1/2 and e^-gamma cannot be improved in ln(x+a) - 1/x < psi(x) < ln(x+b) - 1/x.

Raising a or lowering b by any epsilon produces a failure: at large x for a,
near x = 0 for b.

    python3 demos/sharpness.py
"""

import math

from gammaineq import specfun as sf, verifier as V
from gammaineq.context import EXP_NEG_GAMMA

for x in (1e-6, 1e-3, 1.0, 1e3, 1e6):
    psi = sf.digamma(x)
    lo = math.log(x + 0.5) - 1 / x
    hi = math.log(x + EXP_NEG_GAMMA) - 1 / x
    print(f"x = {x:<7g} psi - lower = {psi - lo:.3e}   upper - psi = {hi - psi:.3e}")

for eps in (0.1, 0.01, 0.001, 0.0):
    lo = V.sharpness_probe("PSI-SHARP", "lower_half", eps, (1.0, 1e8), samples=4000)
    hi = V.sharpness_probe("PSI-SHARP", "upper_shift", eps, (1e-12, 1.0), samples=4000)
    print(f"eps = {eps:<6g} first failure: a = 1/2 + eps at x = {lo},  b = e^-gamma - eps at x = {hi}")
