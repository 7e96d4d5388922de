"""The two-variable function q(x, y) along slices of fixed y: negative from the
left boundary onward and strictly decreasing in x.

    python3 demos/two_variable_slices.py
"""

from gammaineq import catalog as C, proofsteps as P, verifier as V

for y in (-0.99, -0.9, -0.75, -0.6, -0.51):
    x0 = C.thm2_boundary(y)
    xs = [x0, x0 + 0.1, x0 + 1, x0 + 10]
    qs = ", ".join(f"{C.q_xy(x, y):.4e}" for x in xs)
    v = V.check_monotone("THM2-MONO", y, (x0, x0 + 50), samples=400)
    print(f"y = {y:<6} boundary x0 = {x0:<10.5g} q = [{qs}]  decreasing: {v.decreasing}")

# at the boundary q reduces to the one-variable margin at t = -(y+1)/(2y+1)
print("\nboundary value vs -x0 * margin_thm1(t):")
for y in (-0.9, -0.75, -0.6):
    t = P.boundary_t(y)
    print(f"  y = {y:<6} q = {P.boundary_q(y):.10e}   -x0 m(t) = "
          f"{-C.thm2_boundary(y) * C.margin_thm1(t):.10e}")

# the elementary bound on dq/dx vanishes at the boundary and is negative after it
print("\ndq/dx and its upper bound at y = -0.75:")
for x in (0.25, 0.5, 1.0, 5.0):
    print(f"  x = {x:<5} dq/dx = {C.dq_dx(x, -0.75): .5f}  bound = {P.dq_dx_bound(x, -0.75): .5f}")

# outside the region the verdict mechanism does report non-monotone slices
neg = V.check_monotone("THM2-MONO", -0.75, (-0.2, 0.2))
print(f"\ncontrol slice x in [-0.2, 0.2]: decreasing = {neg.decreasing}")
