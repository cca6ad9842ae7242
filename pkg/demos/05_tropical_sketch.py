"""Taming a high-order polynomial with max-plus geometry.

R = x + y^8 + x*y^6*z + 2*x*y^3 + 2*x*n^2 is hopeless to picture, but in
log coordinates each term is a plane and the polynomial is approximately
their maximum. That piecewise-linear surrogate is convex, so box extrema
sit on vertices and can be found exactly; labelling grid points by the
winning term sketches the regions where each term dominates.
"""

import math

from wargrid import Box, SymbolicPoly, extremum_over_box, region_sample, trop_eval, tropicalize

x, y, z, n = (SymbolicPoly.variable(v) for v in "xyzn")
poly = x + y**8 + x * y**6 * z + 2 * x * y**3 + 2 * x * n**2
print(f"R = {poly}")

tp = tropicalize(poly, variables=("x", "y", "z", "n"))
print("\ntropical terms (ln coeff, exponents):")
for c, e in zip(tp.coeffs, tp.exponents):
    print(f"  ({c:.4f}, {e})")

box = Box(lows=(-1.0,) * 4, highs=(1.0,) * 4)
value, vertex = extremum_over_box(tp, box)
print(f"\nmax over [-1,1]^4 (log coordinates): {value:g} at vertex {vertex}")

point = {"x": 1.5, "y": 2.0, "z": 0.8, "n": 1.2}
log_point = [math.log(point[v]) for v in ("x", "y", "z", "n")]
surrogate = trop_eval(tp, log_point)
truth = math.log(poly.evaluate(point))
print(f"\nsandwich check at {point}:")
print(f"  tropical {surrogate:.4f} <= ln R {truth:.4f} <= tropical + ln 5 = {surrogate + math.log(5):.4f}")

labels = region_sample(tp, box, resolution=9)
flat = labels.reshape(-1)
print("\ndominance share per term over a 9^4 grid:")
for k in range(len(tp.coeffs)):
    share = (flat == k).sum() / flat.size
    print(f"  term {k} {tp.exponents[k]}: {share:.1%}")
