"""Mean curvature along the case-E orbits of so(2,5), alpha = alpha_2.

xi = (2 e_1 + e_2)/10 in g_alpha2 has |xi| = 1 exactly, so the closed form
can be evaluated verbatim and compared with the conjugated trace.
"""

from fractions import Fraction

from polarfol.catalog import build
from polarfol.foliations import FoliationSpec
from polarfol.geometry import mean_curvature_along_orbit, orbit_number
from polarfol.linalg import fmt, lincomb, vscale, vsub
from polarfol.roots import decompose

g, a = build("so25")
rs = decompose(g, a)
alpha = rs.simple(1)
b = alpha.space.basis
xi = lincomb([Fraction(1, 5), Fraction(1, 10), 0], b, g.dim)
assert g.norm2(xi) == 1
spec = FoliationSpec("E", 1, None, (xi, b[2]))
D = orbit_number(rs, alpha)

print(f"|alpha|^2 = {fmt(alpha.norm2)}, D = {D}")
print(f"{'t':>6}  {'coefficient':>12}  agrees")
for t in map(Fraction, ["0", "1", "-1", "1/2", "3", "-7/4"]):
    c = t * alpha.norm2 * D / (2 + t * t * alpha.norm2)
    closed = vscale(c, vsub(vscale(t, alpha.dual), vscale(2, xi)))
    brute = mean_curvature_along_orbit(g, rs, spec, xi, t)
    print(f"{fmt(t):>6}  {fmt(c):>12}  {brute == closed}")
