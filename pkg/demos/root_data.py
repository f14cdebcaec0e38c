"""Restricted roots of so(2,5) and the delta identity.

Run: python demos/root_data.py
"""

from polarfol.catalog import build
from polarfol.linalg import fmt
from polarfol.roots import decompose

g, a = build("so25")
rs = decompose(g, a)
print(f"{g.name}: dim {g.dim}, rank {rs.rank}, type {rs.dynkin_label()}, dim k0 {rs.k0.dim}")

for r in rs.positive_roots:
    print(f"  {r.simple_coords}  mult {r.multiplicity}  level {r.level}  |lambda|^2 = {fmt(r.norm2)}")

# 2<delta, alpha> = |alpha|^2 (dim g_alpha + 2 dim g_2alpha) for each simple root
for i, alpha in enumerate(rs.simple_roots, 1):
    two = tuple(2 * c for c in alpha.covector)
    lhs = 2 * rs.ip(rs.delta, alpha.covector)
    rhs = alpha.norm2 * (alpha.multiplicity + 2 * rs.multiplicity(two))
    print(f"alpha_{i}: 2<delta, alpha> = {fmt(lhs)}, predicted {fmt(rhs)}")
