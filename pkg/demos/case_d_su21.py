"""Case D on su(1,2): the normal space is span{H_alpha, (1 - theta) xi},
the section has curvature -|alpha|^2, and the mean curvature is 3 H_alpha.
"""

from polarfol.catalog import build
from polarfol.foliations import build_candidate, canonical_spec
from polarfol.geometry import mean_curvature_at_e, normal_space_in_p, polarity_check, section_curvature
from polarfol.linalg import fmt, vscale, vsub
from polarfol.roots import decompose

g, a = build("su21")
rs = decompose(g, a)
alpha = rs.simple(0)
print("multiplicities:", [r.multiplicity for r in rs.positive_roots])

spec = canonical_spec(rs, "D", 0)
xi = spec.vectors[0]
s = build_candidate(rs, spec)
print("dim s =", s.dim, " dim a+n =", rs.a_plus_n.dim)

N = normal_space_in_p(g, rs, s)
expected = g.span([alpha.dual, vsub(xi, g.theta_of(xi))])
print("normal space matches span{H_alpha, (1-theta)xi}:", N == expected)
print("polar, hyperpolar:", polarity_check(g, rs, s))
print("section curvature:", fmt(section_curvature(g, N)), " -|alpha|^2 =", fmt(-alpha.norm2))

H = mean_curvature_at_e(g, rs, s)
print("mean curvature = 3 H_alpha:", H == vscale(3, alpha.dual))
print("s is an ideal of a+n:", g.normalizes(rs.a_plus_n, s))
