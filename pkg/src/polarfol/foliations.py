"""Candidate subalgebras of the codimension-two polar foliations, parabolic
subalgebras with their Langlands data, and canonical extensions."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .linalg import Mat, Subspace, Vector, kernel, lincomb, solve
from .roots import Root, RootSystemData, maximal_torus_in_k0

CASES = ("A", "B", "C", "D", "E")
PLANE_SEARCH_CAP = 1000


class SpecError(ValueError):
    """A FoliationSpec violates one of its defining clauses."""


@dataclass(frozen=True)
class FoliationSpec:
    """One member of the five families.

    ``vectors`` holds the generators: A the plane v in a; B the line l in
    ker(alpha) then the line l_alpha; C l_alpha then l_beta; D xi; E the plane
    v_alpha. ``choice`` is "canonical" or "random:<seed>:<n>".
    """

    case: str
    alpha: int | None = None
    beta: int | None = None
    vectors: tuple = ()
    choice: str = "canonical"

    def sort_key(self):
        seed = (-1, -1)
        if self.choice.startswith("random:"):
            _, s, n = self.choice.split(":")
            seed = (int(s), int(n))
        return (self.case, -1 if self.alpha is None else self.alpha, -1 if self.beta is None else self.beta, seed)

    def to_json(self) -> dict:
        from .linalg import fmt

        # simple roots are numbered from 1 outside the library, as alpha_1, alpha_2, ...
        return {
            "case": self.case,
            "alpha": None if self.alpha is None else self.alpha + 1,
            "beta": None if self.beta is None else self.beta + 1,
            "choice": self.choice,
            "vectors": [[fmt(c) for c in v] for v in self.vectors],
        }


# -- validation ---------------------------------------------------------------

def _simple(rs: RootSystemData, i, what: str = "alpha") -> Root:
    if not isinstance(i, int) or not 0 <= i < rs.rank:
        raise SpecError(f"{what} is not a simple root index (0..{rs.rank - 1})")
    return rs.simple(i)


def _line(rs: RootSystemData, v, space: Subspace, clause: str) -> Subspace:
    v = tuple(v)
    if len(v) != rs.g.dim or not any(v) or v not in space:
        raise SpecError(clause)
    return rs.g.span([v])


def _plane(rs: RootSystemData, vs, space: Subspace, clause: str) -> Subspace:
    if len(vs) != 2 or any(len(v) != rs.g.dim for v in vs):
        raise SpecError(clause)
    p = rs.g.span(vs)
    if p.dim != 2 or not space.contains_subspace(p):
        raise SpecError(clause)
    return p


def orthogonal_simple(rs: RootSystemData, i: int, j: int) -> bool:
    return i != j and rs.ip(rs.simple(i).covector, rs.simple(j).covector) == 0


def validate(rs: RootSystemData, spec: FoliationSpec) -> dict:
    """Check the defining clauses of ``spec``; returns its named pieces."""
    c = spec.case
    if c not in CASES:
        raise SpecError(f"unknown case {c!r}")
    vs = spec.vectors
    if c == "A":
        if rs.rank < 2:
            raise SpecError("case A needs rank >= 2")
        return {"v": _plane(rs, vs, rs.a, "v is not a 2-dimensional subspace of a")}
    alpha = _simple(rs, spec.alpha)
    if c == "B":
        if rs.rank < 2:
            raise SpecError("case B needs rank >= 2 (ker alpha = 0)")
        if len(vs) != 2:
            raise SpecError("case B needs a line l in ker alpha and a line l_alpha in g_alpha")
        ker = rs.kernel_of(alpha.covector)
        return {
            "alpha": alpha,
            "l": _line(rs, vs[0], ker, "l is not a line in ker alpha"),
            "l_alpha": _line(rs, vs[1], alpha.space, "l_alpha is not a line in g_alpha"),
        }
    if c == "C":
        beta = _simple(rs, spec.beta, "beta")
        if spec.alpha == spec.beta:
            raise SpecError("alpha = beta: case C needs two distinct simple roots")
        if not orthogonal_simple(rs, spec.alpha, spec.beta):
            raise SpecError("simple roots not orthogonal")
        if len(vs) != 2:
            raise SpecError("case C needs lines l_alpha and l_beta")
        return {
            "alpha": alpha,
            "beta": beta,
            "l_alpha": _line(rs, vs[0], alpha.space, "l_alpha is not a line in g_alpha"),
            "l_beta": _line(rs, vs[1], beta.space, "l_beta is not a line in g_beta"),
        }
    if c == "D":
        if len(vs) != 1:
            raise SpecError("case D needs one vector xi in g_alpha")
        return {"alpha": alpha, "xi": _line(rs, vs[0], alpha.space, "xi is not a nonzero vector of g_alpha")}
    # E
    if alpha.multiplicity < 2:
        raise SpecError("no abelian plane in g_alpha (dim g_alpha < 2)")
    if len(vs) != 2:
        raise SpecError("case E needs a plane v_alpha in g_alpha")
    v = _plane(rs, vs, alpha.space, "v_alpha is not a 2-dimensional subspace of g_alpha")
    if not rs.g.is_abelian(v):
        raise SpecError("v_alpha is not abelian")
    return {"alpha": alpha, "v": v}


# -- construction -------------------------------------------------------------

def _n_minus(rs: RootSystemData, w: Subspace) -> Subspace:
    return rs.g.orthogonal_complement(w, rs.n)


def build_candidate(rs: RootSystemData, spec: FoliationSpec) -> Subspace:
    """The subalgebra ``s`` of ``a + n`` described by ``spec``, certified to be
    a subalgebra of codimension two."""
    g = rs.g
    parts = validate(rs, spec)
    c = spec.case
    if c == "A":
        s = g.orthogonal_complement(parts["v"], rs.a) + rs.n
    elif c == "B":
        s = g.orthogonal_complement(parts["l"], rs.a) + _n_minus(rs, parts["l_alpha"])
    elif c == "C":
        s = rs.a + _n_minus(rs, parts["l_alpha"] + parts["l_beta"])
    elif c == "D":
        s = rs.kernel_of(parts["alpha"].covector) + _n_minus(rs, parts["xi"])
    else:
        s = rs.a + _n_minus(rs, parts["v"])
    if not g.is_subalgebra(s):
        raise AssertionError(f"case {c} candidate is not a subalgebra")
    if rs.a_plus_n.dim - s.dim != 2 or not rs.a_plus_n.contains_subspace(s):
        raise AssertionError(f"case {c} candidate does not have codimension 2 in a + n")
    return s


# -- parameter sampling -------------------------------------------------------

def _random_vector(rng: random.Random, space: Subspace, n: int) -> Vector:
    while True:
        coeffs = [rng.randint(-3, 3) for _ in range(space.dim)]
        if any(coeffs):
            return lincomb(coeffs, space.basis, n)


def _random_plane(rng: random.Random, space: Subspace, n: int) -> tuple[Vector, Vector]:
    while True:
        x = _random_vector(rng, space, n)
        y = _random_vector(rng, space, n)
        if Subspace(n, [x, y]).dim == 2:
            return x, y


def _bracket_kernel(rs: RootSystemData, x: Sequence, space: Subspace) -> Subspace:
    """``{y in space : [x, y] = 0}``."""
    g = rs.g
    cols = [g.bracket(x, b) for b in space.basis]
    ker = kernel(Mat.from_columns(cols, g.dim))
    return g.span(lincomb(c, space.basis, g.dim) for c in ker.basis)


def _needs_search(rs: RootSystemData, alpha: Root) -> bool:
    return rs.is_root(tuple(2 * c for c in alpha.covector))


def abelian_planes(rs: RootSystemData, alpha: Root, seed: int = 0) -> Iterator[tuple[Vector, Vector]]:
    """Abelian planes in ``g_alpha``: the canonical one first, then seeded random ones.

    Yields nothing when none is found; with ``2 alpha`` a root the search is
    a sampler capped at PLANE_SEARCH_CAP trials, so an empty result means
    "none found", not nonexistence.
    """
    space = alpha.space
    n = rs.g.dim
    if space.dim < 2:
        return
    if not _needs_search(rs, alpha):
        yield space.basis[0], space.basis[1]
        rng = random.Random(seed)
        while True:
            yield _random_plane(rng, space, n)
    rng = random.Random(seed)
    x = space.basis[0]
    for trial in range(PLANE_SEARCH_CAP):
        if trial:
            x = _random_vector(rng, space, n)
        z = _bracket_kernel(rs, x, space)
        if z.dim >= 2:
            break
    else:
        return
    line = Subspace(n, [x])
    yield x, next(v for v in z.basis if v not in line)
    misses = 0
    while misses < PLANE_SEARCH_CAP:
        x = _random_vector(rng, space, n)
        z = _bracket_kernel(rs, x, space)
        y = _random_vector(rng, z, n)
        if Subspace(n, [x, y]).dim < 2:
            misses += 1
            continue
        misses = 0
        yield x, y


def find_abelian_plane(rs: RootSystemData, alpha: Root, seed: int = 0) -> tuple[Vector, Vector] | None:
    return next(abelian_planes(rs, alpha, seed), None)


def _take(it: Iterator, k: int) -> list:
    out = []
    for x in it:
        out.append(x)
        if len(out) == k:
            break
    return out


def random_choices(rs: RootSystemData, case: str, alpha: int | None, beta: int | None, seed: int, count: int) -> list[FoliationSpec]:
    """``count`` seeded random parameter choices for one case and root (pair)."""
    rng = random.Random(seed)
    n = rs.g.dim
    out = []
    if case == "E":
        planes = _take(abelian_planes(rs, rs.simple(alpha), seed), count + 1)[1:]
        return [FoliationSpec("E", alpha, None, p, f"random:{seed}:{k}") for k, p in enumerate(planes)]
    for k in range(count):
        tag = f"random:{seed}:{k}"
        if case == "A":
            vs = _random_plane(rng, rs.a, n)
        elif case == "B":
            a_ = rs.simple(alpha)
            vs = (_random_vector(rng, rs.kernel_of(a_.covector), n), _random_vector(rng, a_.space, n))
        elif case == "C":
            vs = (_random_vector(rng, rs.simple(alpha).space, n), _random_vector(rng, rs.simple(beta).space, n))
        else:
            vs = (_random_vector(rng, rs.simple(alpha).space, n),)
        out.append(FoliationSpec(case, alpha, beta, vs, tag))
    return out


def _has_choices(rs: RootSystemData, case: str, alpha, beta) -> bool:
    """Whether the parameter space of a case has more than one point."""
    if case == "A":
        return rs.rank > 2
    a_ = rs.simple(alpha)
    if case == "B":
        return rs.rank > 2 or a_.multiplicity > 1
    if case == "C":
        return a_.multiplicity > 1 or rs.simple(beta).multiplicity > 1
    if case == "D":
        return a_.multiplicity > 1
    return a_.multiplicity > 2


def canonical_spec(rs: RootSystemData, case: str, alpha: int | None = None, beta: int | None = None, seed: int = 0) -> FoliationSpec:
    """The FoliationSpec with default parameters: first basis vectors of the relevant
    spaces, and for E the first abelian plane found."""
    if case == "A":
        if rs.rank < 2:
            raise SpecError("case A needs rank >= 2")
        return FoliationSpec("A", None, None, (rs.a_basis[0], rs.a_basis[1]))
    if case not in CASES:
        raise SpecError(f"unknown case {case!r}")
    al = _simple(rs, alpha)
    xi = al.space.basis[0]
    if case == "B":
        if rs.rank < 2:
            raise SpecError("case B needs rank >= 2 (ker alpha = 0)")
        spec = FoliationSpec("B", alpha, None, (rs.kernel_of(al.covector).basis[0], xi))
    elif case == "C":
        be = _simple(rs, beta, "beta")
        spec = FoliationSpec("C", alpha, beta, (xi, be.space.basis[0]))
    elif case == "D":
        spec = FoliationSpec("D", alpha, None, (xi,))
    else:
        if al.multiplicity < 2:
            raise SpecError("no abelian plane in g_alpha (dim g_alpha < 2)")
        plane = find_abelian_plane(rs, al, seed)
        if plane is None:
            raise SpecError(f"no abelian plane in g_alpha found ({PLANE_SEARCH_CAP} seeded trials)")
        spec = FoliationSpec("E", alpha, None, plane)
    validate(rs, spec)
    return spec


def enumerate_candidates(rs: RootSystemData, sampler_seed: int = 0, random_per_case: int = 1) -> list[FoliationSpec]:
    """Every applicable case per simple root (pair), canonical parameters plus
    ``random_per_case`` seeded random ones, in canonical order."""
    out: list[FoliationSpec] = []
    r = rs.rank

    def add(case, alpha=None, beta=None):
        out.append(canonical_spec(rs, case, alpha, beta, sampler_seed))
        if random_per_case and _has_choices(rs, case, alpha, beta):
            out.extend(random_choices(rs, case, alpha, beta, sampler_seed, random_per_case))

    if r >= 2:
        add("A")
    for i in range(r):
        if r >= 2:
            add("B", i)
        for j in range(i + 1, r):
            if orthogonal_simple(rs, i, j):
                add("C", i, j)
        add("D", i)
        if find_abelian_plane(rs, rs.simple(i), sampler_seed) is not None:
            add("E", i)
    out.sort(key=FoliationSpec.sort_key)
    return out


# -- parabolic subalgebras ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class ParabolicData:
    Phi: frozenset
    a_Phi: Subspace
    l_Phi: Subspace
    n_Phi: Subspace
    m_Phi: Subspace
    g_Phi: Subspace
    q_Phi: Subspace
    roots_Phi: tuple = field(default=())


def _support(r: Root, rs: RootSystemData) -> set:
    return {k for k, c in enumerate(r.simple_coords) if c}


def parabolic(rs: RootSystemData, Phi) -> ParabolicData:
    """Langlands data of the parabolic subalgebra determined by ``Phi`` (simple
    root positions), with every invariant certified."""
    g = rs.g
    Phi = frozenset(Phi)
    if not Phi <= set(range(rs.rank)):
        raise SpecError("Phi is not a set of simple roots")
    a_Phi = rs.a
    for i in Phi:
        a_Phi = a_Phi & rs.kernel_of(rs.simple(i).covector)
    in_phi = [r for r in rs.roots if _support(r, rs) <= Phi]
    l_Phi = rs.g0
    for r in in_phi:
        l_Phi = l_Phi + r.space
    n_Phi = g.span(v for r in rs.positive_roots if not _support(r, rs) <= Phi for v in r.space.basis)
    m_Phi = g.orthogonal_complement(a_Phi, l_Phi)
    g_Phi = g.brackets(l_Phi, l_Phi)
    q_Phi = m_Phi + a_Phi + n_Phi
    checks = {
        "a_Phi central in l_Phi": not g.brackets(a_Phi, l_Phi).dim,
        "q_Phi is a subalgebra": g.is_subalgebra(q_Phi),
        "l_Phi normalizes n_Phi": g.normalizes(l_Phi, n_Phi),
        "g_Phi = [m_Phi, m_Phi]": g_Phi == g.brackets(m_Phi, m_Phi),
        "rank of g_Phi": (rs.a & g_Phi).dim == len(Phi),
        "q_Phi dimension": q_Phi.dim == l_Phi.dim + n_Phi.dim,
    }
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise AssertionError("parabolic invariants failed: " + ", ".join(failed))
    return ParabolicData(Phi, a_Phi, l_Phi, n_Phi, m_Phi, g_Phi, q_Phi, tuple(in_phi))


def canonical_extension(rs: RootSystemData, Phi, h_hat: Subspace) -> Subspace:
    """``h_hat + a_Phi + n_Phi`` for a subalgebra ``h_hat`` of ``g_Phi``."""
    g = rs.g
    P = parabolic(rs, Phi)
    if not P.g_Phi.contains_subspace(h_hat):
        raise SpecError("h_hat is not inside g_Phi")
    if not g.is_subalgebra(h_hat):
        raise SpecError("h_hat is not a subalgebra")
    if not g.normalizes(P.m_Phi, P.a_Phi + P.n_Phi):
        raise AssertionError("m_Phi does not normalize a_Phi + n_Phi")
    ext = h_hat + P.a_Phi + P.n_Phi
    if not g.is_subalgebra(ext):
        raise AssertionError("canonical extension is not a subalgebra")
    return ext


def boundary_s_xi(rs: RootSystemData, alpha: Root, xi: Sequence) -> Subspace:
    """``(g_alpha - R xi) + g_2alpha``, the rank-one data of case D."""
    g = rs.g
    two = rs.space_of(tuple(2 * c for c in alpha.covector))
    return g.orthogonal_complement(g.span([xi]), alpha.space) + two


def boundary_s_v(rs: RootSystemData, alpha: Root, v: Subspace) -> Subspace:
    """``R H_alpha + (g_alpha - v) + g_2alpha``, the rank-one data of case E."""
    g = rs.g
    two = rs.space_of(tuple(2 * c for c in alpha.covector))
    return g.span([alpha.dual]) + g.orthogonal_complement(v, alpha.space) + two


def extension_matches(rs: RootSystemData, spec: FoliationSpec) -> bool | None:
    """Whether the case D/E candidate is the canonical extension of its
    rank-one boundary data; None for the other cases."""
    if spec.case not in ("D", "E"):
        return None
    parts = validate(rs, spec)
    alpha = parts["alpha"]
    if spec.case == "D":
        h_hat = boundary_s_xi(rs, alpha, spec.vectors[0])
    else:
        h_hat = boundary_s_v(rs, alpha, parts["v"])
    return canonical_extension(rs, {spec.alpha}, h_hat) == build_candidate(rs, spec)


# -- projection lemma ---------------------------------------------------------

def project(rs: RootSystemData, s: Subspace, onto: Subspace, along: Subspace) -> Subspace:
    """Image of ``s`` under the projection onto ``onto`` along ``along``."""
    n = rs.g.dim
    basis = list(onto.basis) + list(along.basis)
    M = Mat.from_columns(basis, n)
    k = onto.dim
    out = []
    for v in s.basis:
        c = solve(M, v)
        out.append(lincomb(c[:k], onto.basis, n))
    return Subspace(n, out)


def projection_lemma_instance(rs: RootSystemData, q: Subspace, lam: Root) -> tuple[bool, bool]:
    """(hypotheses, conclusion) for a subalgebra ``q`` of ``t + a + n`` and a
    positive root: if ``g_lam`` lies in the projection of ``q`` to ``a + n``
    and some ``H`` in ``a`` within that projection has ``lam(H) != 0``, then
    ``g_lam`` lies in ``q``."""
    t = maximal_torus_in_k0(rs)
    if not rs.g.is_subalgebra(q) or not (t + rs.a_plus_n).contains_subspace(q):
        raise ValueError("q is not a subalgebra of t + a + n")
    proj = project(rs, q, rs.a_plus_n, t)
    hyp = proj.contains_subspace(lam.space) and any(
        rs.evaluate(lam.covector, h) != 0 for h in (proj & rs.a).basis
    )
    return hyp, q.contains_subspace(lam.space)
