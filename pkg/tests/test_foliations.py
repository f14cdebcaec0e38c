import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load

from polarfol.catalog import CATALOG
from polarfol.foliations import (
    FoliationSpec,
    SpecError,
    abelian_planes,
    boundary_s_v,
    boundary_s_xi,
    build_candidate,
    canonical_extension,
    canonical_spec,
    enumerate_candidates,
    extension_matches,
    parabolic,
    projection_lemma_instance,
    random_choices,
    validate,
)
from polarfol.linalg import Subspace, lincomb, vadd
from polarfol.roots import maximal_torus_in_k0

CACHE = {}


def rsys(name):
    if name not in CACHE:
        CACHE[name] = load(name)
    return CACHE[name]


def _cases(rs, seed=0):
    return {s.case for s in enumerate_candidates(rs, seed)}


# -- build_candidate ----------------------------------------------------------

def test_su21_case_d_is_n_minus_line():
    g, rs = rsys("su21")
    for xi in rs.simple(0).space.basis + (vadd(*rs.simple(0).space.basis),):
        s = build_candidate(rs, FoliationSpec("D", 0, None, (xi,)))
        assert s.dim == 2 and rs.n.dim == 3
        assert rs.n.contains_subspace(s)
        assert all(g.inner(b, xi) == 0 for b in s.basis)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_so25_case_e_any_plane(coeffs):
    g, rs = rsys("so25")
    a2 = rs.simple(1)
    x = lincomb(coeffs[:3], a2.space.basis, g.dim)
    y = lincomb(coeffs[3:], a2.space.basis, g.dim)
    if Subspace(g.dim, [x, y]).dim < 2:
        return
    s = build_candidate(rs, FoliationSpec("E", 1, None, (x, y)))
    assert g.is_subalgebra(s) and rs.a_plus_n.dim - s.dim == 2


def test_sl3_case_a_full_a_gives_n():
    g, rs = rsys("sl3r")
    assert build_candidate(rs, FoliationSpec("A", None, None, rs.a_basis)) == rs.n


@pytest.mark.parametrize("name", CATALOG)
def test_every_candidate_has_codimension_two(name):
    g, rs = rsys(name)
    for spec in enumerate_candidates(rs, 5, random_per_case=2):
        s = build_candidate(rs, spec)
        assert g.is_subalgebra(s)
        assert rs.a_plus_n.contains_subspace(s) and rs.a_plus_n.dim - s.dim == 2


# -- enumeration --------------------------------------------------------------

def test_enumerate_sl2():
    g, rs = rsys("sl2r")
    specs = enumerate_candidates(rs)
    assert [s.case for s in specs] == ["D"]


def test_enumerate_sl3():
    g, rs = rsys("sl3r")
    assert _cases(rs) == {"A", "B", "D"}


def test_enumerate_so25():
    g, rs = rsys("so25")
    assert _cases(rs) == {"A", "B", "D", "E"}
    assert [s.alpha for s in enumerate_candidates(rs) if s.case == "E"] == [1, 1]


def test_enumerate_product_has_case_c():
    g, rs = rsys("sum:sl2r+sl2r")
    assert _cases(rs) == {"A", "B", "C", "D"}


def test_enumerate_order_and_determinism():
    g, rs = rsys("so25")
    specs = enumerate_candidates(rs, 4, random_per_case=2)
    assert specs == sorted(specs, key=FoliationSpec.sort_key)
    assert specs == enumerate_candidates(rs, 4, random_per_case=2)


def test_random_choices_are_seeded():
    g, rs = rsys("su31")
    a = random_choices(rs, "E", 0, None, seed=9, count=3)
    assert a == random_choices(rs, "E", 0, None, seed=9, count=3)
    assert len(a) == 3 and all(g.is_abelian(g.span(p.vectors)) for p in a)


def test_su21_has_no_abelian_plane():
    # g_alpha is 2-dim and [g_alpha, g_alpha] = g_2alpha != 0
    g, rs = rsys("su21")
    assert next(abelian_planes(rs, rs.simple(0)), None) is None
    with pytest.raises(SpecError, match="none|no abelian plane"):
        canonical_spec(rs, "E", 0)


# -- validation errors --------------------------------------------------------

def test_error_case_a_rank_one():
    g, rs = rsys("sl2r")
    with pytest.raises(SpecError, match="rank >= 2"):
        validate(rs, FoliationSpec("A", None, None, ()))


def test_error_case_a_plane_not_in_a():
    g, rs = rsys("sl3r")
    with pytest.raises(SpecError, match="v is not"):
        validate(rs, FoliationSpec("A", None, None, (rs.a_basis[0], rs.simple(0).space.basis[0])))


def test_error_case_b_line_not_in_kernel():
    g, rs = rsys("sl3r")
    al = rs.simple(0)
    with pytest.raises(SpecError, match="l is not a line in ker alpha"):
        validate(rs, FoliationSpec("B", 0, None, (al.dual, al.space.basis[0])))


def test_error_case_b_l_alpha_wrong_space():
    g, rs = rsys("sl3r")
    ker = rs.kernel_of(rs.simple(0).covector).basis[0]
    with pytest.raises(SpecError, match="l_alpha is not a line in g_alpha"):
        validate(rs, FoliationSpec("B", 0, None, (ker, rs.simple(1).space.basis[0])))


def test_error_case_c_equal_roots():
    g, rs = rsys("sum:sl2r+sl2r")
    xi = rs.simple(0).space.basis[0]
    with pytest.raises(SpecError, match="alpha = beta"):
        validate(rs, FoliationSpec("C", 0, 0, (xi, xi)))


def test_error_case_c_not_orthogonal():
    g, rs = rsys("sl3r")
    vs = (rs.simple(0).space.basis[0], rs.simple(1).space.basis[0])
    with pytest.raises(SpecError, match="simple roots not orthogonal"):
        validate(rs, FoliationSpec("C", 0, 1, vs))


def test_error_case_d_xi_outside_root_space():
    g, rs = rsys("sl3r")
    with pytest.raises(SpecError, match="xi is not a nonzero vector of g_alpha"):
        validate(rs, FoliationSpec("D", 0, None, (rs.simple(1).space.basis[0],)))
    with pytest.raises(SpecError, match="xi is not"):
        validate(rs, FoliationSpec("D", 0, None, (g.zero(),)))


def test_error_case_e_multiplicity_one():
    g, rs = rsys("sl3r")
    with pytest.raises(SpecError, match="no abelian plane in g_alpha"):
        canonical_spec(rs, "E", 0)


def test_error_case_e_plane_not_abelian():
    g, rs = rsys("su21")
    with pytest.raises(SpecError, match="v_alpha is not abelian"):
        validate(rs, FoliationSpec("E", 0, None, rs.simple(0).space.basis))


def test_error_bad_indices_and_case():
    g, rs = rsys("sl3r")
    with pytest.raises(SpecError, match="not a simple root index"):
        validate(rs, FoliationSpec("D", 5, None, ()))
    with pytest.raises(SpecError, match="unknown case"):
        validate(rs, FoliationSpec("F", 0, None, ()))


# -- parabolic data -----------------------------------------------------------

@pytest.mark.parametrize("name", ["sl3r", "su21", "so25", "sl4r"])
def test_parabolic_empty_phi(name):
    g, rs = rsys(name)
    P = parabolic(rs, set())
    assert P.a_Phi == rs.a and P.n_Phi == rs.n and P.l_Phi == rs.g0


@pytest.mark.parametrize("name", ["sl3r", "su21", "so25", "sl4r"])
def test_parabolic_full_phi(name):
    g, rs = rsys(name)
    P = parabolic(rs, range(rs.rank))
    assert P.n_Phi.dim == 0 and P.q_Phi == Subspace.full(g.dim)


def test_parabolic_sl3_alpha1():
    g, rs = rsys("sl3r")
    P = parabolic(rs, {0})
    a1, a2 = rs.simple_roots
    assert P.a_Phi == rs.kernel_of(a1.covector) and P.a_Phi.dim == 1
    a12 = rs.space_of(tuple(x + y for x, y in zip(a1.covector, a2.covector)))
    assert P.n_Phi == a2.space + a12 and P.n_Phi.dim == 2
    assert P.g_Phi.dim == 3 and g.brackets(P.g_Phi, P.g_Phi) == P.g_Phi


@pytest.mark.parametrize("name", CATALOG)
def test_boundary_rank(name):
    from itertools import combinations

    g, rs = rsys(name)
    for k in range(rs.rank + 1):
        for Phi in combinations(range(rs.rank), k):
            P = parabolic(rs, Phi)
            assert (rs.a & P.g_Phi).dim == len(Phi)
            assert P.q_Phi.contains_subspace(rs.a_plus_n)


def test_parabolic_rejects_non_simple():
    g, rs = rsys("sl3r")
    with pytest.raises(SpecError):
        parabolic(rs, {2})


# -- canonical extension ------------------------------------------------------

@pytest.mark.parametrize("name", ["sl3r", "so25", "sl4r"])
def test_extension_of_zero(name):
    g, rs = rsys(name)
    for i in range(rs.rank):
        P = parabolic(rs, {i})
        assert canonical_extension(rs, {i}, Subspace.zero(g.dim)) == P.a_Phi + P.n_Phi


@pytest.mark.parametrize("name", CATALOG)
def test_extension_matches_d_and_e(name):
    g, rs = rsys(name)
    for spec in enumerate_candidates(rs, 2):
        got = extension_matches(rs, spec)
        assert got is (True if spec.case in "DE" else None)


def test_extension_errors():
    g, rs = rsys("sl3r")
    outside = g.span([rs.simple(1).space.basis[0]])
    with pytest.raises(SpecError, match="not inside g_Phi"):
        canonical_extension(rs, {0}, outside)
    # two root vectors of g_Phi whose bracket leaves their span
    up, down = rs.simple(0).space.basis[0], rs.roots[rs.root_index(tuple(-c for c in rs.simple(0).covector))].space.basis[0]
    with pytest.raises(SpecError, match="not a subalgebra"):
        canonical_extension(rs, {0}, g.span([up, down]))


def test_boundary_data_shapes():
    g, rs = rsys("su21")
    al = rs.simple(0)
    xi = al.space.basis[0]
    assert boundary_s_xi(rs, al, xi).dim == 2
    g5, rs5 = rsys("so25")
    a2 = rs5.simple(1)
    assert boundary_s_v(rs5, a2, g5.span(a2.space.basis[:2])).dim == 2


# -- projection lemma ---------------------------------------------------------

def _random_in(rng, space, n):
    return lincomb([rng.randint(-2, 2) for _ in range(space.dim)], space.basis, n)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["su21", "so25", "su31", "so1n:3"]), st.integers(0, 10_000))
def test_projection_lemma(name, seed):
    g, rs = rsys(name)
    rng = random.Random(seed)
    t = maximal_torus_in_k0(rs)
    lam = rng.choice(rs.positive_roots)
    while True:
        H = _random_in(rng, rs.a, g.dim)
        if rs.evaluate(lam.covector, H):
            break
    # T + H and T_k + X_k put H and g_lam into the projection; extras are arbitrary Borel elements
    gens = [vadd(_random_in(rng, t, g.dim), H)]
    gens += [vadd(_random_in(rng, t, g.dim), X) for X in lam.space.basis]
    gens += [_random_in(rng, t + rs.a_plus_n, g.dim) for _ in range(rng.randint(0, 1))]
    q = g.generate_subalgebra(gens)
    if not (t + rs.a_plus_n).contains_subspace(q):
        raise AssertionError("Borel subalgebra is not closed")
    hyp, concl = projection_lemma_instance(rs, q, lam)
    assert hyp and concl


def test_projection_lemma_hypothesis_can_fail():
    g, rs = rsys("su21")
    lam = rs.simple(0)
    # n projects to itself, which meets a only in 0
    q = rs.n
    hyp, concl = projection_lemma_instance(rs, q, lam)
    assert not hyp and concl
    with pytest.raises(ValueError, match="not a subalgebra"):
        projection_lemma_instance(rs, lam.space, lam)
