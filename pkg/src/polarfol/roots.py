"""Restricted root space decomposition and the data derived from it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .lie import LieAlgebraData
from .linalg import (
    Mat,
    Subspace,
    Vector,
    lincomb,
    rational_eigenvalues,
    simplify,
    solve,
    vscale,
)


class DecompositionError(ValueError):
    pass


def is_maximal_abelian(g: LieAlgebraData, a: Subspace) -> bool:
    """``a`` lies in p, is abelian, and equals its centralizer in p."""
    if not g.p_space.contains_subspace(a) or not g.is_abelian(a):
        return False
    return g.centralizer(a, within=g.p_space) == a


@dataclass(frozen=True, eq=False)
class Root:
    covector: tuple  # values on a_basis
    space: Subspace
    multiplicity: int
    level: int
    dual: Vector  # H_lambda with <H_lambda, H> = lambda(H)
    simple_coords: tuple
    norm2: Fraction
    positive: bool

    def __repr__(self) -> str:
        cs = ",".join(str(c) for c in self.simple_coords)
        return f"Root(({cs}), mult={self.multiplicity}, level={self.level})"


@dataclass(eq=False)
class RootSystemData:
    g: LieAlgebraData
    a: Subspace
    a_basis: tuple
    roots: tuple
    g0: Subspace
    k0: Subspace
    positive_ids: tuple
    simple_ids: tuple
    H_Lambda: Vector
    delta: tuple
    max_level: int
    gram_a: Mat
    h_reg: Vector

    @property
    def rank(self) -> int:
        return len(self.a_basis)

    @cached_property
    def _index(self) -> dict:
        return {r.covector: i for i, r in enumerate(self.roots)}

    def root_index(self, covector: Sequence) -> int | None:
        return self._index.get(tuple(simplify(c) for c in covector))

    def is_root(self, covector: Sequence) -> bool:
        return self.root_index(covector) is not None

    def space_of(self, covector: Sequence) -> Subspace:
        """``g_lambda``; the zero subspace when ``lambda`` is not a root."""
        i = self.root_index(covector)
        if i is None:
            if not any(covector):
                return self.g0
            return Subspace.zero(self.g.dim)
        return self.roots[i].space

    def multiplicity(self, covector: Sequence) -> int:
        i = self.root_index(covector)
        return 0 if i is None else self.roots[i].multiplicity

    def simple(self, i: int) -> Root:
        """The i-th simple root."""
        return self.roots[self.simple_ids[i]]

    @property
    def positive_roots(self) -> list[Root]:
        return [self.roots[i] for i in self.positive_ids]

    @property
    def simple_roots(self) -> list[Root]:
        return [self.roots[i] for i in self.simple_ids]

    def ip(self, lam: Sequence, mu: Sequence):
        """``<lambda, mu> = <H_lambda, H_mu>`` on covectors."""
        return simplify(self.gram_a_inv.bilinear(lam, mu))

    @cached_property
    def gram_a_inv(self) -> Mat:
        return self.gram_a.inverse()

    def dual(self, covector: Sequence) -> Vector:
        c = self.gram_a_inv.apply(covector)
        return lincomb(c, self.a_basis, self.g.dim)

    def a_coords(self, h: Sequence) -> Vector:
        """Coordinates of ``h`` in ``a_basis``."""
        return self._a_change.apply(self.a.coords(h))

    @cached_property
    def _a_change(self) -> Mat:
        return Mat.from_columns([self.a.coords(v) for v in self.a_basis], self.rank).inverse()

    def evaluate(self, covector: Sequence, h: Sequence):
        """``lambda(h)`` for ``h`` in a."""
        return simplify(sum((c * x for c, x in zip(covector, self.a_coords(h))), 0))

    def kernel_of(self, covector: Sequence) -> Subspace:
        """``ker lambda`` inside a."""
        h = self.dual(covector)
        return self.g.orthogonal_complement(self.g.span([h]), self.a)

    @cached_property
    def n(self) -> Subspace:
        return self.g.span(v for r in self.positive_roots for v in r.space.basis)

    @cached_property
    def a_plus_n(self) -> Subspace:
        return self.a + self.n

    def cartan_matrix(self) -> list[list[int]]:
        S = self.simple_roots
        return [[simplify(2 * self.ip(x.covector, y.covector) / y.norm2) for y in S] for x in S]

    def dynkin_label(self) -> str:
        """Cosmetic type label of the restricted root system."""
        return _dynkin_label(self)

    def summary(self) -> dict:
        from .linalg import fmt

        return {
            "dim": self.g.dim,
            "rank": self.rank,
            "type": self.dynkin_label(),
            "dim_k0": self.k0.dim,
            "max_level": self.max_level,
            "roots": [
                {
                    "simple_coords": list(r.simple_coords),
                    "covector": [fmt(c) for c in r.covector],
                    "multiplicity": r.multiplicity,
                    "level": r.level,
                    "norm2": fmt(r.norm2),
                }
                for r in self.positive_roots
            ],
        }


def _simultaneous_eigenspaces(g: LieAlgebraData, a_basis: Sequence[Vector]) -> list[tuple[tuple, Subspace]]:
    pieces: list[tuple[tuple, Subspace]] = [((), Subspace.full(g.dim))]
    for h in a_basis:
        T = g.ad_matrix(h)
        refined = []
        for cov, W in pieces:
            B = W.basis
            images = [T.apply(w) for w in B]
            R_cols = [W.coords(img) for img in images]  # raises unless W is invariant
            R = Mat.from_columns(R_cols, len(B))
            for mu, E in rational_eigenvalues(R):
                vecs = [lincomb(c, B, g.dim) for c in E.basis]
                refined.append((cov + (mu,), Subspace(g.dim, vecs)))
        pieces = refined
    return pieces


def decompose(g: LieAlgebraData, a: Subspace, a_basis: Sequence[Vector] | None = None) -> RootSystemData:
    """Restricted root space decomposition of ``g`` with respect to ``a``.

    Positivity comes from ``H_reg = sum 10**i a_basis[i]``; simple roots are
    the positive roots that are not sums of two positive roots.
    """
    if not is_maximal_abelian(g, a):
        raise DecompositionError("non-maximal a: not a maximal abelian subspace of p")
    a_basis = tuple(a.basis) if a_basis is None else tuple(tuple(v) for v in a_basis)
    r = len(a_basis)
    pieces = _simultaneous_eigenspaces(g, a_basis)
    zero = (0,) * r
    g0 = None
    raw = {}
    for cov, W in pieces:
        cov = tuple(simplify(c) for c in cov)
        if cov == zero:
            g0 = W
        else:
            raw[cov] = W
    if g0 is None:
        raise DecompositionError("no zero weight space")
    if sum(W.dim for W in raw.values()) + g0.dim != g.dim:
        raise DecompositionError("eigenspace dimensions do not add up")

    weights = [10 ** i for i in range(r)]
    h_reg = lincomb(weights, a_basis, g.dim)
    val = {cov: sum(w * c for w, c in zip(weights, cov)) for cov in raw}
    if any(v == 0 for v in val.values()):
        raise DecompositionError("H_reg is not regular")
    pos = {cov for cov, v in val.items() if v > 0}
    for cov in pos:
        if tuple(-c for c in cov) not in raw:
            raise DecompositionError("roots do not come in +- pairs")
    simple = []
    for cov in pos:
        decomposable = any(
            tuple(c - d for c, d in zip(cov, mu)) in pos for mu in pos if mu != cov
        )
        if not decomposable:
            simple.append(cov)
    if len(simple) != r:
        raise DecompositionError("number of simple roots differs from the rank")
    gram = Mat([[g.inner(x, y) for y in a_basis] for x in a_basis], r)
    gram_inv = gram.inverse()
    simple = _chain_order(simple, gram_inv)
    A = Mat(simple, r)  # rows are simple covectors
    try:
        At_inv = A.T.inverse()
    except ZeroDivisionError:
        raise DecompositionError("simple roots are not a basis of a*") from None

    def simple_coords(cov):
        cs = At_inv.apply(cov)
        if any(Fraction(c).denominator != 1 for c in cs):
            raise DecompositionError("non-integral simple-root coordinates")
        return tuple(int(c) for c in cs)

    entries = []
    for cov, W in raw.items():
        sc = simple_coords(cov)
        positive = cov in pos
        if positive and any(c < 0 for c in sc) or not positive and any(c > 0 for c in sc):
            raise DecompositionError("root is not a signed combination of simple roots")
        d = lincomb(gram_inv.apply(cov), a_basis, g.dim)
        entries.append(
            Root(
                covector=cov,
                space=W,
                multiplicity=W.dim,
                level=sum(sc),
                dual=d,
                simple_coords=sc,
                norm2=simplify(gram_inv.bilinear(cov, cov)),
                positive=positive,
            )
        )
    positives = sorted((e for e in entries if e.positive), key=lambda e: (e.level, tuple(-c for c in e.simple_coords)))
    by_cov = {e.covector: e for e in entries}
    negatives = [by_cov[tuple(-c for c in e.covector)] for e in positives]
    roots = tuple(positives + negatives)
    npos = len(positives)
    simple_set = set(simple)
    simple_ids = tuple(sorted((i for i in range(npos) if roots[i].covector in simple_set), key=lambda i: simple.index(roots[i].covector)))

    # H^Lambda: alpha_i(H^Lambda) = 1 for every simple root
    h_coords = solve(A, (1,) * r)
    H_Lambda = lincomb(h_coords, a_basis, g.dim)
    delta = tuple(
        simplify(Fraction(sum((e.multiplicity * e.covector[i] for e in positives), 0), 2)) for i in range(r)
    )
    k0 = g0 & g.k_space
    rs = RootSystemData(
        g=g,
        a=a,
        a_basis=a_basis,
        roots=roots,
        g0=g0,
        k0=k0,
        positive_ids=tuple(range(npos)),
        simple_ids=simple_ids,
        H_Lambda=H_Lambda,
        delta=delta,
        max_level=max(e.level for e in positives),
        gram_a=gram,
        h_reg=h_reg,
    )
    rs.__dict__["gram_a_inv"] = gram_inv
    failed = [k for k, ok in certify_decomposition(rs).items() if not ok]
    if failed:
        raise DecompositionError("decomposition invariants failed: " + ", ".join(failed))
    return rs


def _chain_order(simple: list, gram_inv: Mat) -> list:
    """Order simple roots along their Dynkin diagram.

    A path component is walked from the end with the smaller key (longer
    root first, then larger covector), so A_n comes out as a chain and B2
    starts at its long root. Other shapes keep the key order.
    """
    def key(cov):
        return (-gram_inv.bilinear(cov, cov), tuple(-c for c in cov))

    rest = sorted(simple, key=key)
    linked = {c: [d for d in rest if d != c and gram_inv.bilinear(c, d)] for c in rest}
    out = []
    while rest:
        comp, stack = set(), [rest[0]]
        while stack:
            c = stack.pop()
            if c not in comp:
                comp.add(c)
                stack.extend(linked[c])
        nodes = [c for c in rest if c in comp]
        ends = [c for c in nodes if len(linked[c]) <= 1]
        if len(ends) == 2 or len(nodes) == 1:
            walk, prev = [ends[0]], None
            while len(walk) < len(nodes):
                nxt = next(d for d in linked[walk[-1]] if d != prev)
                prev = walk[-1]
                walk.append(nxt)
            nodes = walk
        out.extend(nodes)
        rest = [c for c in rest if c not in comp]
    return out


def certify_decomposition(rs: RootSystemData) -> dict[str, bool]:
    """Exact checks of the decomposition invariants."""
    g = rs.g
    checks = {}
    checks["dimensions"] = sum(r.multiplicity for r in rs.roots) + rs.g0.dim == g.dim
    total = rs.g0
    for r in rs.roots:
        total = total + r.space
    checks["direct_sum"] = total.dim == g.dim
    checks["g0_split"] = rs.g0 == rs.k0 + rs.a and rs.k0 == g.centralizer(rs.a, within=g.k_space)
    eig = True
    for r in rs.roots:
        for h, val in zip(rs.a_basis, r.covector):
            ad = g.ad_matrix(h)
            for x in r.space.basis:
                if ad.apply(x) != vscale(val, x):
                    eig = False
        if r.dual not in rs.a:
            eig = False
    checks["eigen_equation"] = eig
    checks["theta_pairs"] = all(
        g.theta_image(r.space) == rs.space_of(tuple(-c for c in r.covector)) for r in rs.roots
    )
    grading = True
    spaces = [(r.covector, r.space) for r in rs.roots] + [((0,) * rs.rank, rs.g0)]
    for lam, U in spaces:
        for mu, V in spaces:
            target = rs.space_of(tuple(x + y for x, y in zip(lam, mu)))
            if not target.contains_subspace(g.brackets(U, V)):
                grading = False
                break
        if not grading:
            break
    checks["grading"] = grading
    checks["simple_level_one"] = all(rs.roots[i].level == 1 for i in rs.simple_ids)
    checks["positive_levels"] = all(r.level >= 1 for r in rs.positive_roots)
    checks["H_Lambda_levels"] = all(rs.evaluate(r.covector, rs.H_Lambda) == r.level for r in rs.roots)
    return checks


def root_string_integrality(rs: RootSystemData) -> bool:
    for lam in rs.roots:
        for mu in rs.roots:
            c = Fraction(2 * rs.ip(lam.covector, mu.covector)) / mu.norm2
            if c.denominator != 1:
                return False
    return True


def delta_check(rs: RootSystemData) -> bool:
    """``2 <delta, alpha> = |alpha|^2 (dim g_alpha + 2 dim g_2alpha)`` for every simple root."""
    for alpha in rs.simple_roots:
        two = tuple(2 * c for c in alpha.covector)
        lhs = 2 * rs.ip(rs.delta, alpha.covector)
        rhs = alpha.norm2 * (alpha.multiplicity + 2 * rs.multiplicity(two))
        if lhs != rhs:
            return False
    return True


def reflect(rs: RootSystemData, alpha: Root, covector: Sequence) -> tuple:
    """``s_alpha(lambda) = lambda - 2 <lambda, alpha> / |alpha|^2 alpha``."""
    c = Fraction(2 * rs.ip(covector, alpha.covector)) / alpha.norm2
    return tuple(simplify(x - c * y) for x, y in zip(covector, alpha.covector))


def simple_reflection(rs: RootSystemData, alpha: Root | int) -> list[int]:
    """Permutation of root indices induced by a simple reflection.

    ``alpha`` is a simple Root or its position among the simple roots. Asserts
    equal multiplicities and that positive roots not proportional to alpha
    stay positive.
    """
    if isinstance(alpha, int):
        alpha = rs.simple(alpha)
    elif not any(rs.roots[i] is alpha for i in rs.simple_ids):
        raise DecompositionError("reflection root is not simple")
    perm = []
    for i, lam in enumerate(rs.roots):
        j = rs.root_index(reflect(rs, alpha, lam.covector))
        if j is None:
            raise DecompositionError("reflected root is not a root")
        if rs.roots[j].multiplicity != lam.multiplicity:
            raise DecompositionError("reflection changed a multiplicity")
        proportional = _proportional(lam.covector, alpha.covector)
        if lam.positive and not proportional and not rs.roots[j].positive:
            raise DecompositionError("reflection sent a positive root to a negative one")
        perm.append(j)
    return perm


def _proportional(x: Sequence, y: Sequence) -> bool:
    r = len(x)
    return all(x[i] * y[j] == x[j] * y[i] for i in range(r) for j in range(r))


def gradation(rs: RootSystemData) -> dict[int, Subspace]:
    """The level gradation ``g^k``, k = -m..m, with its generation property verified."""
    g = rs.g
    m = rs.max_level
    grades = {}
    for k in range(-m, m + 1):
        if k == 0:
            grades[0] = rs.g0
            continue
        grades[k] = g.span(v for r in rs.roots if r.level == k for v in r.space.basis)
    for k in range(1, m + 1):
        if g.theta_image(grades[k]) != grades[-k]:
            raise DecompositionError(f"theta g^{k} != g^{-k}")
    for k in range(1, m):
        if g.brackets(grades[1], grades[k]) != grades[k + 1]:
            raise DecompositionError(f"generation failure at level {k + 1}")
        if g.brackets(grades[-1], grades[-k]) != grades[-k - 1]:
            raise DecompositionError(f"generation failure at level {-k - 1}")
    return grades


@dataclass(frozen=True, eq=False)
class NilpotentData:
    n: Subspace
    a_plus_n: Subspace
    t: Subspace
    borel: Subspace


def _lower_central_series_vanishes(g: LieAlgebraData, s: Subspace) -> bool:
    cur = s
    for _ in range(g.dim + 1):
        if not cur.dim:
            return True
        nxt = g.brackets(s, cur)
        if nxt.dim == cur.dim:
            return False
        cur = nxt
    return False


def _derived_series_vanishes(g: LieAlgebraData, s: Subspace) -> bool:
    cur = s
    for _ in range(g.dim + 1):
        if not cur.dim:
            return True
        nxt = g.brackets(cur, cur)
        if nxt.dim == cur.dim:
            return False
        cur = nxt
    return False


def maximal_torus_in_k0(rs: RootSystemData) -> Subspace:
    """Greedy maximal abelian subspace of k0."""
    g = rs.g
    t = Subspace.zero(g.dim)
    for v in rs.k0.basis:
        cand = t + g.span([v])
        if cand.dim > t.dim and g.is_abelian(cand):
            t = cand
    while True:
        z = g.centralizer(t, within=rs.k0)
        if z == t:
            return t
        extra = next(v for v in z.basis if v not in t)
        t = t + g.span([extra])


def nilpotent_part(rs: RootSystemData) -> NilpotentData:
    """``n``, ``a + n`` and the maximally noncompact Borel ``t + a + n``, all verified."""
    g = rs.g
    n = rs.n
    an = rs.a_plus_n
    if not g.is_subalgebra(n) or not _lower_central_series_vanishes(g, n):
        raise DecompositionError("n is not a nilpotent subalgebra")
    if g.brackets(an, an) != n:
        raise DecompositionError("derived algebra of a + n is not n")
    t = maximal_torus_in_k0(rs)
    borel = t + an
    if not g.is_subalgebra(borel) or not _derived_series_vanishes(g, borel):
        raise DecompositionError("t + a + n is not solvable")
    return NilpotentData(n=n, a_plus_n=an, t=t, borel=borel)


def _dynkin_label(rs: RootSystemData) -> str:
    S = rs.simple_roots
    A = rs.cartan_matrix()
    r = len(S)
    # connected components of the Dynkin graph
    seen, comps = set(), []
    for i in range(r):
        if i in seen:
            continue
        stack, comp = [i], []
        seen.add(i)
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in range(r):
                if v not in seen and A[u][v] != 0:
                    seen.add(v)
                    stack.append(v)
        comps.append(sorted(comp))
    labels = []
    for comp in comps:
        k = len(comp)
        nonreduced = any(rs.is_root(tuple(2 * c for c in S[i].covector)) for i in comp)
        bonds = [A[i][j] * A[j][i] for i in comp for j in comp if i < j and A[i][j]]
        if nonreduced:
            labels.append(f"BC{k}")
        elif 3 in bonds:
            labels.append("G2")
        elif 2 in bonds:
            if k == 2:
                labels.append("B2")
            elif bonds.count(2) == 1 and len(bonds) == k - 1:
                # B_n: the double bond points to a single short root at an end
                norms = sorted(S[i].norm2 for i in comp)
                labels.append(f"B{k}" if norms[0] != norms[1] else f"C{k}")
            else:
                labels.append(f"F{k}")
        else:
            degrees = [sum(1 for j in comp if j != i and A[i][j]) for i in comp]
            labels.append(f"D{k}" if 3 in degrees else f"A{k}")
    return " x ".join(labels)
