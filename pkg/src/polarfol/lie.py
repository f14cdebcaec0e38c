"""Real semisimple Lie algebras in a fixed basis, with their Cartan data."""

from __future__ import annotations

import json
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .linalg import (
    Mat,
    Subspace,
    Vector,
    Q,
    fmt,
    form_complement,
    is_positive_definite,
    kernel,
    lincomb,
    simplify,
    span,
    unit_vector,
    vscale,
    vsub,
)

# sparse structure constants: table[i][j] = ((k, c_ijk), ...)
Table = tuple


class LieAlgebraData:
    """Structure constants, Cartan involution, Killing form and inner product.

    ``metric`` is the positive definite product ``<X, Y> = -B(X, theta Y)``.
    Construction computes the Killing form as ``trace(ad(e_i) ad(e_j))``.
    """

    def __init__(
        self,
        labels: Sequence[str],
        table: Table,
        theta: Mat,
        matrices: Sequence[Mat] | None = None,
        name: str = "",
    ):
        self.name = name
        self.labels = tuple(labels)
        self.dim = n = len(self.labels)
        if len(table) != n or any(len(r) != n for r in table):
            raise ValueError("structure constant table has the wrong shape")
        self.table = table
        if theta.shape != (n, n):
            raise ValueError("theta has the wrong shape")
        self.theta = theta
        self.matrices = tuple(matrices) if matrices is not None else None
        self._ad_basis = tuple(self._ad_of_basis(i) for i in range(n))
        self.killing = self._killing_matrix()
        self.metric = -(self.killing @ theta)
        self.k_space = kernel(theta - Mat.identity(n))
        self.p_space = kernel(theta + Mat.identity(n))
        self._coord_solver = None

    # -- construction helpers ---------------------------------------------

    @classmethod
    def from_dense(cls, labels, c, theta: Mat, **kw) -> "LieAlgebraData":
        """Build from a dense ``c[i][j][k]`` table."""
        n = len(labels)
        table = tuple(
            tuple(tuple((k, simplify(c[i][j][k])) for k in range(n) if c[i][j][k]) for j in range(n))
            for i in range(n)
        )
        return cls(labels, table, theta, **kw)

    def _ad_of_basis(self, i: int) -> Mat:
        n = self.dim
        cols = [[0] * n for _ in range(n)]
        for j in range(n):
            for k, c in self.table[i][j]:
                cols[j][k] = c
        return Mat._raw(tuple(tuple(cols[j][k] for j in range(n)) for k in range(n)), n)

    def _killing_matrix(self) -> Mat:
        n = self.dim
        nz = [ad._nonzeros() for ad in self._ad_basis]
        B = [[0] * n for _ in range(n)]
        for i in range(n):
            Ai = nz[i]
            for j in range(i, n):
                Aj = self._ad_basis[j].rows
                s = 0
                # trace(Ai Aj) = sum_{k,l} Ai[k][l] Aj[l][k]
                for k, row in enumerate(Ai):
                    for l, a in row:
                        b = Aj[l][k]
                        if b:
                            s += a * b
                B[i][j] = B[j][i] = simplify(s)
        return Mat._raw(tuple(tuple(r) for r in B), n)

    # -- elements -----------------------------------------------------------

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def zero(self) -> Vector:
        return (0,) * self.dim

    def _check(self, *xs: Sequence) -> None:
        for x in xs:
            if len(x) != self.dim:
                raise ValueError(f"dimension mismatch: expected {self.dim}, got {len(x)}")

    def structure_constant(self, i: int, j: int, k: int):
        return dict(self.table[i][j]).get(k, 0)

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        self._check(x, y)
        out = [0] * self.dim
        ynz = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.table[i]
            for j, b in ynz:
                entries = row[j]
                if entries:
                    ab = a * b
                    for k, c in entries:
                        out[k] += ab * c
        return tuple(out)

    def theta_of(self, x: Sequence) -> Vector:
        return self.theta.apply(x)

    def inner(self, x: Sequence, y: Sequence):
        """The inner product ``<x, y> = -B(x, theta y)``."""
        self._check(x, y)
        return simplify(self.metric.bilinear(x, y))

    def norm2(self, x: Sequence):
        return self.inner(x, x)

    def killing_form(self, x: Sequence, y: Sequence):
        self._check(x, y)
        return simplify(self.killing.bilinear(x, y))

    def ad_matrix(self, x: Sequence) -> Mat:
        """Matrix of ``Y -> [x, Y]`` acting on coordinate columns."""
        self._check(x)
        n = self.dim
        rows = [[0] * n for _ in range(n)]
        for i, a in enumerate(x):
            if not a:
                continue
            for k, row in enumerate(self._ad_basis[i].rows):
                tgt = rows[k]
                for j, c in enumerate(row):
                    if c:
                        tgt[j] += a * c
        return Mat._raw(tuple(tuple(r) for r in rows), n)

    def adjoint(self, m: Mat) -> Mat:
        """Metric adjoint ``m*`` with ``<m x, y> = <x, m* y>``."""
        return self._metric_inverse() @ m.T @ self.metric

    def _metric_inverse(self) -> Mat:
        inv = getattr(self, "_ginv", None)
        if inv is None:
            inv = self._ginv = self.metric.inverse()
        return inv

    def ad_exp(self, x: Sequence) -> Mat:
        """``e^{ad x}`` as a finite series; ``ad x`` must be nilpotent."""
        A = self.ad_matrix(x)
        n = self.dim
        term = Mat.identity(n)
        total = term
        for k in range(1, n + 2):
            term = term @ A
            if term.is_zero():
                return total
            total = total + term.scale(Fraction(1, factorial(k)))
        raise ValueError("non-nilpotent argument")

    def element_from_matrix(self, m: Mat) -> Vector:
        """Coordinates of a matrix in the realization basis."""
        if self.matrices is None:
            raise ValueError("algebra has no matrix realization")
        return self._matrix_coords(_flatten(m))

    def _matrix_coords(self, flat: Sequence) -> Vector:
        if self._coord_solver is None:
            self._coord_solver = _CoordinateSolver([_flatten(b) for b in self.matrices])
        return self._coord_solver(flat)

    # -- subspaces ----------------------------------------------------------

    def span(self, vectors: Iterable[Sequence]) -> Subspace:
        return span(vectors, self.dim)

    def brackets(self, u: Subspace, v: Subspace) -> Subspace:
        """Span of ``[x, y]`` over basis vectors ``x`` of ``u`` and ``y`` of ``v``."""
        return self.span(self.bracket(x, y) for x in u.basis for y in v.basis)

    def is_subalgebra(self, v: Subspace) -> bool:
        B = v.basis
        return all(v.contains(self.bracket(B[i], B[j])) for i in range(len(B)) for j in range(i + 1, len(B)))

    def is_abelian(self, v: Subspace) -> bool:
        B = v.basis
        return all(not any(self.bracket(B[i], B[j])) for i in range(len(B)) for j in range(i + 1, len(B)))

    def normalizes(self, u: Subspace, v: Subspace) -> bool:
        """Whether ``[u, v] lies in v``."""
        return all(v.contains(self.bracket(x, y)) for x in u.basis for y in v.basis)

    def is_lie_triple_system(self, v: Subspace) -> bool:
        """Check ``[v, [v, v]] in v`` on all basis triples; ``v`` must lie in p."""
        if not self.p_space.contains_subspace(v):
            raise ValueError("subspace is not contained in p")
        B = v.basis
        for i in range(len(B)):
            for j in range(i + 1, len(B)):
                w = self.bracket(B[i], B[j])
                if not any(w):
                    continue
                for z in B:
                    if not v.contains(self.bracket(z, w)):
                        return False
        return True

    def centralizer(self, v: Subspace, within: Subspace | None = None) -> Subspace:
        """``{X : [X, v] = 0}``, optionally intersected with ``within``."""
        n = self.dim
        rows = []
        for h in v.basis:
            rows.extend(self.ad_matrix(h).rows)
        z = kernel(Mat._raw(tuple(rows), n)) if rows else Subspace.full(n)
        return z if within is None else z & within

    def generate_subalgebra(self, vectors: Iterable[Sequence]) -> Subspace:
        """Smallest subalgebra containing the given vectors."""
        s = self.span(vectors)
        while True:
            bigger = s + self.brackets(s, s)
            if bigger.dim == s.dim:
                return s
            s = bigger

    def theta_image(self, v: Subspace) -> Subspace:
        return v.image(self.theta)

    def orthogonal_complement(self, v: Subspace, within: Subspace) -> Subspace:
        """``within (-) v`` for the inner product."""
        return form_complement(v, within, self.metric)

    # -- direct sums and serialization --------------------------------------

    def direct_sum(self, other: "LieAlgebraData", name: str = "") -> "LieAlgebraData":
        n, m = self.dim, other.dim
        table = []
        empty = ()
        for i in range(n):
            table.append(tuple(self.table[i]) + (empty,) * m)
        for i in range(m):
            row = tuple(tuple((k + n, c) for k, c in other.table[i][j]) for j in range(m))
            table.append((empty,) * n + row)
        theta = _block_diag(self.theta, other.theta)
        labels = [f"1.{l}" for l in self.labels] + [f"2.{l}" for l in other.labels]
        return LieAlgebraData(labels, tuple(table), theta, name=name or f"{self.name}+{other.name}")

    def to_json(self) -> dict:
        consts = [
            [i, j, k, fmt(c)]
            for i in range(self.dim)
            for j in range(self.dim)
            for k, c in self.table[i][j]
        ]
        return {
            "name": self.name,
            "labels": list(self.labels),
            "structure_constants": consts,
            "theta": [[fmt(a) for a in r] for r in self.theta.rows],
            "killing": [[fmt(a) for a in r] for r in self.killing.rows],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "LieAlgebraData":
        labels = data["labels"]
        n = len(labels)
        rows = [[[] for _ in range(n)] for _ in range(n)]
        for i, j, k, c in data["structure_constants"]:
            rows[i][j].append((k, simplify(Q(c))))
        table = tuple(tuple(tuple(sorted(e)) for e in r) for r in rows)
        theta = Mat([[Q(a) for a in r] for r in data["theta"]], n)
        g = cls(labels, table, theta, name=data.get("name", ""))
        if "killing" in data:
            stored = Mat([[Q(a) for a in r] for r in data["killing"]], n)
            if stored != g.killing:
                raise ValueError("stored Killing form does not match the structure constants")
        return g


def _block_diag(a: Mat, b: Mat) -> Mat:
    n, m = a.nrows, b.nrows
    rows = [tuple(r) + (0,) * m for r in a.rows] + [(0,) * n + tuple(r) for r in b.rows]
    return Mat._raw(tuple(rows), n + m)


def _flatten(m: Mat) -> Vector:
    return tuple(a for r in m.rows for a in r)


class _CoordinateSolver:
    """Express vectors in a fixed independent family via its pivot columns."""

    def __init__(self, family: Sequence[Sequence]):
        from .linalg import _rref_rows

        n = len(family)
        length = len(family[0])
        _, pivots = _rref_rows([list(v) for v in family], length)
        if len(pivots) != n:
            raise ValueError("basis matrices are linearly dependent")
        self.family = family
        self.length = length
        self.pivots = pivots
        square = Mat([[v[p] for p in pivots] for v in family], n)
        self.inv = square.inverse()

    def __call__(self, flat: Sequence) -> Vector:
        restricted = [flat[p] for p in self.pivots]
        # c satisfies c @ square = restricted, i.e. c = restricted @ inv
        n = len(self.family)
        c = [0] * n
        for r, a in zip(self.inv._nonzeros(), restricted):
            if not a:
                continue
            for j, b in r:
                c[j] += a * b
        c = tuple(simplify(x) for x in c)
        if lincomb(c, self.family, self.length) != tuple(flat):
            raise ValueError("matrix is not in the span of the basis")
        return c


def matrix_commutator(x: Mat, y: Mat) -> Mat:
    return (x @ y) - (y @ x)


def from_matrices(labels: Sequence[str], mats: Sequence[Mat], name: str = "") -> LieAlgebraData:
    """Compute structure constants of a matrix Lie algebra; theta(X) = -X^T."""
    n = len(mats)
    solver = _CoordinateSolver([_flatten(m) for m in mats])
    table = []
    cache: dict[tuple[int, int], tuple] = {}
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(())
            elif (j, i) in cache:
                row.append(tuple((k, -c) for k, c in cache[(j, i)]))
            else:
                c = solver(_flatten(matrix_commutator(mats[i], mats[j])))
                entry = tuple((k, a) for k, a in enumerate(c) if a)
                cache[(i, j)] = entry
                row.append(entry)
        table.append(tuple(row))
    theta_cols = [solver(_flatten(-m.T)) for m in mats]
    theta = Mat.from_columns(theta_cols)
    g = LieAlgebraData(labels, tuple(table), theta, matrices=mats, name=name)
    g._coord_solver = solver
    return g


# -- structural certification -------------------------------------------------

def jacobi_holds(g: LieAlgebraData) -> bool:
    n = g.dim
    e = [g.basis_vector(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            xy = g.bracket(e[i], e[j])
            for k in range(j + 1, n):
                t1 = g.bracket(xy, e[k])
                t2 = g.bracket(g.bracket(e[j], e[k]), e[i])
                t3 = g.bracket(g.bracket(e[k], e[i]), e[j])
                if any(a + b + c for a, b, c in zip(t1, t2, t3)):
                    return False
    return True


def antisymmetry_holds(g: LieAlgebraData) -> bool:
    n = g.dim
    for i in range(n):
        if g.table[i][i]:
            return False
        for j in range(i + 1, n):
            if dict(g.table[i][j]) != {k: -c for k, c in g.table[j][i]}:
                return False
    return True


def theta_is_automorphism(g: LieAlgebraData) -> bool:
    n = g.dim
    if g.theta @ g.theta != Mat.identity(n):
        return False
    th = [g.theta.column(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = g.theta.apply(g.bracket(g.basis_vector(i), g.basis_vector(j)))
            if lhs != g.bracket(th[i], th[j]):
                return False
    return True


def killing_is_invariant(g: LieAlgebraData) -> bool:
    """``B([x, y], z) = B(x, [y, z])`` on basis triples."""
    n = g.dim
    B = g.killing.rows
    for i in range(n):
        for j in range(n):
            xy = g.table[i][j]
            for k in range(n):
                lhs = sum((c * B[l][k] for l, c in xy), 0)
                rhs = sum((c * B[i][l] for l, c in g.table[j][k]), 0)
                if lhs != rhs:
                    return False
    return True


def killing_matches_trace(g: LieAlgebraData) -> bool:
    """Recompute ``trace(ad e_i ad e_j)`` densely and compare."""
    n = g.dim
    ads = [g.ad_matrix(g.basis_vector(i)) for i in range(n)]
    return all((ads[i] @ ads[j]).trace() == g.killing[i, j] for i in range(n) for j in range(n))


def definiteness_splits(g: LieAlgebraData) -> bool:
    """Metric positive definite, B negative definite on k and positive on p."""
    if not g.metric.is_symmetric() or not is_positive_definite(g.metric):
        return False
    if g.k_space.dim + g.p_space.dim != g.dim:
        return False
    for space, sign in ((g.k_space, -1), (g.p_space, 1)):
        if not space.dim:
            continue
        gram = Mat([[sign * g.killing_form(a, b) for b in space.basis] for a in space.basis])
        if not is_positive_definite(gram):
            return False
    return True


def adjoint_identity_holds(g: LieAlgebraData) -> bool:
    """``ad(X)* = -ad(theta X)`` for all basis X, i.e. ``ad(X)^T G = -G ad(theta X)``."""
    G = g.metric
    for i in range(g.dim):
        x = g.basis_vector(i)
        lhs = g.ad_matrix(x).T @ G
        rhs = -(G @ g.ad_matrix(g.theta_of(x)))
        if lhs != rhs:
            return False
    return True


def structure_checks(g: LieAlgebraData) -> dict[str, bool]:
    """All exact structural invariants of ``g``."""
    return {
        "antisymmetry": antisymmetry_holds(g),
        "jacobi": jacobi_holds(g),
        "theta_automorphism": theta_is_automorphism(g),
        "killing_invariance": killing_is_invariant(g),
        "definiteness": definiteness_splits(g),
        "adjoint_identity": adjoint_identity_holds(g),
        "semisimple": g.killing.det() != 0,
    }


def root_bracket_identity(g: LieAlgebraData, x: Sequence, y: Sequence, h_lambda: Sequence) -> bool:
    """``(1 - theta)[theta x, y] == 2 <x, y> H_lambda`` for x, y in one root space."""
    w = g.bracket(g.theta_of(x), y)
    lhs = vsub(w, g.theta_of(w))
    return lhs == vscale(2 * g.inner(x, y), h_lambda)


__all__ = [
    "LieAlgebraData",
    "from_matrices",
    "matrix_commutator",
    "structure_checks",
    "jacobi_holds",
    "antisymmetry_holds",
    "theta_is_automorphism",
    "killing_is_invariant",
    "killing_matches_trace",
    "definiteness_splits",
    "adjoint_identity_holds",
    "root_bracket_identity",
]
