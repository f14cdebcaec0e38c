"""Exact rational dense linear algebra.

Vectors are tuples of rationals (``int`` or ``Fraction``), matrices are
:class:`Mat` instances acting on column vectors, and subspaces are stored as
the reduced row-echelon form of a spanning set so that equal subspaces
compare equal entrywise.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Scalar = Fraction
Vector = tuple


def Q(x) -> Fraction:
    """Coerce ``x`` (int, Fraction or a ``"p/q"`` string) to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def fmt(x) -> str:
    """Serialize a rational as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(Fraction(x))


def simplify(x):
    """Return ``x`` as a plain int when it is integral, otherwise as a Fraction."""
    t = type(x)
    if t is int:
        return x
    if t is not Fraction:
        x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


# -- vectors -----------------------------------------------------------------

def zero_vector(n: int) -> Vector:
    return (0,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [0] * n
    v[i] = 1
    return tuple(v)


def vadd(x: Sequence, y: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Sequence, y: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x: Sequence) -> Vector:
    if not c:
        return (0,) * len(x)
    return tuple(c * a if a else 0 for a in x)


def vneg(x: Sequence) -> Vector:
    return tuple(-a for a in x)


def dot(x: Sequence, y: Sequence):
    return sum((a * b for a, b in zip(x, y) if a and b), 0)


def lincomb(coeffs: Sequence, vectors: Sequence[Sequence], n: int | None = None) -> Vector:
    """Return ``sum(c_i * v_i)``."""
    if n is None:
        n = len(vectors[0]) if vectors else 0
    out = [0] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for k, a in enumerate(v):
            if a:
                out[k] += c * a
    return tuple(out)


def is_zero(x: Sequence) -> bool:
    return not any(x)


def primitive(x: Sequence) -> Vector:
    """Scale ``x`` to a primitive integer vector with positive leading entry."""
    if is_zero(x):
        return tuple(0 for _ in x)
    den = 1
    for a in x:
        d = Fraction(a).denominator
        den = den * d // gcd(den, d)
    ints = [int(Fraction(a) * den) for a in x]
    g = 0
    for a in ints:
        g = gcd(g, a)
    lead = next(a for a in ints if a)
    if lead < 0:
        g = -g
    return tuple(a // g for a in ints)


# -- matrices ----------------------------------------------------------------

class Mat:
    """Immutable dense rational matrix; ``rows`` is a tuple of row tuples."""

    __slots__ = ("rows", "nrows", "ncols", "_nz")

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(simplify(a) for a in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for an empty matrix")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._nz = None

    @classmethod
    def _raw(cls, rows: tuple, ncols: int) -> "Mat":
        m = cls.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m._nz = None
        return m

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls._raw(tuple(unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Mat":
        return cls._raw(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def diag(cls, entries: Sequence) -> "Mat":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "Mat":
        if not cols:
            if nrows is None:
                raise ValueError("nrows required for an empty column list")
            return cls._raw(tuple(() for _ in range(nrows)), 0)
        return cls(list(zip(*cols)), len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(fmt(a) for a in r) + "]" for r in self.rows)
        return f"Mat([{body}])"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def _nonzeros(self):
        if self._nz is None:
            self._nz = tuple(tuple((j, a) for j, a in enumerate(r) if a) for r in self.rows)
        return self._nz

    @property
    def T(self) -> "Mat":
        if self.nrows == 0:
            return Mat._raw((), 0) if self.ncols == 0 else Mat._raw(tuple(() for _ in range(self.ncols)), 0)
        return Mat._raw(tuple(zip(*self.rows)), self.nrows)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def trace(self):
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        return simplify(sum((self.rows[i][i] for i in range(self.nrows)), 0))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Mat._raw(tuple(vadd(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Mat._raw(tuple(vsub(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> "Mat":
        return Mat._raw(tuple(vneg(r) for r in self.rows), self.ncols)

    def scale(self, c) -> "Mat":
        return Mat._raw(tuple(vscale(c, r) for r in self.rows), self.ncols)

    def apply(self, v: Sequence) -> Vector:
        """Matrix times column vector."""
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        out = []
        for r in self._nonzeros():
            s = 0
            for j, a in r:
                b = v[j]
                if b:
                    s += a * b
            out.append(s)
        return tuple(out)

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            other_nz = other._nonzeros()
            n = other.ncols
            rows = []
            for r in self._nonzeros():
                acc = [0] * n
                for k, a in r:
                    for j, b in other_nz[k]:
                        acc[j] += a * b
                rows.append(tuple(acc))
            return Mat._raw(tuple(rows), n)
        return self.apply(other)

    def pow(self, k: int) -> "Mat":
        out = Mat.identity(self.nrows)
        for _ in range(k):
            out = out @ self
        return out

    def bilinear(self, x: Sequence, y: Sequence):
        """Evaluate ``x^T M y``."""
        return dot(x, self.apply(y))

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and self.rows == self.T.rows

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("det of a non-square matrix")
        rows = [list(map(Fraction, r)) for r in self.rows]
        n = self.nrows
        d = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if rows[i][c]), None)
            if p is None:
                return 0
            if p != c:
                rows[c], rows[p] = rows[p], rows[c]
                d = -d
            piv = rows[c][c]
            d *= piv
            for i in range(c + 1, n):
                f = rows[i][c]
                if f:
                    f = f / piv
                    ri, rc = rows[i], rows[c]
                    for j in range(c, n):
                        if rc[j]:
                            ri[j] -= f * rc[j]
        return simplify(d)

    def inverse(self) -> "Mat":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        aug = Mat._raw(tuple(tuple(r) + unit_vector(n, i) for i, r in enumerate(self.rows)), 2 * n)
        red, pivots = _rref_rows([list(r) for r in aug.rows], 2 * n)
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise ZeroDivisionError("singular matrix")
        return Mat([r[n:] for r in red[:n]], n)

    def restrict_rows(self, idx: Sequence[int]) -> "Mat":
        return Mat._raw(tuple(self.rows[i] for i in idx), self.ncols)


def _rref_rows(rows: list[list], ncols: int) -> tuple[list[tuple], list[int]]:
    """Gauss-Jordan elimination in place; returns nonzero RREF rows and pivots."""
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            if rows[i][c]:
                p = i
                break
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            inv = 1 / Fraction(piv)
            rows[r] = [simplify(a * inv) if a else 0 for a in rows[r]]
        prow = rows[r]
        support = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                ri = rows[i]
                for j in support:
                    ri[j] = simplify(ri[j] - f * prow[j])
        pivots.append(c)
        r += 1
    return [tuple(row) for row in rows[:r]], pivots


def rref(m: Mat) -> Mat:
    """Reduced row-echelon form of ``m`` (same shape; zero rows at the bottom)."""
    red, _ = _rref_rows([list(r) for r in m.rows], m.ncols)
    zeros = [(0,) * m.ncols] * (m.nrows - len(red))
    return Mat._raw(tuple(red) + tuple(zeros), m.ncols)


def rank(m: Mat) -> int:
    return len(_rref_rows([list(r) for r in m.rows], m.ncols)[1])


def is_rref(m: Mat) -> bool:
    """Check the reduced row-echelon predicate."""
    last = -1
    seen_zero = False
    pivots = []
    for r in m.rows:
        lead = next((j for j, a in enumerate(r) if a), None)
        if lead is None:
            seen_zero = True
            continue
        if seen_zero or lead <= last or r[lead] != 1:
            return False
        pivots.append(lead)
        last = lead
    for i, c in enumerate(pivots):
        for k, r in enumerate(m.rows):
            if k != i and r[c]:
                return False
    return True


# -- subspaces ---------------------------------------------------------------

class Subspace:
    """A subspace of Q^n stored by the RREF of a spanning set."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        rows = [list(v) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        red, piv = _rref_rows(rows, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis: tuple[Vector, ...] = tuple(red)
        self.pivots: tuple[int, ...] = tuple(piv)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, (unit_vector(n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def as_mat(self) -> Mat:
        return Mat._raw(self.basis, self.ambient_dim) if self.basis else Mat._raw((), self.ambient_dim)

    def coords(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the RREF basis; raises if ``v`` is not in the span."""
        c = tuple(v[p] for p in self.pivots)
        if tuple(lincomb(c, self.basis, self.ambient_dim)) != tuple(simplify(a) for a in v):
            raise ValueError("vector not in subspace")
        return c

    def reduce(self, v: Sequence) -> Vector:
        """Residual of ``v`` after eliminating along the pivot columns."""
        out = list(v)
        for p, b in zip(self.pivots, self.basis):
            f = out[p]
            if f:
                for j, a in enumerate(b):
                    if a:
                        out[j] -= f * a
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        return not any(self.reduce(v))

    __contains__ = contains

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_subspace(self)

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def annihilator(self) -> "Subspace":
        """Vectors orthogonal to this subspace under the standard dot product."""
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        return kernel(self.as_mat())

    def __and__(self, other: "Subspace") -> "Subspace":
        ann = self.annihilator().basis + other.annihilator().basis
        if not ann:
            return Subspace.full(self.ambient_dim)
        return kernel(Mat._raw(ann, self.ambient_dim))

    def image(self, m: Mat) -> "Subspace":
        return Subspace(m.nrows, (m.apply(v) for v in self.basis))

    def is_independent_from(self, other: "Subspace") -> bool:
        return (self + other).dim == self.dim + other.dim


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, vectors)


def kernel(m: Mat) -> Subspace:
    """The null space ``{v : m v = 0}``."""
    n = m.ncols
    red, pivots = _rref_rows([list(r) for r in m.rows], n)
    free = [j for j in range(n) if j not in set(pivots)]
    vecs = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        vecs.append(v)
    return Subspace(n, vecs)


def solve(m: Mat, b: Sequence) -> Vector:
    """Unique solution ``x`` with ``m x = b``; raises if singular or inconsistent."""
    n = m.ncols
    aug = [list(r) + [bi] for r, bi in zip(m.rows, b)]
    red, pivots = _rref_rows(aug, n + 1)
    if n in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) != n:
        raise ValueError("linear system has no unique solution")
    return tuple(row[n] for row in red)


def form_complement(v: Subspace, within: Subspace, form: Mat) -> Subspace:
    """``{x in within : form(x, y) = 0 for all y in v}``."""
    if not within.contains_subspace(v):
        raise ValueError("subspace is not contained in the enclosing space")
    W = within.basis
    gram = Mat([[form.bilinear(a, b) for b in W] for a in W], len(W)) if W else None
    if gram is not None and rank(gram) != len(W):
        raise ValueError("degenerate form on subspace")
    if not v.basis:
        return within
    # coefficients c with sum_i c_i form(w_i, y) = 0 for each basis vector y of v
    cond = Mat([[form.bilinear(w, y) for w in W] for y in v.basis], len(W))
    ker = kernel(cond)
    return Subspace(within.ambient_dim, (lincomb(c, W, within.ambient_dim) for c in ker.basis))


def gram_schmidt(vectors: Sequence[Sequence], form: Mat) -> list[Vector]:
    """Orthogonal (not normalized) basis of the span, kept in Q by skipping square roots."""
    out: list[Vector] = []
    norms: list = []
    for v in vectors:
        w = tuple(v)
        for b, nb in zip(out, norms):
            c = form.bilinear(b, w)
            if c:
                w = vsub(w, vscale(Fraction(c) / nb, b))
        if any(w):
            nw = form.bilinear(w, w)
            if not nw:
                raise ValueError("isotropic vector in Gram-Schmidt")
            out.append(tuple(simplify(a) for a in w))
            norms.append(nw)
    return out


def is_positive_definite(form: Mat) -> bool:
    """All leading principal minors positive (via pivots of symmetric elimination)."""
    n = form.nrows
    rows = [list(map(Fraction, r)) for r in form.rows]
    for c in range(n):
        piv = rows[c][c]
        if piv <= 0:
            return False
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f / piv
                for j in range(c, n):
                    if rows[c][j]:
                        rows[i][j] -= f * rows[c][j]
    return True


def leading_minors(form: Mat) -> list:
    return [Mat([r[:k] for r in form.rows[:k]], k).det() for k in range(1, form.nrows + 1)]


# -- spectra -----------------------------------------------------------------

def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def integer_scaling(m: Mat) -> tuple[list[list[int]], int]:
    """Return an integer matrix ``M`` and ``d`` with ``m = M / d``."""
    d = 1
    for r in m.rows:
        for a in r:
            if a:
                d = _lcm(d, Fraction(a).denominator)
    return [[int(a * d) for a in r] for r in m.rows], d


def charpoly_int(M: list[list[int]]) -> list[int]:
    """Characteristic polynomial of an integer matrix, coefficients from x^n down.

    Faddeev-LeVerrier in integer arithmetic; the divisions are exact.
    """
    n = len(M)
    coeffs = [1]
    Mk = [[0] * n for _ in range(n)]
    c = 1
    for k in range(1, n + 1):
        # Mk <- M @ Mk + c I
        nxt = [[0] * n for _ in range(n)]
        for i in range(n):
            Mi = M[i]
            row = nxt[i]
            for l in range(n):
                a = Mi[l]
                if a:
                    Ml = Mk[l]
                    for j in range(n):
                        b = Ml[j]
                        if b:
                            row[j] += a * b
            row[i] += c
        Mk = nxt
        tr = 0
        for i in range(n):
            Mi = M[i]
            for l in range(n):
                if Mi[l] and Mk[l][i]:
                    tr += Mi[l] * Mk[l][i]
        if tr % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        c = -tr // k
        coeffs.append(c)
    return coeffs


def charpoly(m: Mat) -> list[Fraction]:
    """Monic characteristic polynomial of ``m``, coefficients from x^n down."""
    M, d = integer_scaling(m)
    ci = charpoly_int(M)
    return [simplify(Fraction(c, d ** k)) for k, c in enumerate(ci)]


def _horner(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def integer_roots(coeffs: Sequence[int], bound: int) -> list[int]:
    """Integer roots of a monic integer polynomial within ``[-bound, bound]``.

    Candidates are the divisors of the lowest nonzero coefficient (plus 0 when
    x divides the polynomial).
    """
    cs = list(coeffs)
    roots = []
    while cs and cs[-1] == 0:
        cs.pop()
        if 0 not in roots:
            roots.append(0)
    if len(cs) <= 1:
        return sorted(roots)
    c0 = abs(cs[-1])
    for x in range(1, bound + 1):
        if c0 % x:
            continue
        for s in (x, -x):
            if _horner(cs, s) == 0:
                roots.append(s)
    return sorted(roots)


def rational_eigenvalues(m: Mat) -> list[tuple[Fraction, Subspace]]:
    """Distinct rational eigenvalues of ``m`` with eigenspaces, in increasing order.

    Requires ``m`` diagonalizable over Q; otherwise raises ``ValueError``.
    """
    n = m.nrows
    if n != m.ncols:
        raise ValueError("eigenvalues of a non-square matrix")
    if n == 0:
        return []
    M, d = integer_scaling(m)
    bound = max(sum(abs(a) for a in r) for r in M)
    cands = integer_roots(charpoly_int(M), bound)
    out = []
    total = 0
    I = Mat.identity(n)
    for lam in cands:
        mu = simplify(Fraction(lam, d))
        space = kernel(m - I.scale(mu))
        if space.dim:
            out.append((mu, space))
            total += space.dim
    if total != n:
        raise ValueError("non-rational or non-semisimple spectrum")
    return out
