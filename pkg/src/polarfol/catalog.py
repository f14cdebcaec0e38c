"""Matrix realizations of classical real semisimple Lie algebras.

Every family is realized by real integer matrices (complex entries are
realified over the basis {1, i}) closed under transposition, so the Cartan
involution is ``X -> -X^T`` and every basis element is either symmetric
(in p) or antisymmetric (in k).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .lie import LieAlgebraData, from_matrices
from .linalg import Mat, Subspace

FAMILIES = ("SL_R", "SU", "SO", "SP_R", "SUM")

CATALOG = (
    "sl2r", "sl3r", "sl4r",
    "su21", "su22", "su31",
    "so23", "so24", "so25",
    "so1n:2", "so1n:3", "so1n:4",
    "sp4r",
)


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple

    def __post_init__(self):
        f, ps = self.family, self.params
        if f not in FAMILIES:
            raise FamilyError(f"unknown family {f!r}")
        if f == "SL_R":
            if len(ps) != 1 or ps[0] < 2:
                raise FamilyError("SL_R(n) needs n >= 2")
        elif f in ("SU", "SO"):
            if len(ps) != 2:
                raise FamilyError(f"{f}(p, q) needs two parameters")
            p, q = ps
            if not 1 <= p <= q or p + q < 3:
                raise FamilyError(f"{f}(p, q) needs 1 <= p <= q and p + q >= 3")
        elif f == "SP_R":
            if len(ps) != 1 or ps[0] < 1:
                raise FamilyError("SP_R(2n) needs n >= 1")
        elif f == "SUM":
            if len(ps) < 2 or not all(isinstance(x, FamilySpec) for x in ps):
                raise FamilyError("a direct sum needs at least two summands")

    @property
    def label(self) -> str:
        f, ps = self.family, self.params
        if f == "SL_R":
            return f"sl({ps[0]},R)"
        if f == "SU":
            return f"su({ps[0]},{ps[1]})"
        if f == "SO":
            return f"so({ps[0]},{ps[1]})"
        if f == "SP_R":
            return f"sp({2 * ps[0]},R)"
        return " + ".join(s.label for s in ps)


def _pq(a: int, b: int) -> tuple[int, int]:
    return (min(a, b), max(a, b))


def parse_family(name: str) -> FamilySpec:
    """Parse a CLI family name such as ``"su21"``, ``"so1n:4"`` or ``"sum:sl2r+sl2r"``."""
    name = name.strip()
    if name.startswith("sum:"):
        parts = name[4:].split("+")
        if len(parts) < 2:
            raise FamilyError(f"bad direct sum {name!r}")
        return FamilySpec("SUM", tuple(parse_family(p) for p in parts))
    m = re.fullmatch(r"so1n:(\d+)", name)
    if m:
        return FamilySpec("SO", (1, int(m.group(1))))
    m = re.fullmatch(r"sl(\d+)r", name)
    if m:
        return FamilySpec("SL_R", (int(m.group(1)),))
    m = re.fullmatch(r"sp(\d+)r", name)
    if m:
        two_n = int(m.group(1))
        if two_n % 2:
            raise FamilyError("sp needs an even size")
        return FamilySpec("SP_R", (two_n // 2,))
    m = re.fullmatch(r"(su|so)(\d)(\d)", name)
    if m:
        return FamilySpec(m.group(1).upper(), _pq(int(m.group(2)), int(m.group(3))))
    raise FamilyError(f"unknown family {name!r}; valid names: {', '.join(CATALOG)}, so1n:<n>, sum:<a>+<b>")


# -- matrix helpers ------------------------------------------------------------

def _E(N: int, entries: dict) -> Mat:
    rows = [[0] * N for _ in range(N)]
    for (i, j), v in entries.items():
        rows[i][j] += v
    return Mat(rows, N)


def _realify(N: int, entries: dict) -> Mat:
    """Realify a complex matrix given as ``{(i, j): (re, im)}``."""
    rows = [[0] * (2 * N) for _ in range(2 * N)]
    for (i, j), (re_, im) in entries.items():
        rows[2 * i][2 * j] += re_
        rows[2 * i][2 * j + 1] += -im
        rows[2 * i + 1][2 * j] += im
        rows[2 * i + 1][2 * j + 1] += re_
    return Mat(rows, 2 * N)


def _sl(n: int):
    labels, mats, a = [], [], []
    for i in range(n):
        for j in range(i + 1, n):
            labels.append(f"k:E{i+1}{j+1}-E{j+1}{i+1}")
            mats.append(_E(n, {(i, j): 1, (j, i): -1}))
    for i in range(n):
        for j in range(i + 1, n):
            labels.append(f"p:E{i+1}{j+1}+E{j+1}{i+1}")
            mats.append(_E(n, {(i, j): 1, (j, i): 1}))
    # E11 - Ekk puts sum 10^i a_i in the chamber of the upper triangular Borel
    for k in range(1, n):
        labels.append(f"p:E11-E{k+1}{k+1}")
        a.append(len(mats))
        mats.append(_E(n, {(0, 0): 1, (k, k): -1}))
    return labels, mats, a


def _so(p: int, q: int):
    N = p + q
    labels, mats, a = [], [], []
    for lo, hi in ((0, p), (p, N)):
        for i in range(lo, hi):
            for j in range(i + 1, hi):
                labels.append(f"k:E{i+1}{j+1}-E{j+1}{i+1}")
                mats.append(_E(N, {(i, j): 1, (j, i): -1}))
    for i in range(p):
        for j in range(q):
            c = p + j
            labels.append(f"p:E{i+1}{c+1}+E{c+1}{i+1}")
            if j == i:
                a.append(len(mats))
            mats.append(_E(N, {(i, c): 1, (c, i): 1}))
    return labels, mats, a


def _su(p: int, q: int):
    N = p + q
    labels, mats, a = [], [], []
    for lo, hi in ((0, p), (p, N)):
        for i in range(lo, hi):
            for j in range(i + 1, hi):
                labels.append(f"k:E{i+1}{j+1}-E{j+1}{i+1}")
                mats.append(_realify(N, {(i, j): (1, 0), (j, i): (-1, 0)}))
                labels.append(f"k:i(E{i+1}{j+1}+E{j+1}{i+1})")
                mats.append(_realify(N, {(i, j): (0, 1), (j, i): (0, 1)}))
    for k in range(N - 1):
        labels.append(f"k:i(E{k+1}{k+1}-E{k+2}{k+2})")
        mats.append(_realify(N, {(k, k): (0, 1), (k + 1, k + 1): (0, -1)}))
    for i in range(p):
        for j in range(q):
            c = p + j
            labels.append(f"p:E{i+1}{c+1}+E{c+1}{i+1}")
            if j == i:
                a.append(len(mats))
            mats.append(_realify(N, {(i, c): (1, 0), (c, i): (1, 0)}))
            labels.append(f"p:i(E{i+1}{c+1}-E{c+1}{i+1})")
            mats.append(_realify(N, {(i, c): (0, 1), (c, i): (0, -1)}))
    return labels, mats, a


def _sp(n: int):
    N = 2 * n
    labels, mats, a = [], [], []
    sym = []
    for i in range(n):
        sym.append((f"E{i+1}{i+1}", {(i, i): 1}))
        for j in range(i + 1, n):
            sym.append((f"E{i+1}{j+1}+E{j+1}{i+1}", {(i, j): 1, (j, i): 1}))
    for i in range(n):
        for j in range(i + 1, n):
            labels.append(f"k:A[E{i+1}{j+1}-E{j+1}{i+1}]")
            mats.append(_E(N, {(i, j): 1, (j, i): -1, (n + i, n + j): 1, (n + j, n + i): -1}))
    for name, s in sym:
        labels.append(f"k:B[{name}]")
        ent = {}
        for (i, j), v in s.items():
            ent[(i, n + j)] = v
            ent[(n + i, j)] = -v
        mats.append(_E(N, ent))
    for name, s in sym:
        labels.append(f"p:A[{name}]")
        ent = {}
        for (i, j), v in s.items():
            ent[(i, j)] = v
            ent[(n + i, n + j)] = -v
        if len(s) == 1:
            a.append(len(mats))
        mats.append(_E(N, ent))
    for name, s in sym:
        labels.append(f"p:B[{name}]")
        ent = {}
        for (i, j), v in s.items():
            ent[(i, n + j)] = v
            ent[(n + i, j)] = v
        mats.append(_E(N, ent))
    return labels, mats, a


def _realization(spec: FamilySpec):
    f, ps = spec.family, spec.params
    if f == "SL_R":
        return _sl(ps[0])
    if f == "SO":
        return _so(*ps)
    if f == "SU":
        return _su(*ps)
    if f == "SP_R":
        return _sp(ps[0])
    raise FamilyError(f"no matrix realization for {f}")


@lru_cache(maxsize=None)
def build(spec: FamilySpec | str) -> tuple[LieAlgebraData, Subspace]:
    """Build ``(g, a)`` for a family; ``a`` is verified maximal abelian in p."""
    from .roots import is_maximal_abelian

    if isinstance(spec, str):
        spec = parse_family(spec)
    if spec.family == "SUM":
        parts = [build(s) for s in spec.params]
        g, a = parts[0]
        a_vecs = list(a.basis)
        for h, b in parts[1:]:
            offset = g.dim
            a_vecs = [v + (0,) * h.dim for v in a_vecs] + [(0,) * offset + v for v in b.basis]
            g = g.direct_sum(h, name=f"{g.name}+{h.name}")
        a = Subspace(g.dim, a_vecs)
    else:
        labels, mats, a_idx = _realization(spec)
        g = from_matrices(labels, mats, name=spec.label)
        a = g.span(g.basis_vector(i) for i in a_idx)
    g.name = spec.label
    if not is_maximal_abelian(g, a):
        raise AssertionError(f"canonical a of {spec.label} is not maximal abelian")
    return g, a
