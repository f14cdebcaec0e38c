import pytest

from polarfol.catalog import CATALOG, FamilyError, FamilySpec, build, parse_family
from polarfol.linalg import Mat


def _dim(spec: FamilySpec) -> int:
    f, ps = spec.family, spec.params
    if f == "SL_R":
        return ps[0] ** 2 - 1
    if f == "SU":
        return (ps[0] + ps[1]) ** 2 - 1
    if f == "SO":
        n = ps[0] + ps[1]
        return n * (n - 1) // 2
    if f == "SP_R":
        return ps[0] * (2 * ps[0] + 1)
    return sum(_dim(s) for s in ps)


def _rank(spec: FamilySpec) -> int:
    f, ps = spec.family, spec.params
    if f == "SL_R":
        return ps[0] - 1
    if f in ("SU", "SO"):
        return min(ps)
    if f == "SP_R":
        return ps[0]
    return sum(_rank(s) for s in ps)


@pytest.mark.parametrize("name", CATALOG + ("sum:sl2r+su21",))
def test_dimension_and_rank(name):
    spec = parse_family(name)
    g, a = build(spec)
    assert g.dim == _dim(spec)
    assert a.dim == _rank(spec)


def test_parse_family():
    assert parse_family("su21") == FamilySpec("SU", (1, 2)) == parse_family("su12")
    assert parse_family("so1n:4") == FamilySpec("SO", (1, 4))
    assert parse_family("sp4r") == FamilySpec("SP_R", (2,))
    s = parse_family("sum:sl2r+so23")
    assert s.family == "SUM" and len(s.params) == 2
    assert s.label == "sl(2,R) + so(2,3)"


@pytest.mark.parametrize("bad", ["nosuch", "sp3r", "sum:sl2r", "sl1r", "so11"])
def test_bad_names(bad):
    with pytest.raises(FamilyError):
        parse_family(bad)


def test_unknown_name_lists_valid_names():
    with pytest.raises(FamilyError, match="sl2r.*so25"):
        parse_family("nosuch")


@pytest.mark.parametrize("name", CATALOG)
def test_basis_is_symmetric_or_antisymmetric(name):
    g, _ = build(name)
    for m, label in zip(g.matrices, g.labels):
        kind = label.split(":")[0]
        assert m.T == (m if kind == "p" else -m)
        assert m.trace() == 0


def test_canonical_a_is_diagonal_in_sl3():
    g, a = build("sl3r")
    mats = [Mat.diag([1, -1, 0]), Mat.diag([1, 0, -1])]
    assert a == g.span(g.element_from_matrix(m) for m in mats)
