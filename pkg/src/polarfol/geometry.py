"""Polarity criterion, section curvature, second fundamental form and mean
curvature of subgroups of AN, all in exact arithmetic."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .foliations import (
    FoliationSpec,
    build_candidate,
    extension_matches,
    validate,
)
from .lie import LieAlgebraData
from .linalg import (
    Mat,
    Subspace,
    Vector,
    fmt,
    form_complement,
    gram_schmidt,
    kernel,
    lincomb,
    simplify,
    solve,
    vadd,
    vscale,
    vsub,
)
from .roots import Root, RootSystemData

NOT_APPLICABLE = "not applicable: normal space is not a 2-dimensional triple system"
DEFAULT_TS = (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2), Fraction(2))


class ANMetric:
    """``<X, Y>_AN = <X_a, Y_a> + 1/2 <X_n, Y_n>`` on ``a + n``."""

    def __init__(self, rs: RootSystemData):
        self.rs = rs
        g = rs.g
        A = Mat.from_columns(rs.a_basis, g.dim)
        # orthogonal projection of g onto a; a is orthogonal to k0 and to every root space
        P = A @ rs.gram_a_inv @ A.T @ g.metric
        self.projector = P
        half = Fraction(1, 2)
        self.form = (g.metric + P.T @ g.metric @ P).scale(half)

    def split(self, x: Sequence) -> tuple[Vector, Vector]:
        xa = self.projector.apply(x)
        return xa, vsub(x, xa)

    def inner(self, x: Sequence, y: Sequence):
        return simplify(self.form.bilinear(x, y))

    def norm2(self, x: Sequence):
        return self.inner(x, x)

    def complement(self, v: Subspace, within: Subspace | None = None) -> Subspace:
        return form_complement(v, self.rs.a_plus_n if within is None else within, self.form)


# -- polarity -----------------------------------------------------------------

def normal_space_in_p(g: LieAlgebraData, rs: RootSystemData, s: Subspace) -> Subspace:
    """``{xi in p : <xi, X> = 0 for all X in s}``."""
    p = g.p_space.basis
    rows = [[g.inner(x, b) for b in p] for x in s.basis]
    if not rows:
        return g.p_space
    ker = kernel(Mat(rows, len(p)))
    return g.span(lincomb(c, p, g.dim) for c in ker.basis)


def polarity_check(g: LieAlgebraData, rs: RootSystemData, s: Subspace) -> tuple[bool, bool]:
    """(polar, hyperpolar): the normal space is a Lie triple system with
    ``[N, N]`` orthogonal to ``s``; hyperpolar when ``N`` is abelian."""
    N = normal_space_in_p(g, rs, s)
    NN = g.brackets(N, N)
    polar = N.contains_subspace(g.brackets(N, NN)) and all(g.inner(x, y) == 0 for x in NN.basis for y in s.basis)
    hyper = polar and NN.dim == 0
    return polar, hyper


def _triple_closure(g: LieAlgebraData, N: Subspace) -> bool:
    return g.brackets(N, g.brackets(N, N)) == N


def section_curvature(g: LieAlgebraData, normal: Subspace):
    """Sectional curvature ``-<[[X,Y],Y],X> / (|X|^2|Y|^2 - <X,Y>^2)`` of a
    2-dimensional Lie triple system in p."""
    if normal.dim != 2:
        raise ValueError("normal space is not 2-dimensional")
    if not g.is_lie_triple_system(normal):
        raise ValueError("normal space is not a Lie triple system")
    X, Y = normal.basis
    XY = g.bracket(X, Y)
    num = g.inner(g.bracket(XY, Y), X)
    area = g.norm2(X) * g.norm2(Y) - g.inner(X, Y) ** 2
    return simplify(Fraction(-num) / area)


# -- second fundamental form --------------------------------------------------

def _ii_source(g: LieAlgebraData, X: Sequence) -> Vector:
    """``1/4 (1 - theta)[theta X, X]``."""
    w = g.bracket(g.theta_of(X), X)
    return vscale(Fraction(1, 4), vsub(w, g.theta_of(w)))


def _normal_solve(g: LieAlgebraData, metric: ANMetric, normal: Sequence[Vector], w: Sequence) -> Vector:
    """The ``v`` in span ``normal`` with ``<v, eta>_AN = <w, eta>`` for every ``eta`` there."""
    if not normal:
        return g.zero()
    k = len(normal)
    N = Mat([[metric.inner(a, b) for b in normal] for a in normal], k)
    rhs = [g.inner(w, eta) for eta in normal]
    return lincomb(solve(N, rhs), normal, g.dim)


def _check_in_an(rs: RootSystemData, s: Subspace) -> None:
    if not rs.a_plus_n.contains_subspace(s):
        raise ValueError("subspace is not contained in a + n")


def second_fundamental_form(
    g: LieAlgebraData,
    rs: RootSystemData,
    s: Subspace,
    X: Sequence,
    normal_basis: Sequence[Vector] | None = None,
) -> Vector:
    """``II(X, X)`` for the subgroup with Lie algebra ``s`` at the identity."""
    X = tuple(X)
    if X not in s:
        raise ValueError("X is not in s")
    _check_in_an(rs, s)
    metric = ANMetric(rs)
    if normal_basis is None:
        normal_basis = metric.complement(s).basis
    return _normal_solve(g, metric, list(normal_basis), _ii_source(g, X))


def second_fundamental_form_bilinear(g, rs, s, X, Y, normal_basis=None) -> Vector:
    """``II(X, Y)`` by polarization."""
    p = second_fundamental_form(g, rs, s, vadd(X, Y), normal_basis)
    q = second_fundamental_form(g, rs, s, vsub(X, Y), normal_basis)
    return vscale(Fraction(1, 4), vsub(p, q))


def mean_curvature_at_e(g: LieAlgebraData, rs: RootSystemData, s: Subspace) -> Vector:
    """Trace of II over an AN-orthogonal basis ``b_i`` of ``s``, as
    ``sum II(b_i, b_i) / <b_i, b_i>_AN``."""
    _check_in_an(rs, s)
    if not g.is_subalgebra(s):
        raise ValueError("s is not a subalgebra")
    metric = ANMetric(rs)
    normal = metric.complement(s).basis
    total = g.zero()
    for b in gram_schmidt(s.basis, metric.form):
        total = vadd(total, vscale(Fraction(1) / metric.norm2(b), _ii_source(g, b)))
    return _normal_solve(g, metric, normal, total)


def orbit_number(rs: RootSystemData, alpha: Root) -> int:
    """``dim g_alpha + 2 dim g_2alpha - 1``."""
    return alpha.multiplicity + 2 * rs.multiplicity(tuple(2 * c for c in alpha.covector)) - 1


def mean_curvature_closed_form_D(rs: RootSystemData, alpha: Root) -> Vector:
    return vscale(orbit_number(rs, alpha), alpha.dual)


def mean_curvature_closed_form_E(rs: RootSystemData, alpha: Root, xi: Sequence, t) -> Vector:
    """Closed form for the orbit through ``Exp(t xi)``, translated to the identity.

    For unit ``xi`` it reads ``t|a|^2 D / (2 + t^2|a|^2) (t H_a - 2 xi)``;
    a rational ``xi`` enters through ``t' = t|xi|``, which gives
    ``t|a|^2 D / (2 + t^2|xi|^2|a|^2) (t|xi|^2 H_a - 2 xi)``.
    """
    t = Fraction(t)
    a2 = alpha.norm2
    x2 = rs.g.norm2(xi)
    c = t * a2 * orbit_number(rs, alpha) / (2 + t * t * x2 * a2)
    return vscale(c, vsub(vscale(t * x2, alpha.dual), vscale(2, xi)))


def conjugated_subalgebra(g: LieAlgebraData, s: Subspace, X: Sequence) -> Subspace:
    """``exp(ad X) s`` for nilpotent ``X``."""
    E = g.ad_exp(X)
    return g.span(E.apply(v) for v in s.basis)


def mean_curvature_along_orbit(g: LieAlgebraData, rs: RootSystemData, spec: FoliationSpec, xi: Sequence, t) -> Vector:
    """Mean curvature of the case-E orbit through ``Exp(t xi)``, translated to
    the identity, computed as the trace for ``Ad(Exp(-t xi)) s_v``."""
    if spec.case != "E":
        raise ValueError("orbit mean curvature is defined here for case E only")
    parts = validate(rs, spec)
    xi = tuple(xi)
    if not any(xi) or xi not in parts["v"]:
        raise ValueError("xi is not a nonzero vector of v")
    s = build_candidate(rs, spec)
    t = Fraction(t)
    s_t = conjugated_subalgebra(g, s, vscale(-t, xi))
    return mean_curvature_at_e(g, rs, s_t)


def _coefficient(v: Sequence, direction: Sequence):
    """``c`` with ``v = c * direction``, or None."""
    k = next((i for i, x in enumerate(direction) if x), None)
    if k is None:
        return None
    c = Fraction(v[k]) / direction[k]
    return simplify(c) if vscale(c, direction) == tuple(simplify(x) for x in v) else None


# -- conjugation lemma --------------------------------------------------------

def conjugation_lemma(g: LieAlgebraData, rs: RootSystemData, s: Subspace, alpha: Root, xi: Sequence) -> tuple[Subspace, bool]:
    """For a subalgebra ``s`` of ``a + n`` orthogonal to ``H_alpha + xi``,
    returns ``Ad(g) s`` with ``g = Exp(-xi/|xi|^2)`` and whether it is
    orthogonal to ``xi``."""
    xi = tuple(xi)
    if not any(xi) or xi not in alpha.space:
        raise ValueError("xi is not a nonzero vector of g_alpha")
    V = vadd(alpha.dual, xi)
    if any(g.inner(V, b) for b in s.basis):
        raise ValueError("s is not orthogonal to H_alpha + xi")
    if not g.is_subalgebra(s) or not rs.a_plus_n.contains_subspace(s):
        raise ValueError("s is not a subalgebra of a + n")
    conj = conjugated_subalgebra(g, s, vscale(Fraction(-1) / g.norm2(xi), xi))
    return conj, all(g.inner(b, xi) == 0 for b in conj.basis)


# -- reports ------------------------------------------------------------------

@dataclass
class VerificationReport:
    spec: FoliationSpec
    family: str
    is_subalgebra: bool
    is_polar: bool
    is_hyperpolar: bool
    normal_space: Subspace
    section_curvature: object
    expected_curvature: object
    triple_closure: bool
    mean_curvature_at_e: Vector
    mean_curvature_norm2: object
    mean_curvature_coeff: object
    expected_coeff: object
    extension_verified: bool | None
    is_ideal: bool
    orbit_checks: list = field(default_factory=list)

    @property
    def expected_flags(self) -> tuple[bool, bool]:
        """(polar, hyperpolar) as predicted by the classification."""
        return (True, True) if self.spec.case in "ABC" else (True, False)

    def failures(self) -> list[str]:
        out = []
        if not self.is_subalgebra:
            out.append("not a subalgebra")
        if self.is_hyperpolar and not self.is_polar:
            out.append("inconsistent flags")
        if (self.is_polar, self.is_hyperpolar) != self.expected_flags:
            out.append(f"flags (polar={self.is_polar}, hyperpolar={self.is_hyperpolar}) differ from expectation")
        if self.spec.case in "DE":
            if self.section_curvature != self.expected_curvature:
                out.append("section curvature differs from -|alpha|^2")
            if not self.triple_closure:
                out.append("[N, [N, N]] != N")
            if self.mean_curvature_coeff != self.expected_coeff:
                out.append("mean curvature differs from the closed form")
            if self.extension_verified is not True:
                out.append("canonical extension mismatch")
        if self.spec.case == "D" and not self.is_ideal:
            out.append("s_xi is not an ideal of a + n")
        out.extend(f"orbit mean curvature mismatch at t={fmt(c['t'])}" for c in self.orbit_checks if not c["equal"])
        if any((c["t"] == 0) != c["minimal"] for c in self.orbit_checks):
            out.append("orbit minimal away from t = 0")
        return out

    @property
    def certified(self) -> bool:
        return not self.failures()

    def invariants(self) -> tuple:
        """Report fields that must not depend on the choice of parameters."""
        return (
            self.spec.case,
            self.spec.alpha,
            self.spec.beta,
            self.is_subalgebra,
            self.is_polar,
            self.is_hyperpolar,
            self.section_curvature,
            self.mean_curvature_norm2,
            self.mean_curvature_coeff,
        )

    def to_json(self) -> dict:
        def val(x):
            return x if x is None or isinstance(x, (bool, str)) else fmt(x)

        return {
            "spec": self.spec.to_json(),
            "family": self.family,
            "is_subalgebra": self.is_subalgebra,
            "is_polar": self.is_polar,
            "is_hyperpolar": self.is_hyperpolar,
            "normal_space": [[fmt(c) for c in v] for v in self.normal_space.basis],
            "section_curvature": val(self.section_curvature),
            "expected_curvature": val(self.expected_curvature),
            "triple_closure": self.triple_closure,
            "mean_curvature_at_e": [fmt(c) for c in self.mean_curvature_at_e],
            "mean_curvature_norm2_AN": val(self.mean_curvature_norm2),
            "mean_curvature_coeff": val(self.mean_curvature_coeff),
            "expected_coeff": val(self.expected_coeff),
            "extension_verified": self.extension_verified,
            "is_ideal": self.is_ideal,
            "orbit_checks": [
                {"t": fmt(c["t"]), "equal": c["equal"], "minimal": c["minimal"], "mean_curvature": [fmt(x) for x in c["brute"]]}
                for c in self.orbit_checks
            ],
            "certified": self.certified,
            "failures": self.failures(),
        }


def verify(g: LieAlgebraData, rs: RootSystemData, spec: FoliationSpec, ts: Sequence = DEFAULT_TS) -> VerificationReport:
    """Build the candidate for ``spec`` and certify its geometry."""
    s = build_candidate(rs, spec)
    metric = ANMetric(rs)
    N = normal_space_in_p(g, rs, s)
    polar, hyper = polarity_check(g, rs, s)
    try:
        sec = section_curvature(g, N)
    except ValueError:
        sec = NOT_APPLICABLE
    H = mean_curvature_at_e(g, rs, s)
    alpha = rs.simple(spec.alpha) if spec.alpha is not None else None
    expected_curv = None if spec.case in "ABC" else -alpha.norm2
    coeff = expected_coeff = None
    orbit: list = []
    if spec.case == "D":
        expected_coeff = orbit_number(rs, alpha)
        coeff = 0 if not any(H) else _coefficient(H, alpha.dual)
    elif spec.case == "E":
        expected_coeff = orbit_number(rs, alpha)
        xi = spec.vectors[0]
        for t in ts:
            brute = mean_curvature_along_orbit(g, rs, spec, xi, t)
            closed = mean_curvature_closed_form_E(rs, alpha, xi, t)
            orbit.append({"t": Fraction(t), "brute": brute, "equal": brute == closed, "minimal": not any(brute)})
        # the closed form is kappa times a known vector at t = 1; read off kappa
        unit = mean_curvature_closed_form_E(rs, alpha, xi, 1)
        base = vscale(Fraction(1, orbit_number(rs, alpha)), unit)
        coeff = _coefficient(mean_curvature_along_orbit(g, rs, spec, xi, 1), base)
    an = rs.a_plus_n
    return VerificationReport(
        spec=spec,
        family=g.name,
        is_subalgebra=g.is_subalgebra(s),
        is_polar=polar,
        is_hyperpolar=hyper,
        normal_space=N,
        section_curvature=sec,
        expected_curvature=expected_curv,
        triple_closure=_triple_closure(g, N),
        mean_curvature_at_e=H,
        mean_curvature_norm2=metric.norm2(H),
        mean_curvature_coeff=coeff,
        expected_coeff=expected_coeff,
        extension_verified=extension_matches(rs, spec),
        is_ideal=g.normalizes(an, s),
        orbit_checks=orbit,
    )
