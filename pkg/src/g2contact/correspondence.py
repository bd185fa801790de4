"""Coordinate diffeomorphisms to the standard structure and the converse
construction: from a diffeomorphism and a fiber parameter, solve the span
conditions for the p_ij(r), recover (t, H) and certify it solves Noth's
equation."""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra.integrate import integrate
from .algebra.linalg import RHS, SparseReducer
from .algebra.poly import Polynomial, exact_divide, poly_gcd, var_index
from .algebra.ratfunc import ONE, ZERO, RationalFunction, as_rf, rf_var
from .algebra.scalar import CBRT12, as_scalar
from .charts import J5
from .contact import HModel, build_system, catalog, contact_form
from .diffgeo import Chart, CoordinateMap, ExteriorForm, SymmetricForm, dsym, pullback
from .errors import IdentityFails, Inconsistent, ResidualNonzero, Underdetermined
from .noth import ParametricCurve, residual_parametric

TARGET_COORDS = ("x1", "y1", "z1", "p1", "q1")
JT = Chart("JT", TARGET_COORDS)


def transplant(T, chart):
    """Copy a form to ``chart``, renaming coordinates position by position."""
    src = T.chart
    ren = {}
    for a, b in zip(src.coords, chart.coords):
        ren[a] = Polynomial.var(b)
        ren[dsym(a)] = Polynomial.var(dsym(b))
    if isinstance(T, SymmetricForm):
        f = T.to_polynomial()
        return SymmetricForm.from_polynomial(
            chart, RationalFunction(f.num.subs_poly(ren), f.den.subs_poly(ren)))
    return ExteriorForm._wrap(chart, T.degree, {
        k: RationalFunction(c.num.subs_poly(ren), c.den.subs_poly(ren)) for k, c in T.terms.items()})


@dataclass
class ContactDiffeo:
    """A map from the standard chart J5 to the target chart JT.

    ``fiber_map`` is the pre-transform of the standard fiber parameter
    (``None`` for t = r) and ``p11_shift`` the translation of the p11 term.
    ``expected`` lists (target tensor, source tensor, constant) triples.
    """

    case: str
    phi: CoordinateMap
    fiber_map: RationalFunction | None = None
    p11_shift: object = 0
    noshift: object = 0
    expected: list = field(default_factory=list)

    def standard_model(self, shift=None):
        shift = self.p11_shift if shift is None else shift
        r = rf_var("r")
        base = HModel.explicit(3 * r * r, var="r", p11_shift=shift, label="3t^2")
        if self.fiber_map is None:
            return base
        return HModel.explicit(3 * rf_var("t") ** 2, var="t", p11_shift=shift,
                               label="3t^2").reparametrize(self.fiber_map, var="r")


def _target_tensors(case):
    tens = catalog(case).tensors
    return [transplant(tens[n], JT) for n in ("g1", "g2", "g3")]


def case1():
    x, y, z, p, q = (rf_var(n) for n in J5.coords)
    c = CBRT12
    phi = CoordinateMap(J5, JT, {
        "x1": (3 * x - p) / 4, "y1": -(c * c) / 8 * y, "p1": x, "q1": -c / 6 * q,
        "z1": (z - x * p + 3 * x * x / 2) / 4})
    std = catalog("standard").tensors
    t1, t2, t3 = _target_tensors("noth1")
    expected = [
        ("varpi", transplant(contact_form(J5), JT), contact_form(J5), as_scalar(1) / 4),
        ("g1", t1, std["g1"], c / 2),
        ("g3", t2, std["g3"], as_scalar(1)),
        ("g2", t3, std["g2"], -(c * c) / 36),
    ]
    return ContactDiffeo("1", phi, None, -5, 0, expected)


def case2():
    x, y, z, p, q = (rf_var(n) for n in J5.coords)
    c = CBRT12
    phi = CoordinateMap(J5, JT, {
        "x1": (3 * x + p) / 4, "y1": (c * c) / 8 * y, "p1": -p / 3, "q1": -c / 6 * q,
        "z1": -(z + p * p / 6) / 4})
    std = catalog("standard").tensors
    t1, t2, t3 = _target_tensors("noth2")
    expected = [
        ("varpi", transplant(contact_form(J5), JT), contact_form(J5), -as_scalar(1) / 4),
        ("g1", t1, std["g1"], c / 2),
        ("g3", t2, std["g3"], -as_scalar(1)),
        ("g2", t3, std["g2"], -(c * c) / 36),
    ]
    return ContactDiffeo("2", phi, 1 / rf_var("r"), 1, 0, expected)


def identity_case():
    x, y, z, p, q = (rf_var(n) for n in J5.coords)
    phi = CoordinateMap(J5, JT, [x, y, z, p, q])
    std = catalog("standard").tensors
    expected = [("varpi", transplant(contact_form(J5), JT), contact_form(J5), as_scalar(1))]
    expected += [(n, transplant(std[n], JT), std[n], as_scalar(1)) for n in ("g1", "g2", "g3")]
    return ContactDiffeo("identity", phi, None, -5, 0, expected)


CASES = {"1": case1, "2": case2, "identity": identity_case}


def diffeo(case):
    if str(case) not in CASES:
        raise ValueError(f"unknown diffeomorphism case {case!r}")
    return CASES[str(case)]()


def verify_diffeo(dm, expected=None, strict=True):
    """Residuals phi^*(target) - constant * source for each expected identity."""
    out = []
    for name, target, source, const in (expected if expected is not None else dm.expected):
        res = pullback(dm.phi, target) - source.scale(as_rf(const))
        if strict and not res.is_zero():
            raise IdentityFails(f"pullback identity for {name} fails", residual=res)
        out.append((name, res))
    return out


# -- span solve ---------------------------------------------------------------------

UNKNOWNS = ("p11", "p12", "p21", "p22", "p31")
# Each target 1-form, with target coordinates given by position in
# (x1, y1, z1, p1, q1): (label, differential, {position: unknown, or "-k" for
# minus the k-th component of the map}, allowed standard forms).
_TARGET_FORMS = (
    ("dp1", 3, {0: "p11", 1: "p12"}, ("varpi", "w2", "w3")),
    ("dq1", 4, {0: "p21", 1: "p22"}, ("varpi", "w2", "w3")),
    ("varpi1", 2, {0: "-3", 1: "-4"}, ("varpi", "w2", "w3")),
    ("dy1", 1, {0: "p31"}, ("varpi", "w2", "w3", "w4")),
)


@dataclass
class SpanSolveResult:
    p11: RationalFunction
    p12: RationalFunction
    p21: RationalFunction
    p22: RationalFunction
    p31: RationalFunction
    combination: dict
    system: object
    fiber: str = "r"


class _Affine:
    """A source 1-form depending affinely on unknown scalars."""

    def __init__(self):
        self.const = {}
        self.lin = {}

    def add(self, form, unknown=None, scale=ONE):
        for (i,), c in form.terms.items():
            if unknown is None:
                self.const[i] = self.const.get(i, ZERO) + c * scale
            else:
                d = self.lin.setdefault(unknown, {})
                d[i] = d.get(i, ZERO) + c * scale


def _split_row(row, coords):
    """Clear denominators and split an RF row by monomials in ``coords``."""
    den = None
    for v in row.values():
        if not v.den.is_constant():
            den = v.den if den is None else den * exact_divide(v.den, poly_gcd(den, v.den))
    scaled = {}
    for k, v in row.items():
        if den is None:
            scaled[k] = v.num.scale(v.den.constant_value().inverse())
        else:
            scaled[k] = v.num * exact_divide(den, v.den)
    cidx = {var_index(c) for c in coords}
    out = {}
    for k, poly in scaled.items():
        for m, c in poly.terms.items():
            key = tuple((v, e) for v, e in m if v in cidx)
            rest = tuple((v, e) for v, e in m if v not in cidx)
            out.setdefault(key, {}).setdefault(k, {})[rest] = c
    return [{k: as_rf(Polynomial._wrap(t)) for k, t in r.items()} for r in out.values()]


def span_solve(dm, system=None, shift=None):
    """Solve the span conditions for p11, p12, p21, p22, p31 and the combinations."""
    if system is None:
        system = build_system(dm.standard_model(shift), J5)
    std = system.forms
    target = dm.phi.target
    if target.dim != 5:
        raise ValueError("span_solve needs a five-dimensional target chart")
    ones = [pullback(dm.phi, ExteriorForm.differential(target, c)) for c in target.coords]
    cols = {}

    def col(key):
        if key not in cols:
            cols[key] = len(cols)
        return cols[key]

    for u in UNKNOWNS:
        col(u)
    red = SparseReducer()
    for label, lead, coeffs, allowed in _TARGET_FORMS:
        aff = _Affine()
        aff.add(ones[lead])
        for tc, u in coeffs.items():
            if u.startswith("-"):
                aff.add(ones[tc], scale=-dm.phi.components[int(u[1:])])
            else:
                aff.add(ones[tc], unknown=u)
        for sname in allowed:
            aff.add(std[sname], unknown=(label, sname), scale=-ONE)
        for i in range(J5.dim):
            row = {}
            for u, terms in aff.lin.items():
                if i in terms and not terms[i].is_zero():
                    row[col(u)] = terms[i]
            if i in aff.const and not aff.const[i].is_zero():
                row[RHS] = -aff.const[i]
            if not row:
                continue
            for piece in _split_row(row, J5.coords):
                red.add(piece)
    if red.inconsistent:
        raise Inconsistent("pulled-back forms do not lie in the standard span")
    sol = red.solution(range(len(cols)), ZERO)
    byname = {k: sol[v] for k, v in cols.items()}
    comb = {}
    for label, _, _, allowed in _TARGET_FORMS:
        comb[label] = {s: byname[(label, s)] for s in allowed}
    return SpanSolveResult(*(byname[u] for u in UNKNOWNS), comb, system, system.fiber)


def span_solve_checked(dm, **kw):
    res = span_solve(dm, **kw)
    if res.p12 != res.p21:
        raise Inconsistent("p12 and p21 differ")
    return res


# -- recovery -----------------------------------------------------------------------

@dataclass
class RecoveredSolution:
    t: RationalFunction
    H: RationalFunction
    residual: object
    var: str = "r"
    constant_convention: str = "primitive has no constant term at infinity"

    @property
    def curve(self):
        return ParametricCurve("recovered", self.t, self.H, self.var)


def recover_solution(sr, strict=True):
    """(t, H) = (-p31, -integral of p22 dp31).

    The integration constant is fixed by the primitive convention of the
    integrator: zero constant in the polynomial part, proper rational part.
    """
    var = sr.fiber
    if sr.p31.diff(var).is_zero():
        raise Underdetermined("p31 is constant; no fiber parameter")
    t = -sr.p31
    H = -integrate(sr.p22 * sr.p31.diff(var), var)
    rep = residual_parametric(ParametricCurve("recovered", t, H, var))
    if strict and not rep.is_zero:
        raise ResidualNonzero(f"recovered curve has Noth residual {rep.residual}")
    return RecoveredSolution(t, H, rep, var)


@dataclass
class EndToEnd:
    case: str
    span: SpanSolveResult
    shifted: RecoveredSolution
    unshifted: RecoveredSolution


def end_to_end(dm):
    sr = span_solve_checked(dm)
    shifted = recover_solution(sr)
    unshifted = recover_solution(span_solve_checked(dm, shift=dm.noshift))
    return EndToEnd(dm.case, sr, shifted, unshifted)

