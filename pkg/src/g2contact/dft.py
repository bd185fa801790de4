"""The double fibration transform between the contact side (x, y, z, p, q, t)
and the (2,3,5)-distribution side (X, Y, Z, P, Q, L)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F

from .algebra.integrate import integrate
from .algebra.poly import Polynomial, var_index
from .algebra.ratfunc import ONE, as_rf, rf_var, substitute
from .algebra.scalar import ONE as S_ONE
from .charts import JET_ORDER, M6, R6, h_jet, hx_jet
from .contact import HModel, build_system
from .diffgeo import CoordinateMap, ExteriorForm, pullback
from .errors import DegenerateHXX, IdentityFails, RoundTripFails
from .noth import parametric_derivatives

R_COORDS = R6.coords
M_COORDS = M6.coords


def _h(k):
    return rf_var(h_jet(k))


def _hx(k):
    return rf_var(hx_jet(k))


# -- distribution side --------------------------------------------------------------

@dataclass
class DistributionSystem:
    model: object
    chart: object
    H_XX: object
    o1: ExteriorForm
    o2: ExteriorForm
    o3: ExteriorForm
    o4: ExteriorForm

    @property
    def forms(self):
        return {"o1": self.o1, "o2": self.o2, "o3": self.o3, "o4": self.o4}


def distribution_forms(hxx, chart=M6):
    X, Y, Z, P, Q, L = (rf_var(n) for n in M_COORDS)
    o1 = ExteriorForm.one_form(chart, {"Y": ONE, "X": -P})
    o2 = ExteriorForm.one_form(chart, {"P": ONE, "X": -Q})
    o3 = ExteriorForm.one_form(chart, {"Z": ONE, "X": -Q * Q / hxx})
    o4 = ExteriorForm.one_form(chart, {"Q": ONE, "X": -L})
    return o1, o2, o3, o4


def distribution_build(h=None):
    """The forms o1..o4 for an H-model in X; formal jets when ``h`` is None or formal."""
    if h is None or h.kind == "formal":
        hxx = _hx(2)
    elif h.kind == "explicit":
        H = substitute(h.H, {h.var: rf_var("X")}) if h.var != "X" else h.H
        hxx = H.diff("X").diff("X")
    else:
        raise ValueError("distribution_build needs an explicit or formal H-model")
    if hxx.is_zero():
        raise DegenerateHXX("H_XX vanishes identically")
    return DistributionSystem(h, M6, hxx, *distribution_forms(hxx))


# -- maps -----------------------------------------------------------------------------

def _jet_relations_forward():
    """HXk and J in terms of the t-side jets, under X = -2t."""
    extra = {hx_jet(k): F(-1, 2) ** k * _h(k) for k in range(JET_ORDER + 1)}
    t = rf_var("t")
    extra["J"] = 2 * t * _h(0) - 4 * rf_var("I")
    return extra


def _jet_relations_inverse():
    """Hk and I in terms of the X-side jets."""
    extra = {h_jet(k): (-2) ** k * _hx(k) for k in range(JET_ORDER + 1)}
    extra["I"] = (-rf_var("X") * _hx(0) - rf_var("J")) / 4
    return extra


def forward_components():
    x, y, z, p, q, t = (rf_var(n) for n in R_COORDS)
    H, Ht, Htt, Httt, I = _h(0), _h(1), _h(2), _h(3), rf_var("I")
    return {
        "X": -2 * t,
        "Y": p + t * q + (2 * I - t * H) * x + H * y,
        "Z": (z - p * x - q * y - (F(1, 2) * t * t * Ht - t * H + I) * x * x
              - (H - t * Ht) * x * y - F(1, 2) * Ht * y * y),
        "P": -F(1, 2) * q - F(1, 2) * (H - t * Ht) * x - F(1, 2) * Ht * y,
        "Q": F(1, 4) * Htt * (y - t * x),
        "L": F(1, 8) * (Httt * (t * x - y) + Htt * x),
    }


def forward_map():
    """R -> M with formal jets of H(t) and its primitive I."""
    return CoordinateMap(R6, M6, forward_components(), _jet_relations_forward())


def inverse_x(printed=False):
    """x in terms of L; the printed form divides by H_XX once, the consistent one twice."""
    X, Y, Z, P, Q, L = (rf_var(n) for n in M_COORDS)
    hxx, hxxx = _hx(2), _hx(3)
    den = hxx if printed else hxx * hxx
    return 2 * (hxx * L - hxxx * Q) / den


def inverse_components(printed=False):
    X, Y, Z, P, Q, L = (rf_var(n) for n in M_COORDS)
    H, HX, HXX, J = _hx(0), _hx(1), _hx(2), rf_var("J")
    x = inverse_x(printed)
    return {
        "x": x,
        "y": Q / HXX - X * x / 2,
        "z": (Z + HX / (HXX * HXX) * Q * Q - 2 / HXX * P * Q + (Y - H / HXX * Q) * x
              + F(1, 4) * (X * H + J) * x * x),
        "p": Y - P * X + (X * HX - H) / HXX * Q + F(1, 2) * J * x,
        "q": -2 * P + 2 * HX / HXX * Q - x * H,
        "t": -X / 2,
    }


def inverse_map(printed=False):
    """M -> R with formal jets of H(X) and its primitive J."""
    return CoordinateMap(M6, R6, inverse_components(printed), _jet_relations_inverse())


# -- identities -----------------------------------------------------------------------

@dataclass
class IdentityResidual:
    name: str
    residual: object
    printed: bool

    @property
    def is_zero(self):
        return self.residual.is_zero()


def _r_system():
    return build_system(HModel.formal(), R6)


def forward_identities(printed=False):
    """(name, lhs pulled back to R, rhs on R) for the four forward identities.

    The printed combinations pair t and y with the second form and x with
    the third; the consistent ones pair them the other way round.
    """
    fwd = forward_map()
    s = _r_system()
    t, x, y = rf_var("t"), rf_var("x"), rf_var("y")
    o1, o2, o3, o4 = distribution_forms(_hx(2))
    if printed:
        rhs1 = s.w2.scale(t) + s.w3
        rhs2 = s.w2.scale(as_rf(F(-1, 2)))
        rhs3 = s.varpi - s.w2.scale(y) - s.w3.scale(x)
    else:
        rhs1 = s.w2 + s.w3.scale(t)
        rhs2 = s.w3.scale(as_rf(F(-1, 2)))
        rhs3 = s.varpi - s.w2.scale(x) - s.w3.scale(y)
    rhs4 = s.w4.scale(_h(2) / 4)
    return [
        ("dY - P dX", pullback(fwd, o1), rhs1),
        ("dP - Q dX", pullback(fwd, o2), rhs2),
        ("dZ - 4Q^2/H_tt dX", pullback(fwd, o3), rhs3),
        ("dQ - L dX", pullback(fwd, o4), rhs4),
    ]


def verify_forward_identities(printed=False, strict=True):
    out = []
    for name, lhs, rhs in forward_identities(printed):
        res = lhs - rhs
        if strict and not res.is_zero():
            raise IdentityFails(f"forward identity {name} fails", residual=res)
        out.append(IdentityResidual(name, res, printed))
    return out


def verify_inverse_identity(printed=False, strict=True, specialize=None):
    """Residual of dy - t dx = (dQ - L dX)/H_XX pulled back along the inverse map.

    ``specialize`` optionally binds the X-side jets to an explicit H after
    the formal computation.
    """
    inv = inverse_map(printed)
    lhs = pullback(inv, ExteriorForm.one_form(R6, {"y": ONE, "x": -rf_var("t")}))
    rhs = ExteriorForm.one_form(M6, {"Q": ONE, "X": -rf_var("L")}).scale(1 / _hx(2))
    res = lhs - rhs
    if specialize is not None:
        res = res.map_coefficients(lambda c: substitute(c, specialize))
    if strict and not res.is_zero():
        raise IdentityFails("inverse identity fails", residual=res)
    return IdentityResidual("dy - t dx", res, printed)


def explicit_x_jets(H, var="X"):
    """Bindings HXk -> k-th derivative and J -> integral of H - X H_X for explicit H(X)."""
    H = as_rf(H)
    if var != "X":
        H = substitute(H, {var: rf_var("X")})
    out = {}
    cur = H
    for k in range(JET_ORDER + 1):
        out[hx_jet(k)] = cur
        cur = cur.diff("X")
    out["J"] = integrate(H - rf_var("X") * H.diff("X"), "X")
    return out


# -- round trip -----------------------------------------------------------------------

@dataclass
class RoundTripReport:
    label: str
    inverse_after_forward: dict
    forward_after_inverse: dict
    convention: str

    @property
    def is_identity(self):
        return all(v.is_zero() for v in self.inverse_after_forward.values()) and all(
            v.is_zero() for v in self.forward_after_inverse.values())


def _curve_bindings(h):
    """Jet bindings on both sides for an explicit or parametric model, in its own parameter.

    Returns (parameter value of t, R-side bindings, M-side bindings).  Both
    primitives use the integrator's constant convention, which makes
    J = 2tH - 4I exactly for the catalog curves.
    """
    var = h.var
    if h.kind == "explicit":
        t = rf_var(var)
    elif h.kind == "parametric":
        t = h.t
    else:
        raise ValueError("round trip needs an explicit or parametric model")
    ders_t = parametric_derivatives(t, h.H, var, 3)
    X = -2 * t
    ders_x = parametric_derivatives(X, h.H, var, 3)
    I = integrate(h.H * t.diff(var), var)
    J = integrate((h.H - X * ders_x[1]) * X.diff(var), var)
    rb = {h_jet(k): ders_t[k] for k in range(4)}
    rb["I"] = I
    mb = {hx_jet(k): ders_x[k] for k in range(4)}
    mb["J"] = J
    return t, X, rb, mb


def _specialize(res, bindings, coords):
    """Substitute curve values into a residual, one coordinate monomial at a time.

    The residual is polynomial in ``coords`` over the jet symbols, so each
    coefficient specializes to a univariate rational function in the curve
    parameter; this avoids multivariate gcds over the number field.
    """
    res = as_rf(res)
    den = substitute(as_rf(res.den), bindings)
    if den.is_zero():
        raise RoundTripFails("residual denominator vanishes on the curve")
    cidx = {var_index(c) for c in coords}
    groups = {}
    for m, c in res.num.terms.items():
        key = tuple((v, e) for v, e in m if v in cidx)
        rest = tuple((v, e) for v, e in m if v not in cidx)
        groups.setdefault(key, {})[rest] = c
    out = as_rf(0)
    for key, terms in groups.items():
        coeff = substitute(as_rf(Polynomial._wrap(terms)), bindings)
        if not coeff.is_zero():
            out = out + coeff * as_rf(Polynomial._wrap({key: S_ONE}))
    return out / den


def roundtrip_check(h, strict=True, printed=False):
    """inverse o forward and forward o inverse, as exact identities.

    Both composites are formed with formal jets on either side.  For the
    formal model the jets are then tied by X = -2t and J = 2tH - 4I; for an
    explicit or parametric model every jet and the fiber coordinate are
    replaced by their values along the curve.
    """
    fwd = forward_components()
    inv = inverse_components(printed)
    # inverse o forward, on the R side
    back = {k: substitute(v, fwd) for k, v in inv.items()}
    ia = {k: back[k] - rf_var(k) for k in R_COORDS}
    # forward o inverse, on the M side
    there = {k: substitute(v, inv) for k, v in fwd.items()}
    fa = {k: there[k] - rf_var(k) for k in M_COORDS}
    if h.kind == "formal":
        rel_r = _jet_relations_forward()
        rel_m = _jet_relations_inverse()
        ia = {k: substitute(v, rel_r) for k, v in ia.items()}
        fa = {k: substitute(v, rel_m) for k, v in fa.items()}
        convention = "J = 2tH - 4I"
    else:
        t, X, rb, mb = _curve_bindings(h)
        bind = {**rb, **mb, "t": t, "X": X}
        ia = {k: _specialize(v, bind, R_COORDS[:5]) for k, v in ia.items()}
        fa = {k: _specialize(v, bind, M_COORDS[1:]) for k, v in fa.items()}
        convention = f"I and J in the integrator convention, parameter {h.var}"
    rep = RoundTripReport(h.label or str(h.H), ia, fa, convention)
    if strict and not rep.is_identity:
        bad = [k for k, v in {**ia, **fa}.items() if not v.is_zero()]
        raise RoundTripFails(f"round trip is not the identity in {bad}")
    return rep
