"""Lie contact 1-form systems built from a solution H of Noth's equation,
parameter elimination by resultants, and the catalogs of structural tensors."""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra.integrate import integrate
from .algebra.poly import NotDivisible, Polynomial, exact_divide, resultant
from .algebra.ratfunc import ONE, ZERO, RationalFunction, as_rf, rf_var, substitute
from .algebra.scalar import as_scalar
from .charts import J5, h_jet
from .diffgeo import ExteriorForm, SymmetricForm, d, dsym, wedge
from .errors import DegenerateContact, SingularParametrization


class HModel:
    """A solution H of Noth's equation in one of three presentations.

    ``explicit``: H as a rational function of the fiber variable.
    ``parametric``: the curve (t(r), H(r)).
    ``formal``: jet symbols H0, H1, ... and a primitive I of H.

    ``p11_shift`` is the additive constant carried by the primitive of H in
    the p11 coefficient.
    """

    def __init__(self, kind, *, H=None, t=None, var="t", p11_shift=0, label=""):
        if kind not in ("explicit", "parametric", "formal"):
            raise ValueError(f"unknown H-model kind {kind!r}")
        self.kind = kind
        self.var = var
        self.p11_shift = as_scalar(p11_shift)
        self.label = label
        if kind == "explicit":
            self.H = as_rf(H)
            self.t = rf_var(var)
        elif kind == "parametric":
            self.t = as_rf(t)
            self.H = as_rf(H)
            if self.t.diff(var).is_zero():
                raise SingularParametrization(f"dt/d{var} vanishes identically for {label or 'curve'}")
        else:
            self.var = "t"
            self.t = rf_var("t")
            self.H = rf_var(h_jet(0))

    @classmethod
    def explicit(cls, H, var="t", p11_shift=0, label=""):
        return cls("explicit", H=H, var=var, p11_shift=p11_shift, label=label)

    @classmethod
    def parametric(cls, t, H, var="r", p11_shift=0, label=""):
        return cls("parametric", t=t, H=H, var=var, p11_shift=p11_shift, label=label)

    @classmethod
    def formal(cls, p11_shift=0):
        return cls("formal", p11_shift=p11_shift, label="formal")

    def with_shift(self, shift):
        out = object.__new__(HModel)
        out.__dict__.update(self.__dict__)
        out.p11_shift = as_scalar(shift)
        return out

    def reparametrize(self, t_of_r, var="r"):
        """Explicit model composed with t = t_of_r, as a parametric model."""
        if self.kind != "explicit":
            raise ValueError("only explicit models can be reparametrized")
        t_of_r = as_rf(t_of_r)
        return HModel.parametric(t_of_r, substitute(self.H, {self.var: t_of_r}), var=var,
                                 p11_shift=self.p11_shift, label=self.label)

    def H_t(self):
        if self.kind == "explicit":
            return self.H.diff(self.var)
        if self.kind == "parametric":
            return self.H.diff(self.var) / self.t.diff(self.var)
        return rf_var(h_jet(1))

    def primitive(self):
        """A primitive of H with respect to t, without the shift."""
        if self.kind == "explicit":
            return integrate(self.H, self.var)
        if self.kind == "parametric":
            return integrate(self.H * self.t.diff(self.var), self.var)
        return rf_var("I")

    def __repr__(self):
        return f"HModel({self.kind}, {self.label or self.H})"


@dataclass
class LieContactSystem:
    """The quadruple of 1-forms defining the correspondence-space system."""

    model: HModel
    chart: object
    fiber: str
    p11: RationalFunction
    p12: RationalFunction
    p21: RationalFunction
    p22: RationalFunction
    p31: RationalFunction
    p32: RationalFunction
    varpi: ExteriorForm = field(repr=False)
    w2: ExteriorForm = field(repr=False)
    w3: ExteriorForm = field(repr=False)
    w4: ExteriorForm = field(repr=False)

    @property
    def forms(self):
        return {"varpi": self.varpi, "w2": self.w2, "w3": self.w3, "w4": self.w4}


def contact_form(chart=J5):
    return ExteriorForm.one_form(chart, {"z": ONE, "x": -rf_var("p"), "y": -rf_var("q")})


def build_system(h, chart=J5):
    """The Lie contact 1-forms of ``h`` on ``chart``."""
    t = h.t
    H = h.H
    Ht = h.H_t()
    prim = h.primitive()
    p11 = t * t * Ht - 2 * t * H + 2 * prim + h.p11_shift
    p12 = H - t * Ht
    p22 = Ht
    p31 = -t
    varpi = contact_form(chart)
    w2 = ExteriorForm.one_form(chart, {"p": ONE, "x": p11, "y": p12})
    w3 = ExteriorForm.one_form(chart, {"q": ONE, "x": p12, "y": p22})
    w4 = ExteriorForm.one_form(chart, {"x": p31, "y": ONE})
    return LieContactSystem(h, chart, h.var, p11, p12, p12, p22, p31, ONE, varpi, w2, w3, w4)


def contact_check(varpi):
    """varpi ^ d(varpi) ^ d(varpi); raises DegenerateContact when it vanishes."""
    dv = d(varpi)
    vol = wedge(wedge(varpi, dv), dv)
    if vol.is_zero():
        raise DegenerateContact("varpi ^ dvarpi ^ dvarpi vanishes")
    return vol


def _dvar(name):
    return rf_var(dsym(name))


def locus_bindings(sys, dx=None):
    """d-symbol substitutions realizing varpi = w2 = w3 = w4 = 0 with dx free."""
    dx = _dvar("x") if dx is None else as_rf(dx)
    dy = -sys.p31 / sys.p32 * dx
    return {
        "dy": dy,
        "dp": -(sys.p11 * dx + sys.p12 * dy),
        "dq": -(sys.p21 * dx + sys.p22 * dy),
        "dz": rf_var("p") * dx + rf_var("q") * dy,
    }


def locus_reduce(T, sys):
    """Coefficient of dx^deg after restricting ``T`` to the locus; zero means vanishing."""
    poly = T.to_polynomial() if isinstance(T, SymmetricForm) else as_rf(T)
    b = locus_bindings(sys, dx=ONE)
    b["dx"] = ONE
    return substitute(poly, b)


def fiber_polynomials(sys):
    """p2, p3, p4: the forms w2, w3, w4 as polynomials in the fiber variable
    over the d-symbol ring, with denominators cleared."""
    out = {}
    for name, w in (("p2", sys.w2), ("p3", sys.w3), ("p4", sys.w4)):
        f = ZERO
        for (i,), c in w.terms.items():
            f = f + c * _dvar(w.chart.coords[i])
        out[name] = f.num
    return out


def _multiplicity(res, factor):
    k = 0
    cof = res
    while not cof.is_zero():
        try:
            cof = exact_divide(cof, factor)
        except NotDivisible:
            break
        k += 1
    return k, cof


def eliminate_parameter(sys, catalog=None):
    """Pairwise resultants of p2, p3, p4 and which catalog tensors divide them.

    Returns rows ``{"pair", "resultant", "factors"}`` where ``factors`` lists
    ``{"factor", "multiplicity", "cofactor"}`` for each dividing tensor; the
    cofactor is what remains after removing that factor to its full power.
    """
    polys = fiber_polynomials(sys)
    rows = []
    for a, b in (("p2", "p3"), ("p2", "p4"), ("p3", "p4")):
        res = resultant(polys[a], polys[b], sys.fiber)
        factors = []
        if catalog is not None and not res.is_zero():
            for name, T in catalog.tensors.items():
                fpoly = T.to_polynomial().num.canonical()
                mult, cof = _multiplicity(res, fpoly)
                if mult:
                    factors.append({"factor": name, "multiplicity": mult, "cofactor": cof})
        rows.append({"pair": f"{a},{b}", "resultant": res, "factors": factors})
    return rows


# -- catalogs --------------------------------------------------------------------

@dataclass
class Relation:
    name: str
    lhs: SymmetricForm
    rhs: SymmetricForm
    as_printed_typo: bool = False
    note: str = ""


@dataclass
class TensorCatalog:
    case: str
    tensors: dict
    module: tuple
    relations: list
    model: HModel

    def system(self):
        return build_system(self.model)


def verify_relation(rel):
    """LHS - RHS; zero exactly when the relation holds."""
    return rel.lhs - rel.rhs


def _sym(poly):
    return SymmetricForm.from_polynomial(J5, poly)


def _d():
    return [Polynomial.var(dsym(n)) for n in ("x", "y", "z", "p", "q")]


def _one(name):
    return SymmetricForm.differential(J5, name)


def standard_catalog():
    dx, dy, dz, dp, dq = _d()
    ups = _sym(27 * dp**2 * dx**2 + 54 * dp * dq * dx * dy + 108 * dp * dy**3
               - 4 * dq**3 * dx - 9 * dq**2 * dy**2)
    mu = _sym(dx**2 * dp - dy**3)
    g1 = _sym(dq * dx + 3 * dy**2)
    g2 = _sym(9 * dp * dy - dq**2)
    g3 = _sym(3 * dp * dx + dy * dq)
    rels = [
        Relation("upsilon", ups, 4 * g1 * g2 + 3 * g3 * g3),
        Relation("mu", mu * 3, _one("x") * g3 - _one("y") * g1),
    ]
    t = rf_var("t")
    return TensorCatalog("standard", {"upsilon": ups, "mu": mu, "g1": g1, "g2": g2, "g3": g3},
                         (g1, g2, g3), rels, HModel.explicit(3 * t * t, label="3t^2"))


def noth1_curve():
    r = rf_var("r")
    return HModel.parametric(2 * r / (r**3 + 2), -4 * r * r / (r**3 + 2), label="noth1")


def noth2_curve():
    r = rf_var("r")
    return HModel.parametric(2 * r * r / (1 + 2 * r**3), -4 * r / (1 + 2 * r**3), label="noth2")


def _nu_kappa():
    dx, dy, dz, dp, dq = _d()
    return _sym(4 * dx**2 + 6 * dx * dy + 9 * dy**2), _sym(2 * dx - 3 * dy)


def noth1_catalog():
    dx, dy, dz, dp, dq = _d()
    ups = _sym(81 * dp**4 - 216 * dp**3 * dx + 216 * dp**2 * dq * dy + 144 * dp**2 * dx**2
               + 24 * dp * dq**3 - 288 * dp * dq * dx * dy - 384 * dp * dy**3
               - 48 * dq**2 * dy**2 + 512 * dx * dy**3)
    mu1 = _sym(27 * dp**3 - 36 * dp**2 * dx + 32 * dy**3)
    mu2 = _sym(dq**3 - 8 * dq * dx * dy + 16 * dy**3)
    nu, kappa = _nu_kappa()
    g1 = _sym(8 * dy**2 - 3 * dp * dq)
    g2 = _sym(9 * dp**2 - 12 * dx * dp + 4 * dy * dq)
    g3 = _sym(dq**2 + 6 * dy * dp - 8 * dx * dy)
    Dy, Dp, Dq = _one("y"), _one("p"), _one("q")
    rels = [
        Relation("upsilon", ups, g2 * g2 - 8 * g1 * g3),
        Relation("mu1-as-printed", mu1, 4 * Dy * g1 + Dp * g2, as_printed_typo=True,
                 note="the dp*g2 term needs a factor 3"),
        Relation("mu1", mu1, 4 * Dy * g1 + 3 * Dp * g2),
        Relation("mu2", mu2, 2 * Dy * g1 + Dq * g3),
    ]
    tensors = {"upsilon": ups, "mu1": mu1, "mu2": mu2, "nu": nu, "kappa": kappa,
               "g1": g1, "g2": g2, "g3": g3}
    return TensorCatalog("noth1", tensors, (g1, g2, g3), rels, noth1_curve())


def noth2_catalog():
    dx, dy, dz, dp, dq = _d()
    ups = _sym(81 * dp**4 + 216 * dp**3 * dx + 216 * dp**2 * dq * dy + 144 * dp**2 * dx**2
               + 24 * dp * dq**3 + 288 * dp * dq * dx * dy - 384 * dp * dy**3
               + 32 * dq**3 * dx - 48 * dq**2 * dy**2)
    mu1 = _sym(27 * dp**3 + 72 * dp**2 * dx + 48 * dp * dx**2 + 32 * dy**3)
    mu2 = _sym(dq**3 - 8 * dq * dx * dy + 16 * dy**3)
    nu, kappa = _nu_kappa()
    g1 = _sym(8 * dy**2 - 3 * dp * dq - 4 * dx * dq)
    g2 = _sym(9 * dp**2 + 12 * dx * dp + 4 * dy * dq)
    g3 = _sym(dq**2 + 6 * dy * dp)
    Dx, Dy, Dp, Dq = _one("x"), _one("y"), _one("p"), _one("q")
    rels = [
        Relation("upsilon", ups, g2 * g2 - 8 * g1 * g3),
        Relation("mu1", mu1, 4 * Dy * g1 + (4 * Dx + 3 * Dp) * g2),
        Relation("mu2", mu2, 2 * Dy * g1 + Dq * g3),
    ]
    tensors = {"upsilon": ups, "mu1": mu1, "mu2": mu2, "nu": nu, "kappa": kappa,
               "g1": g1, "g2": g2, "g3": g3}
    return TensorCatalog("noth2", tensors, (g1, g2, g3), rels, noth2_curve())


CATALOGS = {"standard": standard_catalog, "noth1": noth1_catalog, "noth2": noth2_catalog}


def catalog(case):
    try:
        return CATALOGS[case]()
    except KeyError:
        raise ValueError(f"unknown catalog case {case!r}") from None


# tensors that the locus check covers for each case (the g-module spans a
# larger space and is not expected to vanish on the locus)
LOCUS_TENSORS = {
    "standard": ("upsilon", "mu", "g1"),
    "noth1": ("upsilon", "mu1", "mu2", "nu", "kappa"),
    "noth2": ("upsilon", "mu1", "mu2", "nu", "kappa"),
}
