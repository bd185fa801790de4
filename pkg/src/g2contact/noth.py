"""Residuals of Noth's equation and the catalog of solution curves."""
from __future__ import annotations

from dataclasses import dataclass

from .algebra.ratfunc import RationalFunction, as_rf, rf_var
from .algebra.scalar import CBRT12
from .charts import h_jet
from .errors import SingularParametrization


def noth_expression(h2, h3, h4, h5, h6):
    """10 H2^3 H6 - 70 H2^2 H3 H5 - 49 H2^2 H4^2 + 280 H2 H3^2 H4 - 175 H3^4."""
    h2sq = h2 * h2
    return (10 * h2sq * h2 * h6 - 70 * h2sq * h3 * h5 - 49 * h2sq * h4 * h4
            + 280 * h2 * h3 * h3 * h4 - 175 * h3 * h3 * h3 * h3)


@dataclass
class NothResidualReport:
    descriptor: str
    residual: RationalFunction

    @property
    def is_zero(self):
        return self.residual.is_zero()


def t_derivatives(H, var="t", order=6):
    """[H, H', ..., H^(order)] for H a rational function of ``var``."""
    out = [as_rf(H)]
    for _ in range(order):
        out.append(out[-1].diff(var))
    return out


def parametric_derivatives(t, H, var="r", order=6):
    """t-derivatives of H along the curve (t(r), H(r)), as functions of r."""
    t, H = as_rf(t), as_rf(H)
    dt = t.diff(var)
    if dt.is_zero():
        raise SingularParametrization(f"dt/d{var} vanishes identically")
    inv = dt.inverse()
    out = [H]
    for _ in range(order):
        out.append(out[-1].diff(var) * inv)
    return out


def residual_explicit(H, var="t"):
    ders = t_derivatives(H, var)
    return NothResidualReport(f"H({var}) = {as_rf(H)}", noth_expression(*ders[2:7]))


def residual_parametric(curve):
    ders = parametric_derivatives(curve.t, curve.H, curve.var)
    return NothResidualReport(f"{curve.label or 'curve'}: (t, H) = ({curve.t}, {curve.H})",
                              noth_expression(*ders[2:7]))


def residual_formal():
    """Noth's expression in the formal jets H2..H6."""
    jets = [rf_var(h_jet(k)) for k in range(2, 7)]
    return NothResidualReport("formal H", noth_expression(*jets))


@dataclass
class ParametricCurve:
    label: str
    t: RationalFunction
    H: RationalFunction
    var: str = "r"


def catalog_curves():
    """The six rational solution curves in the parameter r."""
    r = rf_var("r")
    c = CBRT12
    c2 = c * c
    return [
        ParametricCurve("noth1", 2 * r / (r**3 + 2), -4 * r**2 / (r**3 + 2)),
        ParametricCurve("noth2", 2 * r**2 / (1 + 2 * r**3), -4 * r / (1 + 2 * r**3)),
        ParametricCurve("recovered-1", c2 * r / (2 * (r**3 + 2)), 2 * c * r**2 / (r**3 + 2)),
        ParametricCurve("recovered-1-noshift", c2 * r / (2 * (r**3 - 3)), 2 * c * r**2 / (r**3 - 3)),
        ParametricCurve("recovered-2", c2 * r**2 / (4 * r**3 + 2), -2 * c * r / (2 * r**3 + 1)),
        ParametricCurve("recovered-2-noshift", c2 * r**2 / (2 * (3 * r**3 + 1)),
                        -2 * c * r / (3 * r**3 + 1)),
    ]


def curve(label):
    for cv in catalog_curves():
        if cv.label == label:
            return cv
    raise KeyError(label)
