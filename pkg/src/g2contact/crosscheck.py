"""Per-criterion numeric cross-checks built on the oracle kernel.

Each function returns a list of OracleResults.  Relations are restated here
in terms of evaluated tensor values rather than reusing the symbolic
products.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .algebra.ratfunc import rf_var
from .algebra.scalar import CBRT12, as_scalar
from .charts import J5, M6, R6, h_jet, hx_jet
from .contact import LOCUS_TENSORS, catalog, eliminate_parameter
from .diffgeo import dsym
from .noth import ParametricCurve
from .oracle import (DEFAULT_POINTS, Series, bracket_at, ev, field_at, lie_at, noth_explicit,
                     noth_parametric, pull_at, run_points, sym_at, t_jets_parametric, value)

D_NAMES = [dsym(c) for c in J5.coords]
V_NAMES = ["v_" + c for c in J5.coords]


def _tensor_values(cat, point):
    return {k: ev(T.to_polynomial(), point) for k, T in cat.tensors.items()}


# -- criterion 1 ----------------------------------------------------------------------

def check_noth(rng, n=DEFAULT_POINTS):
    from .noth import catalog_curves
    t = rf_var("t")
    out = [noth_explicit(3 * t * t, "t", rng, n)]
    out += [noth_parametric(cv, rng, n) for cv in catalog_curves()]
    return out


# -- criterion 2 ----------------------------------------------------------------------

def _det(m):
    m = [[as_scalar(v) for v in row] for row in m]
    n = len(m)
    det = as_scalar(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if piv is None:
            return as_scalar(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = m[col][col].inverse()
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if not f.is_zero():
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def _univariate_coeffs(poly, var, point):
    groups = poly.coefficients_in(var)
    deg = max(groups)
    return [ev(groups.get(k, 0), point) if k in groups else as_scalar(0)
            for k in range(deg, -1, -1)]


def _sylvester_det(f, g):
    m, n = len(f) - 1, len(g) - 1
    rows = []
    for i in range(n):
        rows.append([0] * i + f + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + g + [0] * (m - 1 - i))
    return _det(rows)


def check_elimination(rng, n=DEFAULT_POINTS):
    from .contact import fiber_polynomials
    cat = catalog("standard")
    sys_ = cat.system()
    polys = fiber_polynomials(sys_)
    rows = eliminate_parameter(sys_, cat)
    out = []
    for row in rows:
        a, b = row["pair"].split(",")

        def fn(pt, a=a, b=b, row=row):
            fa = _univariate_coeffs(polys[a], sys_.fiber, pt)
            fb = _univariate_coeffs(polys[b], sys_.fiber, pt)
            if fa[0].is_zero() or fb[0].is_zero():
                from .errors import PoleAtPoint
                raise PoleAtPoint("leading coefficient vanishes")
            vals = [_sylvester_det(fa, fb) - ev(row["resultant"], pt)]
            for fac in row["factors"]:
                T = cat.tensors[fac["factor"]].to_polynomial().num.canonical()
                vals.append(ev(row["resultant"], pt)
                            - ev(T, pt) ** fac["multiplicity"] * ev(fac["cofactor"], pt))
            return vals

        out.append(run_points(f"resultant {row['pair']}", rng, D_NAMES, fn, n))

    def rel(pt):
        v = _tensor_values(cat, pt)
        return [v["upsilon"] - (4 * v["g1"] * v["g2"] + 3 * v["g3"] ** 2),
                3 * v["mu"] - (pt["dx"] * v["g3"] - pt["dy"] * v["g1"])]

    out.append(run_points("standard relations", rng, D_NAMES, rel, n))
    return out


# -- criterion 3 ----------------------------------------------------------------------

def locus_point(sys_, pt):
    """d-values on the locus at fiber value pt[fiber] with dx = pt['dx']."""
    at = {sys_.fiber: pt[sys_.fiber], "p": pt["p"], "q": pt["q"]}
    p11, p12, p21, p22, p31 = (ev(f, at) for f in (sys_.p11, sys_.p12, sys_.p21, sys_.p22,
                                                  sys_.p31))
    dx = pt["dx"]
    dy = -p31 * dx
    return {"dx": dx, "dy": dy, "dp": -(p11 * dx + p12 * dy), "dq": -(p21 * dx + p22 * dy),
            "dz": pt["p"] * dx + pt["q"] * dy}


def check_locus(case, rng, n=DEFAULT_POINTS, names=None):
    cat = catalog(case)
    sys_ = cat.system()
    out = []
    for tname in names or LOCUS_TENSORS[case]:
        T = cat.tensors[tname]

        def fn(pt, T=T):
            return [ev(T.to_polynomial(), locus_point(sys_, pt))]

        out.append(run_points(f"locus {case} {tname}", rng, [sys_.fiber, "dx", "p", "q"], fn, n))
    return out


def check_noth_relations(rng, n=DEFAULT_POINTS):
    out = []
    for case in ("noth1", "noth2"):
        cat = catalog(case)

        def fn(pt, cat=cat, case=case):
            v = _tensor_values(cat, pt)
            dx, dy, dp, dq = pt["dx"], pt["dy"], pt["dp"], pt["dq"]
            vals = [v["upsilon"] - (v["g2"] ** 2 - 8 * v["g1"] * v["g3"]),
                    v["mu2"] - (2 * dy * v["g1"] + dq * v["g3"])]
            if case == "noth1":
                vals.append(v["mu1"] - (4 * dy * v["g1"] + 3 * dp * v["g2"]))
            else:
                vals.append(v["mu1"] - (4 * dy * v["g1"] + (4 * dx + 3 * dp) * v["g2"]))
            return vals

        out.append(run_points(f"{case} relations", rng, D_NAMES, fn, n))
    return out


# -- criteria 4 and 5 -----------------------------------------------------------------

def check_structure(theorem, sc, rng, n=DEFAULT_POINTS):
    from .g2 import basis
    b = basis(theorem).ordered()

    def fn(pt):
        vals = [field_at(X, pt) for X in b]
        out = []
        for i in range(len(b)):
            for j in range(i + 1, len(b)):
                br = bracket_at(b[i], b[j], pt)
                for comp in range(5):
                    acc = br[comp]
                    for k, c in enumerate(sc.c[i][j]):
                        if not c.is_zero():
                            acc = acc - c * vals[k][comp]
                    out.append(acc)
        return out

    return [run_points(f"structure constants {theorem}", rng, list(J5.coords), fn, n)]


def check_symmetries(theorem, case, rng, n=DEFAULT_POINTS):
    from .contact import contact_form
    from .g2 import NAMES, basis, contact_symmetry_check, structural_symmetry_check
    b = basis(theorem)
    vp = contact_form()
    ups = catalog(case).tensors["upsilon"]
    certs = {}
    for name in NAMES:
        X = b[name]
        certs[name] = (contact_symmetry_check(X, vp), structural_symmetry_check(X, ups))

    def fn(pt):
        point = {c: pt[c] for c in J5.coords}
        vec = [pt[v] for v in V_NAMES]
        bind = dict(point)
        bind.update({d: v for d, v in zip(D_NAMES, vec)})
        out = []
        for name in NAMES:
            X = b[name]
            lam, cert = certs[name]
            w = sym_at(vp, point, vec)
            out.append(lie_at(X, vp, point, vec) - ev(lam, point) * w)
            out.append(lie_at(X, ups, point, vec) - ev(cert.f, bind) * sym_at(ups, point, vec)
                       - w * ev(cert.sigma, bind))
        return out

    return [run_points(f"symmetries {theorem}", rng, list(J5.coords) + V_NAMES, fn, n)]


# -- criteria 6 and 7 -----------------------------------------------------------------

def check_diffeo(case, rng, n=DEFAULT_POINTS):
    from .correspondence import diffeo
    dm = diffeo(case)

    def fn(pt):
        point = {c: pt[c] for c in J5.coords}
        vec = [pt[v] for v in V_NAMES]
        return [pull_at(dm.phi, target, point, vec) - const * sym_at(source, point, vec)
                for _, target, source, const in dm.expected]

    return [run_points(f"diffeo {case}", rng, list(J5.coords) + V_NAMES, fn, n)]


PRINTED_SPAN = {
    "1": lambda r, c: (-2 / (r**3 - 1), c * r**2 / (r**3 - 1),
                       c * c * r * (r**3 - 4) / (6 * (r**3 - 1)), -c * c * r / (2 * (r**3 + 2))),
    "2": lambda r, c: (-2 * (r**3 + 2) / (3 * (r**3 - 1)), c * r / (r**3 - 1),
                       -c * c * (4 * r**3 - 1) / (6 * r * (r**3 - 1)),
                       -c * c * r**2 / (4 * r**3 + 2)),
    "identity": lambda r, c: (2 * r**3 - 5, -3 * r**2, 6 * r, -r),
}


def check_span(case, rng, n=DEFAULT_POINTS):
    from .correspondence import JT, diffeo, end_to_end
    from .diffgeo import ExteriorForm
    from .algebra.ratfunc import as_rf
    dm = diffeo(case)
    e2e = end_to_end(dm)
    sr = e2e.span
    forms = sr.system.forms
    x1, y1, p1, q1 = (rf_var(v) for v in ("x1", "y1", "p1", "q1"))

    def target_forms(r):
        at = {"r": r}
        p11, p12, p21, p22, p31 = (ev(f, at) for f in (sr.p11, sr.p12, sr.p21, sr.p22, sr.p31))
        return {
            "dp1": ExteriorForm.one_form(JT, {"p1": 1, "x1": as_rf(p11), "y1": as_rf(p12)}),
            "dq1": ExteriorForm.one_form(JT, {"q1": 1, "x1": as_rf(p21), "y1": as_rf(p22)}),
            "varpi1": ExteriorForm.one_form(JT, {"z1": 1, "x1": -p1, "y1": -q1}),
            "dy1": ExteriorForm.one_form(JT, {"y1": 1, "x1": as_rf(p31)}),
        }

    def fn(pt):
        r = pt["r"]
        point = {c: pt[c] for c in J5.coords}
        vec = [pt[v] for v in V_NAMES]
        tf = target_forms(r)
        at = dict(point, r=r)
        out = []
        for label, comb in sr.combination.items():
            lhs = pull_at(dm.phi, tf[label], point, vec)
            rhs = 0
            for sname, coeff in comb.items():
                rhs = rhs + ev(coeff, {"r": r}) * sym_at(forms[sname], at, vec)
            out.append(lhs - rhs)
        want = PRINTED_SPAN[case](r, CBRT12)
        got = [ev(f, {"r": r}) for f in (sr.p11, sr.p12, sr.p22, sr.p31)]
        out += [a - b for a, b in zip(got, want)]
        out.append(ev(sr.p12, {"r": r}) - ev(sr.p21, {"r": r}))
        return out

    res = [run_points(f"span {case}", rng, list(J5.coords) + V_NAMES + ["r"], fn, n)]
    for label, rec in (("shift", e2e.shifted), ("noshift", e2e.unshifted)):
        res.append(noth_parametric(ParametricCurve(f"recovered {case} {label}", rec.t, rec.H,
                                                   rec.var), rng, n))
    return res


# -- criterion 8 ----------------------------------------------------------------------

class PolyH:
    """A random polynomial H(t) with its derivatives and primitive, on plain coefficient lists."""

    def __init__(self, coeffs):
        self.coeffs = [Fraction(c) for c in coeffs]

    @classmethod
    def random(cls, rng, degree=9):
        return cls([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(degree + 1)])

    def derivative(self, k=1):
        c = list(self.coeffs)
        for _ in range(k):
            c = [i * a for i, a in enumerate(c)][1:] or [Fraction(0)]
        return PolyH(c)

    def primitive(self):
        return PolyH([Fraction(0)] + [a / (i + 1) for i, a in enumerate(self.coeffs)])

    def rescaled(self, s):
        """H(s * X) as a polynomial in X."""
        return PolyH([a * s ** i for i, a in enumerate(self.coeffs)])

    def __call__(self, t):
        out = 0
        for a in reversed(self.coeffs):
            out = out * t + as_scalar(a)
        return out


def _r_values(H, t):
    vals = {h_jet(k): H.derivative(k)(t) for k in range(4)}
    vals["I"] = H.primitive()(t)
    return vals


def _m_values(HX, J, X):
    vals = {hx_jet(k): HX.derivative(k)(X) for k in range(4)}
    vals["J"] = J(X)
    return vals


def _r_forms(H, point, vec):
    """varpi, w2, w3, w4 on R at ``point`` applied to ``vec`` (order x, y, z, p, q, t)."""
    t = point["t"]
    Hv, Ht, I = H(t), H.derivative()(t), H.primitive()(t)
    p11 = t * t * Ht - 2 * t * Hv + 2 * I
    p12 = Hv - t * Ht
    dx, dy, dz, dp, dq, _ = vec
    return {"varpi": dz - point["p"] * dx - point["q"] * dy,
            "w2": dp + p11 * dx + p12 * dy, "w3": dq + p12 * dx + Ht * dy, "w4": dy - t * dx}


def check_dft(rng, n=DEFAULT_POINTS):
    from .dft import forward_components, inverse_components
    R_NAMES = list(R6.coords)
    VR = ["v_" + c for c in R_NAMES]
    VM = ["v_" + c for c in M6.coords]
    fwd = forward_components()
    inv = inverse_components()
    H = PolyH.random(rng)
    # X-side model tied to H by X = -2t and J = 2tH - 4I
    HX = H.rescaled(Fraction(-1, 2))
    I = H.primitive()

    def J(X):
        t = X * Fraction(-1, 2)
        return 2 * t * H(t) - 4 * I(t)

    def forward_fn(pt):
        point = {c: pt[c] for c in R_NAMES}
        vec = [pt[v] for v in VR]
        sp = {c: Series([point[c], v]) for c, v in zip(R_NAMES, vec)}
        sp.update(_r_values(H, sp["t"]))
        img = {k: ev(f, sp) for k, f in fwd.items()}
        X, Y, Z, P, Q, L = (value(img[c]) for c in M6.coords)
        dX, dY, dZ, dP, dQ, dL = (img[c].c[1] for c in M6.coords)
        hxx = HX.derivative(2)(X)
        w = _r_forms(H, point, vec)
        t, x, y = point["t"], point["x"], point["y"]
        Htt = H.derivative(2)(t)
        return [
            dY - P * dX - (w["w2"] + t * w["w3"]),
            dP - Q * dX - (-w["w3"] / 2),
            dZ - Q * Q / hxx * dX - (w["varpi"] - x * w["w2"] - y * w["w3"]),
            dQ - L * dX - Htt / 4 * w["w4"],
        ]

    def inverse_fn(pt):
        point = {c: pt[c] for c in M6.coords}
        vec = [pt[v] for v in VM]
        sp = {c: Series([point[c], v]) for c, v in zip(M6.coords, vec)}
        sp.update(_m_values(HX, J, sp["X"]))
        img = {k: ev(f, sp) for k, f in inv.items()}
        t = value(img["t"])
        dy, dx = img["y"].c[1], img["x"].c[1]
        hxx = HX.derivative(2)(point["X"])
        return [dy - t * dx - (vec[4] - point["L"] * vec[0]) / hxx]

    def roundtrip_fn(pt):
        point = {c: pt[c] for c in R_NAMES}
        at = dict(point)
        at.update(_r_values(H, point["t"]))
        img = {k: ev(f, at) for k, f in fwd.items()}
        img.update(_m_values(HX, J, img["X"]))
        back = {k: ev(f, img) for k, f in inv.items()}
        out = [back[c] - point[c] for c in R_NAMES]
        mpt = {c: img[c] for c in M6.coords}
        mat = dict(mpt)
        mat.update(_m_values(HX, J, mpt["X"]))
        rpt = {k: ev(f, mat) for k, f in inv.items()}
        rpt.update(_r_values(H, rpt["t"]))
        again = {k: ev(f, rpt) for k, f in fwd.items()}
        out += [again[c] - mpt[c] for c in M6.coords]
        return out

    return [
        run_points("dft forward identities", rng, R_NAMES + VR, forward_fn, n),
        run_points("dft inverse identity", rng, list(M6.coords) + VM, inverse_fn, n),
        run_points("dft round trip (random polynomial H)", rng, R_NAMES, roundtrip_fn, n),
    ] + check_roundtrip_curves(rng, n)


def check_roundtrip_curves(rng, n=DEFAULT_POINTS):
    """Round trip for H = 3t^2 and the recovered-1 curve along the curve parameter."""
    from .dft import forward_components, inverse_components
    from .algebra.integrate import integrate
    from .noth import curve
    fwd = forward_components()
    inv = inverse_components()
    r = rf_var("r")
    cases = [("3t^2", r, 3 * r * r), ("recovered-1", curve("recovered-1").t, curve("recovered-1").H)]
    out = []
    for label, tc, Hc in cases:
        I = integrate(Hc * tc.diff("r"), "r")
        X = -2 * tc
        J = 2 * tc * Hc - 4 * I

        def fn(pt, tc=tc, Hc=Hc, I=I, X=X, J=J):
            r0 = pt["r"]
            jt = t_jets_parametric(tc, Hc, "r", r0, 3)
            jx = t_jets_parametric(X, Hc, "r", r0, 3)
            rvals = {h_jet(k): jt[k] for k in range(4)}
            rvals["I"] = ev(I, {"r": r0})
            mvals = {hx_jet(k): jx[k] for k in range(4)}
            mvals["J"] = ev(J, {"r": r0})
            t0 = ev(tc, {"r": r0})
            start = {c: pt[c] for c in J5.coords}
            start["t"] = t0
            img = {k: ev(f, {**start, **rvals}) for k, f in fwd.items()}
            back = {k: ev(f, {**img, **mvals}) for k, f in inv.items()}
            res = [back[c] - start[c] for c in R6.coords]
            again = {k: ev(f, {**back, **rvals}) for k, f in fwd.items()}
            res += [again[c] - img[c] for c in M6.coords]
            return res

        out.append(run_points(f"dft round trip {label}", rng, list(J5.coords) + ["r"], fn, n))
    return out


# -- driver ---------------------------------------------------------------------------

def run_group(k, seed=0, n=DEFAULT_POINTS):
    """Cross-checks of criterion ``k``, each group on its own seeded stream."""
    from .g2 import basis, structure_constants
    rng = random.Random(1000 * seed + k)
    if k == 1:
        return check_noth(rng, n)
    if k == 2:
        return check_elimination(rng, n)
    if k == 3:
        return (check_locus("noth1", rng, n, ("upsilon", "mu1", "mu2"))
                + check_locus("noth2", rng, n, ("upsilon", "mu1", "mu2"))
                + check_noth_relations(rng, n))
    if k == 4:
        out = []
        for th in ("thm-noth1", "thm-noth2-corrected"):
            out += check_structure(th, structure_constants(basis(th)), rng, n)
        return out
    if k == 5:
        return (check_symmetries("thm-noth1", "noth1", rng, n)
                + check_symmetries("thm-noth2-corrected", "noth2", rng, n))
    if k == 6:
        return check_diffeo("1", rng, n) + check_diffeo("2", rng, n)
    if k == 7:
        return check_span("1", rng, n) + check_span("2", rng, n) + check_span("identity", rng, n)
    if k == 8:
        return check_dft(rng, n)
    raise ValueError(f"no cross-check group {k}")


def run_all(seed=0, n=DEFAULT_POINTS):
    """Every cross-check, grouped by criterion number."""
    return {k: run_group(k, seed, n) for k in range(1, 9)}


def summary(groups):
    return {k: all(r.is_zero for r in v) for k, v in groups.items()}

