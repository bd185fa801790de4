"""Registry of exact checks behind ``verify`` and the acceptance suite.

A check computes a residual and reports its canonical s-expression; it
passes when that residual is exactly zero.  Checks marked ``expect =
"nonzero"`` guard a known misprint: they pass when the printed form of a
relation fails.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache

from .algebra.poly import NotDivisible, Polynomial, exact_divide
from .algebra.ratfunc import RationalFunction, as_rf, rf_var
from .algebra.scalar import AlgebraicScalar, as_scalar
from .algebra.sexpr import scalar_sexpr, to_sexpr
from .contact import LOCUS_TENSORS, HModel, catalog, contact_form, eliminate_parameter, locus_reduce
from .diffgeo import ExteriorForm, SymmetricForm, VectorField, dsym, lie_bracket, lie_derivative
from .errors import G2ContactError, NotEigenvector, NotG2, NotInIdeal
from .noth import catalog_curves, curve, residual_explicit, residual_parametric

G2_CARTAN = [[2, -1], [-3, 2]]

# Pair assignments of the standard resultants: as computed, and as printed.
RESULTANT_FACTORS = {"p2,p3": "upsilon", "p2,p4": "mu", "p3,p4": "g1"}
RESULTANT_FACTORS_PRINTED = {"p2,p3": "upsilon", "p2,p4": "g1", "p3,p4": "mu"}


# -- residual summaries -----------------------------------------------------------------

def _one_form_poly(w):
    out = as_rf(0)
    for (i,), c in w.terms.items():
        out = out + c * rf_var(dsym(w.chart.coords[i]))
    return out


def canonical(res):
    """Canonical s-expression of a residual; ``"0"`` exactly when it vanishes."""
    if res is None:
        return "0"
    if isinstance(res, bool):
        return "0" if res else "1"
    if isinstance(res, (int, AlgebraicScalar)) or hasattr(res, "denominator"):
        return scalar_sexpr(as_scalar(res))
    if isinstance(res, (RationalFunction, Polynomial)):
        return to_sexpr(res)
    if isinstance(res, SymmetricForm):
        return to_sexpr(res.to_polynomial())
    if isinstance(res, ExteriorForm):
        if res.degree != 1:
            raise ValueError("only 1-form residuals are summarized")
        return to_sexpr(_one_form_poly(res))
    if isinstance(res, VectorField):
        res = list(res.components)
    if isinstance(res, dict):
        res = [res[k] for k in sorted(res)]
    if isinstance(res, (list, tuple)):
        for r in res:
            s = canonical(r)
            if s != "0":
                return s
        return "0"
    raise TypeError(f"cannot summarize residual of type {type(res).__name__}")


@dataclass
class Check:
    check_id: str
    fn: object
    expect: str = "zero"


@dataclass
class CheckReport:
    check_id: str
    status: str
    residual_summary: str
    elapsed_ms: float
    expect: str = "zero"
    detail: str = ""

    @property
    def passed(self):
        return self.status == "pass"

    def to_json(self):
        out = {"check_id": self.check_id, "status": self.status,
               "residual_summary": self.residual_summary,
               "elapsed_ms": round(self.elapsed_ms, 3), "expect": self.expect}
        if self.detail:
            out["detail"] = self.detail
        return out


def run_check(check):
    start = time.perf_counter()
    try:
        summary = canonical(check.fn())
    except G2ContactError as exc:
        ms = (time.perf_counter() - start) * 1000
        return CheckReport(check.check_id, "error", type(exc).__name__, ms, check.expect, str(exc))
    ms = (time.perf_counter() - start) * 1000
    zero = summary == "0"
    ok = zero if check.expect == "zero" else not zero
    return CheckReport(check.check_id, "pass" if ok else "fail", summary, ms, check.expect)


# -- Noth -------------------------------------------------------------------------------

def noth_checks():
    t = rf_var("t")
    out = [Check("noth.explicit.3t2", lambda: residual_explicit(3 * t * t).residual)]
    for cv in catalog_curves():
        out.append(Check(f"noth.parametric.{cv.label}",
                         lambda cv=cv: residual_parametric(cv).residual))
    return out


# -- tensors ----------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _catalog(case):
    return catalog(case)


@lru_cache(maxsize=None)
def _system(case):
    return _catalog(case).system()


@lru_cache(maxsize=None)
def _resultants(case="standard"):
    return {row["pair"]: row["resultant"] for row in eliminate_parameter(_system(case))}


def _divisibility(assignment, case="standard"):
    """Number of pairs whose resultant is not divisible by the assigned tensor."""
    cat = _catalog(case)
    res = _resultants(case)
    bad = 0
    for pair, name in assignment.items():
        try:
            exact_divide(res[pair], cat.tensors[name].to_polynomial().num.canonical())
        except NotDivisible:
            bad += 1
    return bad


def tensor_checks(case):
    out = []
    for name in LOCUS_TENSORS[case]:
        out.append(Check(f"tensors.{case}.locus.{name}",
                         lambda name=name: locus_reduce(_catalog(case).tensors[name], _system(case))))
    for rel in _catalog(case).relations:
        out.append(Check(f"tensors.{case}.relation.{rel.name}",
                         lambda rel=rel: rel.lhs - rel.rhs,
                         "nonzero" if rel.as_printed_typo else "zero"))
    if case == "standard":
        for pair, name in RESULTANT_FACTORS.items():
            out.append(Check(f"tensors.standard.resultant.{pair.replace(',', '-')}",
                             lambda pair=pair, name=name: _divisibility({pair: name})))
        out.append(Check("tensors.standard.resultant.labels-as-printed",
                         lambda: _divisibility(RESULTANT_FACTORS_PRINTED), "nonzero"))
    else:
        # nu and kappa divide every pairwise resultant, like dx in the standard case
        for name in ("nu", "kappa"):
            out.append(Check(f"tensors.{case}.resultant-factor.{name}",
                             lambda name=name: _divisibility(
                                 {pair: name for pair in _resultants(case)}, case)))
    return out


# -- symmetry algebra -------------------------------------------------------------------

THEOREM_KEYS = {"1": ("thm-noth1", "noth1"), "2": ("thm-noth2", "noth2"),
                "2c": ("thm-noth2-corrected", "noth2")}


@lru_cache(maxsize=None)
def _basis(key):
    from .g2 import basis
    return basis(THEOREM_KEYS[key][0])


@lru_cache(maxsize=None)
def _sc(key):
    from .g2 import structure_constants
    return structure_constants(_basis(key), strict=False)


@lru_cache(maxsize=None)
def _killing(key):
    from .g2 import killing_form
    return killing_form(_sc(key))


def _closed_sc(key):
    sc = _sc(key)
    if sc.failures:
        from .errors import NotClosed
        raise NotClosed(f"{len(sc.failures)} brackets leave the span")
    return sc


def _eigen_failures(key):
    from .g2 import eigenvalue_pairs
    try:
        eigenvalue_pairs(_closed_sc(key))
    except NotEigenvector:
        return 1
    return 0


def _classify(key):
    from .g2 import cartan_gram, classify_g2, eigenvalue_pairs
    sc = _closed_sc(key)
    try:
        rep = classify_g2(eigenvalue_pairs(sc), cartan_gram(_killing(key)))
    except NotG2:
        return 1
    ok = (rep.cartan_matrix == G2_CARTAN and rep.short == 6 and rep.long == 6
          and rep.ratio == 3)
    return 0 if ok else 1


def _clock(key):
    from .g2 import cartan_gram, clock_checks, roots
    K = _killing(key)
    flags = clock_checks(roots(_basis(key), _closed_sc(key), K), cartan_gram(K))
    return sum(1 for v in flags.values() if not v)


def _picture(key):
    from .g2 import matches_picture, roots
    return 0 if matches_picture(roots(_basis(key), _closed_sc(key), _killing(key))) else 1


def _contact_residual(X):
    vp = contact_form()
    L = lie_derivative(X, vp)
    lam = L.coefficient("z") / vp.coefficient("z")
    return L - vp.scale(lam)


def _upsilon(key, name):
    from .g2 import structural_symmetry_check
    try:
        structural_symmetry_check(_basis(key)[name], _catalog(THEOREM_KEYS[key][1]).tensors["upsilon"])
    except NotInIdeal:
        return 1
    return 0


def _cubic(key, mu, name):
    from .g2 import cubic_symmetry_check
    cat = _catalog(THEOREM_KEYS[key][1])
    try:
        cubic_symmetry_check(_basis(key)[name], cat.tensors[mu], cat.module)
    except NotInIdeal:
        return 1
    return 0


def symmetry_checks(key):
    from .g2 import NAMES, basis_rank, jacobi_check, killing_invariance_residuals, killing_rank
    p = f"symmetry.{key}"
    out = [
        Check(f"{p}.rank", lambda: len(NAMES) - basis_rank(_basis(key))),
        Check(f"{p}.closure", lambda: len(_sc(key).failures)),
    ]
    if key != "2":
        b = _basis(key)
        out += [
            Check(f"{p}.jacobi", lambda: len(jacobi_check(_closed_sc(key)))),
            Check(f"{p}.killing-rank", lambda: len(NAMES) - killing_rank(_killing(key))),
            Check(f"{p}.killing-invariance",
                  lambda: len(killing_invariance_residuals(_closed_sc(key), _killing(key)))),
            Check(f"{p}.cartan-commute", lambda: lie_bracket(b["h1"], b["h2"])),
            Check(f"{p}.eigenvectors", lambda: _eigen_failures(key)),
            Check(f"{p}.classify", lambda: _classify(key)),
            Check(f"{p}.clock", lambda: _clock(key)),
            Check(f"{p}.picture", lambda: _picture(key)),
        ]
    for name in NAMES:
        out.append(Check(f"{p}.contact.{name}", lambda name=name: _contact_residual(_basis(key)[name])))
        out.append(Check(f"{p}.upsilon.{name}", lambda name=name: _upsilon(key, name)))
        for mu in ("mu1", "mu2"):
            out.append(Check(f"{p}.{mu}.{name}", lambda mu=mu, name=name: _cubic(key, mu, name)))
    return out


# -- diffeomorphisms and the converse construction ----------------------------------------

def printed_span(case):
    """Printed p11, p12, p22, p31 for the two diffeomorphisms, plus the identity map."""
    r = rf_var("r")
    from .algebra.scalar import CBRT12 as c
    one = as_rf(1)
    if case == "1":
        return (-2 * one / (r**3 - 1), c * r**2 / (r**3 - 1),
                c * c * r * (r**3 - 4) / (6 * (r**3 - 1)), -c * c * r / (2 * (r**3 + 2)))
    if case == "2":
        return (-2 * (r**3 + 2) / (3 * (r**3 - 1)), c * r / (r**3 - 1),
                -c * c * (4 * r**3 - 1) / (6 * r * (r**3 - 1)), -c * c * r**2 / (4 * r**3 + 2))
    return (2 * r**3 - 5, -3 * r**2, 6 * r, -r)


@lru_cache(maxsize=None)
def _diffeo(case):
    from .correspondence import diffeo
    return diffeo(case)


@lru_cache(maxsize=None)
def _e2e(case):
    from .correspondence import end_to_end
    return end_to_end(_diffeo(case))


def _expected_curves(case):
    if case == "identity":
        r = rf_var("r")
        return {"shift": (r, 3 * r * r)}
    return {"shift": curve(f"recovered-{case}"), "noshift": curve(f"recovered-{case}-noshift")}


def diffeo_checks(case):
    from .correspondence import verify_diffeo
    p = f"diffeo.{case}"
    out = []
    for i, (name, *_rest) in enumerate(_diffeo(case).expected):
        out.append(Check(f"{p}.pullback.{name}",
                         lambda i=i: verify_diffeo(_diffeo(case), strict=False)[i][1]))
    for k, label in enumerate(("p11", "p12", "p22", "p31")):
        out.append(Check(f"{p}.span.{label}",
                         lambda k=k, label=label: getattr(_e2e(case).span, label) - printed_span(case)[k]))
    out.append(Check(f"{p}.span.symmetric", lambda: _e2e(case).span.p12 - _e2e(case).span.p21))
    for tag, want in _expected_curves(case).items():
        wt, wH = (want.t, want.H) if hasattr(want, "t") else want
        rec = (lambda tag=tag: getattr(_e2e(case), "shifted" if tag == "shift" else "unshifted"))
        out.append(Check(f"{p}.recovered.{tag}.t", lambda rec=rec, wt=wt: rec().t - wt))
        out.append(Check(f"{p}.recovered.{tag}.H", lambda rec=rec, wH=wH: rec().H - wH))
        out.append(Check(f"{p}.recovered.{tag}.noth", lambda rec=rec: rec().residual.residual))
    return out


# -- double fibration transform -------------------------------------------------------------

def _forward(printed, k):
    from .dft import verify_forward_identities
    return verify_forward_identities(printed=printed, strict=False)[k].residual


def _inverse(printed):
    from .dft import verify_inverse_identity
    return verify_inverse_identity(printed=printed, strict=False).residual


def _roundtrip_model(label):
    t = rf_var("t")
    if label == "3t2":
        return HModel.explicit(3 * t * t, label="3t^2")
    if label == "formal":
        return HModel.formal()
    cv = curve(label)
    return HModel.parametric(cv.t, cv.H, var=cv.var, label=label)


def _roundtrip_residual(h):
    from .dft import roundtrip_check
    rep = roundtrip_check(h, strict=False)
    return [rep.inverse_after_forward, rep.forward_after_inverse]


def _roundtrip(label):
    return _roundtrip_residual(_roundtrip_model(label))


def dft_checks():
    out = []
    for k in range(4):
        out.append(Check(f"dft.forward.{k + 1}", lambda k=k: _forward(False, k)))
        out.append(Check(f"dft.forward.printed.{k + 1}", lambda k=k: _forward(True, k)))
    out.append(Check("dft.inverse", lambda: _inverse(False)))
    out.append(Check("dft.inverse.printed", lambda: _inverse(True)))
    for label in ("3t2", "formal", "recovered-1", "noth1", "noth2"):
        out.append(Check(f"dft.roundtrip.{label}", lambda label=label: _roundtrip(label)))
    return out


# -- oracle -----------------------------------------------------------------------------------

def _oracle(k, seed):
    from .crosscheck import run_group
    results = run_group(k, seed)
    for res in results:
        if res.nonzero:
            return res.nonzero[0][1]
    return sum(1 for res in results if not res.is_zero)


def oracle_checks(seed=0):
    return [Check(f"oracle.criterion-{k}", lambda k=k: _oracle(k, seed)) for k in range(1, 9)]


# -- groups -------------------------------------------------------------------------------------

def group(name, arg=None):
    """Checks of one ``verify`` subcommand, sorted by check_id."""
    if name == "noth":
        out = noth_checks()
    elif name == "tensors":
        out = tensor_checks(arg)
    elif name == "symmetry":
        out = symmetry_checks(str(arg)) + (symmetry_checks("2c") if str(arg) == "2" else [])
    elif name == "diffeo":
        out = diffeo_checks(str(arg))
    elif name == "dft":
        out = dft_checks()
    elif name == "oracle":
        out = oracle_checks(arg or 0)
    elif name == "all":
        out = noth_checks()
        for case in ("standard", "noth1", "noth2"):
            out += tensor_checks(case)
        for key in ("1", "2", "2c"):
            out += symmetry_checks(key)
        for case in ("1", "2", "identity"):
            out += diffeo_checks(case)
        out += dft_checks() + oracle_checks(arg or 0)
    else:
        raise ValueError(f"unknown check group {name!r}")
    return sorted(out, key=lambda c: c.check_id)
