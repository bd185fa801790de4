"""JSON manifests declaring charts, scalars, tensors, maps, H-models and checks.

Expressions are strings in the prefix s-expression grammar.  Every symbol
must be declared by the surrounding block: chart coordinates and their
d-symbols for tensors, source coordinates for maps, the fiber variable for
H-models, and named scalars anywhere.  Errors are ParseErrors positioned in
the manifest text.

A minimal manifest::

    {"charts": {"T": {"coords": ["a", "b", "c", "e", "f"]}},
     "tensors": {"g": {"chart": "J", "kind": "symmetric", "expr": "(* dx dq)"}},
     "checks": [{"id": "g-zero", "type": "zero", "expr": "(+ x (* -1 x))"}]}

The chart ``J`` with coordinates x, y, z, p, q is built in.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .algebra.ratfunc import as_rf, substitute
from .algebra.sexpr import parse
from .charts import J5
from .contact import HModel
from .correspondence import ContactDiffeo
from .diffgeo import Chart, CoordinateMap, ExteriorForm, SymmetricForm, dsym
from .errors import G2ContactError, ParseError

TOP_KEYS = ("charts", "scalars", "tensors", "maps", "hmodels", "checks")
FIBER_VARS = ("t", "s", "r")
CHECK_TYPES = {
    "noth": {"hmodel"},
    "pullback": {"map", "target", "source", "factor"},
    "correspond": {"map", "shift", "invert_fiber", "t", "H"},
    "zero": {"expr"},
    "roundtrip": {"hmodel"},
}
_FIELDS = {
    "charts": ({"coords"}, set()),
    "tensors": ({"chart", "kind", "expr"}, set()),
    "maps": ({"source", "target", "components"}, {"fiber_map", "shift", "noshift"}),
    "hmodels": ({"kind", "H"}, {"var", "t", "shift"}),
}


class _Duplicate(Exception):
    def __init__(self, key):
        super().__init__(key)
        self.key = key


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise _Duplicate(k)
        out[k] = v
    return out


def _position(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


@dataclass
class Manifest:
    charts: dict
    scalars: dict = field(default_factory=dict)
    tensors: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    hmodels: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)


class _Reader:
    def __init__(self, text):
        self.text = text

    # -- positioned errors ---------------------------------------------------------------

    def _locate(self, needle, nth=1):
        """Offset of the nth occurrence of ``needle``, or the last one if fewer."""
        pos, found = -1, None
        for _ in range(nth):
            pos = self.text.find(needle, pos + 1)
            if pos < 0:
                break
            found = pos
        return found

    def fail(self, msg, needle=None, nth=1):
        pos = self._locate(json.dumps(needle), nth) if needle is not None else None
        if pos is None:
            raise ParseError(msg)
        raise ParseError(msg, *_position(self.text, pos))

    def expr(self, text, symbols, where):
        if not isinstance(text, str):
            self.fail(f"{where}: expression must be a string")
        try:
            return parse(text, symbols)
        except ParseError as exc:
            start = self._locate(json.dumps(text))
            if start is None or exc.line is None:
                raise ParseError(f"{where}: {exc}") from None
            line, col = _position(self.text, start + 1)
            if exc.line == 1:
                col += exc.column - 1
            raise ParseError(f"{where}: {str(exc).split(' (line')[0]}",
                             line + exc.line - 1, col) from None

    def keys(self, obj, required, optional, where):
        if not isinstance(obj, dict):
            self.fail(f"{where} must be an object")
        for k in obj:
            if k not in required and k not in optional:
                self.fail(f"{where}: unknown key {k!r}", k)
        for k in sorted(required):
            if k not in obj:
                self.fail(f"{where}: missing key {k!r}")

    def ref(self, table, name, kind, where):
        if not isinstance(name, str) or name not in table:
            self.fail(f"{where}: undeclared {kind} {name!r}", name)
        return table[name]


def parse_manifest(text):
    """Parse manifest text into a Manifest; raises ParseError with line and column."""
    rd = _Reader(text)
    try:
        data = json.loads(text, object_pairs_hook=_no_duplicates)
    except _Duplicate as dup:
        rd.fail(f"duplicate name {dup.key!r}", dup.key, nth=2)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    rd.keys(data, set(), set(TOP_KEYS), "manifest")
    seen = {"J": "chart"}

    def declare(name, kind):
        if not isinstance(name, str) or not name.isidentifier():
            rd.fail(f"bad {kind} name {name!r}", name)
        if name in seen or name in FIBER_VARS:
            rd.fail(f"duplicate name {name!r}", name, nth=2)
        seen[name] = kind

    # charts
    charts = {"J": J5}
    for name, decl in data.get("charts", {}).items():
        declare(name, "chart")
        rd.keys(decl, *_FIELDS["charts"], f"chart {name}")
        coords = decl["coords"]
        if (not isinstance(coords, list) or not coords
                or not all(isinstance(c, str) and c.isidentifier() for c in coords)):
            rd.fail(f"chart {name}: coords must be a list of names", name)
        if len(set(coords)) != len(coords):
            rd.fail(f"chart {name}: repeated coordinate", name)
        charts[name] = Chart(name, coords)

    # scalars, each using only constants and earlier scalars
    scalars = {}
    for name, text_ in data.get("scalars", {}).items():
        declare(name, "scalar")
        val = rd.expr(text_, set(scalars), f"scalar {name}")
        scalars[name] = substitute(val, scalars)
        if any(True for _ in scalars[name].num.var_indices()):
            rd.fail(f"scalar {name} is not constant", name)

    def value(text_, symbols, where):
        return substitute(rd.expr(text_, set(symbols) | set(scalars), where), scalars)

    def constant(text_, where):
        return value(text_, (), where)

    # tensors
    tensors = {}
    for name, decl in data.get("tensors", {}).items():
        declare(name, "tensor")
        where = f"tensor {name}"
        rd.keys(decl, *_FIELDS["tensors"], where)
        chart = rd.ref(charts, decl["chart"], "chart", where)
        syms = list(chart.coords) + [dsym(c) for c in chart.coords]
        f = value(decl["expr"], syms, where)
        try:
            sym = SymmetricForm.from_polynomial(chart, f)
        except ValueError as exc:
            rd.fail(f"{where}: {exc}", name)
        if decl["kind"] == "symmetric":
            tensors[name] = sym
        elif decl["kind"] == "one-form":
            if sym.degree != 1:
                rd.fail(f"{where}: a one-form must be linear in the d-symbols", name)
            tensors[name] = ExteriorForm._wrap(chart, 1, dict(sym.terms))
        else:
            rd.fail(f"{where}: kind must be 'symmetric' or 'one-form'", decl["kind"])

    # maps
    maps = {}
    for name, decl in data.get("maps", {}).items():
        declare(name, "map")
        where = f"map {name}"
        rd.keys(decl, *_FIELDS["maps"], where)
        src = rd.ref(charts, decl["source"], "chart", where)
        tgt = rd.ref(charts, decl["target"], "chart", where)
        comps = decl["components"]
        rd.keys(comps, set(tgt.coords), set(), f"{where} components")
        phi = CoordinateMap(src, tgt, {c: value(comps[c], src.coords, f"{where} component {c}")
                                       for c in tgt.coords})
        fiber = decl.get("fiber_map")
        fiber = value(fiber, ("r",), f"{where} fiber_map") if fiber is not None else None
        shift = constant(decl.get("shift", "0"), f"{where} shift")
        noshift = constant(decl.get("noshift", "0"), f"{where} noshift")
        maps[name] = ContactDiffeo(name, phi, fiber, shift.num.constant_value(),
                                   noshift.num.constant_value())

    # H-models
    hmodels = {}
    for name, decl in data.get("hmodels", {}).items():
        declare(name, "hmodel")
        where = f"hmodel {name}"
        rd.keys(decl, *_FIELDS["hmodels"], where)
        var = decl.get("var", "t" if decl["kind"] == "explicit" else "r")
        if var not in FIBER_VARS:
            rd.fail(f"{where}: var must be one of {', '.join(FIBER_VARS)}", var)
        shift = constant(decl.get("shift", "0"), f"{where} shift").num.constant_value()
        H = value(decl["H"], (var,), where)
        try:
            if decl["kind"] == "explicit":
                if "t" in decl:
                    rd.fail(f"{where}: explicit models take no 't'", "t")
                hmodels[name] = HModel.explicit(H, var=var, p11_shift=shift, label=name)
            elif decl["kind"] == "parametric":
                if "t" not in decl:
                    rd.fail(f"{where}: parametric models need 't'")
                t = value(decl["t"], (var,), where)
                hmodels[name] = HModel.parametric(t, H, var=var, p11_shift=shift, label=name)
            else:
                rd.fail(f"{where}: kind must be 'explicit' or 'parametric'", decl["kind"])
        except G2ContactError as exc:
            if isinstance(exc, ParseError):
                raise
            rd.fail(f"{where}: {exc}", name)

    # checks
    checks = []
    ids = set()
    all_syms = set(FIBER_VARS)
    for chart in charts.values():
        all_syms.update(chart.coords)
        all_syms.update(dsym(c) for c in chart.coords)
    for k, decl in enumerate(data.get("checks", [])):
        where = f"check {k}"
        if not isinstance(decl, dict) or decl.get("type") not in CHECK_TYPES:
            rd.fail(f"{where}: type must be one of {', '.join(sorted(CHECK_TYPES))}")
        kind = decl["type"]
        rd.keys(decl, {"id", "type"}, CHECK_TYPES[kind], where)
        cid = decl["id"]
        if not isinstance(cid, str) or cid in ids:
            rd.fail(f"{where}: duplicate or bad id {cid!r}", cid, nth=1)
        ids.add(cid)
        req = {"id": cid, "type": kind}
        if kind in ("noth", "roundtrip"):
            req["hmodel"] = rd.ref(hmodels, decl.get("hmodel"), "hmodel", where)
        elif kind == "zero":
            req["expr"] = value(decl.get("expr"), all_syms, where)
        elif kind == "pullback":
            dm = rd.ref(maps, decl.get("map"), "map", where)
            tgt = rd.ref(tensors, decl.get("target"), "tensor", where)
            src = rd.ref(tensors, decl.get("source"), "tensor", where)
            if tgt.chart != dm.phi.target or src.chart != dm.phi.source:
                rd.fail(f"{where}: tensors do not live on the map's charts", cid)
            req.update(map=dm, target=tgt, source=src,
                       factor=constant(decl.get("factor", "1"), where))
        else:
            req["map"] = rd.ref(maps, decl.get("map"), "map", where)
            if "shift" in decl:
                req["shift"] = constant(decl["shift"], where).num.constant_value()
            req["invert_fiber"] = bool(decl.get("invert_fiber", False))
            for key in ("t", "H"):
                if key in decl:
                    req[key] = value(decl[key], ("r",), where)
        checks.append(req)
    return Manifest(charts, scalars, tensors, maps, hmodels, checks)


def load_manifest(path):
    with open(path, encoding="utf-8") as fh:
        return parse_manifest(fh.read())


# -- running manifest checks --------------------------------------------------------------

def correspond(dm, shift=None, invert_fiber=False):
    """Span solve and recovery for a manifest map; returns (span, recovered)."""
    from .algebra.ratfunc import rf_var
    from .correspondence import recover_solution, span_solve
    if invert_fiber:
        dm = ContactDiffeo(dm.case, dm.phi, 1 / rf_var("r"), dm.p11_shift, dm.noshift)
    sr = span_solve(dm, shift=shift)
    return sr, recover_solution(sr, strict=False)


def manifest_checks(m):
    """Checks requested by a manifest, as registry entries."""
    from .checks import Check
    from .diffgeo import pullback
    from .noth import ParametricCurve, residual_explicit, residual_parametric

    out = []
    for req in m.checks:
        cid = f"manifest.{req['id']}"
        kind = req["type"]
        if kind == "noth":
            h = req["hmodel"]
            if h.kind == "explicit":
                fn = (lambda h=h: residual_explicit(h.H, h.var).residual)
            else:
                fn = (lambda h=h: residual_parametric(ParametricCurve(h.label, h.t, h.H, h.var)).residual)
        elif kind == "zero":
            fn = (lambda e=req["expr"]: e)
        elif kind == "pullback":
            fn = (lambda r=req: pullback(r["map"].phi, r["target"]) - r["source"].scale(as_rf(r["factor"])))
        elif kind == "roundtrip":
            from .checks import _roundtrip_residual
            fn = (lambda h=req["hmodel"]: _roundtrip_residual(h))
        else:
            def fn(r=req):
                sr, rec = correspond(r["map"], r.get("shift"), r["invert_fiber"])
                res = [rec.residual.residual]
                if "t" in r:
                    res.append(rec.t - r["t"])
                if "H" in r:
                    res.append(rec.H - r["H"])
                return res
        out.append(Check(cid, fn))
    return sorted(out, key=lambda c: c.check_id)
