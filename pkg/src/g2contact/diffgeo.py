"""Charts with jet symbols, exterior and symmetric forms, vector fields and maps.

Coefficients are RationalFunctions.  Only chart coordinates are
differentiated; any other variable (a fiber parameter on a chart that does
not contain it, say) is treated as a constant.  A jet symbol whose base
variable is a chart coordinate differentiates through the chart's
derivation table.
"""
from __future__ import annotations

from .algebra.poly import Polynomial, var_index
from .algebra.ratfunc import ONE, ZERO, RationalFunction, as_rf, substitute
from .errors import DegreeOverflow


class Chart:
    """Named coordinate chart with an optional table of jet symbols."""

    def __init__(self, name, coords, jets=None):
        coords = tuple(coords)
        if len(set(coords)) != len(coords):
            raise ValueError(f"chart {name}: repeated coordinate names")
        self.name = name
        self.coords = coords
        self._pos = {c: i for i, c in enumerate(coords)}
        self.jets = {}
        for sym, (base, deriv) in (jets or {}).items():
            self.jets[sym] = (base, None if deriv is None else as_rf(deriv))
        self._by_base = {}
        for sym, (base, deriv) in self.jets.items():
            self._by_base.setdefault(base, []).append((sym, deriv))
        for c in coords:
            var_index(c)
            var_index(dsym(c))

    @property
    def dim(self):
        return len(self.coords)

    def index(self, name):
        try:
            return self._pos[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a coordinate of chart {self.name}") from None

    def partial(self, f, name):
        """Total derivative of ``f`` along coordinate ``name``."""
        f = as_rf(f)
        jets = self._by_base.get(name, ())
        if not jets:
            return f.diff(name)
        dn = self._poly_total(f.num, name, jets)
        if f.den.is_constant():
            return dn / f.den.constant_value()
        dd = self._poly_total(f.den, name, jets)
        den = as_rf(f.den)
        return (dn * den - as_rf(f.num) * dd) / (den * den)

    def _poly_total(self, p, name, jets):
        out = as_rf(p.diff(name))
        idx = p.var_indices()
        for sym, deriv in jets:
            if var_index(sym) not in idx:
                continue
            if deriv is None:
                raise ValueError(f"jet {sym} has no recorded derivative")
            out = out + as_rf(p.diff(sym)) * deriv
        return out

    def __eq__(self, other):
        return isinstance(other, Chart) and self.name == other.name and self.coords == other.coords

    def __hash__(self):
        return hash((self.name, self.coords))

    def __repr__(self):
        return f"Chart({self.name}: {', '.join(self.coords)})"


def dsym(name):
    """Name of the differential symbol of coordinate ``name``."""
    return "d" + name


def _check_chart(a, b):
    if a.chart != b.chart:
        raise ValueError(f"chart mismatch: {a.chart.name} vs {b.chart.name}")


def _add_terms(out, key, val):
    cur = out.get(key)
    nv = val if cur is None else cur + val
    if nv.is_zero():
        out.pop(key, None)
    else:
        out[key] = nv


# -- exterior forms --------------------------------------------------------------

class ExteriorForm:
    """Differential k-form; ``terms`` maps increasing index tuples to coefficients."""

    __slots__ = ("chart", "degree", "terms")

    def __init__(self, chart, degree, terms=None):
        if degree < 0 or degree > chart.dim:
            raise DegreeOverflow(f"degree {degree} on a {chart.dim}-dimensional chart")
        self.chart = chart
        self.degree = degree
        out = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != degree:
                raise ValueError("index tuple length must equal the degree")
            sign, key = _sort_sign(key)
            if sign == 0:
                continue
            c = as_rf(c)
            _add_terms(out, key, c if sign > 0 else -c)
        self.terms = out

    @classmethod
    def _wrap(cls, chart, degree, terms):
        obj = object.__new__(cls)
        obj.chart, obj.degree, obj.terms = chart, degree, terms
        return obj

    @classmethod
    def function(cls, chart, f):
        f = as_rf(f)
        return cls._wrap(chart, 0, {} if f.is_zero() else {(): f})

    @classmethod
    def differential(cls, chart, name):
        return cls._wrap(chart, 1, {(chart.index(name),): ONE})

    @classmethod
    def one_form(cls, chart, coeffs):
        """1-form from ``{coordinate name: coefficient}``."""
        return cls(chart, 1, {(chart.index(n),): c for n, c in coeffs.items()})

    def is_zero(self):
        return not self.terms

    def coefficient(self, *names):
        sign, key = _sort_sign(tuple(self.chart.index(n) for n in names))
        c = self.terms.get(key, ZERO) if sign else ZERO
        return -c if sign < 0 else c

    def __add__(self, other):
        if not isinstance(other, ExteriorForm):
            return NotImplemented
        _check_chart(self, other)
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_terms(out, k, c)
        return ExteriorForm._wrap(self.chart, self.degree, out)

    def __neg__(self):
        return ExteriorForm._wrap(self.chart, self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f):
        f = as_rf(f)
        if f.is_zero():
            return ExteriorForm._wrap(self.chart, self.degree, {})
        return ExteriorForm._wrap(self.chart, self.degree, {k: c * f for k, c in self.terms.items()})

    def __mul__(self, f):
        if isinstance(f, ExteriorForm):
            return wedge(self, f)
        return self.scale(f)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, ExteriorForm):
            return NotImplemented
        return self.chart == other.chart and self.degree == other.degree and self.terms == other.terms

    __hash__ = None

    def map_coefficients(self, fn):
        out = {}
        for k, c in self.terms.items():
            nc = fn(c)
            if not nc.is_zero():
                out[k] = nc
        return ExteriorForm._wrap(self.chart, self.degree, out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            basis = "∧".join(dsym(self.chart.coords[i]) for i in k)
            c = self.terms[k]
            parts.append(f"({c})" + (f"*{basis}" if basis else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"ExteriorForm[{self.degree}]({self})"


def _sort_sign(key):
    """Sort an index tuple by bubble sort; sign 0 marks a repeated index."""
    key = list(key)
    sign = 1
    n = len(key)
    for i in range(n):
        for j in range(n - 1 - i):
            if key[j] > key[j + 1]:
                key[j], key[j + 1] = key[j + 1], key[j]
                sign = -sign
            elif key[j] == key[j + 1]:
                return 0, tuple(key)
    if any(key[i] == key[i + 1] for i in range(n - 1)):
        return 0, tuple(key)
    return sign, tuple(key)


def wedge(a, b):
    """Exterior product; raises DegreeOverflow past the chart dimension."""
    _check_chart(a, b)
    deg = a.degree + b.degree
    if deg > a.chart.dim:
        raise DegreeOverflow(f"wedge of degree {deg} on a {a.chart.dim}-dimensional chart")
    out = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            sign, key = _sort_sign(ka + kb)
            if sign == 0:
                continue
            c = ca * cb
            _add_terms(out, key, c if sign > 0 else -c)
    return ExteriorForm._wrap(a.chart, deg, out)


def exterior_derivative(f):
    chart = f.chart
    if f.degree >= chart.dim:
        raise DegreeOverflow(f"d of a {f.degree}-form on a {chart.dim}-dimensional chart")
    out = {}
    for key, c in f.terms.items():
        for i, name in enumerate(chart.coords):
            if i in key:
                continue
            dc = chart.partial(c, name)
            if dc.is_zero():
                continue
            sign, nk = _sort_sign((i,) + key)
            _add_terms(out, nk, dc if sign > 0 else -dc)
    return ExteriorForm._wrap(chart, f.degree + 1, out)


d = exterior_derivative


def interior_product(X, f):
    """Contraction of ``X`` into the first slot of ``f``."""
    _check_chart(X, f)
    if f.degree == 0:
        raise ValueError("interior product needs a form of degree >= 1")
    out = {}
    for key, c in f.terms.items():
        for j, i in enumerate(key):
            xi = X.components[i]
            if xi.is_zero():
                continue
            val = c * xi
            _add_terms(out, key[:j] + key[j + 1:], val if j % 2 == 0 else -val)
    return ExteriorForm._wrap(f.chart, f.degree - 1, out)


# -- symmetric forms -------------------------------------------------------------

class SymmetricForm:
    """Symmetric covariant tensor; ``terms`` maps sorted index multisets to coefficients."""

    __slots__ = ("chart", "degree", "terms")

    def __init__(self, chart, degree, terms=None):
        self.chart = chart
        self.degree = degree
        out = {}
        for key, c in (terms or {}).items():
            key = tuple(sorted(key))
            if len(key) != degree:
                raise ValueError("multiset size must equal the degree")
            _add_terms(out, key, as_rf(c))
        self.terms = out

    @classmethod
    def _wrap(cls, chart, degree, terms):
        obj = object.__new__(cls)
        obj.chart, obj.degree, obj.terms = chart, degree, terms
        return obj

    @classmethod
    def differential(cls, chart, name):
        return cls._wrap(chart, 1, {(chart.index(name),): ONE})

    @classmethod
    def function(cls, chart, f):
        f = as_rf(f)
        return cls._wrap(chart, 0, {} if f.is_zero() else {(): f})

    @classmethod
    def from_one_form(cls, w):
        return cls._wrap(w.chart, 1, dict(w.terms))

    @classmethod
    def from_polynomial(cls, chart, f):
        """Read a homogeneous polynomial in the d-symbols of ``chart``."""
        f = as_rf(f)
        dvars = {var_index(dsym(c)): i for i, c in enumerate(chart.coords)}
        if any(v in dvars for v in f.den.var_indices()):
            raise ValueError("d-symbols in a denominator")
        groups = {}
        degree = None
        for m, c in f.num.terms.items():
            key = []
            rest = []
            for v, e in m:
                if v in dvars:
                    key.extend([dvars[v]] * e)
                else:
                    rest.append((v, e))
            key = tuple(sorted(key))
            if degree is None:
                degree = len(key)
            elif degree != len(key):
                raise ValueError("polynomial is not homogeneous in the d-symbols")
            groups.setdefault(key, {})[tuple(rest)] = c
        out = {}
        for key, terms in groups.items():
            coeff = RationalFunction(Polynomial._wrap(terms), f.den)
            if not coeff.is_zero():
                out[key] = coeff
        return cls._wrap(chart, degree or 0, out)

    def to_polynomial(self):
        """The tensor as a RationalFunction in coordinates and d-symbols."""
        dv = [Polynomial.var(dsym(c)) for c in self.chart.coords]
        total = ZERO
        for key, c in self.terms.items():
            mono = Polynomial.const(1)
            for i in key:
                mono = mono * dv[i]
            total = total + c * mono
        return total

    def is_zero(self):
        return not self.terms

    def coefficient(self, *names):
        return self.terms.get(tuple(sorted(self.chart.index(n) for n in names)), ZERO)

    def __add__(self, other):
        if not isinstance(other, SymmetricForm):
            return NotImplemented
        _check_chart(self, other)
        if other.degree != self.degree and self.terms and other.terms:
            raise ValueError("cannot add symmetric forms of different degree")
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_terms(out, k, c)
        deg = self.degree if self.terms else other.degree
        return SymmetricForm._wrap(self.chart, deg, out)

    def __neg__(self):
        return SymmetricForm._wrap(self.chart, self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f):
        f = as_rf(f)
        if f.is_zero():
            return SymmetricForm._wrap(self.chart, self.degree, {})
        return SymmetricForm._wrap(self.chart, self.degree, {k: c * f for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SymmetricForm):
            return sym_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n):
        out = SymmetricForm.function(self.chart, 1)
        for _ in range(n):
            out = sym_product(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, SymmetricForm):
            return NotImplemented
        if self.chart != other.chart:
            return False
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    __hash__ = None

    def map_coefficients(self, fn):
        out = {}
        for k, c in self.terms.items():
            nc = fn(c)
            if not nc.is_zero():
                out[k] = nc
        return SymmetricForm._wrap(self.chart, self.degree, out)

    def __str__(self):
        return str(self.to_polynomial())

    def __repr__(self):
        return f"SymmetricForm[{self.degree}]({self})"


def sym_product(a, b):
    """Symmetric product of two symmetric forms."""
    _check_chart(a, b)
    out = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            _add_terms(out, tuple(sorted(ka + kb)), ca * cb)
    return SymmetricForm._wrap(a.chart, a.degree + b.degree, out)


def sym_differential(chart, f):
    """df as a symmetric 1-form."""
    out = {}
    for i, name in enumerate(chart.coords):
        c = chart.partial(f, name)
        if not c.is_zero():
            out[(i,)] = c
    return SymmetricForm._wrap(chart, 1, out)


# -- vector fields ---------------------------------------------------------------

class VectorField:
    """Vector field with one coefficient per chart coordinate."""

    __slots__ = ("chart", "components")

    def __init__(self, chart, components):
        if isinstance(components, dict):
            comps = [ZERO] * chart.dim
            for n, c in components.items():
                comps[chart.index(n)] = as_rf(c)
        else:
            comps = [as_rf(c) for c in components]
        if len(comps) != chart.dim:
            raise ValueError("component count must equal the chart dimension")
        self.chart = chart
        self.components = tuple(comps)

    def __call__(self, f):
        """Directional derivative X(f)."""
        total = ZERO
        for name, xi in zip(self.chart.coords, self.components):
            if xi.is_zero():
                continue
            df = self.chart.partial(f, name)
            if not df.is_zero():
                total = total + xi * df
        return total

    def component(self, name):
        return self.components[self.chart.index(name)]

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def __add__(self, other):
        _check_chart(self, other)
        return VectorField(self.chart, [a + b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorField(self.chart, [-a for a in self.components])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f):
        f = as_rf(f)
        return VectorField(self.chart, [a * f for a in self.components])

    __rmul__ = scale
    __mul__ = scale

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.chart == other.chart and self.components == other.components

    __hash__ = None

    def __str__(self):
        parts = [f"({c})*∂{n}" for n, c in zip(self.chart.coords, self.components) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"VectorField({self})"


def lie_bracket(X, Y):
    """[X, Y]^i = X(Y^i) - Y(X^i)."""
    _check_chart(X, Y)
    return VectorField(X.chart, [X(yi) - Y(xi) for xi, yi in zip(X.components, Y.components)])


def lie_derivative(X, T):
    """Lie derivative of an exterior or symmetric form along ``X``."""
    _check_chart(X, T)
    if isinstance(T, ExteriorForm):
        if T.degree == 0:
            c = T.terms.get((), ZERO)
            return ExteriorForm.function(T.chart, X(c))
        first = d(interior_product(X, T))
        if T.degree >= T.chart.dim:
            return first
        return first + interior_product(X, d(T))
    if isinstance(T, SymmetricForm):
        chart = T.chart
        dX = {}
        out = {}
        for key, c in T.terms.items():
            xc = X(c)
            if not xc.is_zero():
                _add_terms(out, key, xc)
            for j, i in enumerate(key):
                if j and key[j - 1] == i:
                    continue
                mult = key.count(i)
                rest = key[:j] + key[j + 1:]
                if i not in dX:
                    dX[i] = sym_differential(chart, X.components[i]).terms
                for (m,), coef in dX[i].items():
                    _add_terms(out, tuple(sorted(rest + (m,))), c * coef * mult)
        return SymmetricForm._wrap(chart, T.degree, out)
    raise TypeError(f"cannot take the Lie derivative of {type(T).__name__}")


# -- coordinate maps -------------------------------------------------------------

class CoordinateMap:
    """Map from ``source`` to ``target`` given by target-coordinate expressions.

    ``extra`` binds target-side symbols that are not coordinates (jets of the
    target chart, say) to source-side expressions.
    """

    def __init__(self, source, target, components, extra=None):
        if isinstance(components, dict):
            missing = [c for c in target.coords if c not in components]
            if missing:
                raise ValueError(f"map is missing components for {missing}")
            comps = [as_rf(components[c]) for c in target.coords]
        else:
            comps = [as_rf(c) for c in components]
        if len(comps) != target.dim:
            raise ValueError("arity must equal the target dimension")
        self.source = source
        self.target = target
        self.components = tuple(comps)
        self.extra = {k: as_rf(v) for k, v in (extra or {}).items()}

    def bindings(self):
        b = dict(zip(self.target.coords, self.components))
        b.update(self.extra)
        return b

    def component(self, name):
        return self.components[self.target.index(name)]

    def pull_function(self, f):
        return substitute(f, self.bindings())

    def differentials(self):
        """Pulled-back coordinate differentials as source 1-forms."""
        out = []
        for comp in self.components:
            terms = {}
            for i, name in enumerate(self.source.coords):
                c = self.source.partial(comp, name)
                if not c.is_zero():
                    terms[(i,)] = c
            out.append(terms)
        return out

    def __repr__(self):
        return f"CoordinateMap({self.source.name} -> {self.target.name})"


def compose(phi, psi):
    """phi o psi, where psi: A -> B and phi: B -> C."""
    if phi.source != psi.target:
        raise ValueError("maps do not compose")
    b = psi.bindings()
    comps = [substitute(c, b) for c in phi.components]
    extra = {k: substitute(v, b) for k, v in phi.extra.items()}
    return CoordinateMap(psi.source, phi.target, comps, extra)


def identity_map(chart):
    return CoordinateMap(chart, chart, [RationalFunction.var(c) for c in chart.coords])


def pullback(phi, T):
    """Pull an exterior or symmetric form on phi's target back to its source."""
    if T.chart != phi.target:
        raise ValueError("tensor does not live on the map's target chart")
    src = phi.source
    diffs = phi.differentials()
    b = phi.bindings()
    if isinstance(T, ExteriorForm):
        out = ExteriorForm._wrap(src, T.degree, {})
        ones = [ExteriorForm._wrap(src, 1, t) for t in diffs]
        for key, c in T.terms.items():
            term = ExteriorForm.function(src, substitute(c, b))
            for i in key:
                term = wedge(term, ones[i])
                if term.is_zero():
                    break
            out = out + term
        return out
    if isinstance(T, SymmetricForm):
        out = SymmetricForm._wrap(src, T.degree, {})
        ones = [SymmetricForm._wrap(src, 1, t) for t in diffs]
        for key, c in T.terms.items():
            term = SymmetricForm.function(src, substitute(c, b))
            for i in key:
                term = sym_product(term, ones[i])
            out = out + term
        return out
    if isinstance(T, (RationalFunction, Polynomial, int)):
        return substitute(T, b)
    raise TypeError(f"cannot pull back {type(T).__name__}")

