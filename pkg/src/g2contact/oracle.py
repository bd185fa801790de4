"""Independent numeric cross-checks.

Every identity is re-evaluated at seeded random rational points using
truncated power series for derivatives, instead of symbolic
differentiation, simplification and gcds.  Values stay exact in the
number field, so "zero" still means exactly zero.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.ratfunc import as_rf
from .algebra.ratfunc import evaluate as rf_evaluate
from .algebra.scalar import as_scalar
from .errors import DivisionByZero, PoleAtPoint

DEFAULT_POINTS = 20


# -- truncated power series -----------------------------------------------------------

class Series:
    """Truncated power series c0 + c1 e + ... + cN e^N with exact coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = [as_scalar(v) for v in coeffs]

    @property
    def order(self):
        return len(self.c) - 1

    @classmethod
    def variable(cls, value, order, slope=1):
        return cls([value, slope] + [0] * (order - 1))

    @classmethod
    def constant(cls, value, order):
        return cls([value] + [0] * order)

    def _lift(self, other):
        if isinstance(other, Series):
            if other.order != self.order:
                raise ValueError("series orders differ")
            return other
        return Series.constant(other, self.order)

    def __add__(self, other):
        o = self._lift(other)
        return Series([a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Series([-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Series):
            s = as_scalar(other)
            return Series([a * s for a in self.c])
        n = self.order
        out = [as_scalar(0)] * (n + 1)
        for i, a in enumerate(self.c):
            if a.is_zero():
                continue
            for j in range(n + 1 - i):
                b = other.c[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Series(out)

    __rmul__ = __mul__

    def inverse(self):
        c0 = self.c[0]
        if c0.is_zero():
            raise PoleAtPoint("series with zero constant term is not invertible")
        inv0 = c0.inverse()
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = as_scalar(0)
            for k in range(1, n + 1):
                acc = acc + self.c[k] * out[n - k]
            out.append(-acc * inv0)
        return Series(out)

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.inverse()
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * as_scalar(other)

    def __pow__(self, n):
        out = Series.constant(1, self.order)
        for _ in range(n):
            out = out * self
        return out

    def derivative_values(self):
        """[f, f', f'', ...] at the expansion point."""
        out = []
        fact = 1
        for k, a in enumerate(self.c):
            if k:
                fact *= k
            out.append(a * fact)
        return out


def compose(f, g):
    """f(g(e)) for a series g with zero constant term."""
    if not g.c[0].is_zero():
        raise ValueError("inner series must vanish at the expansion point")
    out = Series.constant(f.c[-1], f.order)
    for a in reversed(f.c[:-1]):
        out = out * g + a
    return out


def revert(g):
    """Compositional inverse of g = a1 e + a2 e^2 + ..., with a1 != 0."""
    n = g.order
    if not g.c[0].is_zero() or g.c[1].is_zero():
        raise PoleAtPoint("series is not locally invertible")
    s = Series.variable(0, n)
    inv1 = g.c[1].inverse()
    e = s * inv1
    for _ in range(n):
        higher = Series([0, 0] + g.c[2:])
        e = (s - compose(higher, e)) * inv1
    return e


def ev(f, point):
    """Evaluate a rational function at a point of scalars or series."""
    try:
        return rf_evaluate(as_rf(f), point)
    except (ZeroDivisionError, DivisionByZero):
        raise PoleAtPoint("denominator vanishes") from None


def value(x):
    return x.c[0] if isinstance(x, Series) else as_scalar(x)


def dual_part(x):
    return x.c[1] if isinstance(x, Series) else as_scalar(0)


# -- sampling -------------------------------------------------------------------------

@dataclass
class OracleResult:
    name: str
    points: int
    nonzero: list = field(default_factory=list)
    skipped: int = 0

    @property
    def is_zero(self):
        return not self.nonzero and self.points > 0


def random_rational(rng, span=30, maxden=9):
    return Fraction(rng.randint(-span, span), rng.randint(1, maxden))


def run_points(name, rng, names, fn, n=DEFAULT_POINTS, max_tries=None):
    """Call ``fn(point)`` at ``n`` random points; fn returns residual scalars.

    Points at a pole are redrawn.
    """
    res = OracleResult(name, 0)
    tries = 0
    max_tries = max_tries or 20 * n
    while res.points < n and tries < max_tries:
        tries += 1
        point = {v: as_scalar(random_rational(rng)) for v in names}
        try:
            vals = fn(point)
        except PoleAtPoint:
            res.skipped += 1
            continue
        res.points += 1
        for v in vals:
            if not as_scalar(v).is_zero():
                res.nonzero.append((dict(point), v))
                break
    return res


# -- Noth -----------------------------------------------------------------------------

def noth_at(derivs):
    h2, h3, h4, h5, h6 = derivs[2:7]
    return (10 * h2 ** 3 * h6 - 70 * h2 ** 2 * h3 * h5 - 49 * h2 ** 2 * h4 ** 2
            + 280 * h2 * h3 ** 2 * h4 - 175 * h3 ** 4)


def t_jets_explicit(H, var, t0, order=6):
    return ev(H, {var: Series.variable(t0, order)}).derivative_values()


def t_jets_parametric(t, H, var, r0, order=6):
    """Derivatives of H with respect to t at the curve point r = r0, by series reversion."""
    e = Series.variable(r0, order)
    ts = ev(t, {var: e})
    hs = ev(H, {var: e})
    shift = ts - ts.c[0]
    inv = revert(shift)
    h_of_s = compose(hs - hs.c[0], inv) + hs.c[0]
    return h_of_s.derivative_values()


def noth_explicit(H, var="t", rng=None, n=DEFAULT_POINTS):
    rng = rng or random.Random(0)
    return run_points(f"noth {H}", rng, [var],
                      lambda pt: [noth_at(t_jets_explicit(H, var, pt[var]))], n)


def noth_parametric(curve, rng=None, n=DEFAULT_POINTS):
    rng = rng or random.Random(0)
    return run_points(f"noth {curve.label}", rng, [curve.var],
                      lambda pt: [noth_at(t_jets_parametric(curve.t, curve.H, curve.var,
                                                            pt[curve.var]))], n)


# -- forms and fields at points -------------------------------------------------------

def sym_at(T, point, vec):
    """Symmetric or exterior 1-form T at coordinates ``point`` on vector ``vec``."""
    chart = T.chart
    if hasattr(T, "to_polynomial"):
        bind = dict(point)
        for i, c in enumerate(chart.coords):
            bind["d" + c] = vec[i]
        return ev(T.to_polynomial(), bind)
    if T.degree != 1:
        raise ValueError("only 1-forms are evaluated on a single vector")
    total = 0
    for (i,), c in T.terms.items():
        total = total + ev(c, point) * vec[i]
    return total


def field_at(X, point):
    return [ev(c, point) for c in X.components]


def shifted(point, coords, direction, order=1):
    """The point moved along ``direction`` by a first-order series variable."""
    out = dict(point)
    for c, v in zip(coords, direction):
        out[c] = Series([point[c], v] + [0] * (order - 1))
    return out


def jvp(components, point, coords, direction):
    """Directional derivatives of component functions."""
    sp = shifted(point, coords, direction)
    return [dual_part(ev(c, sp)) for c in components]


def bracket_at(X, Y, point):
    coords = X.chart.coords
    xa = field_at(X, point)
    ya = field_at(Y, point)
    dy_x = jvp(Y.components, point, coords, xa)
    dx_y = jvp(X.components, point, coords, ya)
    return [a - b for a, b in zip(dy_x, dx_y)]


def lie_at(X, T, point, vec):
    """(L_X T)(vec, ..., vec): derivative of T at (a + eX(a), v + e DX(a) v)."""
    coords = X.chart.coords
    xa = field_at(X, point)
    dxv = jvp(X.components, point, coords, vec)
    sp = shifted(point, coords, xa)
    svec = [Series([v, w]) for v, w in zip(vec, dxv)]
    return dual_part(sym_at(T, sp, svec))


def pull_at(phi, T, point, vec):
    """(phi^* T)(vec) = T(phi(a), Dphi(a) vec)."""
    src = phi.source.coords
    bind = dict(point)
    img = {}
    for name, comp in zip(phi.target.coords, phi.components):
        img[name] = ev(comp, bind)
    for k, v in phi.extra.items():
        img[k] = ev(v, bind)
    dvec = jvp(phi.components, point, src, vec)
    return sym_at(T, img, dvec)

