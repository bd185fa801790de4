"""Reduced fractions of polynomials over Q(cbrt12, sqrt3)."""
from __future__ import annotations

from numbers import Rational

from ..errors import DivisionByZero, PoleAtPoint
from .poly import ONE as P_ONE
from .poly import ZERO as P_ZERO
from .poly import Polynomial, as_poly, exact_divide, poly_gcd, var_index
from .scalar import AlgebraicScalar, as_scalar


class RationalFunction:
    """Immutable fraction ``num/den`` kept reduced with a canonical denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, reduce=True):
        num = as_poly(num)
        if den is None:
            self.num, self.den = num, P_ONE
        else:
            den = as_poly(den)
            if den.is_zero():
                raise DivisionByZero("rational function with zero denominator")
            if reduce:
                num, den = _reduce(num, den)
            self.num, self.den = num, den
        self._hash = None

    @classmethod
    def _wrap(cls, num, den):
        obj = object.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    @classmethod
    def var(cls, name):
        return cls._wrap(Polynomial.var(name), P_ONE)

    @classmethod
    def const(cls, value):
        return cls._wrap(Polynomial.const(value), P_ONE)

    # -- inspection ---------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_constant()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.constant_value() / self.den.constant_value()

    def as_polynomial(self):
        if not self.den.is_constant():
            raise ValueError(f"{self} is not a polynomial")
        return self.num.scale(self.den.constant_value().inverse())

    def var_indices(self):
        return self.num.var_indices() | self.den.var_indices()

    @property
    def variables(self):
        from .poly import var_name

        return tuple(var_name(v) for v in sorted(self.var_indices()))

    def depends_on(self, name):
        return var_index(name) in self.var_indices()

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        d1, d2 = self.den, other.den
        if d1 == d2:
            if d1.is_constant():
                return RationalFunction._wrap(self.num + other.num, d1)
            return RationalFunction(self.num + other.num, d1)
        if d1.is_constant() and d2.is_constant():
            # both constant means both equal one after normalization
            return RationalFunction._wrap(self.num + other.num, P_ONE)
        g = poly_gcd(d1, d2)
        d1g = exact_divide(d1, g)
        d2g = exact_divide(d2, g)
        num = self.num * d2g + other.num * d1g
        den = d1 * d2g
        return RationalFunction(num, den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._wrap(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational, AlgebraicScalar)) and not isinstance(other, bool):
            s = as_scalar(other)
            if s.is_zero():
                return ZERO
            return RationalFunction._wrap(self.num.scale(s), self.den)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d1.is_constant() and d2.is_constant():
            return RationalFunction._wrap(n1 * n2, P_ONE)
        g1 = poly_gcd(n1, d2)
        g2 = poly_gcd(n2, d1)
        if not g1.is_constant():
            n1, d2 = exact_divide(n1, g1), exact_divide(d2, g1)
        if not g2.is_constant():
            n2, d1 = exact_divide(n2, g2), exact_divide(d1, g2)
        return _finish(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        return _finish(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational, AlgebraicScalar)) and not isinstance(other, bool):
            s = as_scalar(other)
            return RationalFunction._wrap(self.num.scale(s.inverse()), self.den)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction._wrap(self.num ** n, self.den ** n)

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- calculus -----------------------------------------------------
    def diff(self, name):
        """Partial derivative with respect to a plain variable."""
        dn = self.num.diff(name)
        if self.den.is_constant():
            return RationalFunction._wrap(dn, self.den)
        dd = self.den.diff(name)
        if dd.is_zero():
            return RationalFunction(dn, self.den)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def substitute(self, bindings):
        return substitute(self, bindings)

    def evaluate(self, point):
        return evaluate(self, point)

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        n = str(self.num)
        if len(self.num.terms) > 1:
            n = f"({n})"
        return f"{n}/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


def _reduce(num, den):
    if num.is_zero():
        return P_ZERO, P_ONE
    if den.is_constant():
        return num.scale(den.constant_value().inverse()), P_ONE
    g = poly_gcd(num, den)
    if not g.is_constant():
        num = exact_divide(num, g)
        den = exact_divide(den, g)
    return _normalize_den(num, den)


def _normalize_den(num, den):
    if den.is_constant():
        return num.scale(den.constant_value().inverse()), P_ONE
    unit, den = den.normalize()
    if not unit.is_one():
        num = num.scale(unit.inverse())
    return num, den


def _finish(num, den):
    if num.is_zero():
        return ZERO
    n, d = _normalize_den(num, den)
    return RationalFunction._wrap(n, d)


def _coerce(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction._wrap(x, P_ONE)
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, (int, Rational, AlgebraicScalar)):
        return RationalFunction._wrap(Polynomial.const(x), P_ONE)
    return NotImplemented


def as_rf(x):
    r = _coerce(x)
    if r is NotImplemented:
        raise TypeError(f"not a rational function: {x!r}")
    return r


ZERO = RationalFunction._wrap(P_ZERO, P_ONE)
ONE = RationalFunction._wrap(P_ONE, P_ONE)


def rf_var(name):
    return RationalFunction.var(name)


def _subs_poly(p, bindings):
    """Substitute rational functions into a polynomial; returns (num, den)."""
    bound = {var_index(n): as_rf(v) for n, v in bindings.items()}
    maxdeg = {}
    for m in p.terms:
        for v, e in m:
            if v in bound and e > maxdeg.get(v, 0):
                maxdeg[v] = e
    den = P_ONE
    for v, e in maxdeg.items():
        if not bound[v].den.is_constant():
            den = den * bound[v].den ** e
    num_cache = {}
    den_cache = {}
    acc = {}
    for m, c in p.terms.items():
        term = Polynomial._wrap({(): c})
        keep = []
        for v, e in m:
            b = bound.get(v)
            if b is None:
                keep.append((v, e))
                continue
            key = (v, e)
            pw = num_cache.get(key)
            if pw is None:
                pw = b.num ** e
                num_cache[key] = pw
            term = term * pw
        for v, dmax in maxdeg.items():
            b = bound[v]
            if b.den.is_constant():
                continue
            e = dict(m).get(v, 0)
            if dmax - e:
                key = (v, dmax - e)
                pw = den_cache.get(key)
                if pw is None:
                    pw = b.den ** (dmax - e)
                    den_cache[key] = pw
                term = term * pw
        if keep:
            term = term.mul_monomial(tuple(keep))
        for mm, cc in term.terms.items():
            cur = acc.get(mm)
            acc[mm] = cc if cur is None else cur + cc
    num = Polynomial._wrap({m: c for m, c in acc.items() if not c.is_zero()})
    return num, den


def substitute(f, bindings):
    """Simultaneous substitution ``{name: RationalFunction}`` into ``f``.

    Raises DivisionByZero when the substituted denominator vanishes
    identically.
    """
    f = as_rf(f)
    if not bindings:
        return f
    names = {var_index(n) for n in bindings}
    if not (f.var_indices() & names):
        return f
    n_num, n_den = _subs_poly(f.num, bindings)
    if f.den.is_constant():
        return RationalFunction(n_num * f.den.constant_value().inverse(), n_den)
    d_num, d_den = _subs_poly(f.den, bindings)
    if d_num.is_zero():
        raise DivisionByZero(f"denominator of {f} vanishes after substitution")
    return RationalFunction(n_num * d_den, n_den * d_num)


def evaluate(f, point):
    """Evaluate at ``point`` (name -> value); raises PoleAtPoint on a zero denominator."""
    f = as_rf(f)
    n = f.num.evaluate(point)
    if f.den.is_constant():
        return n * f.den.constant_value().inverse() if not isinstance(n, int) else as_scalar(n) / f.den.constant_value()
    d = f.den.evaluate(point)
    if isinstance(d, (int, AlgebraicScalar)):
        if as_scalar(d).is_zero():
            raise PoleAtPoint(f"denominator of {f} vanishes at {point}")
        return as_scalar(n) / as_scalar(d) if isinstance(n, (int, AlgebraicScalar)) else n / d
    return n / d
