"""Sparse multivariate polynomials over Q(cbrt12, sqrt3).

Monomials are tuples of ``(variable_index, exponent)`` pairs sorted by index;
variable indices come from a process-wide registry whose first entries follow
the fixed order used for canonical printing.  Terms are ordered graded
lexicographically with earlier variables ranking higher.
"""
from __future__ import annotations

import heapq
import threading
from fractions import Fraction
from functools import lru_cache
from math import gcd as igcd
from numbers import Rational

from ..errors import NotDivisible
from .scalar import ONE as S_ONE
from .scalar import AlgebraicScalar, as_scalar

BASE_ORDER = (
    "x", "y", "z", "p", "q",
    "dx", "dy", "dz", "dp", "dq",
    "t", "s", "r",
    "X", "Y", "Z", "P", "Q", "L",
    "dt", "dr", "dX", "dY", "dZ", "dP", "dQ", "dL",
    "H0", "H1", "H2", "H3", "H4", "H5", "H6", "H7", "H8", "I",
    "HX0", "HX1", "HX2", "HX3", "HX4", "HX5", "HX6", "HX7", "HX8", "J",
)

_names: list[str] = []
_index: dict[str, int] = {}
_lock = threading.Lock()


def var_index(name: str) -> int:
    """Index of ``name`` in the global variable order, registering it if new."""
    idx = _index.get(name)
    if idx is None:
        if not name or not isinstance(name, str):
            raise ValueError(f"bad variable name {name!r}")
        with _lock:
            idx = _index.get(name)
            if idx is None:
                idx = len(_names)
                _names.append(name)
                _index[name] = idx
    return idx


def var_name(idx: int) -> str:
    return _names[idx]


for _n in BASE_ORDER:
    var_index(_n)


# -- monomial helpers -------------------------------------------------------

@lru_cache(maxsize=1 << 18)
def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_div(a, b):
    """a / b as a monomial, or None when b does not divide a."""
    if not b:
        return a
    da = dict(a)
    for v, e in b:
        have = da.get(v, 0)
        if have < e:
            return None
        if have == e:
            del da[v]
        else:
            da[v] = have - e
    return tuple(sorted(da.items()))


@lru_cache(maxsize=1 << 18)
def mono_key(m):
    """Graded-lex sort key; larger key means higher term."""
    if not m:
        return (0, ())
    dense = [0] * (m[-1][0] + 1)
    deg = 0
    for v, e in m:
        dense[v] = e
        deg += e
    return (deg, tuple(dense))


def mono_degree(m):
    return sum(e for _, e in m)


def mono_str(m):
    parts = []
    for v, e in m:
        parts.append(var_name(v) if e == 1 else f"{var_name(v)}^{e}")
    return "*".join(parts)


# -- polynomials ------------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps monomials to nonzero scalars."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            self.terms = {}
        elif isinstance(terms, dict):
            self.terms = {m: c for m, c in terms.items() if not c.is_zero()}
        else:
            raise TypeError("Polynomial expects a dict of monomial -> AlgebraicScalar")
        self._hash = None

    @classmethod
    def _wrap(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def var(cls, name):
        return cls._wrap({((var_index(name), 1),): S_ONE})

    @classmethod
    def const(cls, value):
        s = as_scalar(value)
        if s.is_zero():
            return ZERO
        return cls._wrap({(): s})

    @classmethod
    def monomial(cls, exps: dict, coeff=1):
        m = tuple(sorted((var_index(n), e) for n, e in exps.items() if e))
        s = as_scalar(coeff)
        return cls._wrap({m: s} if not s.is_zero() else {})

    # -- inspection ---------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        t = self.terms
        return not t or (len(t) == 1 and () in t)

    def is_monomial(self):
        return len(self.terms) == 1

    def constant_value(self):
        """The scalar value of a constant polynomial."""
        if not self.terms:
            return AlgebraicScalar(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms[()]

    def var_indices(self):
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    @property
    def variables(self):
        return tuple(var_name(v) for v in sorted(self.var_indices()))

    def degree(self, name=None):
        """Degree in ``name``, or total degree when ``name`` is None; -1 for zero."""
        if not self.terms:
            return -1
        if name is None:
            return max(mono_degree(m) for m in self.terms)
        v = var_index(name)
        return max((dict(m).get(v, 0) for m in self.terms), default=0)

    def _deg_idx(self, v):
        best = 0
        for m in self.terms:
            for vv, e in m:
                if vv == v and e > best:
                    best = e
        return best

    def leading_term(self):
        m = max(self.terms, key=mono_key)
        return m, self.terms[m]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mono_key(mc[0]), reverse=True)

    def is_rational(self):
        return all(c.is_rational for c in self.terms.values())

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            cur = out.get(m)
            if cur is None:
                out[m] = c
            else:
                s = cur + c
                if s.is_zero():
                    del out[m]
                else:
                    out[m] = s
        return Polynomial._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._wrap({m: -c for m, c in self.terms.items()})

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
            return self.scale(other)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        out = {}
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = mono_mul(m1, m2)
                cur = out.get(m)
                out[m] = c1 * c2 if cur is None else cur + c1 * c2
        return Polynomial._wrap({m: c for m, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def scale(self, s):
        s = as_scalar(s)
        if s.is_zero():
            return ZERO
        if s.is_one():
            return self
        return Polynomial._wrap({m: c * s for m, c in self.terms.items()})

    def mul_monomial(self, mono, coeff=S_ONE):
        return Polynomial._wrap({mono_mul(m, mono): c * coeff for m, c in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Rational, AlgebraicScalar)) and not isinstance(other, bool):
            return self.scale(as_scalar(other).inverse())
        return NotImplemented

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- calculus and substitution ------------------------------------
    def diff(self, name):
        v = var_index(name)
        out = {}
        for m, c in self.terms.items():
            for k, (vv, e) in enumerate(m):
                if vv == v:
                    nm = m[:k] + (((v, e - 1),) if e > 1 else ()) + m[k + 1:]
                    out[nm] = out.get(nm, 0) + c * e
                    break
        return Polynomial._wrap({m: c for m, c in out.items() if not c.is_zero()})

    def coefficients_in(self, name):
        """Split into ``{exponent: coefficient polynomial}`` with respect to ``name``."""
        return self._coeffs_idx(var_index(name))

    def _coeffs_idx(self, v):
        groups = {}
        for m, c in self.terms.items():
            e = 0
            rest = m
            for k, (vv, ee) in enumerate(m):
                if vv == v:
                    e = ee
                    rest = m[:k] + m[k + 1:]
                    break
            groups.setdefault(e, {})[rest] = c
        return {e: Polynomial._wrap(t) for e, t in groups.items()}

    @staticmethod
    def _from_coeffs_idx(v, coeffs):
        out = {}
        for e, p in coeffs.items():
            mono = ((v, e),) if e else ()
            for m, c in p.terms.items():
                nm = mono_mul(m, mono)
                out[nm] = c
        return Polynomial._wrap(out)

    @classmethod
    def from_coefficients(cls, name, coeffs):
        return cls._from_coeffs_idx(var_index(name), coeffs)

    def evaluate(self, point, one=None):
        """Evaluate with ``point`` mapping names to values of any ring.

        Variables missing from ``point`` raise KeyError.  Values may be ints,
        Fractions, AlgebraicScalars, or any type supporting ``+`` and ``*``
        with AlgebraicScalar (e.g. dual numbers or truncated series).
        """
        vals = {}
        total = 0
        for m, c in self.terms.items():
            prod = None
            for v, e in m:
                key = (v, e)
                pw = vals.get(key)
                if pw is None:
                    base = point[var_name(v)]
                    pw = base
                    for _ in range(e - 1):
                        pw = pw * base
                    vals[key] = pw
                prod = pw if prod is None else prod * pw
            term = c if prod is None else _scalar_times(c, prod)
            total = term + total
        return total

    def subs_poly(self, bindings):
        """Simultaneous polynomial substitution ``{name: Polynomial}``."""
        idx = {var_index(n): _coerce(p) for n, p in bindings.items()}
        cache = {}
        out = ZERO
        acc = {}
        for m, c in self.terms.items():
            term = Polynomial._wrap({(): c})
            keep = []
            for v, e in m:
                if v in idx:
                    key = (v, e)
                    pw = cache.get(key)
                    if pw is None:
                        pw = idx[v] ** e
                        cache[key] = pw
                    term = term * pw
                else:
                    keep.append((v, e))
            if keep:
                term = term.mul_monomial(tuple(keep))
            for mm, cc in term.terms.items():
                cur = acc.get(mm)
                acc[mm] = cc if cur is None else cur + cc
        out = Polynomial._wrap({m: c for m, c in acc.items() if not c.is_zero()})
        return out

    # -- normal forms ---------------------------------------------------
    def normalize(self):
        """Return ``(unit, q)`` with ``self == unit * q`` and ``q`` canonical.

        Canonical means: integer coprime coefficients with positive leading
        coefficient when every coefficient is rational, otherwise monic.
        """
        if not self.terms:
            return S_ONE, self
        lc = self.leading_coefficient()
        if self.is_rational():
            den = 1
            num_g = 0
            for c in self.terms.values():
                f = c.to_fraction()
                den = den * f.denominator // igcd(den, f.denominator)
            for c in self.terms.values():
                f = c.to_fraction()
                num_g = igcd(num_g, f.numerator * (den // f.denominator))
            unit = Fraction(num_g, den)
            if lc.rational_part() < 0:
                unit = -unit
            unit = as_scalar(unit)
        else:
            unit = lc
        if unit.is_one():
            return unit, self
        return unit, self.scale(unit.inverse())

    def canonical(self):
        return self.normalize()[1]

    # -- printing -----------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            ms = mono_str(m)
            if c.is_rational:
                f = c.to_fraction()
                sign = "-" if f < 0 else "+"
                f = abs(f)
                if ms:
                    body = ms if f == 1 else f"{f}*{ms}"
                else:
                    body = str(f)
            else:
                sign = "+"
                body = f"({c})" + (f"*{ms}" if ms else "")
            parts.append((sign, body))
        s = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Polynomial({self})"


def _scalar_times(s, value):
    if isinstance(value, AlgebraicScalar):
        return s * value
    if isinstance(value, (int, Rational)):
        return s * value
    return value * s


def _coerce(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, (int, Rational, AlgebraicScalar)):
        return Polynomial.const(x)
    return NotImplemented


def as_poly(x):
    p = _coerce(x)
    if p is NotImplemented:
        raise TypeError(f"not a polynomial: {x!r}")
    return p


ZERO = Polynomial._wrap({})
ONE = Polynomial._wrap({(): S_ONE})


def poly_var(name):
    return Polynomial.var(name)


# -- division ---------------------------------------------------------------

def exact_divide(n, d):
    """Quotient ``q`` with ``n == q * d``; raises NotDivisible otherwise.

    Division by a single polynomial in graded-lex order: ``{d}`` is a
    Groebner basis of ``(d)``, so a leading term not divisible by ``lt(d)``
    certifies that the remainder is nonzero.
    """
    n, d = as_poly(n), as_poly(d)
    if d.is_zero():
        from ..errors import DivisionByZero

        raise DivisionByZero("polynomial division by zero")
    if n.is_zero():
        return ZERO
    if d.is_constant():
        return n.scale(d.constant_value().inverse())
    if d.is_monomial():
        (dm, dc), = d.terms.items()
        inv = dc.inverse()
        out = {}
        for m, c in n.terms.items():
            q = mono_div(m, dm)
            if q is None:
                raise NotDivisible(f"{n} is not divisible by {d}")
            out[q] = c * inv
        return Polynomial._wrap(out)
    dm, dc = d.leading_term()
    dinv = dc.inverse()
    rem = dict(n.terms)
    heap = [(_neg_key(m), m) for m in rem]
    heapq.heapify(heap)
    quot = {}
    dterms = list(d.terms.items())
    while heap:
        _, m = heapq.heappop(heap)
        c = rem.get(m)
        if c is None:
            continue
        qm = mono_div(m, dm)
        if qm is None:
            raise NotDivisible(f"{n} is not divisible by {d}")
        qc = c * dinv
        quot[qm] = qc
        for mm, cc in dterms:
            tm = mono_mul(mm, qm)
            cur = rem.get(tm)
            if cur is None:
                rem[tm] = -(cc * qc)
                heapq.heappush(heap, (_neg_key(tm), tm))
            else:
                s = cur - cc * qc
                if s.is_zero():
                    del rem[tm]
                else:
                    rem[tm] = s
    return Polynomial._wrap(quot)


def divides(d, n):
    try:
        exact_divide(n, d)
        return True
    except NotDivisible:
        return False


def _neg_key(m):
    deg, dense = mono_key(m)
    return (-deg, tuple(-e for e in dense) + (1,))


def pseudo_remainder(a, b, name):
    """prem(a, b) with respect to ``name``: lc(b)^(deg a - deg b + 1) * a mod b."""
    return _prem_idx(as_poly(a), as_poly(b), var_index(name))


def _prem_idx(a, b, v):
    db = b._deg_idx(v)
    bc = b._coeffs_idx(v)
    lcb = bc[db]
    r = a
    da = r._deg_idx(v)
    if da < db:
        return r
    steps = da - db + 1
    while not r.is_zero():
        dr = r._deg_idx(v)
        if dr < db:
            break
        rc = r._coeffs_idx(v)
        lcr = rc[dr]
        shift = ((v, dr - db),) if dr > db else ()
        r = r * lcb - (b * lcr).mul_monomial(shift)
        steps -= 1
    if steps > 0:
        r = r * lcb ** steps
    return r


# -- gcd --------------------------------------------------------------------

def poly_gcd(a, b):
    """Greatest common divisor over Q(cbrt12, sqrt3), in canonical form.

    Recursive primitive-PRS algorithm on the first shared variable.
    ``gcd(a, 0) == canonical(a)`` and ``gcd(0, 0) == 0``.
    """
    a, b = as_poly(a), as_poly(b)
    if a.is_zero():
        return b.canonical()
    if b.is_zero():
        return a.canonical()
    if a.is_constant() or b.is_constant():
        return ONE
    if a == b:
        return a.canonical()
    if a.is_monomial() or b.is_monomial():
        return _monomial_gcd(a, b)
    common = a.var_indices() & b.var_indices()
    if not common:
        return ONE
    v = min(common)
    ca = _content_idx(a, v)
    cb = _content_idx(b, v)
    g = poly_gcd(ca, cb)
    pa = exact_divide(a, ca)
    pb = exact_divide(b, cb)
    if pa._deg_idx(v) < pb._deg_idx(v):
        pa, pb = pb, pa
    while True:
        if pb._deg_idx(v) == 0:
            pb = ONE
            break
        r = _prem_idx(pa, pb, v)
        if r.is_zero():
            break
        if r._deg_idx(v) == 0:
            pb = ONE
            break
        pa, pb = pb, _primitive_idx(r, v)
    return (g * _primitive_idx(pb, v)).canonical()


def _monomial_gcd(a, b):
    if not a.is_monomial():
        a, b = b, a
    (am, _), = a.terms.items()
    mins = dict(am)
    for m in b.terms:
        dm = dict(m)
        for v in list(mins):
            e = min(mins[v], dm.get(v, 0))
            if e:
                mins[v] = e
            else:
                del mins[v]
        if not mins:
            return ONE
    return Polynomial._wrap({tuple(sorted(mins.items())): S_ONE})


def _content_idx(a, v):
    coeffs = list(a._coeffs_idx(v).values())
    if len(coeffs) == 1:
        return coeffs[0].canonical()
    coeffs.sort(key=lambda p: len(p.terms))
    g = coeffs[0]
    for c in coeffs[1:]:
        g = poly_gcd(g, c)
        if g.is_constant():
            return ONE
    return g.canonical()


def content(a, name):
    return _content_idx(as_poly(a), var_index(name))


def _primitive_idx(a, v):
    c = _content_idx(a, v)
    return exact_divide(a, c).canonical()


def primitive_part(a, name):
    return _primitive_idx(as_poly(a), var_index(name))


# -- resultants -------------------------------------------------------------

def sylvester_matrix(f, g, name):
    """Sylvester matrix with the coefficients of ``f`` in the top rows."""
    f, g = as_poly(f), as_poly(g)
    m, n = f.degree(name), g.degree(name)
    fc, gc = f.coefficients_in(name), g.coefficients_in(name)
    size = m + n
    rows = []
    for i in range(n):
        row = [ZERO] * size
        for k in range(m + 1):
            row[i + k] = fc.get(m - k, ZERO)
        rows.append(row)
    for i in range(m):
        row = [ZERO] * size
        for k in range(n + 1):
            row[i + k] = gc.get(n - k, ZERO)
        rows.append(row)
    return rows


def bareiss_determinant(matrix):
    """Fraction-free determinant of a square matrix of polynomials."""
    mat = [list(r) for r in matrix]
    n = len(mat)
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if mat[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not mat[i][k].is_zero()), None)
            if swap is None:
                return ZERO
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        pivot = mat[k][k]
        for i in range(k + 1, n):
            mik = mat[i][k]
            row_i, row_k = mat[i], mat[k]
            for j in range(k + 1, n):
                num = pivot * row_i[j] - mik * row_k[j]
                row_i[j] = exact_divide(num, prev) if not prev.is_constant() else num.scale(
                    prev.constant_value().inverse())
            row_i[k] = ZERO
        prev = pivot
    det = mat[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant(f, g, name):
    """Res_name(f, g) as the determinant of the Sylvester matrix."""
    f, g = as_poly(f), as_poly(g)
    m, n = f.degree(name), g.degree(name)
    if f.is_zero() or g.is_zero():
        return ZERO
    if m == 0:
        return f ** n
    if n == 0:
        return g ** m
    return bareiss_determinant(sylvester_matrix(f, g, name))
