"""Rational part of the antiderivative of a univariate rational function.

Horowitz-Ostrogradsky: for a proper fraction ``R/D`` write
``R/D = (B/D1)' + C/D2`` with ``D1 = gcd(D, D')`` and ``D2 = D/D1``.  The
primitive is rational exactly when ``C == 0``.

Normalization: the polynomial part of the primitive has zero constant term
and the rational part is proper, so the primitive tends to zero at infinity
whenever the integrand has no polynomial part.
"""
from __future__ import annotations

from ..errors import NonRationalPrimitive
from .linalg import RHS, SparseReducer
from .poly import Polynomial, var_index
from .ratfunc import RationalFunction, as_rf
from .scalar import ONE as S_ONE
from .scalar import ZERO as S_ZERO
from .scalar import AlgebraicScalar


def _to_list(p, v):
    """Coefficients of a univariate polynomial, lowest degree first."""
    deg = p._deg_idx(v)
    out = [S_ZERO] * (deg + 1)
    for m, c in p.terms.items():
        if len(m) > 1 or (m and m[0][0] != v):
            raise ValueError(f"{p} is not univariate in {v}")
        out[m[0][1] if m else 0] = c
    return out


def _from_list(coeffs, v):
    terms = {}
    for e, c in enumerate(coeffs):
        if not c.is_zero():
            terms[((v, e),) if e else ()] = c
    return Polynomial._wrap(terms)


def _trim(a):
    while a and a[-1].is_zero():
        a.pop()
    return a


def _divmod(a, b):
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    inv = b[-1].inverse()
    q = [S_ZERO] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] * inv
        q[k] = f
        for i, bc in enumerate(b):
            a[k + i] = a[k + i] - f * bc
        a.pop()
        _trim(a)
    return q, a


def _gcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    if a:
        inv = a[-1].inverse()
        a = [c * inv for c in a]
    return a


def _deriv(a):
    return [c * k for k, c in enumerate(a)][1:]


def _mul(a, b):
    if not a or not b:
        return []
    out = [S_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def integrate(f, name):
    """Rational antiderivative of ``f`` with respect to ``name``.

    Raises NonRationalPrimitive when the antiderivative has a logarithmic
    part.
    """
    f = as_rf(f)
    v = var_index(name)
    if f.is_zero():
        return f
    num = _to_list(f.num, v)
    den = _to_list(f.den, v)
    quo, rem = _divmod(num, den)
    poly_int = [S_ZERO] + [c * AlgebraicScalar(1) / (k + 1) for k, c in enumerate(quo)]
    result = as_rf(_from_list(_trim(poly_int), v))
    if not _trim(rem):
        return result
    d1 = _gcd(den, _deriv(den))
    d2, r0 = _divmod(den, d1)
    assert not _trim(r0)
    n1, n2 = len(d1) - 1, len(d2) - 1
    # unknowns: B (cols 0..n1-1), C (cols n1..n1+n2-1)
    # R = B' D2 - B (D2 D1' / D1) + C D1
    t, r1 = _divmod(_mul(d2, _deriv(d1)), d1)
    assert not _trim(r1)
    size = len(den)
    columns = {}
    for k in range(n1):
        e = [S_ZERO] * k + [S_ONE]
        contrib = _sub(_mul(_deriv(e), d2), _mul(e, t))
        columns[k] = contrib
    for k in range(n2):
        e = [S_ZERO] * k + [S_ONE]
        columns[n1 + k] = _mul(e, d1)
    red = SparseReducer()
    for deg in range(size):
        row = {}
        for col, poly in columns.items():
            if deg < len(poly) and not poly[deg].is_zero():
                row[col] = poly[deg]
        rhs = rem[deg] if deg < len(rem) else S_ZERO
        if not rhs.is_zero():
            row[RHS] = rhs
        if row:
            red.add(row)
    sol = red.solution(range(n1 + n2), S_ZERO)
    c_part = [sol[n1 + k] for k in range(n2)]
    if any(not c.is_zero() for c in c_part):
        raise NonRationalPrimitive(
            f"antiderivative of {f} in {name} has a logarithmic part")
    b_part = [sol[k] for k in range(n1)]
    return result + RationalFunction(_from_list(b_part, v), _from_list(d1, v))


def _sub(a, b):
    n = max(len(a), len(b))
    a = a + [S_ZERO] * (n - len(a))
    b = b + [S_ZERO] * (n - len(b))
    return [x - y for x, y in zip(a, b)]
