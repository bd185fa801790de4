"""Exact arithmetic in the number field Q(c, w) with c**3 = 12 and w**2 = 3.

``c`` is the real cube root of 12 and ``w`` the positive square root of 3.
An element is stored as six integer numerators over one positive common
denominator, in the basis ``1, c, c^2, w, c*w, c^2*w`` (index ``i + 3*j``
for the basis element ``c^i w^j``).
"""
from __future__ import annotations

import decimal
from fractions import Fraction
from math import gcd
from numbers import Rational

from ..errors import DivisionByZero

C_CUBED = 12
W_SQUARED = 3

BASIS_NAMES = ("", "cbrt12", "cbrt12^2", "sqrt3", "cbrt12*sqrt3", "cbrt12^2*sqrt3")


def _mul_table():
    table = {}
    for a in range(6):
        i, j = a % 3, a // 3
        for b in range(6):
            k, l = b % 3, b // 3
            ci, wj = i + k, j + l
            factor = 1
            if ci >= 3:
                ci -= 3
                factor *= C_CUBED
            if wj >= 2:
                wj -= 2
                factor *= W_SQUARED
            table[a, b] = (ci + 3 * wj, factor)
    return table


_MUL = _mul_table()


class AlgebraicScalar:
    """Immutable element of Q(c, w)."""

    __slots__ = ("nums", "den", "_hash")

    def __init__(self, value=0, den=None):
        if isinstance(value, AlgebraicScalar):
            self.nums, self.den, self._hash = value.nums, value.den, value._hash
            return
        if isinstance(value, tuple):
            nums = value
            den = 1 if den is None else den
        else:
            if isinstance(value, str):
                value = Fraction(value)
            if isinstance(value, bool) or not isinstance(value, (int, Rational)):
                raise TypeError(f"cannot build AlgebraicScalar from {value!r}")
            f = Fraction(value)
            if den is not None:
                f /= den
            nums = (f.numerator, 0, 0, 0, 0, 0)
            den = f.denominator
        self.nums, self.den = _normalize(nums, den)
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, nums, den):
        obj = object.__new__(cls)
        obj.nums, obj.den = _normalize(nums, den)
        obj._hash = None
        return obj

    @classmethod
    def from_components(cls, comps):
        """Build from six rationals ordered like ``BASIS_NAMES``."""
        fr = [Fraction(x) for x in comps]
        if len(fr) != 6:
            raise ValueError("need six components")
        den = 1
        for f in fr:
            den = den * f.denominator // gcd(den, f.denominator)
        return cls._raw(tuple(f.numerator * (den // f.denominator) for f in fr), den)

    @classmethod
    def cbrt12(cls):
        return cls._raw((0, 1, 0, 0, 0, 0), 1)

    @classmethod
    def sqrt3(cls):
        return cls._raw((0, 0, 0, 1, 0, 0), 1)

    # -- inspection ---------------------------------------------------
    @property
    def components(self):
        return tuple(Fraction(n, self.den) for n in self.nums)

    @property
    def is_rational(self):
        n = self.nums
        return not (n[1] or n[2] or n[3] or n[4] or n[5])

    def is_zero(self):
        return self.nums[0] == 0 and self.is_rational

    def __bool__(self):
        return not self.is_zero()

    def is_one(self):
        return self.den == 1 and self.nums == (1, 0, 0, 0, 0, 0)

    def to_fraction(self):
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def rational_part(self):
        return Fraction(self.nums[0], self.den)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        if a.den == b.den:
            return AlgebraicScalar._raw(tuple(x + y for x, y in zip(a.nums, b.nums)), a.den)
        return AlgebraicScalar._raw(
            tuple(x * b.den + y * a.den for x, y in zip(a.nums, b.nums)), a.den * b.den
        )

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(AlgebraicScalar)
        obj.nums = tuple(-x for x in self.nums)
        obj.den = self.den
        obj._hash = None
        return obj

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
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.nums, other.nums
        if self.is_rational:
            s = a[0]
            return AlgebraicScalar._raw(tuple(s * y for y in b), self.den * other.den)
        if other.is_rational:
            s = b[0]
            return AlgebraicScalar._raw(tuple(s * x for x in a), self.den * other.den)
        out = [0] * 6
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    k, f = _MUL[i, j]
                    out[k] += f * x * y
        return AlgebraicScalar._raw(tuple(out), self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse, from the 6x6 rational system of x -> self*x."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero in Q(cbrt12, sqrt3)")
        if self.is_rational:
            n = self.nums[0]
            sgn = 1 if n > 0 else -1
            return AlgebraicScalar._raw((sgn * self.den, 0, 0, 0, 0, 0), abs(n))
        # column k of the matrix is self * e_k
        cols = []
        for k in range(6):
            e = [0] * 6
            e[k] = 1
            cols.append((self * AlgebraicScalar._raw(tuple(e), 1)).components)
        m = [[cols[k][r] for k in range(6)] + [Fraction(int(r == 0))] for r in range(6)]
        sol = _solve_dense(m)
        return AlgebraicScalar.from_components(sol)

    def __truediv__(self, other):
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
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, AlgebraicScalar):
            return self.den == other.den and self.nums == other.nums
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self.is_rational and Fraction(self.nums[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational:
                self._hash = hash(Fraction(self.nums[0], self.den))
            else:
                self._hash = hash((self.nums, self.den))
        return self._hash

    # -- numerics -----------------------------------------------------
    def to_decimal(self, prec=50):
        """Numeric value under the real embedding, with ``prec`` digits."""
        with decimal.localcontext() as ctx:
            ctx.prec = prec + 10
            c = decimal.Decimal(12) ** (decimal.Decimal(1) / decimal.Decimal(3))
            w = decimal.Decimal(3).sqrt()
            basis = (decimal.Decimal(1), c, c * c, w, c * w, c * c * w)
            total = sum((decimal.Decimal(n) * b for n, b in zip(self.nums, basis)), decimal.Decimal(0))
            val = total / decimal.Decimal(self.den)
        with decimal.localcontext() as ctx:
            ctx.prec = prec
            return +val

    def __float__(self):
        return float(self.to_decimal(30))

    def sign(self):
        """Exact sign (-1, 0, 1) under the real embedding."""
        if self.is_zero():
            return 0
        if self.is_rational:
            return 1 if self.nums[0] > 0 else -1
        n = self.nums
        if not (n[1] or n[2] or n[4] or n[5]):
            # a + b*w: decide exactly
            a, b = n[0], n[3]
            sa = (a > 0) - (a < 0)
            sb = (b > 0) - (b < 0)
            if sa == 0 or sa == sb:
                return sb if sa == 0 else sa
            return sa if a * a > 3 * b * b else sb
        # the embedding is injective, so enough digits always separate from 0
        prec = 40
        while True:
            v = self.to_decimal(prec)
            scale = max(abs(x) for x in n)
            bound = decimal.Decimal(scale) * decimal.Decimal(10) ** (-(prec - 5)) * 40
            if abs(v) > bound:
                return 1 if v > 0 else -1
            prec *= 2

    def __lt__(self, other):
        return (self - _coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - _coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - _coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - _coerce(other)).sign() >= 0

    # -- printing -----------------------------------------------------
    def __repr__(self):
        return f"AlgebraicScalar({self})"

    def __str__(self):
        parts = []
        for k, num in enumerate(self.nums):
            if not num:
                continue
            f = Fraction(num, self.den)
            name = BASIS_NAMES[k]
            if not name:
                parts.append(str(f))
            elif f == 1:
                parts.append(name)
            elif f == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{f}*{name}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


def _normalize(nums, den):
    if den == 0:
        raise DivisionByZero("zero denominator")
    if den < 0:
        nums = tuple(-x for x in nums)
        den = -den
    g = gcd(den, *nums)
    if g > 1:
        nums = tuple(x // g for x in nums)
        den //= g
    return nums, den


def _coerce(x):
    if isinstance(x, AlgebraicScalar):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, int):
        return AlgebraicScalar._raw((x, 0, 0, 0, 0, 0), 1)
    if isinstance(x, Rational):
        return AlgebraicScalar._raw((x.numerator, 0, 0, 0, 0, 0), x.denominator)
    return NotImplemented


def as_scalar(x):
    """Coerce an int, Fraction or AlgebraicScalar into an AlgebraicScalar."""
    s = _coerce(x)
    if s is NotImplemented:
        raise TypeError(f"not a scalar: {x!r}")
    return s


def _solve_dense(m):
    """Solve a square augmented system over Q by Gauss-Jordan elimination."""
    n = len(m)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise DivisionByZero("singular multiplication matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


ZERO = AlgebraicScalar(0)
ONE = AlgebraicScalar(1)
CBRT12 = AlgebraicScalar.cbrt12()
SQRT3 = AlgebraicScalar.sqrt3()
