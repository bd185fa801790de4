from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2contact.algebra.integrate import integrate
from g2contact.algebra.linalg import nullspace, rank, solve
from g2contact.algebra.poly import (Polynomial, bareiss_determinant, exact_divide, poly_gcd,
                                    resultant, sylvester_matrix)
from g2contact.algebra.ratfunc import ONE, RationalFunction, as_rf, evaluate, rf_var, substitute
from g2contact.algebra.scalar import CBRT12, SQRT3, AlgebraicScalar, as_scalar
from g2contact.algebra.sexpr import parse, to_sexpr
from g2contact.errors import NonRationalPrimitive, NotDivisible, ParseError, PoleAtPoint

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.lists(small, min_size=6, max_size=6).map(AlgebraicScalar.from_components)
nonzero_scalars = scalars.filter(lambda s: not s.is_zero())


def poly_strategy(names=("x", "y"), max_terms=4, max_exp=3):
    term = st.tuples(st.tuples(*[st.integers(0, max_exp) for _ in names]), small)

    def build(terms):
        out = Polynomial.const(0)
        for exps, c in terms:
            out = out + Polynomial.monomial(dict(zip(names, exps)), c)
        return out

    return st.lists(term, min_size=1, max_size=max_terms).map(build)


# -- the number field ------------------------------------------------------------------

def test_generators_satisfy_minimal_polynomials():
    assert CBRT12 ** 3 == 12
    assert SQRT3 ** 2 == 3
    assert (CBRT12 * SQRT3) ** 6 == 12 ** 2 * 27


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(nonzero_scalars)
def test_inverse(a):
    assert a * a.inverse() == 1


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        AlgebraicScalar(0).inverse()


@pytest.mark.parametrize("value, expected", [
    (CBRT12, "2.2894284851"),
    (SQRT3, "1.7320508075"),
    (CBRT12 * CBRT12 / 36, "0.1455967"),
])
def test_numeric_embedding(value, expected):
    assert str(value.to_decimal(30)).startswith(expected)


@given(nonzero_scalars)
def test_sign_agrees_with_embedding(a):
    assert a.sign() == (1 if a.to_decimal(40) > 0 else -1)


# -- polynomials -------------------------------------------------------------------------

@given(poly_strategy(), poly_strategy())
def test_exact_divide_recovers_factor(f, g):
    if g.is_zero():
        return
    assert exact_divide(f * g, g) == f


def test_exact_divide_rejects_non_multiple():
    x, y = Polynomial.var("x"), Polynomial.var("y")
    with pytest.raises(NotDivisible):
        exact_divide(x * x + y, x)


@given(poly_strategy(), poly_strategy(), poly_strategy())
def test_gcd_contains_common_factor(f, g, h):
    if h.is_zero() or h.is_constant() or f.is_zero() or g.is_zero():
        return
    d = poly_gcd(f * h, g * h)
    exact_divide(d, h.canonical())


@given(poly_strategy(("x", "y"), 3, 2), poly_strategy(("x", "y"), 3, 2))
def test_resultant_antisymmetry(f, g):
    m, n = f.degree("x"), g.degree("x")
    if m < 1 or n < 1:
        return
    assert resultant(f, g, "x") == resultant(g, f, "x") * (-1) ** (m * n)


@given(poly_strategy(("x", "y"), 3, 2), poly_strategy(("x", "y"), 3, 2), small)
def test_common_root_kills_resultant(f, g, a):
    root = Polynomial.var("x") - Polynomial.const(a)
    if f.is_zero() or g.is_zero():
        return
    assert resultant(f * root, g * root, "x").is_zero()


def test_resultant_matches_sylvester_determinant():
    x, y = Polynomial.var("x"), Polynomial.var("y")
    f, g = x * x + y, x - 3
    assert resultant(f, g, "x") == y + 9
    assert bareiss_determinant(sylvester_matrix(f, g, "x")) == y + 9


# -- rational functions -------------------------------------------------------------------

def test_reduced_form(r):
    f = (r * r - 1) / (r - 1)
    assert f == r + 1 and f.is_polynomial()


def test_evaluate_at_point(r):
    assert evaluate(1 / (r ** 3 - 1), {"r": 2}) == Fraction(1, 7)


def test_evaluate_at_pole(r):
    with pytest.raises(PoleAtPoint):
        evaluate(1 / (r - 1), {"r": 1})


@given(poly_strategy(("x",), 3, 3), poly_strategy(("x",), 3, 2), small)
def test_substitute_composition(f, g, a):
    x = rf_var("x")
    inner = as_rf(g) + x
    outer = x * x + a
    lhs = substitute(substitute(as_rf(f), {"x": inner}), {"x": outer})
    rhs = substitute(as_rf(f), {"x": substitute(inner, {"x": outer})})
    assert lhs == rhs


@given(poly_strategy(("x", "y"), 3, 3), poly_strategy(("x", "y"), 3, 3))
def test_quotient_rule(f, g):
    if g.is_zero():
        return
    q = as_rf(f) / as_rf(g)
    assert q.diff("x") == (as_rf(f.diff("x")) * g - as_rf(f) * g.diff("x")) / (as_rf(g) * g)


# -- integration -------------------------------------------------------------------------------

@pytest.mark.parametrize("expr", ["(/ 1 (^ (+ r 1) 2))", "(* 3 (^ r 2))",
                                  "(/ (* r 2) (^ (+ (^ r 2) 1) 3))"])
def test_primitive_differentiates_back(expr):
    f = parse(expr)
    assert integrate(f, "r").diff("r") == f


def test_primitive_convention_has_no_constant(r):
    assert integrate(3 * r * r, "r") == r ** 3
    assert integrate(1 / (r * r), "r") == -1 / r


def test_logarithmic_primitive_is_rejected(r):
    with pytest.raises(NonRationalPrimitive):
        integrate(1 / (r + 1), "r")


# -- linear algebra ------------------------------------------------------------------------------

def test_rank_and_solve():
    m = [[as_scalar(1), as_scalar(2)], [as_scalar(3), as_scalar(4)]]
    assert rank(m) == 2
    sol = solve(m, [as_scalar(5), as_scalar(6)], as_scalar(0))
    assert [m[i][0] * sol[0] + m[i][1] * sol[1] for i in range(2)] == [5, 6]


def test_nullspace_of_singular_matrix():
    m = [[as_scalar(1), as_scalar(2)], [as_scalar(2), as_scalar(4)]]
    (v,) = nullspace(m, 2, as_scalar(0), as_scalar(1))
    assert m[0][0] * v[0] + m[0][1] * v[1] == 0


# -- s-expressions -------------------------------------------------------------------------------

def test_eval_trivial():
    assert to_sexpr(parse("(+ 1 2)")) == "3"


@given(poly_strategy(("x", "y"), 4, 3), poly_strategy(("x", "y"), 2, 2), scalars)
def test_sexpr_round_trip(f, g, c):
    value = as_rf(f) * c
    if not g.is_zero():
        value = value / as_rf(g)
    assert parse(to_sexpr(value)) == value


@pytest.mark.parametrize("text", ["(+ 1 2", "(% 1 2)", "(/ 1 0)", "(^ x y)", "1 2", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_undeclared_symbol_is_positioned():
    with pytest.raises(ParseError) as err:
        parse("(+ x\n  zz)", {"x"})
    assert (err.value.line, err.value.column) == (2, 3)


def test_constants():
    assert parse("(* cbrt12 sqrt3)") == as_rf(CBRT12 * SQRT3)
    assert parse("1/3") == ONE / 3
    assert isinstance(parse("x"), RationalFunction)
