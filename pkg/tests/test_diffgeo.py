import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2contact.algebra.poly import Polynomial
from g2contact.algebra.ratfunc import ONE, as_rf, rf_var
from g2contact.charts import J5, M6, R6
from g2contact.contact import contact_check, contact_form
from g2contact.diffgeo import (Chart, CoordinateMap, ExteriorForm, SymmetricForm, VectorField,
                               compose, d, dsym, identity_map, interior_product, lie_bracket,
                               lie_derivative, pullback, sym_product, wedge)
from g2contact.errors import DegenerateContact, DegreeOverflow

PLANE = Chart("plane3", ("a", "b", "c"))
small = st.integers(-4, 4)


def _poly(chart, coeffs):
    out = Polynomial.const(0)
    names = chart.coords
    for k, c in enumerate(coeffs):
        i, j = divmod(k, len(names))
        out = out + Polynomial.monomial({names[i]: 1, names[j % len(names)]: 1}, c)
    return as_rf(out + Polynomial.const(coeffs[0]))


def functions(chart):
    return st.lists(small, min_size=len(chart.coords) ** 2,
                    max_size=len(chart.coords) ** 2).map(lambda cs: _poly(chart, cs))


def fields(chart):
    return st.lists(functions(chart), min_size=chart.dim, max_size=chart.dim).map(
        lambda comps: VectorField(chart, comps))


def one_forms(chart):
    return st.lists(functions(chart), min_size=chart.dim, max_size=chart.dim).map(
        lambda cs: ExteriorForm.one_form(chart, dict(zip(chart.coords, cs))))


@given(one_forms(PLANE))
def test_d_squared_vanishes(w):
    assert d(d(w)).is_zero()


@given(fields(PLANE), one_forms(PLANE))
def test_lie_derivative_in_components(X, w):
    # (L_X w)_i = X(w_i) + sum_j w_j d_i X^j
    L = lie_derivative(X, w)
    for i, name in enumerate(PLANE.coords):
        want = X(w.coefficient(name))
        for j, other in enumerate(PLANE.coords):
            want = want + w.coefficient(other) * X.components[j].diff(name)
        assert L.coefficient(name) == want


@given(fields(PLANE), one_forms(PLANE))
def test_symmetric_and_exterior_lie_derivatives_agree_in_degree_one(X, w):
    sym = SymmetricForm.from_one_form(w)
    assert lie_derivative(X, sym) == SymmetricForm.from_one_form(lie_derivative(X, w))


@given(fields(PLANE), fields(PLANE), one_forms(PLANE))
def test_bracket_is_commutator_of_lie_derivatives(X, Y, w):
    w2 = sym_product(SymmetricForm.from_one_form(w), SymmetricForm.from_one_form(w))
    lhs = lie_derivative(lie_bracket(X, Y), w2)
    rhs = lie_derivative(X, lie_derivative(Y, w2)) - lie_derivative(Y, lie_derivative(X, w2))
    assert lhs == rhs


@given(fields(PLANE), fields(PLANE))
def test_bracket_antisymmetric(X, Y):
    assert (lie_bracket(X, Y) + lie_bracket(Y, X)).is_zero()


@given(one_forms(PLANE))
def test_pullback_commutes_with_d(w):
    a, b, c = (rf_var(n) for n in PLANE.coords)
    phi = CoordinateMap(PLANE, PLANE, [a + b * b, b - c * a, c + 2 * a])
    assert pullback(phi, d(w)) == d(pullback(phi, w))


def test_pullback_is_functorial():
    a, b, c = (rf_var(n) for n in PLANE.coords)
    phi = CoordinateMap(PLANE, PLANE, [a + b * b, b, c - a])
    psi = CoordinateMap(PLANE, PLANE, [a, b + c * c, c])
    T = sym_product(SymmetricForm.differential(PLANE, "a"), SymmetricForm.differential(PLANE, "b"))
    assert pullback(compose(phi, psi), T) == pullback(psi, pullback(phi, T))
    assert pullback(identity_map(PLANE), T) == T


def test_contact_form_is_nondegenerate():
    vol = contact_check(contact_form())
    assert vol.coefficient("x", "y", "z", "p", "q") == -2


def test_degenerate_form_is_rejected():
    with pytest.raises(DegenerateContact):
        contact_check(ExteriorForm.differential(J5, "z"))


def test_wedge_past_dimension():
    w = ExteriorForm.differential(PLANE, "a")
    with pytest.raises(DegreeOverflow):
        wedge(wedge(wedge(w, ExteriorForm.differential(PLANE, "b")),
                    ExteriorForm.differential(PLANE, "c")), w)


def test_interior_product_of_coordinate_field():
    X = VectorField(J5, {"x": ONE})
    assert interior_product(X, contact_form()) == ExteriorForm.function(J5, -rf_var("p"))


def test_jet_derivation_chain():
    # d/dt of H0 is H1 on the correspondence chart, and dJ/dX = H - X H_X on the M side
    assert R6.partial(rf_var("H0"), "t") == rf_var("H1")
    assert R6.partial(rf_var("I"), "t") == rf_var("H0")
    assert M6.partial(rf_var("J"), "X") == rf_var("HX0") - rf_var("X") * rf_var("HX1")


def test_symmetric_form_polynomial_round_trip():
    f = parse_form("(+ (* 3 x (^ dx 2)) (* dy dq))")
    assert SymmetricForm.from_polynomial(J5, f).to_polynomial() == f


def parse_form(text):
    from g2contact.algebra.sexpr import parse
    return parse(text)


def test_dsym_names():
    assert [dsym(c) for c in J5.coords] == ["dx", "dy", "dz", "dp", "dq"]
