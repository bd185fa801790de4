import pytest

from g2contact.algebra.poly import Polynomial, exact_divide
from g2contact.algebra.ratfunc import rf_var
from g2contact.checks import RESULTANT_FACTORS, RESULTANT_FACTORS_PRINTED
from g2contact.contact import (HModel, build_system, catalog, contact_check, eliminate_parameter,
                               fiber_polynomials, locus_reduce)
from g2contact.crosscheck import check_elimination, check_locus, check_noth_relations
from g2contact.errors import NotDivisible, SingularParametrization


@pytest.fixture(scope="module")
def std_system(standard):
    return standard.system()


def _poly(T):
    return T.to_polynomial().num.canonical()


def test_standard_coefficients(std_system, t):
    # [DERIVED] from H = 3t^2 with zero translation
    assert std_system.p11 == 2 * t ** 3
    assert std_system.p12 == std_system.p21 == -3 * t * t
    assert std_system.p22 == 6 * t
    assert std_system.p31 == -t


def test_translation_moves_p11_only(t):
    s = build_system(HModel.explicit(3 * t * t, p11_shift=-5))
    assert s.p11 == 2 * t ** 3 - 5 and s.p22 == 6 * t


@pytest.mark.parametrize("case", ["standard", "noth1", "noth2"])
def test_system_is_contact(case):
    contact_check(catalog(case).system().varpi)


def test_fiber_polynomials_are_polynomial_in_t(std_system):
    polys = fiber_polynomials(std_system)
    assert [p.degree("t") for p in (polys["p2"], polys["p3"], polys["p4"])] == [3, 2, 1]


@pytest.mark.parametrize("pair, name", sorted(RESULTANT_FACTORS.items()))
def test_resultant_factors_as_computed(standard, std_system, pair, name):
    rows = {row["pair"]: row["resultant"] for row in eliminate_parameter(std_system)}
    cof = exact_divide(rows[pair], _poly(standard.tensors[name]))
    assert cof.degree() == 1


def test_printed_resultant_labels_are_swapped(standard, std_system):
    rows = {row["pair"]: row["resultant"] for row in eliminate_parameter(std_system)}
    for pair in ("p2,p4", "p3,p4"):
        with pytest.raises(NotDivisible):
            exact_divide(rows[pair], _poly(standard.tensors[RESULTANT_FACTORS_PRINTED[pair]]))


@pytest.mark.parametrize("name", ["upsilon", "mu", "g1"])
def test_standard_locus(standard, std_system, name):
    assert locus_reduce(standard.tensors[name], std_system).is_zero()


@pytest.mark.parametrize("case", ["standard", "noth1", "noth2"])
def test_relations(case):
    for rel in catalog(case).relations:
        res = rel.lhs - rel.rhs
        assert res.is_zero() != rel.as_printed_typo, rel.name


def test_mu1_typo_regression_pair(noth1):
    rels = {rel.name: rel for rel in noth1.relations}
    assert not (rels["mu1-as-printed"].lhs - rels["mu1-as-printed"].rhs).is_zero()
    assert (rels["mu1"].lhs - rels["mu1"].rhs).is_zero()


@pytest.mark.parametrize("case", ["noth1", "noth2"])
@pytest.mark.parametrize("name", ["upsilon", "mu1", "mu2"])
def test_noth_locus(case, name):
    cat = catalog(case)
    assert locus_reduce(cat.tensors[name], cat.system()).is_zero()


@pytest.mark.parametrize("case", ["noth1", "noth2"])
def test_nu_kappa_are_extraneous_resultant_factors(case):
    # nu * kappa = 8 dx^3 - 27 dy^3 divides every pairwise resultant, yet neither
    # vanishes on the locus for generic r
    cat = catalog(case)
    s = cat.system()
    nk = _poly(cat.tensors["nu"] * cat.tensors["kappa"])
    assert nk == Polynomial.var("dx") ** 3 * 8 - Polynomial.var("dy") ** 3 * 27
    for row in eliminate_parameter(s):
        exact_divide(row["resultant"], nk)
    for name in ("nu", "kappa"):
        assert not locus_reduce(cat.tensors[name], s).is_zero()


def test_catalog_rejects_unknown_case():
    with pytest.raises(ValueError):
        catalog("noth3")


def test_singular_parametric_model(r):
    with pytest.raises(SingularParametrization):
        HModel.parametric(rf_var("r") * 0 + 1, r)


def test_reparametrized_standard_model(r):
    h = HModel.explicit(3 * rf_var("t") ** 2).reparametrize(1 / r)
    s = build_system(h)
    assert s.p31 == -1 / r and s.p22 == 6 / r


def test_oracle_agrees(rng):
    assert all(res.is_zero for res in check_elimination(rng, 20))
    assert all(res.is_zero for res in check_locus("noth2", rng, 20, ("upsilon", "mu1", "mu2")))
    assert all(res.is_zero for res in check_noth_relations(rng, 20))
    assert not any(res.is_zero for res in check_locus("noth1", rng, 20, ("nu", "kappa")))
