from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2contact.algebra.scalar import SQRT3, as_scalar
from g2contact.algebra.ratfunc import rf_var
from g2contact.contact import catalog, contact_form
from g2contact.crosscheck import check_structure, check_symmetries
from g2contact.diffgeo import lie_bracket
from g2contact.errors import NotClosed, NotContactSymmetry, NotEigenvector, NotG2
from g2contact.g2 import (NAMES, ROOT_NAMES, StructureConstants, basis, basis_rank, cartan_gram,
                          classify_g2, clock_checks, contact_symmetry_check, cubic_symmetry_check,
                          eigenvalue_pairs, jacobi_check, killing_form, killing_invariance_residuals,
                          killing_rank, matches_picture, render_clock, roots,
                          structural_symmetry_check, structure_constants)

CERTIFIED = ["thm-noth1", "thm-noth2-corrected"]
CASE = {"thm-noth1": "noth1", "thm-noth2": "noth2", "thm-noth2-corrected": "noth2"}


@pytest.fixture(scope="module", params=CERTIFIED)
def algebra(request):
    b = basis(request.param)
    sc = structure_constants(b)
    return b, sc, killing_form(sc)


def test_rank(algebra):
    assert basis_rank(algebra[0]) == 14


def test_jacobi(algebra):
    assert jacobi_check(algebra[1]) == []


def test_killing(algebra):
    _, sc, K = algebra
    assert killing_rank(K) == 14
    assert killing_invariance_residuals(sc, K) == []


def test_cartan_commutes(algebra):
    b = algebra[0]
    assert lie_bracket(b["h1"], b["h2"]).is_zero()


def test_classification(algebra):
    _, sc, K = algebra
    rep = classify_g2(eigenvalue_pairs(sc), cartan_gram(K))
    assert rep.cartan_matrix == [[2, -1], [-3, 2]]
    assert (rep.short, rep.long, rep.ratio) == (6, 6, 3)
    assert sorted(rep.simple_roots) == ["L12", "S5"]


def test_clock(algebra):
    b, sc, K = algebra
    data = roots(b, sc, K)
    assert clock_checks(data, cartan_gram(K)) == {"parity": True, "antipodal": True,
                                                  "adjacency": True}
    assert matches_picture(data)
    text = render_clock(data)
    assert all(label in text for label in ROOT_NAMES)


def test_root_lengths(algebra):
    b, sc, K = algebra
    for r in roots(b, sc, K):
        assert r.length == ("short" if r.hour % 2 else "long")


def test_killing_on_cartan():
    # [DERIVED] K(h1,h1) = K(h2,h2) = 12, K(h1,h2) = 0 for the first theorem
    K = killing_form(structure_constants(basis("thm-noth1")))
    h1, h2 = NAMES.index("h1"), NAMES.index("h2")
    assert (K[h1][h1], K[h1][h2], K[h2][h2]) == (12, 0, 12)


@pytest.mark.parametrize("i, j, k, c", [("S1", "S3", "L2", -3), ("S1", "S5", "S3", 8),
                                        ("S1", "L6", "S5", 3)])
def test_structure_constant_values(i, j, k, c):
    # [DERIVED] from the first theorem's basis
    sc = structure_constants(basis("thm-noth1"))
    assert sc.c[NAMES.index(i)][NAMES.index(j)][NAMES.index(k)] == c


@given(st.lists(st.integers(-3, 3), min_size=14, max_size=14),
       st.lists(st.integers(-3, 3), min_size=14, max_size=14),
       st.lists(st.integers(-3, 3), min_size=14, max_size=14))
def test_killing_invariance_on_random_elements(a, b, c):
    sc = _sc1()
    K = _k1()
    n = 14

    def br(u, v):
        out = [as_scalar(0)] * n
        for i in range(n):
            for j in range(n):
                if u[i] and v[j]:
                    for k in range(n):
                        out[k] = out[k] + sc.c[i][j][k] * u[i] * v[j]
        return out

    def kf(u, v):
        return sum((K[i][j] * u[i] * v[j] for i in range(n) for j in range(n) if u[i] and v[j]),
                   as_scalar(0))

    assert kf(br(a, b), c) == kf(a, br(b, c))
    assert kf(a, b) == kf(b, a)


@lru_cache(maxsize=None)
def _sc1():
    return structure_constants(basis("thm-noth1"))


@lru_cache(maxsize=None)
def _k1():
    return killing_form(_sc1())


# -- symmetries ------------------------------------------------------------------------

@pytest.mark.parametrize("theorem", CERTIFIED)
def test_contact_symmetries(theorem):
    b = basis(theorem)
    for name in NAMES:
        contact_symmetry_check(b[name], contact_form())


def test_lambda_values():
    b = basis("thm-noth1")
    q = rf_var("q")
    assert contact_symmetry_check(b["h2"], contact_form()) == SQRT3
    assert contact_symmetry_check(b["S1"], contact_form()) == 3 * q


@pytest.mark.parametrize("theorem", CERTIFIED)
def test_upsilon_certificates(theorem):
    b = basis(theorem)
    ups = catalog(CASE[theorem]).tensors["upsilon"]
    for name in NAMES:
        cert = structural_symmetry_check(b[name], ups)
        lam = contact_symmetry_check(b[name], contact_form())
        assert cert.f == 2 * lam.num.scale(lam.den.constant_value().inverse())
        assert cert.degree_bound >= 0


@pytest.mark.parametrize("theorem", CERTIFIED)
@pytest.mark.parametrize("mu", ["mu1", "mu2"])
def test_cubic_certificates(theorem, mu):
    cat = catalog(CASE[theorem])
    b = basis(theorem)
    for name in ("S1", "L6", "L12", "h2"):
        cubic_symmetry_check(b[name], cat.tensors[mu], cat.module)


# -- the printed L12 of the second theorem ------------------------------------------------

def test_printed_l12_breaks_closure():
    with pytest.raises(NotClosed):
        structure_constants(basis("thm-noth2"))
    fails = structure_constants(basis("thm-noth2"), strict=False).failures
    assert len(fails) == 13
    assert all("L12" in pair for pair in fails if pair not in {("S1", "S11"), ("L2", "L10")})


def test_printed_l12_is_not_a_contact_symmetry():
    b = basis("thm-noth2")
    with pytest.raises(NotContactSymmetry):
        contact_symmetry_check(b["L12"], contact_form())
    for name in NAMES[:-3] + NAMES[-2:]:
        contact_symmetry_check(b[name], contact_form())


def test_corrected_l12_is_bracket():
    b = basis("thm-noth2-corrected")
    assert (lie_bracket(b["L2"], b["L10"]) + b["L12"]).is_zero()
    diff = basis("thm-noth2")["L12"] - b["L12"]
    assert [c.is_zero() for c in diff.components] == [True, True, False, True, True]


def test_first_theorem_l12_is_half_bracket():
    # [DERIVED] [L2, L10] = -1/2 L12 for the first theorem
    sc = structure_constants(basis("thm-noth1"))
    row = sc.c[NAMES.index("L2")][NAMES.index("L10")]
    assert row[NAMES.index("L12")] == as_scalar(-1) / 2
    assert sum(1 for v in row if not v.is_zero()) == 1


def test_upsilon_certificate_survives_printed_l12():
    # Upsilon has no dz term, so the z-component misprint is invisible to it
    structural_symmetry_check(basis("thm-noth2")["L12"], catalog("noth2").tensors["upsilon"])


# -- negative controls ----------------------------------------------------------------------

def test_sl2_is_not_g2():
    g = [[as_scalar(1), as_scalar(0)], [as_scalar(0), as_scalar(1)]]
    with pytest.raises(NotG2):
        classify_g2({"e": (2, 0), "f": (-2, 0)}, g)


def test_b2_is_not_g2():
    g = [[as_scalar(1), as_scalar(0)], [as_scalar(0), as_scalar(1)]]
    vecs = {f"r{k}": v for k, v in enumerate(
        [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1), (1, -1), (-1, 1),
         (2, 0), (-2, 0), (0, 2), (0, -2)])}
    with pytest.raises(NotG2):
        classify_g2(vecs, g)


def test_perturbed_constants_break_jacobi():
    sc = _sc1()
    c = [[list(row) for row in plane] for plane in sc.c]
    i, j, k = NAMES.index("S1"), NAMES.index("S3"), NAMES.index("L2")
    c[i][j][k] = c[i][j][k] + 1
    c[j][i][k] = c[j][i][k] - 1
    assert jacobi_check(StructureConstants("perturbed", NAMES, c)) != []


def test_non_eigenvector_detected():
    sc = _sc1()
    c = [[list(row) for row in plane] for plane in sc.c]
    h1, s1, s3 = NAMES.index("h1"), NAMES.index("S1"), NAMES.index("S3")
    c[h1][s1][s3] = as_scalar(1)
    with pytest.raises(NotEigenvector):
        eigenvalue_pairs(StructureConstants("perturbed", NAMES, c))


@pytest.mark.parametrize("theorem", CERTIFIED)
def test_oracle_agrees(rng, theorem):
    assert all(res.is_zero for res in check_structure(theorem, structure_constants(basis(theorem)),
                                                      rng, 20))
    assert all(res.is_zero for res in check_symmetries(theorem, CASE[theorem], rng, 20))
