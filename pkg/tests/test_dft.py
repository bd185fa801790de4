import pytest

from g2contact.algebra.ratfunc import rf_var, substitute
from g2contact.contact import HModel
from g2contact.crosscheck import check_dft
from g2contact.dft import (_jet_relations_forward, distribution_build, explicit_x_jets, forward_components,
                           inverse_components, inverse_x, roundtrip_check,
                           verify_forward_identities, verify_inverse_identity)
from g2contact.diffgeo import ExteriorForm
from g2contact.charts import M6
from g2contact.errors import DegenerateHXX, IdentityFails, RoundTripFails
from g2contact.noth import curve


def test_forward_identities_hold_formally():
    for res in verify_forward_identities():
        assert res.is_zero, res.name


def test_printed_forward_combinations_fail():
    zero = [res.is_zero for res in verify_forward_identities(printed=True, strict=False)]
    assert zero == [False, False, False, True]
    with pytest.raises(IdentityFails):
        verify_forward_identities(printed=True)


def test_inverse_identity_holds_formally():
    assert verify_inverse_identity().is_zero


def test_printed_inverse_fails():
    assert not verify_inverse_identity(printed=True, strict=False).is_zero


def test_inverse_x_conventions_differ_by_hxx():
    hxx = rf_var("HX2")
    assert inverse_x(printed=True) == inverse_x() * hxx


def test_inverse_identity_specialized():
    X = rf_var("X")
    assert verify_inverse_identity(specialize=explicit_x_jets(3 * X * X / 4)).is_zero


def test_hilbert_cartan_forms():
    X = rf_var("X")
    ds = distribution_build(HModel.explicit(3 * X * X, var="X"))
    Q = rf_var("Q")
    assert ds.o3 == ExteriorForm.one_form(M6, {"Z": 1, "X": -Q * Q / 6})


def test_linear_h_is_degenerate():
    with pytest.raises(DegenerateHXX):
        distribution_build(HModel.explicit(rf_var("X"), var="X"))


@pytest.mark.parametrize("label", ["3t2", "formal", "recovered-1", "noth1"])
def test_roundtrip_is_identity(label):
    if label == "3t2":
        h = HModel.explicit(3 * rf_var("t") ** 2)
    elif label == "formal":
        h = HModel.formal()
    else:
        cv = curve(label)
        h = HModel.parametric(cv.t, cv.H, var=cv.var)
    assert roundtrip_check(h).is_identity


def test_printed_roundtrip_fails():
    with pytest.raises(RoundTripFails):
        roundtrip_check(HModel.explicit(3 * rf_var("t") ** 2), printed=True)


@pytest.mark.parametrize("coord", ["x", "q"])
def test_perturbed_inverse_is_detected(coord):
    bind = dict(forward_components())
    bind.update(_jet_relations_forward())
    inv = inverse_components()
    assert substitute(inv[coord], bind) == rf_var(coord)
    bad = inv[coord] + rf_var("P") / 100
    assert substitute(bad, bind) != rf_var(coord)


def test_oracle_agrees(rng):
    assert all(res.is_zero for res in check_dft(rng, 20))
