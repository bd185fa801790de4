"""The fixed charts used throughout: the contact 5-space, the correspondence
space with fiber ``t`` and formal jets of H, and the distribution side with
fiber ``L`` and formal jets of H as a function of X."""
from __future__ import annotations

from .algebra.ratfunc import rf_var
from .diffgeo import Chart

JET_ORDER = 8
CONTACT_COORDS = ("x", "y", "z", "p", "q")


def h_jet(k):
    """Symbol of the k-th t-derivative of H."""
    return f"H{k}"


def hx_jet(k):
    """Symbol of the k-th X-derivative of H."""
    return f"HX{k}"


def _t_jets():
    jets = {h_jet(k): ("t", rf_var(h_jet(k + 1))) for k in range(JET_ORDER)}
    jets[h_jet(JET_ORDER)] = ("t", None)
    jets["I"] = ("t", rf_var(h_jet(0)))
    return jets


def _x_jets():
    jets = {hx_jet(k): ("X", rf_var(hx_jet(k + 1))) for k in range(JET_ORDER)}
    jets[hx_jet(JET_ORDER)] = ("X", None)
    # J is a primitive of H - X*H_X
    jets["J"] = ("X", rf_var(hx_jet(0)) - rf_var("X") * rf_var(hx_jet(1)))
    return jets


J5 = Chart("J", CONTACT_COORDS)
R6 = Chart("R", CONTACT_COORDS + ("t",), _t_jets())
M6 = Chart("M", ("X", "Y", "Z", "P", "Q", "L"), _x_jets())
M5 = Chart("M5", ("X", "Y", "Z", "P", "Q"), _x_jets())
