"""Structural invariants as hypothesis properties over small algebras."""

from hypothesis import given, settings
from hypothesis import strategies as st

import criteria
from conftest import load
from siltlab.silting import closure
from siltlab.stability import check_M_implies_numerical, pairing

ALGEBRAS = st.sampled_from(criteria.PROPERTY_FIXTURES)
SETTINGS = settings(max_examples=60, deadline=None)


@st.composite
def complexes_subset(draw):
    name = draw(ALGEBRAS)
    _, _, K = load(name)
    return name, frozenset(draw(st.sets(st.sampled_from(K.names))))


@st.composite
def modules_subset(draw):
    name = draw(ALGEBRAS)
    _, U, _ = load(name)
    return name, frozenset(draw(st.sets(st.sampled_from(U.names))))


@SETTINGS
@given(complexes_subset())
def test_beta_of_resolving_is_thick(case):
    name, S = case
    _, _, K = load(name)
    R = closure(S | set(K.stalks()), K, ext=True, cocones=True)
    assert criteria._beta_thick(name, R)


@SETTINGS
@given(complexes_subset())
def test_iota_of_extension_closed_is_resolving(case):
    name, S = case
    _, _, K = load(name)
    assert criteria._iota_resolving(name, closure(S, K, ext=True))


@SETTINGS
@given(modules_subset())
def test_T_is_thick_and_unit_inclusion(case):
    assert criteria._T_thick(*case)


@SETTINGS
@given(complexes_subset())
def test_W_is_wide_and_counit_inclusion(case):
    assert criteria._W_wide(*case)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(("a3", "square")), st.data())
def test_M_semistable_implies_numerical(name, data):
    _, U, K = load(name)
    x = data.draw(st.sampled_from(K.names))
    m = data.draw(st.sampled_from(U.names))
    if pairing(K[x], U[m]) == 0:
        assert check_M_implies_numerical(K[x], U[m], K) is None


def test_seeded_property_sweeps():
    for check in (criteria.c7a_beta_iota, criteria.c7b_galois):
        ok, detail = check()
        assert ok, detail


def test_exhaustive_M_implies_numerical():
    ok, detail = criteria.c7c_M_implies_numerical()
    assert ok, detail


def test_euler_pairing_is_hom_difference():
    ok, detail = criteria.c7d_euler()
    assert ok, detail
