import pytest

from conftest import load
from siltlab.complexes import direct_sum, parse_complex
from siltlab.linalg import Field
from siltlab.modules import Representation
from siltlab.stability import (
    PairingError,
    det_semi_invariant,
    induced_map,
    is_M_semistable,
    is_numerically_semistable,
    king_semistable,
    pairing,
    perp_description,
    script_T,
    script_W,
    w_theta_members,
)


def named(alg, name):
    return parse_complex(alg, dict(alg.named_complexes)[name])


def test_semi_invariant_values_on_square(square):
    A, U, _ = square
    X1, X2 = named(A, "X1"), named(A, "X2")
    assert det_semi_invariant(X1, U["P2"]) == 1
    assert det_semi_invariant(X2, U["P1"]) == 1
    assert is_M_semistable(X1, U["P2"])


def test_semi_invariant_scales_with_differential(square):
    A, U, _ = square
    X = parse_complex(A, "P1 -> P2 : 3 alpha")
    assert det_semi_invariant(X, U["P2"]) == 3


def test_pairing_error(a3):
    A, U, K = a3
    with pytest.raises(PairingError) as e:
        det_semi_invariant(K["P1"], U["P1"])
    assert e.value.pairing == 1


def test_induced_map_shape(square):
    A, U, _ = square
    X = direct_sum([named(A, "X1"), named(A, "X2")], A)
    M, r, c = induced_map(X, U["P1"])
    assert (r, c) == (2, 2)
    assert pairing(X, U["P1"]) == 0


@pytest.mark.parametrize("mats", [{"alpha": [[1]]}, {"beta": [[1]]}, {}])
def test_sum_is_never_semistable_for_dimension_one_one(square, mats):
    A, _, _ = square
    M = Representation(A, (1, 1), mats)
    X = direct_sum([named(A, "X1"), named(A, "X2")], A)
    assert det_semi_invariant(X, M) == 0
    assert not is_M_semistable(X, M)


def test_numerical_verdicts_on_square(square):
    A, _, K = square
    X = direct_sum([named(A, "X1"), named(A, "X2")], A)
    v = is_numerically_semistable(X, (1, 1), K, mult_bound=2)
    assert v.semistable == "true-within-budget"
    Y = direct_sum([K["P1"], K["P1[1]"]], A)
    v = is_numerically_semistable(Y, (1, 1), K)
    assert v.semistable is False and v.pairing == -1 and v.witness == ["P1[1]"]


def test_numerical_fails_on_nonzero_pairing(a3):
    A, _, K = a3
    v = is_numerically_semistable(K["P1"], (1, 0, 0), K)
    assert v.semistable is False and v.witness is None and v.pairing == 1


def test_script_T_and_W(a3):
    _, U, K = a3
    T = script_T(["S2"], K)
    assert all(pairing(K[x], U["S2"]) == 0 for x in T)
    assert script_W([], K) == frozenset(U.names)
    assert script_W(K.names, K) == frozenset()
    assert script_W(["P1[1]", "P1"], K) == {"S2", "I2", "I3"}


def test_w_theta_and_perp_description(a3):
    A, _, K = a3
    members, exact = w_theta_members((-1, 1, 0), K)
    assert exact
    assert members == perp_description(K["pres(S2)"], K)


def test_king_semistability():
    from siltlab.algebra import parse_algebra
    from conftest import fixture_path

    A = parse_algebra(fixture_path("kronecker").read_text(), field=Field(3))
    M = Representation(A, (1, 1), {"x": [[1]], "y": [[2]]})
    # the simple projective S1 is the only proper nonzero submodule
    assert king_semistable(M, (-1, 1))
    assert not king_semistable(M, (1, -1))
    assert not king_semistable(M, (1, 1))
