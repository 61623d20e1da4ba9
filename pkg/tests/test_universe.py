import pytest

from conftest import load
from siltlab.universe import ar_quiver_dot, ar_quiver_edges, enumerate_indecomposable_modules


@pytest.mark.parametrize(
    "name, count", [("a3", 6), ("square", 4), ("one_vertex", 1), ("d4", 12)]
)
def test_representation_finite_counts(name, count):
    _, U, _ = load(name)
    assert U.complete
    assert len(U) == count


def test_a3_names_and_dims(a3):
    _, U, _ = a3
    assert {n: M.dims for n, M in U.members} == {
        "P1": (1, 0, 0),
        "P2": (1, 1, 0),
        "P3": (1, 1, 1),
        "S2": (0, 1, 0),
        "I2": (0, 1, 1),
        "I3": (0, 0, 1),
    }


def test_a3_ar_quiver(a3):
    _, U, _ = a3
    assert {(a, b) for a, b, _ in ar_quiver_edges(U)} == {
        ("P1", "P2"),
        ("P2", "P3"),
        ("P2", "S2"),
        ("P3", "I2"),
        ("S2", "I2"),
        ("I2", "I3"),
    }
    dot = ar_quiver_dot(U)
    assert dot.startswith("digraph ar {") and '"S2" -> "I2";' in dot


def test_d4_dimension_vectors_are_the_positive_roots(d4):
    _, U, _ = d4
    # the sink is vertex 2; every positive root of D4
    roots = {
        (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
        (1, 1, 0, 0), (0, 1, 1, 0), (0, 1, 0, 1),
        (1, 1, 1, 0), (1, 1, 0, 1), (0, 1, 1, 1),
        (1, 1, 1, 1), (1, 2, 1, 1),
    }
    assert {M.dims for M in U.by_name.values()} == roots


def test_kronecker_is_truncated(kronecker):
    _, U, _ = kronecker
    assert not U.complete
    assert U.status == "truncated"
    dims = sorted(M.dims for M in U.by_name.values())
    # preprojectives (1,0), (2,1); preinjectives (0,1), (1,2); regular (1,1) and (2,2) families over F_2
    assert (1, 0) in dims and (0, 1) in dims and (2, 1) in dims and (1, 2) in dims
    assert dims.count((1, 1)) == 3


def test_universe_lookup_errors(a3):
    _, U, _ = a3
    with pytest.raises(KeyError):
        U["Q7"]


def test_strategies_agree_on_a3(a3):
    A, U, _ = a3
    ex = enumerate_indecomposable_modules(A, bound=3, strategy="exhaustive")
    assert sorted(M.dims for M in ex.by_name.values()) == sorted(M.dims for M in U.by_name.values())
