import json

import pytest

from conftest import load, silting
from siltlab.corr import (
    IncompleteError,
    beta_map,
    correspondence_row,
    correspondence_table,
    ext_injectives,
    has_enough_injectives,
    iota_map,
    is_cotorsion_pair,
    is_extension_closed,
    is_resolving,
    is_thick,
    phi,
    psi,
    theta_map,
    thick_dot,
    thick_subcategories,
    verify_main_diagram,
    xi,
)


@pytest.fixture(scope="module")
def a3_thick():
    return thick_subcategories(load("a3")[2])


def test_a3_has_fourteen_thick_subcategories_with_enough_injectives(a3, a3_thick):
    _, _, K = a3
    assert len(a3_thick) == 14
    assert all(is_thick(T, K) and has_enough_injectives(T, K) for T in a3_thick)


def test_thick_subcategory_sizes(a3_thick):
    # 0; three of rank one; ranks two; everything
    sizes = sorted(len(T) for T in a3_thick)
    assert sizes[0] == 0 and sizes[-1] == 9
    assert sizes.count(1) == 3 and sizes.count(2) == 3


def test_ext_injectives_of_whole_category_are_shifts(a3):
    _, _, K = a3
    assert ext_injectives(K.names, K) == set(K.shifts())


@pytest.mark.parametrize("name", ["one_vertex", "square", "a3"])
def test_xi_psi_round_trip(name):
    _, _, K = load(name)
    for U in silting(name):
        pair = xi(U, K)
        assert is_cotorsion_pair(*pair, K)
        assert psi(pair, K) == U


@pytest.mark.parametrize("name", ["one_vertex", "square", "a3"])
def test_phi_theta_round_trip(name):
    _, _, K = load(name)
    for U in silting(name):
        pair = xi(U, K)
        assert theta_map(phi(pair, K), K) == pair


def test_cotorsion_parts_are_resolving(a3):
    _, _, K = a3
    for U in silting("a3"):
        X, Y = xi(U, K)
        assert is_resolving(X, K)
        assert is_extension_closed(Y, K)


def test_beta_and_iota_on_extremes(a3):
    _, _, K = a3
    everything = frozenset(K.names)
    assert beta_map(everything, K) == everything
    assert iota_map(everything, K) == everything
    assert beta_map({"P1", "P2", "P3"}, K) == frozenset()


def test_correspondence_row_json(a3):
    _, _, K = a3
    row = correspondence_row(("P1[1]", "pres(S2)", "pres(I2)"), K).to_json(K)
    assert row["torsion"] == ["I3", "S2", "I2"]
    assert row["thick"] == ["P1", "P1[1]"]
    assert row["u_rho"] == ["P1[1]"]
    assert json.loads(json.dumps(row)) == row


def test_table_and_diagram_on_square(square):
    _, _, K = square
    rows = correspondence_table(K)
    assert len(rows) == 6
    assert all(c.ok for c in verify_main_diagram(K))


def test_truncated_universe_refuses(kronecker):
    _, _, K = kronecker
    with pytest.raises(IncompleteError):
        correspondence_table(K, silting=[])
    with pytest.raises(IncompleteError):
        thick_subcategories(K)


def test_thick_dot(a3, a3_thick):
    _, _, K = a3
    dot = thick_dot(a3_thick, K)
    assert dot.startswith("digraph thick {")
    assert dot.count("->") >= 13
