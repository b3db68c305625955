import galois
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from selfdual.errors import DuplicatePoint, DuplicateRoot, NotDisjoint, PointNotInUnion
from selfdual.gf import field_for_order, subfield_elements
from selfdual.polyring import delta_split, delta_table, derivative, evaluate, poly_from_roots, subspace_poly


def test_poly_from_roots(F7, F13):
    assert poly_from_roots(F7, [0, 1, 2]) == galois.Poly([1, 4, 2, 0], field=F7.GF)
    assert poly_from_roots(F13, [1, 3, 9]) == galois.Poly([1, 0, 0, 12], field=F13.GF)
    assert poly_from_roots(F13, []) == galois.Poly.One(field=F13.GF)


def test_poly_from_roots_rejects_repeats(F7):
    with pytest.raises(DuplicateRoot):
        poly_from_roots(F7, [1, 2, 1])


def test_poly_vanishes_exactly_on_its_roots(F13):
    roots = [0, 2, 5, 11]
    f = poly_from_roots(F13, roots)
    values = evaluate(f, F13.GF(np.arange(13))).view(np.ndarray)
    assert set(np.flatnonzero(values == 0).tolist()) == set(roots)


def test_subspace_poly_of_prime_subfield(F169):
    f = subspace_poly(F169, subfield_elements(F169, 1))
    assert f == galois.Poly.Degrees([13, 1], coeffs=[1, 12], field=F169.GF)


def test_derivative(F13):
    assert derivative(galois.Poly([1, 0, 0, 12], field=F13.GF)) == galois.Poly([3, 0, 0], field=F13.GF)
    assert derivative(galois.Poly([5], field=F13.GF)) == galois.Poly.Zero(field=F13.GF)
    assert derivative(galois.Poly.Degrees([13], field=F13.GF)) == galois.Poly.Zero(field=F13.GF)


def test_evaluate(F13):
    F3 = field_for_order(3)
    assert int(evaluate(galois.Poly([1, 0, 0, 12], field=F13.GF), F13.GF(3))) == 0
    assert int(evaluate(galois.Poly.One(field=F13.GF), F13.GF(7))) == 1
    assert int(evaluate(galois.Poly([1, 0, 1], field=F3.GF), F3.GF(2))) == 2


# ===== DELTA =====
def test_delta_table_examples(F7, F13):
    assert delta_table(F7, [0, 1, 2]).deltas.tolist() == [2, 6, 2]
    assert delta_table(F7, [4]).deltas.tolist() == [1]
    assert delta_table(F13, [0, 4, 8, 12]).deltas.tolist() == [6, 11, 2, 7]


def test_delta_table_lookup(F13):
    table = delta_table(F13, [0, 4, 8, 12])
    assert len(table) == 4
    assert int(table.lookup(8)) == 2
    with pytest.raises(PointNotInUnion):
        table.lookup(5)


def test_delta_table_edge_cases(F7):
    assert len(delta_table(F7, [])) == 0
    with pytest.raises(DuplicatePoint):
        delta_table(F7, [3, 3])


def test_delta_split_examples(F7):
    assert int(delta_split(F7, [0, 1], [2], 0)) == 2
    assert int(delta_split(F7, [0, 1], [2], 2)) == 2
    assert int(delta_split(F7, [0, 1], [], 0)) == int(delta_table(F7, [0, 1]).lookup(0))


def test_delta_split_errors(F7):
    with pytest.raises(NotDisjoint):
        delta_split(F7, [0, 1], [1, 2], 0)
    with pytest.raises(PointNotInUnion):
        delta_split(F7, [0, 1], [2], 5)


DELTA_ORDERS = [7, 9, 11, 13, 25]


@st.composite
def point_sets(draw):
    q = draw(st.sampled_from(DELTA_ORDERS))
    points = draw(st.lists(st.integers(0, q - 1), min_size=2, max_size=min(12, q), unique=True))
    return q, points


@settings(max_examples=150, deadline=None)
@given(point_sets())
def test_delta_products_match_derivative(case):
    q, points = case
    F = field_for_order(q)
    S = F.GF(points)
    via_derivative = evaluate(derivative(poly_from_roots(F, S)), S)
    assert delta_table(F, S).deltas.tolist() == via_derivative.tolist()


@settings(max_examples=150, deadline=None)
@given(point_sets(), st.data())
def test_delta_split_matches_union(case, data):
    q, points = case
    F = field_for_order(q)
    mask = data.draw(st.lists(st.booleans(), min_size=len(points), max_size=len(points)))
    S1 = [a for a, left in zip(points, mask) if left]
    S2 = [a for a, left in zip(points, mask) if not left]
    table = delta_table(F, points)
    for b in points:
        assert delta_split(F, S1, S2, b) == table.lookup(b)
