import numpy as np
import pytest

from selfdual.codes import solve_twist_egrs, solve_twist_grs
from selfdual.constructions import (
    GENERIC_KINDS,
    Recipe,
    RecipeKind,
    SubspaceSpec,
    applicable,
    base_set,
    build,
    enumerate_recipes,
    enumerate_unsupported,
    lift_affine,
    lift_cosets,
    make_recipe,
    make_subspace,
    parse_kind,
    predicted_length,
    rmk34_parameters,
)
from selfdual.errors import (
    AlphaInSubspace,
    CosetCollision,
    NotASubfieldDegree,
    NotInSubfield,
    NotInSubgroup,
    RecipeNotApplicable,
    UnknownRecipe,
)
from selfdual.gf import field_for_order, quadratic_character


def _ints(x):
    return x.view(np.ndarray).tolist()


# ===== RECIPES =====
@pytest.mark.parametrize("name, kind", [
    ("Thm1a", RecipeKind.THM1A),
    ("thm1A", RecipeKind.THM1A),
    (" rmk34 ", RecipeKind.RMK34),
    ("Lemma34Generic", RecipeKind.LEMMA34_GENERIC),
    (RecipeKind.THM4, RecipeKind.THM4),
])
def test_parse_kind(name, kind):
    assert parse_kind(name) is kind


def test_parse_kind_rejects_unknown():
    with pytest.raises(UnknownRecipe):
        parse_kind("Thm9")


def test_make_recipe_fills_defaults(F13):
    r = make_recipe(F13, "Thm1a")
    assert (r.s, r.lift_dim, r.t, r.e1, r.e2) == (1, 0, None, None, None)
    assert r.q == 13
    assert r.label == "Thm1a(s=1,l=0)"


def test_make_recipe_drops_unused_parameters(F13):
    r = make_recipe(F13, "Thm4", s=2, lift_dim=1, t=5, e1=3)
    assert (r.s, r.lift_dim, r.t, r.e1, r.e2) == (None, None, None, 3, 4)


def test_make_recipe_rmk34_from_length(F13):
    r = make_recipe(F13, "Rmk34", n=4)
    assert (r.t, r.e1, r.e2) == (1, 2, 6)
    assert r.label == "Rmk34(t=1,e1=2,e2=6)"


def test_make_recipe_missing_parameters(F13):
    with pytest.raises(RecipeNotApplicable):
        make_recipe(F13, "Thm3odd")
    with pytest.raises(RecipeNotApplicable):
        make_recipe(F13, "Thm4")


def test_recipe_dict_round_trip(F169):
    for r in (make_recipe(F169, "Thm5even", s=1, lift_dim=1, t=4), make_recipe(F169, "Rmk34", n=8)):
        assert Recipe.from_dict(r.to_dict()) == r
    assert make_recipe(F169, "Thm1a", lift_dim=1).to_dict() == {"kind": "Thm1a", "p": 13, "m": 2, "s": 1, "l": 1}


# ===== RMK34 DECOMPOSITION =====
@pytest.mark.parametrize("q, n, expected", [
    (13, 2, (1, 1)),
    (13, 4, (1, 2)),
    (13, 6, (1, 3)),
    (17, 8, (4, 1)),
    (25, 8, (1, 4)),
    (25, 12, (2, 3)),
])
def test_rmk34_parameters(q, n, expected):
    t, e1 = rmk34_parameters(q, n)
    assert (t, e1) == expected
    assert 2 * t * e1 == n


@pytest.mark.parametrize("q, n", [(11, 2), (13, 12), (13, 5), (13, 8), (13, 0)])
def test_rmk34_parameters_rejects(q, n):
    with pytest.raises(RecipeNotApplicable):
        rmk34_parameters(q, n)


# ===== BASE SETS =====
def test_base_sets(F11, F13, F41):
    assert _ints(base_set(F13, make_recipe(F13, "Thm1a"))) == [0, 4, 8, 12]
    assert _ints(base_set(F41, make_recipe(F41, "Thm1b"))) == [0, 8, 16, 24, 32, 40]
    assert _ints(base_set(F11, make_recipe(F11, "Thm2"))) == [0, 5, 10]
    assert _ints(base_set(F13, make_recipe(F13, "Thm3even", t=4))) == [0, 1, 2, 3, 4]
    assert _ints(base_set(F13, make_recipe(F13, "Cor31"))) == [0, 1, 2, 3, 4]


def test_base_set_thm5(F13):
    assert _ints(base_set(F13, make_recipe(F13, "Thm5odd", t=3))) == [0, 1, 3, 9]
    assert sorted(_ints(base_set(F13, make_recipe(F13, "Thm5even", t=4)))) == [0, 1, 5, 8, 12]


def test_base_set_thm4_is_closed_under_inverse(F41):
    A = base_set(F41, make_recipe(F41, "Thm4", e1=5))
    assert len(A) == 4
    assert set(_ints(A)) == set(_ints(A ** -1))
    assert int(A[1]) == 40


def test_base_set_rmk34(F13):
    assert _ints(base_set(F13, make_recipe(F13, "Rmk34", n=4))) == [4, 12]
    assert _ints(base_set(F13, make_recipe(F13, "Rmk34", n=2))) == [1, 12]


# ===== LIFTS =====
def test_make_subspace_f9(F9):
    H = make_subspace(F9, 1, 1)
    assert sorted(_ints(H.elements)) == [0, 1, 2]
    assert int(H.alpha) == 3
    assert H.dim == 1


def test_make_subspace_trivial(F13):
    H = make_subspace(F13, 1, 0)
    assert _ints(H.elements) == [0]
    assert int(H.alpha) == 1
    assert H.dim == 0


def test_make_subspace_errors(F169):
    with pytest.raises(NotASubfieldDegree):
        make_subspace(F169, 3, 0)
    with pytest.raises(RecipeNotApplicable):
        make_subspace(F169, 1, 2)


def test_lift_affine_f9(F9):
    B = lift_affine(F9, [0, 1], make_subspace(F9, 1, 1))
    assert B.ints() == [0, 1, 2, 3, 4, 5]


def test_lift_affine_f169_has_full_size(F169):
    B = lift_affine(F169, [0, 4, 8, 12], make_subspace(F169, 1, 1))
    assert B.n == 52


def test_lift_affine_errors(F9):
    H = make_subspace(F9, 1, 1)
    with pytest.raises(NotInSubfield):
        lift_affine(F9, [3], H)
    with pytest.raises(CosetCollision):
        lift_affine(F9, [1, 1], H)
    bad = SubspaceSpec(field=F9, s=1, basis=F9.GF([1]), alpha=F9.GF(1), elements=F9.GF([0, 1, 2]))
    with pytest.raises(AlphaInSubspace):
        lift_affine(F9, [0], bad)


def test_lift_cosets_with_zero(F13):
    assert lift_cosets(F13, [1], 3, include_zero=True).ints() == [0, 1, 3, 9]


def test_lift_cosets_order(F13):
    # theta = 2, e1 = 2: 4 = theta^2 sits at coset index 1, 12 = theta^6 at 3
    assert lift_cosets(F13, [4, 12], 2).ints() == [2, 11, 8, 5]


def test_lift_cosets_errors(F13):
    with pytest.raises(NotInSubgroup):
        lift_cosets(F13, [1], 5)
    with pytest.raises(NotInSubgroup):
        lift_cosets(F13, [2], 3)
    with pytest.raises(CosetCollision):
        lift_cosets(F13, [1, 1], 3)


# ===== APPLICABILITY =====
@pytest.mark.parametrize("q, kind, params", [
    (13, "Thm1a", {}),
    (37, "Thm1a", {}),
    (41, "Thm1b", {}),
    (89, "Thm1b", {}),
    (11, "Thm2", {}),
    (17, "Thm2", {}),
    (73, "Cor31", {}),
    (41, "Thm4", {"e1": 5}),
    (13, "Thm5odd", {"t": 3}),
    (13, "Thm5even", {"t": 4}),
    (169, "Thm1a", {"lift_dim": 1}),
    (25, "Rmk34", {"n": 12}),
])
def test_applicable(q, kind, params):
    F = field_for_order(q)
    assert applicable(F, make_recipe(F, kind, **params))


@pytest.mark.parametrize("q, kind, params, fragment", [
    (17, "Thm1a", {}, "1 mod 12"),
    (13, "Thm2", {}, "1 or 3 mod 8"),
    (13, "Thm3even", {"t": 2}, "eta(N)"),
    (13, "Thm3odd", {"t": 2}, "parity"),
    (41, "Thm4", {"e1": 2}, "even"),
    (13, "Thm5even", {"t": 6}, "t and -1"),
    (13, "Thm5odd", {"t": 5}, "divide"),
    (13, "Thm1a", {"s": 2}, "divide"),
    (13, "Thm1a", {"lift_dim": 1}, "outside"),
])
def test_not_applicable_names_the_clause(q, kind, params, fragment):
    F = field_for_order(q)
    verdict = applicable(F, make_recipe(F, kind, **params))
    assert not verdict
    assert fragment in verdict.reason
    assert not verdict.unsupported


def test_recipe_for_another_field(F11, F13):
    verdict = applicable(F11, make_recipe(F13, "Thm1a"))
    assert not verdict and "F_13" in verdict.reason


def test_unsupported_extended_lift(F27):
    recipe = make_recipe(F27, "Thm2", lift_dim=1)
    verdict = applicable(F27, recipe)
    assert not verdict and verdict.unsupported
    with pytest.raises(RecipeNotApplicable) as info:
        build(F27, recipe)
    assert info.value.unsupported
    assert (recipe, 10) in enumerate_unsupported(F27, 30)


# ===== BUILD =====
def test_build_thm1a(F13):
    S, extended = build(F13, make_recipe(F13, "Thm1a"))
    assert S.ints() == [0, 4, 8, 12]
    assert not extended


def test_build_thm2(F11):
    S, extended = build(F11, make_recipe(F11, "Thm2"))
    assert S.ints() == [0, 5, 10]
    assert extended


def test_build_thm5even_is_extended(F13):
    recipe = make_recipe(F13, "Thm5even", t=4)
    S, extended = build(F13, recipe)
    assert S.n == 5 and extended
    assert predicted_length(F13, recipe) == 6


def test_build_refuses_when_not_applicable(F13):
    with pytest.raises(RecipeNotApplicable) as info:
        build(F13, make_recipe(F13, "Thm2"))
    assert not info.value.unsupported


def test_build_without_check_still_lifts(F13):
    S, extended = build(F13, make_recipe(F13, "Thm2"), check=False)
    assert S.ints() == [0, 6, 12]
    assert extended


# ===== ENUMERATION =====
def test_enumerate_recipes_f13(F13):
    found = [(r.kind.value, n) for r, n in enumerate_recipes(F13, 8)]
    assert found == [
        ("Thm5odd", 2), ("Rmk34", 2),
        ("Thm1a", 4), ("Thm5odd", 4), ("Rmk34", 4),
        ("Thm5even", 6), ("Rmk34", 6),
    ]


def test_enumerate_recipes_empty():
    assert enumerate_recipes(field_for_order(3), 2) == []


def test_enumerate_recipes_respects_bound(F41):
    found = enumerate_recipes(F41, 20)
    assert found
    assert all(2 <= n <= 20 for _, n in found)
    assert len({(r.kind, n) for r, n in found}) == len(found)
    assert not any(r.kind in GENERIC_KINDS for r, _ in found)


def test_enumerate_recipes_with_generic(F13):
    found = enumerate_recipes(F13, 8, include_generic=True)
    assert any(r.kind in GENERIC_KINDS for r, _ in found)


@pytest.mark.parametrize("q", [9, 13, 25, 27, 41, 49])
def test_enumerated_recipes_meet_the_twist_criterion(q):
    F = field_for_order(q)
    for recipe, n in enumerate_recipes(F, 24, include_generic=True):
        S, extended = build(F, recipe)
        assert S.n + extended == n
        V = solve_twist_egrs(S) if extended else solve_twist_grs(S)
        assert V is not None, recipe.label


# ===== CHARACTER IDENTITIES =====
@pytest.mark.parametrize("p", [13, 37, 61, 73, 97, 109])
def test_thm1a_delta_characters_are_constant(p):
    F = field_for_order(p)
    S, _ = build(F, make_recipe(F, "Thm1a"))
    chars = {quadratic_character(F, d) for d in S.deltas}
    assert len(chars) == 1
    assert chars == {quadratic_character(F, 2)}


@pytest.mark.parametrize("p", [11, 17, 19, 41, 43])
def test_thm2_minus_deltas_are_squares(p):
    F = field_for_order(p)
    S, _ = build(F, make_recipe(F, "Thm2"))
    assert all(quadratic_character(F, -d) == 1 for d in S.deltas)
