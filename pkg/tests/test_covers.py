import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from unitgroups.covers import (
    FormProductScenario,
    analyze_form_product,
    cyclic_boundary_fixed_units,
    elliptic_triangle_report,
    fermat_presentation,
    fermat_unit_rank,
    form_product_matrix,
    genus_rh,
    hyperplane_matrix,
    hyperplane_scenario,
    irreducible_branch_table,
    localization_units_table,
    ramified_boundary_table,
)
from unitgroups.divisor import unit_lattice
from unitgroups.lattice import FgAbelianGroup, IntMatrix, snf

G = FgAbelianGroup


def test_hyperplane_matrix_small():
    assert hyperplane_matrix(2) == IntMatrix.from_rows([[1, -1], [-1, 1]])
    assert hyperplane_matrix(3) == IntMatrix.from_rows([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    for n in range(2, 8):
        assert all(sum(r) == 0 for r in hyperplane_matrix(n).to_rows())
    with pytest.raises(ValueError):
        hyperplane_matrix(1)


def test_form_product_matrix_examples():
    assert form_product_matrix(FormProductScenario((2, 3))) == IntMatrix.from_rows([[3, -3], [-2, 2]])
    assert form_product_matrix(FormProductScenario((2, 3, 5))) == IntMatrix.from_rows(
        [[8, -3, -5], [-2, 7, -5], [-2, -3, 5]]
    )
    for r in range(2, 6):
        assert form_product_matrix(FormProductScenario((1,) * r)) == hyperplane_matrix(r)


def test_form_product_validation():
    with pytest.raises(ValueError):
        FormProductScenario((3,))
    with pytest.raises(ValueError):
        FormProductScenario((0, 2))
    with pytest.raises(ValueError):
        FormProductScenario((1, 2), m=1)


def test_analyze_examples():
    rep = analyze_form_product(FormProductScenario((2, 3)))
    assert rep["factors"] == (1, 0) and rep["unit_rank"] == 1 and rep["candidate_index"] == 1
    assert rep["basis"] == ["f1"]
    rep = analyze_form_product(FormProductScenario((2, 3, 5)))
    assert rep["factors"] == (1, 10, 0) and rep["H_matches_expected"]
    rep = analyze_form_product(FormProductScenario((2, 2)))
    assert rep["factors"] == (2, 0) and rep["inapplicable"] is True and "unit_rank" not in rep


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(1, 9), min_size=2, max_size=5))
def test_form_product_invariants(degs):
    S = FormProductScenario(tuple(degs))
    Mx = form_product_matrix(S)
    assert all(sum(r) == 0 for r in Mx.to_rows())
    assert Mx.rank() == S.r - 1
    if math.gcd(*degs) == 1:
        assert snf(Mx).factors == (1,) + (S.n,) * (S.r - 2) + (0,)
        rep = analyze_form_product(S)
        assert rep["candidate_index"] == 1 and rep["unit_rank"] == S.r - 1


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 12))
def test_hyperplane_factors_property(n):
    assert snf(hyperplane_matrix(n)).factors == (1,) + (n,) * (n - 2) + (0,)


def test_hyperplane_scenario_index_bound():
    for n in (2, 3, 4, 5):
        rep = hyperplane_scenario(n)
        assert rep["finite_index"]
        assert rep["candidate_index"] == n ** (n - 2) == rep["index_bound"]


def test_elliptic_triangle_report():
    rep = elliptic_triangle_report()
    assert G.from_json(rep["H"]) == G(1, (3,)) and rep["candidate_index"] == 1


def test_genus():
    assert genus_rh(2, 4) == 1
    assert genus_rh(3, 3) == 1
    assert genus_rh(2, 6) == 2
    assert genus_rh(5, 10) == 16
    with pytest.raises(ValueError):
        genus_rh(2, 3)
    with pytest.raises(ValueError):
        genus_rh(2, 2)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_fermat_rank(n):
    assert fermat_unit_rank(n) == 3 * n - 1 == unit_lattice(fermat_presentation(n))[1]


def test_localization_table():
    t = localization_units_table(2, 2)
    assert t[0] == G(2) and t[1] == G() and t[2] == G(0, (2, 2))
    t = localization_units_table(5, 1)
    assert t[2] == G(0, (5,))
    assert all(g.is_trivial for i, g in localization_units_table(1, 3).items() if i > 0)


def test_ramified_boundary():
    rep = ramified_boundary_table(3, 2)
    assert rep["unit_rank"] == 2 and rep["H1_mu"] == G(0, (2, 2))
    rep = ramified_boundary_table(1, 4)
    assert rep["unit_rank"] == 0 and rep["H1_mu"].is_trivial
    assert ramified_boundary_table(4, 6)["H1_mu"] == G(0, (6, 6, 6))


@pytest.mark.parametrize("n", [2, 3, 5])
def test_irreducible_branch(n):
    rep = irreducible_branch_table(n)
    assert rep["T"][1] == rep["T"][3] == G(0, (n,))
    assert rep["T"][2].is_trivial and rep["T"][4].is_trivial
    assert all(rep["S"][i].is_trivial for i in range(1, 7))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_cyclic_boundary_fixed_part_trivial(p):
    assert cyclic_boundary_fixed_units(p).is_trivial
