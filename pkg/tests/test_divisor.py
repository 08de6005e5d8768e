import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import int_matrices
from unitgroups.divisor import (
    CandidateError,
    CandidateUnits,
    DichotomyError,
    NagataPresentation,
    UnitDichotomy,
    boundary_subgroup,
    candidate_index,
    class_cokernel,
    classify_split_cover,
    nagata_report,
    snake_cokernel_bound,
    unit_lattice,
)
from unitgroups.lattice import INFINITE, FgAbelianGroup, IntMatrix, Presentation
from unitgroups.covers import elliptic_triangle_presentation

G = FgAbelianGroup


def degree_map(*degs):
    return NagataPresentation.into_free(IntMatrix.from_rows([list(degs)]))


@pytest.mark.parametrize("d", [1, 2, 5])
def test_single_hypersurface(d):
    P = degree_map(d)
    assert unit_lattice(P)[1] == 0
    assert class_cokernel(P) == (G() if d == 1 else G(0, (d,)))


@pytest.mark.parametrize("r", [1, 2, 3, 5])
def test_hyperplane_degree_map_rank(r):
    assert unit_lattice(degree_map(*[1] * r))[1] == r - 1


def test_zero_map():
    P = NagataPresentation.into_free(IntMatrix.zeros(1, 3))
    assert unit_lattice(P)[1] == 3
    assert class_cokernel(P) == G(1)


def test_identity_map():
    P = NagataPresentation.into_free(IntMatrix.identity(3))
    assert boundary_subgroup(P) == G(3)
    assert class_cokernel(P).is_trivial


def test_surjective_map_kills_class_group():
    assert class_cokernel(degree_map(2, 3)).is_trivial


def test_presentation_shape_checks():
    with pytest.raises(ValueError):
        NagataPresentation(2, Presentation.free(1), IntMatrix.from_rows([[1, 1, 1]]))
    with pytest.raises(ValueError):
        NagataPresentation(3, Presentation.free(2), IntMatrix.from_rows([[1, 1, 1]]))


def test_presentation_json_roundtrip():
    P = elliptic_triangle_presentation()
    assert NagataPresentation.from_json(P.to_json()) == P


def test_elliptic_triangle():
    P = elliptic_triangle_presentation()
    assert boundary_subgroup(P) == G(1, (3,))
    C = CandidateUnits(IntMatrix.from_columns([[2, -1, -1], [-1, 2, -1]], rows=3))
    assert candidate_index(C, P) == 1


def test_single_candidate_in_rank_two_kernel_is_infinite():
    P = degree_map(1, 1, 1)
    C = CandidateUnits(IntMatrix.from_columns([[1, -1, 0]], rows=3))
    assert candidate_index(C, P) == INFINITE


def test_candidate_outside_kernel_reports_column():
    P = degree_map(1, 1, 1)
    C = CandidateUnits(IntMatrix.from_columns([[1, -1, 0], [1, 0, 0]], rows=3), ("good", "bad"))
    with pytest.raises(CandidateError, match="'bad'.*column 1.*\\[1\\]"):
        candidate_index(C, P)


def test_candidate_torsion_residue_accepted():
    # chi of (1, 1, -2) is (0, 3), zero only because of the order-3 class
    P = elliptic_triangle_presentation()
    C = CandidateUnits(IntMatrix.from_columns([[1, 1, -2], [6, -3, -3]], rows=3))
    # coordinates (1, 1) and (3, 0) in the kernel basis (2,-1,-1), (-1,2,-1)
    assert candidate_index(C, P) == 3


def test_snake_bound_hyperplanes():
    P = degree_map(1, 1, 1, 1)
    M = IntMatrix.from_rows([[3, -1, -1], [-1, 3, -1], [-1, -1, 3], [-1, -1, -1]])
    C = CandidateUnits(M)
    assert candidate_index(C, P) == 16
    assert snake_cokernel_bound(C, P) == 16


def test_dichotomy():
    assert classify_split_cover(3, G(3)) is UnitDichotomy.UNITS_TRIVIAL
    assert classify_split_cover(5, G(1, (5,))) is UnitDichotomy.RANK_P_MINUS_1
    with pytest.raises(DichotomyError):
        classify_split_cover(5, G(2))
    with pytest.raises(ValueError):
        classify_split_cover(4, G(4))


def test_report_fields():
    rep = nagata_report(degree_map(1, 1, 1), CandidateUnits(IntMatrix.from_columns([[1, -1, 0]], rows=3)))
    assert rep["unit_rank"] == 2 and rep["candidate_index"] == "infinite"
    assert rep["candidates_are_basis"] is False


@settings(max_examples=100, deadline=None)
@given(int_matrices(max_rows=3, max_cols=5, lo=-5, hi=5))
def test_exactness_rank_bookkeeping(chi):
    P = NagataPresentation.into_free(chi)
    basis, rank = unit_lattice(P)
    assert rank + boundary_subgroup(P).free_rank == P.r
    if rank:
        assert (chi @ basis).is_zero()


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=5))
def test_rank_drops_with_nonzero_degree(row):
    P = NagataPresentation.into_free(IntMatrix.from_rows([row]))
    if any(row):
        assert unit_lattice(P)[1] <= P.r - 1


@settings(max_examples=60, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3))
def test_index_invariant_under_unimodular_recombination(a, b):
    P = degree_map(1, 1, 1)
    C = IntMatrix.from_columns([[2, -1, -1], [-1, 2, -1]], rows=3)
    U = IntMatrix.from_rows([[1, a], [0, 1]]) @ IntMatrix.from_rows([[1, 0], [b, 1]])
    assert candidate_index(CandidateUnits(C), P) == candidate_index(CandidateUnits(C @ U), P) == 3
