import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import int_matrices, square_matrices
from unitgroups.lattice import (
    INFINITE,
    FgAbelianGroup,
    IntMatrix,
    Presentation,
    cokernel,
    hnf,
    in_lattice,
    kernel_basis,
    lattice_basis,
    lattice_index,
    minors_gcd_factors,
    presentation_to_group,
    snf,
    subquotient,
    tensor_mod,
    tor1_mod,
)
from unitgroups.covers import hyperplane_matrix


def M(rows):
    return IntMatrix.from_rows(rows)


# -- IntMatrix ---------------------------------------------------------------


def test_matrix_shape_and_json_roundtrip():
    A = M([[1, -2, 3], [4, 5, -6]])
    assert A.shape == (2, 3)
    assert IntMatrix.from_json(A.to_json()) == A
    assert A.T.shape == (3, 2)
    assert A.apply([1, 1, 1]) == (2, 3)


def test_matrix_rejects_ragged_rows():
    with pytest.raises(ValueError):
        M([[1, 2], [3]])


def test_big_integers_stay_exact():
    big = 10**40 + 7
    A = M([[big, 0], [0, big]])
    assert A.det() == big * big
    assert snf(A).factors == (big, big)


def test_det_matches_cofactor_formula():
    A = M([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    assert A.det() == 4


# -- HNF -----------------------------------------------------------------------


def test_hnf_identity():
    H, U = hnf(IntMatrix.identity(3))
    assert H == IntMatrix.identity(3) and U == IntMatrix.identity(3)


def test_hnf_zero_matrix():
    H, U = hnf(IntMatrix.zeros(2, 3))
    assert H.is_zero() and U == IntMatrix.identity(2)


def test_hnf_small_example():
    A = M([[2, 4], [0, 6]])
    H, U = hnf(A)
    assert U @ A == H
    assert abs(U.det()) == 1
    assert H == M([[2, 4], [0, 6]])


def _is_hnf(H):
    rows = H.to_rows()
    last_pivot = -1
    zero_seen = False
    for i, r in enumerate(rows):
        nz = [j for j, x in enumerate(r) if x]
        if not nz:
            zero_seen = True
            continue
        if zero_seen:
            return False
        j = nz[0]
        if j <= last_pivot or r[j] <= 0:
            return False
        if any(not (0 <= rows[k][j] < r[j]) for k in range(i)):
            return False
        last_pivot = j
    return True


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_hnf_properties(A):
    H, U = hnf(A)
    assert U @ A == H
    assert abs(U.det()) == 1
    assert _is_hnf(H)


# -- SNF -----------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_snf_hyperplane_matrix(n):
    assert snf(hyperplane_matrix(n)).factors == (1,) + (n,) * (n - 2) + (0,)


def test_snf_identity():
    assert snf(IntMatrix.identity(4)).factors == (1, 1, 1, 1)


def test_snf_textbook_example():
    assert snf(M([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])).factors == (2, 6, 12)


def test_minors_examples():
    assert minors_gcd_factors(M([[2, 0], [0, 4]])) == (2, 4)
    assert minors_gcd_factors(hyperplane_matrix(4)) == (1, 4, 4, 0)
    assert minors_gcd_factors(M([[0]])) == (0,)


def test_minors_guard():
    with pytest.raises(ValueError):
        minors_gcd_factors(IntMatrix.identity(9))


@settings(max_examples=200, deadline=None)
@given(int_matrices(max_rows=5, max_cols=5, lo=-20, hi=20))
def test_snf_matches_minors_oracle(A):
    d = snf(A)
    d.verify(A)
    assert d.factors == minors_gcd_factors(A)


# -- kernels, cokernels, indices ------------------------------------------------


def test_kernel_examples():
    assert kernel_basis(IntMatrix.identity(3)).cols == 0
    K = kernel_basis(hyperplane_matrix(3))
    assert K.columns() == [(1, 1, 1)]
    K = kernel_basis(M([[1, 1]]))
    assert [tuple(abs(x) for x in c) for c in K.columns()] == [(1, 1)]
    assert sum(K.columns()[0]) == 0


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_kernel_rank_nullity_and_saturation(A):
    K = kernel_basis(A)
    assert A.rank() + K.cols == A.cols
    assert (A @ K).is_zero() if K.cols else True
    if K.cols:
        # saturated: the kernel lattice has no torsion in its cokernel
        assert cokernel(K).torsion == ()


def test_cokernel_examples():
    assert cokernel(hyperplane_matrix(4)) == FgAbelianGroup(1, (4, 4))
    assert cokernel(IntMatrix.identity(3)).is_trivial
    assert cokernel(IntMatrix.diagonal([2, 3])) == FgAbelianGroup(0, (6,))


@settings(max_examples=100, deadline=None)
@given(square_matrices())
def test_cokernel_order_is_abs_det(A):
    d = A.det()
    G = cokernel(A)
    if d == 0:
        assert G.free_rank > 0
    else:
        assert G.is_finite and G.order() == abs(d)


def test_lattice_index_examples():
    I2 = IntMatrix.identity(2)
    assert lattice_index(I2.scale(2), I2) == 4
    assert lattice_index(I2, I2) == 1
    assert lattice_index(M([[1], [0]]), I2) == INFINITE


def test_lattice_index_rejects_non_sublattice():
    with pytest.raises(ValueError):
        lattice_index(M([[1], [0]]), IntMatrix.identity(2).scale(2))


def test_presentation_examples():
    assert presentation_to_group(Presentation(1, M([[7]]))) == FgAbelianGroup(0, (7,))
    assert presentation_to_group(Presentation.free(3)) == FgAbelianGroup(3)
    assert presentation_to_group(Presentation(3, hyperplane_matrix(3))) == FgAbelianGroup(1, (3,))
    P = Presentation.cyclic(2, 3, 0)
    assert presentation_to_group(P) == FgAbelianGroup(1, (6,))
    assert Presentation.from_json(P.to_json()) == P


@settings(max_examples=100, deadline=None)
@given(int_matrices(max_rows=4, max_cols=4), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_presentation_invariant_under_added_combination(R, coeffs):
    extra = [sum(c * x for c, x in zip(coeffs, row)) for row in R.to_rows()]
    R2 = R.hstack(IntMatrix.from_columns([extra], rows=R.rows))
    assert presentation_to_group(Presentation(R.rows, R)) == presentation_to_group(Presentation(R.rows, R2))


def test_subquotient():
    assert subquotient([[1, 0], [0, 1]], [[2, 0], [0, 3]], 2) == FgAbelianGroup(0, (6,))
    with pytest.raises(ValueError):
        subquotient([[2, 0]], [[1, 0]], 2)


def test_lattice_membership():
    basis = lattice_basis([[2, 0], [1, 3]], 2)
    assert in_lattice(basis, [3, 3])
    assert not in_lattice(basis, [1, 0])


# -- FgAbelianGroup --------------------------------------------------------------


def test_group_canonical_form():
    assert FgAbelianGroup.from_orders(0, [2, 3]) == FgAbelianGroup(0, (6,))
    assert FgAbelianGroup.from_orders(1, [4, 2, 1, 0]) == FgAbelianGroup(2, (2, 4))
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (3, 2))
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (1,))
    G = FgAbelianGroup(1, (2, 4))
    assert FgAbelianGroup.from_json(G.to_json()) == G
    assert str(G) == "Z + Z/2 + Z/4"
    assert G.order() == INFINITE and FgAbelianGroup(0, (2, 4)).order() == 8


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 30), max_size=5), st.integers(0, 3))
def test_group_order_from_orders(orders, free):
    G = FgAbelianGroup.from_orders(free, orders)
    zeros = sum(1 for d in orders if d == 0)
    assert G.free_rank == free + zeros
    if G.is_finite:
        assert G.order() == math.prod(d for d in orders if d > 0)


def test_tensor_and_tor():
    n = 5
    H = FgAbelianGroup(1, (n, n))
    assert tensor_mod(H, n) == FgAbelianGroup(0, (n, n, n))
    assert tensor_mod(FgAbelianGroup.trivial(), 3).is_trivial
    assert tensor_mod(FgAbelianGroup(0, (4,)), 2) == FgAbelianGroup(0, (2,))
    assert tor1_mod(H, n) == FgAbelianGroup(0, (n, n))
    assert tor1_mod(FgAbelianGroup(3), 7).is_trivial
    assert tor1_mod(FgAbelianGroup(0, (6,)), 4) == FgAbelianGroup(0, (2,))


def _cyclic_tensor_brute(a, b):
    # Z/a ⊗ Z/b has order gcd(a, b): count x in Z/a with b·x = 0 after quotient
    return math.gcd(a, b)


@pytest.mark.parametrize("a,b", [(4, 2), (6, 4), (9, 6), (7, 5)])
def test_tensor_cyclic_orders(a, b):
    assert tensor_mod(FgAbelianGroup.from_orders(0, [a]), b).order() == _cyclic_tensor_brute(a, b)
