import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unitgroups.cohomology import (
    CyclicGModule,
    ModuleError,
    cohomology,
    cohomology_table,
    difference_matrix,
    fixed_submodule,
    herbrand_check,
    norm_matrix,
    restrict_action,
    tate_h0,
    tate_h1,
)
from unitgroups.lattice import FgAbelianGroup, IntMatrix, Presentation, in_lattice
from unitgroups.randomized import _block_diag, _companion, random_finite_module, random_unimodular

G = FgAbelianGroup


def sign_module():
    return CyclicGModule.free(2, IntMatrix.from_rows([[-1]]))


def involution_rank3():
    return CyclicGModule.free(2, IntMatrix.from_columns([[-1, 0, 0], [-1, 1, 0], [-1, 0, 1]], rows=3))


def test_norm_and_difference_matrices():
    triv = CyclicGModule.trivial_action(4, Presentation.free(2))
    assert norm_matrix(triv) == IntMatrix.identity(2).scale(4)
    assert difference_matrix(triv).is_zero()
    assert norm_matrix(sign_module()) == IntMatrix.from_rows([[0]])
    assert difference_matrix(sign_module()) == IntMatrix.from_rows([[-2]])
    assert norm_matrix(CyclicGModule.trivial_action(1, Presentation.free(2))) == IntMatrix.identity(2)


def test_sign_module_table():
    t = cohomology_table(sign_module(), 4)
    assert [t[i] for i in range(5)] == [G(), G(0, (2,)), G(), G(0, (2,)), G()]


def test_involution_rank3_table():
    M = involution_rank3()
    t = cohomology_table(M, 4)
    assert t[0] == G(2)
    assert t[1] == G() and t[3] == G()
    assert t[2] == G(0, (2,)) and t[4] == G(0, (2,))
    assert fixed_submodule(M) == G(2)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("nu", [1, 2, 3])
def test_trivial_action_table(n, nu):
    t = cohomology_table(CyclicGModule.trivial_action(n, Presentation.free(nu)), 4)
    assert t[0] == G(nu)
    assert t[1] == G() and t[3] == G()
    assert t[2] == G(0, (n,) * nu)


def test_trivial_group_module():
    M = CyclicGModule.trivial_action(3, Presentation(1, IntMatrix.from_rows([[1]])))
    assert all(g.is_trivial for g in cohomology_table(M, 4).values())
    assert herbrand_check(M)


def test_swap_fixed_part_is_diagonal():
    M = CyclicGModule.free(2, IntMatrix.from_rows([[0, 1], [1, 0]]))
    assert fixed_submodule(M) == G(1)


def test_herbrand_examples():
    z5 = CyclicGModule.trivial_action(3, Presentation.cyclic(5))
    assert herbrand_check(z5) and tate_h0(z5).is_trivial and tate_h1(z5).is_trivial
    z4 = CyclicGModule(2, Presentation.cyclic(4), IntMatrix.from_rows([[-1]]))
    assert herbrand_check(z4)


def _z4_sign_brute():
    # Z/4 with x -> -x: fixed points {0, 2}; N = 1 + σ = 0; D = σ - 1 = -2·
    fixed = [x for x in range(4) if (-x) % 4 == x]
    im_n = {0}
    ker_n = list(range(4))
    im_d = {(-2 * x) % 4 for x in range(4)}
    return len(fixed) // len(im_n), len(ker_n) // len(im_d)


def test_herbrand_z4_sign_by_enumeration():
    z4 = CyclicGModule(2, Presentation.cyclic(4), IntMatrix.from_rows([[-1]]))
    h0, h1 = _z4_sign_brute()
    assert tate_h0(z4).order() == h0 == 2
    assert tate_h1(z4).order() == h1 == 2


def test_herbrand_rejects_infinite_module():
    with pytest.raises(ValueError):
        herbrand_check(sign_module())


def test_module_validation():
    with pytest.raises(ModuleError):
        CyclicGModule.free(2, IntMatrix.from_rows([[2]]))
    with pytest.raises(ModuleError):
        # swap does not preserve the relation lattice generated by (2, 0)
        CyclicGModule(2, Presentation(2, IntMatrix.from_columns([[2, 0]], rows=2)),
                      IntMatrix.from_rows([[0, 1], [1, 0]]))
    with pytest.raises(ModuleError):
        CyclicGModule.free(3, IntMatrix.identity(2).scale(-1))


def test_module_json_roundtrip():
    M = involution_rank3()
    assert CyclicGModule.from_json(M.to_json()) == M


def test_negative_degree_rejected():
    with pytest.raises(ValueError):
        cohomology(sign_module(), -1)


def test_restrict_action_to_sum_zero():
    shift = IntMatrix.from_rows([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    basis = IntMatrix.from_columns([[1, -1, 0], [0, 1, -1]], rows=3)
    A = restrict_action(shift, basis)
    assert A ** 3 == IntMatrix.identity(2)
    assert fixed_submodule(CyclicGModule.free(3, A)).is_trivial
    with pytest.raises(ModuleError):
        restrict_action(shift, IntMatrix.from_columns([[1, 0, 0]], rows=3))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_random_module_properties(seed):
    M = random_finite_module(random.Random(seed))
    n = M.order_n
    rel = M.relation_basis
    for c in (difference_matrix(M) @ norm_matrix(M)).columns() + (norm_matrix(M) @ difference_matrix(M)).columns():
        assert in_lattice(rel, c)
    assert herbrand_check(M)
    for i in range(1, 5):
        H = cohomology(M, i)
        assert H == cohomology(M, i + 2)
        assert n % H.exponent() == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 3), st.integers(0, 10**6))
def test_prime_order_free_module_without_fixed_part(p, t, seed):
    # a sum of t copies of Z[zeta_p], disguised by a change of basis
    rng = random.Random(seed)
    A = IntMatrix.from_rows(_block_diag([_companion(p)] * t))
    U, Uinv = random_unimodular(rng, A.rows)
    M = CyclicGModule.free(p, U @ A @ Uinv)
    assert fixed_submodule(M).is_trivial
    assert tate_h1(M) == G(0, (p,) * t)
    assert tate_h0(M).is_trivial
