"""Concrete families of affine varieties and their unit lattices.

Each constructor builds the boundary-divisor data of a family (hyperplane
arrangements, products of forms, Fermat curves, elliptic triangles) and
hands it to the divisor and cohomology engines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cohomology import CyclicGModule, cohomology_table, fixed_submodule, restrict_action
from .divisor import (
    CandidateUnits,
    NagataPresentation,
    boundary_subgroup,
    candidate_index,
    class_cokernel,
    snake_cokernel_bound,
    unit_lattice,
)
from .lattice import INFINITE, FgAbelianGroup, IntMatrix, Presentation, gcd_all, snf, tensor_mod


def hyperplane_matrix(n: int) -> IntMatrix:
    """n×n matrix with n-1 on the diagonal and -1 elsewhere.

    Column i is the divisor of f_i/x_0 for n lines in general position
    meeting the line at infinity in L_1, ..., L_n.
    """
    if n < 2:
        raise ValueError(f"need at least two hyperplanes, got {n}")
    return IntMatrix.from_rows([[n - 1 if i == j else -1 for j in range(n)] for i in range(n)])


@dataclass(frozen=True)
class FormProductScenario:
    """The hypersurface f_1···f_r = 1 for forms of the given degrees in m variables."""

    degrees: tuple
    m: int = 2

    def __post_init__(self):
        degs = tuple(int(d) for d in self.degrees)
        if len(degs) < 2:
            raise ValueError("need at least two forms")
        if any(d < 1 for d in degs):
            raise ValueError(f"degrees must be positive, got {degs}")
        if self.m < 2:
            raise ValueError("ambient dimension must be at least 2")
        object.__setattr__(self, "degrees", degs)

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def n(self) -> int:
        return sum(self.degrees)


def form_product_matrix(S: FormProductScenario) -> IntMatrix:
    """Entry (i, j) = n·[i = j] - d_j.  Columns are the candidate divisors Div(f_j / x_0^{d_j})."""
    n, d = S.n, S.degrees
    return IntMatrix.from_rows([[(n if i == j else 0) - d[j] for j in range(S.r)] for i in range(S.r)])


def form_product_presentation(S: FormProductScenario) -> NagataPresentation:
    """Boundary data with H modelled as the cokernel of the candidate matrix.

    The candidates give a surjection coker(beta) -> H.  When the degrees are
    coprime both groups are Z ⊕ (Z/n)^(r-2), and a surjection between
    isomorphic finitely generated abelian groups is injective.
    """
    M = form_product_matrix(S)
    return NagataPresentation(
        S.r,
        Presentation(S.r, M),
        IntMatrix.identity(S.r),
        "H is presented as Z^r modulo the candidate divisors; coker(beta) -> H is an onto map "
        "between isomorphic finitely generated abelian groups, hence an isomorphism",
    )


def analyze_form_product(S: FormProductScenario) -> dict:
    M = form_product_matrix(S)
    factors = snf(M).factors
    g = gcd_all(S.degrees)
    report = {
        "degrees": list(S.degrees),
        "n": S.n,
        "r": S.r,
        "m": S.m,
        "factors": factors,
        "gcd": g,
        "applicable": g == 1,
    }
    if g != 1:
        report["inapplicable"] = True
        return report
    P = form_product_presentation(S)
    labels = tuple(f"f{i + 1}" for i in range(S.r - 1))
    C = CandidateUnits(M.select_columns(range(S.r - 1)), labels)
    H = boundary_subgroup(P)
    expected_H = FgAbelianGroup.from_orders(1, [S.n] * (S.r - 2))
    _, rank = unit_lattice(P)
    idx = candidate_index(C, P)
    report.update(
        {
            "inapplicable": False,
            "H": H.to_json(),
            "H_matches_expected": H == expected_H,
            "unit_rank": rank,
            "candidate_index": idx,
            "basis": list(labels),
            "justification": P.justification,
        }
    )
    return report


def hyperplane_scenario(n: int, target: NagataPresentation | None = None) -> dict:
    """n lines in general position, f_1···f_n = 1.

    Without more information the boundary points map to Z by degree.  That
    target only sees H modulo torsion, so the candidate index is the
    coarse bound n^(n-2); a finer class-group target can shrink it.
    """
    M = hyperplane_matrix(n)
    if target is None:
        target = NagataPresentation.into_free(
            IntMatrix.from_rows([[1] * n]), "degree map only; torsion of H is not modelled"
        )
    labels = tuple(f"f{i + 1}" for i in range(n - 1))
    C = CandidateUnits(M.select_columns(range(n - 1)), labels)
    idx = candidate_index(C, target)
    _, rank = unit_lattice(target)
    return {
        "n": n,
        "factors": snf(M).factors,
        "unit_rank": rank,
        "candidate_index": "infinite" if idx == INFINITE else idx,
        "index_bound": snake_cokernel_bound(C, target),
        "finite_index": idx != INFINITE,
        "justification": target.justification,
    }


def elliptic_triangle_presentation() -> NagataPresentation:
    """Three lines f_1 f_2 f_3 + 1 = 0 closing up to a smooth cubic.

    Generators of the target: L_3 (free) and E = L_1 - L_3 (order 3, not
    principal on a genus-one curve).  L_1 = L_3 + E and L_2 = L_3 + 2E.
    """
    target = Presentation(2, IntMatrix.from_columns([[0, 3]], rows=2))
    chi = IntMatrix.from_rows([[1, 1, 1], [1, 2, 0]])
    return NagataPresentation(
        3, target, chi, "H = Z·L3 ⊕ Z/3·(L1 - L3); L1 - L3 is torsion of order 3 and not principal"
    )


def elliptic_triangle_report() -> dict:
    P = elliptic_triangle_presentation()
    C = CandidateUnits(IntMatrix.from_columns([[2, -1, -1], [-1, 2, -1]], rows=3), ("f1", "f2"))
    _, rank = unit_lattice(P)
    return {
        "H": boundary_subgroup(P).to_json(),
        "unit_rank": rank,
        "candidate_index": candidate_index(C, P),
        "class_group_X": class_cokernel(P).to_json(),
        "justification": P.justification,
    }


def hypersurface_complement(d: int) -> NagataPresentation:
    """P^m minus a degree-d hypersurface: one boundary divisor, Cl(P^m) = Z."""
    if d < 1:
        raise ValueError("degree must be positive")
    return NagataPresentation.into_free(IntMatrix.from_rows([[d]]), "Cl(P^m) = Z via degree")


def genus_rh(p: int, n: int) -> int:
    """Genus of the smooth model of y^p = f(x), deg f = n, when p divides n."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if p < 2 or n % p:
        raise ValueError(f"{p} does not divide {n}")
    num = (p - 1) * (n - 2)
    if num % 2:
        raise ValueError(f"(p-1)(n-2) = {num} is odd")
    return num // 2


def fermat_presentation(n: int) -> NagataPresentation:
    """x^n + y^n = 1 with xy ≠ 0: 3n boundary points, each of degree one.

    The degree map already has free rank 1 on H (the kernel H_0 is
    finite), so mapping to Z is enough to read off the rank.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    return NagataPresentation.into_free(
        IntMatrix.from_rows([[1] * (3 * n)]), "degree map; its kernel on H is finite"
    )


def fermat_unit_rank(n: int) -> int:
    _, rank = unit_lattice(fermat_presentation(n))
    return rank


def localization_units_table(n: int, nu: int, degrees: int = 6) -> dict[int, FgAbelianGroup]:
    """H^i(G, R*/k*) for R* /k* = <f_1> × ... × <f_nu> with trivial G-action."""
    if nu < 1:
        raise ValueError("nu must be positive")
    return cohomology_table(CyclicGModule.trivial_action(n, Presentation.free(nu)), degrees)


def ramified_boundary_table(r: int, nu: int) -> dict:
    """Complement of r hyperplanes: units free of rank r-1, H^1(U, mu_nu) = (Z/nu)^(r-1)."""
    if r < 1 or nu < 2:
        raise ValueError("need r >= 1 and nu >= 2")
    P = NagataPresentation.into_free(IntMatrix.from_rows([[1] * r]), "Cl(P^m) = Z via degree")
    _, rank = unit_lattice(P)
    h1 = tensor_mod(FgAbelianGroup(rank), nu)
    return {"r": r, "nu": nu, "unit_rank": rank, "H1_mu": h1}


def irreducible_branch_table(n: int, degrees: int = 6) -> dict:
    """Cohomology of T* and S* when the branch locus f is irreducible.

    The odd groups of T* come from <z>/<z^n> ≅ Z/n, recomputed here as a
    one-generator module with trivial action; terms involving k* stay
    symbolic.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    cyclic_part = cohomology_table(CyclicGModule.trivial_action(n, Presentation.cyclic(n)), degrees)
    odd = cyclic_part[1]
    # second check: H^2 of Z with trivial action is also Z/n
    check = cohomology_table(CyclicGModule.trivial_action(n, Presentation.free(1)), 2)[2]
    if odd != check:
        raise AssertionError(f"odd cohomology {odd} disagrees with {check}")
    T = {0: "k*"}
    S = {0: "k* x <f>"}
    for i in range(1, degrees + 1):
        T[i] = odd if i % 2 else FgAbelianGroup.trivial()
        S[i] = FgAbelianGroup.trivial()
    return {"n": n, "T": T, "S": S}


def permutation_matrix(r: int) -> IntMatrix:
    """Cyclic shift e_i -> e_{i+1 mod r}."""
    return IntMatrix.from_rows([[1 if i == (j + 1) % r else 0 for j in range(r)] for i in range(r)])


def cyclic_boundary_fixed_units(p: int, chi: IntMatrix | None = None) -> FgAbelianGroup:
    """Fixed part of the unit lattice when G permutes p boundary divisors cyclically.

    chi defaults to the degree map; it must be invariant under the shift
    so that ker(chi) is a G-submodule.
    """
    if chi is None:
        chi = IntMatrix.from_rows([[1] * p])
    P = NagataPresentation.into_free(chi)
    basis, rank = unit_lattice(P)
    if rank == 0:
        return FgAbelianGroup.trivial()
    action = restrict_action(permutation_matrix(p), basis)
    return fixed_submodule(CyclicGModule.free(p, action))


def fermat_rank_formula(n: int) -> int:
    return 3 * n - 1


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))
