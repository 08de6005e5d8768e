"""Tate cohomology of a finite cyclic group acting on a finitely generated abelian group.

A module is presented as M = Z^m / R, where R is spanned by the columns of
a relation matrix, together with the integer matrix of the generator σ on
Z^m.  Every kernel and image is computed on Z^m and pulled back through R,
so nothing ever leaves exact lattice arithmetic.

With D = σ - 1 and N = 1 + σ + ... + σ^(n-1):

    H^0       = ker D
    H^(2i-1)  = ker N / im D
    H^(2i)    = ker D / im N        (i >= 1)
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import (
    FgAbelianGroup,
    IntMatrix,
    Presentation,
    echelon_coordinates,
    in_lattice,
    kernel_basis,
    lattice_basis,
    presentation_to_group,
    subquotient,
)


class ModuleError(ValueError):
    """The action matrix does not define a G-module structure on the presented group."""


@dataclass(frozen=True)
class CyclicGModule:
    order_n: int
    pres: Presentation
    action: IntMatrix

    def __post_init__(self):
        m = self.pres.generator_count
        if self.order_n < 1:
            raise ModuleError("group order must be at least 1")
        if self.action.shape != (m, m):
            raise ModuleError(f"action must be {m}x{m}, got {self.action.rows}x{self.action.cols}")
        rel = self.relation_basis
        for j, c in enumerate(self.pres.relations.columns()):
            if not in_lattice(rel, self.action.apply(c)):
                raise ModuleError(f"action does not preserve relation column {j}")
        # σ^n ≡ 1 mod R also makes σ invertible on the quotient, with inverse σ^(n-1)
        diff = self.action ** self.order_n - IntMatrix.identity(m)
        for j, c in enumerate(diff.columns()):
            if not in_lattice(rel, c):
                raise ModuleError(
                    f"action^{self.order_n} differs from the identity on generator {j}"
                )

    @classmethod
    def free(cls, n: int, action: IntMatrix) -> CyclicGModule:
        return cls(n, Presentation.free(action.rows), action)

    @classmethod
    def trivial_action(cls, n: int, pres: Presentation) -> CyclicGModule:
        return cls(n, pres, IntMatrix.identity(pres.generator_count))

    @property
    def rank(self) -> int:
        return self.pres.generator_count

    @property
    def relation_basis(self) -> list[list[int]]:
        return lattice_basis(self.pres.relations.columns(), self.rank)

    def underlying_group(self) -> FgAbelianGroup:
        return presentation_to_group(self.pres)

    def to_json(self) -> dict:
        return {
            "n": self.order_n,
            "generators": self.rank,
            "relations": self.pres.relations.to_json(),
            "action": self.action.to_json(),
        }

    @classmethod
    def from_json(cls, doc: dict) -> CyclicGModule:
        m = int(doc["generators"])
        rel = doc.get("relations")
        relations = IntMatrix.from_json(rel) if rel is not None else IntMatrix.zeros(m, 0)
        return cls(int(doc["n"]), Presentation(m, relations), IntMatrix.from_json(doc["action"]))


def norm_matrix(M: CyclicGModule) -> IntMatrix:
    m = M.rank
    total = IntMatrix.zeros(m, m)
    power = IntMatrix.identity(m)
    for _ in range(M.order_n):
        total = total + power
        power = power @ M.action
    return total


def difference_matrix(M: CyclicGModule) -> IntMatrix:
    return M.action - IntMatrix.identity(M.rank)


def _kernel_lift(A: IntMatrix, M: CyclicGModule) -> list[list[int]]:
    """Generators of {v in Z^m : A v in R}, which contains R."""
    m = M.rank
    stacked = A.hstack(M.pres.relations)
    K = kernel_basis(stacked)
    return [list(c[:m]) for c in K.columns()]


def _image_lift(A: IntMatrix, M: CyclicGModule) -> list[list[int]]:
    """Generators of A·Z^m + R."""
    return [list(c) for c in A.columns()] + [list(c) for c in M.pres.relations.columns()]


def _relations(M: CyclicGModule) -> list[list[int]]:
    return [list(c) for c in M.pres.relations.columns()]


def fixed_submodule(M: CyclicGModule) -> FgAbelianGroup:
    """M^G = ker(σ - 1) on the presented quotient."""
    return subquotient(_kernel_lift(difference_matrix(M), M), _relations(M), M.rank)


def tate_h0(M: CyclicGModule) -> FgAbelianGroup:
    """Ĥ^0 = M^G / N·M (the even-degree group)."""
    return subquotient(
        _kernel_lift(difference_matrix(M), M), _image_lift(norm_matrix(M), M), M.rank
    )


def tate_h1(M: CyclicGModule) -> FgAbelianGroup:
    """H^1 = ker N / D·M (the odd-degree group)."""
    return subquotient(
        _kernel_lift(norm_matrix(M), M), _image_lift(difference_matrix(M), M), M.rank
    )


def cohomology(M: CyclicGModule, i: int) -> FgAbelianGroup:
    if i < 0:
        raise ValueError("cohomological degree must be nonnegative")
    if i == 0:
        return fixed_submodule(M)
    return tate_h1(M) if i % 2 else tate_h0(M)


def cohomology_table(M: CyclicGModule, degrees: int = 6) -> dict[int, FgAbelianGroup]:
    h0, odd, even = fixed_submodule(M), tate_h1(M), tate_h0(M)
    return {i: h0 if i == 0 else (odd if i % 2 else even) for i in range(degrees + 1)}


def herbrand_check(M: CyclicGModule) -> bool:
    """|Ĥ^0| == |H^1|, which must hold for every finite module."""
    if not M.underlying_group().is_finite:
        raise ValueError("Herbrand check needs a finite module")
    return tate_h0(M).order() == tate_h1(M).order()


def restrict_action(action: IntMatrix, basis: IntMatrix) -> IntMatrix:
    """Matrix of ``action`` on the sublattice spanned by the columns of ``basis``.

    The sublattice must be stable; raises ModuleError otherwise.
    """
    dim = basis.rows
    cols = basis.columns()
    # coordinates are taken relative to the given basis, not the echelon one
    echelon = lattice_basis(cols, dim)
    if len(echelon) != len(cols):
        raise ModuleError("basis columns are linearly dependent")
    to_echelon = IntMatrix.from_columns(
        [echelon_coordinates(echelon, c) for c in cols], rows=len(cols)
    )
    out = []
    for c in cols:
        img = action.apply(c)
        e = echelon_coordinates(echelon, img)
        if e is None:
            raise ModuleError("sublattice is not stable under the action")
        out.append(_solve_unimodular(to_echelon, e))
    return IntMatrix.from_columns(out, rows=len(cols))


def _solve_unimodular(P: IntMatrix, y):
    """Solve P x = y for square P with |det P| = 1 (Cramer's rule, exact)."""
    d = P.det()
    if abs(d) != 1:
        raise ModuleError("change of basis is not unimodular")
    k = P.rows
    x = []
    rows = P.to_rows()
    for j in range(k):
        Pj = IntMatrix.from_rows([r[:j] + [y[i]] + r[j + 1:] for i, r in enumerate(rows)], cols=k)
        x.append(Pj.det() * d)
    return x
