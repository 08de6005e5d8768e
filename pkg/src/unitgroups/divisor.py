"""Unit lattices from boundary divisors.

For a normal affine X inside a normal projective Y with boundary prime
divisors Z_1, ..., Z_r, the sequence

    1 -> O*(Y) -> O*(X) -> ⊕ Z·Z_i --chi--> Cl(Y) -> Cl(X) -> 0

is exact and O*(Y) = k*.  So O*(X)/k* is the lattice ker(chi) of boundary
divisors, Cl(X) is coker(chi), and the subgroup H of Cl(Y) generated by
the Z_i is im(chi).

Cl(Y) is supplied by the caller as a presented group (or a quotient of it
that is still faithful on the image of chi), with a justification string
saying why that presentation is right.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .lattice import (
    INFINITE,
    FgAbelianGroup,
    IntMatrix,
    Presentation,
    cokernel,
    in_lattice,
    kernel_basis,
    lattice_basis,
    lattice_index,
    subquotient,
)


class CandidateError(ValueError):
    """A candidate unit's boundary divisor is not in ker(chi)."""


@dataclass(frozen=True)
class NagataPresentation:
    r: int
    target: Presentation
    chi: IntMatrix
    justification: str = ""

    def __post_init__(self):
        if self.chi.cols != self.r:
            raise ValueError(f"chi has {self.chi.cols} columns, expected r = {self.r}")
        if self.chi.rows != self.target.generator_count:
            raise ValueError(
                f"chi has {self.chi.rows} rows but the target has "
                f"{self.target.generator_count} generators"
            )

    @classmethod
    def into_free(cls, chi: IntMatrix, justification: str = "") -> NagataPresentation:
        return cls(chi.cols, Presentation.free(chi.rows), chi, justification)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "target": self.target.to_json(),
            "chi": self.chi.to_json(),
            "justification": self.justification,
        }

    @classmethod
    def from_json(cls, doc: dict) -> NagataPresentation:
        return cls(
            int(doc["r"]),
            Presentation.from_json(doc["target"]),
            IntMatrix.from_json(doc["chi"]),
            doc.get("justification", ""),
        )


@dataclass(frozen=True)
class CandidateUnits:
    divisors: IntMatrix
    labels: tuple = field(default=())

    def __post_init__(self):
        labels = tuple(self.labels) or tuple(f"u{j + 1}" for j in range(self.divisors.cols))
        if len(labels) != self.divisors.cols:
            raise ValueError("one label per candidate column is required")
        object.__setattr__(self, "labels", labels)


def _kernel_lift(P: NagataPresentation) -> list[list[int]]:
    stacked = P.chi.hstack(P.target.relations)
    return [list(c[: P.r]) for c in kernel_basis(stacked).columns()]


def unit_lattice(P: NagataPresentation) -> tuple[IntMatrix, int]:
    """Basis (as columns) of ker(chi) ⊆ Z^r, i.e. O*(X)/k* as boundary divisors."""
    basis = lattice_basis(_kernel_lift(P), P.r)
    return IntMatrix.from_columns(basis, rows=P.r), len(basis)


def class_cokernel(P: NagataPresentation) -> FgAbelianGroup:
    """Cl(X) = target / im(chi)."""
    return cokernel(P.chi.hstack(P.target.relations))


def boundary_subgroup(P: NagataPresentation) -> FgAbelianGroup:
    """H = im(chi), the subgroup generated by the boundary divisors."""
    return subquotient(
        [list(c) for c in P.chi.columns()] + [list(c) for c in P.target.relations.columns()],
        [list(c) for c in P.target.relations.columns()],
        P.target.generator_count,
    )


def check_candidates(C: CandidateUnits, P: NagataPresentation) -> None:
    if C.divisors.rows != P.r:
        raise CandidateError(f"candidate divisors have {C.divisors.rows} rows, expected {P.r}")
    rel = lattice_basis(P.target.relations.columns(), P.target.generator_count)
    for j, col in enumerate(C.divisors.columns()):
        residue = P.chi.apply(col)
        if not in_lattice(rel, residue):
            raise CandidateError(
                f"candidate {C.labels[j]!r} (column {j}) has chi-image {list(residue)}, "
                "which is not zero in the target"
            )


def candidate_index(C: CandidateUnits, P: NagataPresentation) -> int | float:
    """[ker chi : span(candidates)]; 1 means the candidates are a basis of O*(X)/k*."""
    check_candidates(C, P)
    basis, rank = unit_lattice(P)
    if rank == 0:
        return 1
    if C.divisors.cols == 0:
        return INFINITE
    return lattice_index(C.divisors, basis)


def snake_cokernel_bound(C: CandidateUnits, P: NagataPresentation) -> int | float:
    """Order of the torsion of coker(candidates -> Z^r).

    The snake lemma sequence 0 -> coker(alpha) -> coker(beta) -> H -> 0
    bounds the candidate index by this number whenever the index is finite.
    """
    tors = cokernel(C.divisors).torsion
    out = 1
    for d in tors:
        out *= d
    return out


class UnitDichotomy(enum.Enum):
    UNITS_TRIVIAL = "units-trivial"
    RANK_P_MINUS_1 = "rank-p-minus-1"


class DichotomyError(ValueError):
    pass


def classify_split_cover(p: int, H: FgAbelianGroup) -> UnitDichotomy:
    """Degree-p cyclic cover split over a prime divisor at infinity.

    Either H is free of rank p and O*(X) = k*, or H is Z extended by a
    finite group and O*(X)/k* is free of rank p - 1.
    """
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    if H.free_rank == p and H.is_free:
        return UnitDichotomy.UNITS_TRIVIAL
    if H.free_rank == 1:
        return UnitDichotomy.RANK_P_MINUS_1
    raise DichotomyError(
        f"boundary subgroup {H} has free rank {H.free_rank}; expected free of rank {p} or free rank 1"
    )


def nagata_report(P: NagataPresentation, C: CandidateUnits | None = None) -> dict:
    basis, rank = unit_lattice(P)
    H = boundary_subgroup(P)
    report = {
        "r": P.r,
        "unit_rank": rank,
        "unit_basis": [list(c) for c in basis.columns()],
        "H": H.to_json(),
        "class_group_X": class_cokernel(P).to_json(),
        "justification": P.justification,
    }
    if C is not None:
        idx = candidate_index(C, P)
        report["candidates"] = list(C.labels)
        report["candidate_index"] = "infinite" if idx == INFINITE else idx
        report["candidates_are_basis"] = idx == 1
    return report
