"""Unit groups of affine varieties via boundary divisors and cyclic covers.

Subpackages:
  lattice     exact integer matrices, Hermite/Smith forms, abelian groups
  cohomology  Tate cohomology of cyclic groups on presented modules
  divisor     unit lattices from boundary-divisor class maps
  covers      concrete families (hyperplanes, form products, Fermat curves)
  ring        arithmetic in T = A[z]/(z^n - f), norms and unit tests
  search      polynomial Pell solver and bounded unit searches
  scenarios   JSON scenario runner behind the command-line tool
"""

from .cohomology import CyclicGModule, cohomology, cohomology_table, herbrand_check
from .covers import (
    FormProductScenario,
    analyze_form_product,
    fermat_unit_rank,
    form_product_matrix,
    genus_rh,
    hyperplane_matrix,
)
from .cyclotomic import CycNumber
from .divisor import (
    CandidateUnits,
    NagataPresentation,
    UnitDichotomy,
    boundary_subgroup,
    candidate_index,
    class_cokernel,
    classify_split_cover,
    unit_lattice,
)
from .lattice import INFINITE, FgAbelianGroup, IntMatrix, Presentation, hnf, minors_gcd_factors, snf
from .poly import MultiPoly, parse_poly
from .ring import CoverElement, CoverRing, is_unit, is_unit_in_localization, norm, sigma
from .search import PellResult, SearchResult, pell_solve, unit_search

__version__ = "0.1.0"

__all__ = [
    "INFINITE",
    "CandidateUnits",
    "CoverElement",
    "CoverRing",
    "CycNumber",
    "CyclicGModule",
    "FgAbelianGroup",
    "FormProductScenario",
    "IntMatrix",
    "MultiPoly",
    "NagataPresentation",
    "PellResult",
    "Presentation",
    "SearchResult",
    "UnitDichotomy",
    "analyze_form_product",
    "boundary_subgroup",
    "candidate_index",
    "class_cokernel",
    "classify_split_cover",
    "cohomology",
    "cohomology_table",
    "fermat_unit_rank",
    "form_product_matrix",
    "genus_rh",
    "herbrand_check",
    "hnf",
    "hyperplane_matrix",
    "is_unit",
    "is_unit_in_localization",
    "minors_gcd_factors",
    "norm",
    "parse_poly",
    "pell_solve",
    "sigma",
    "snf",
    "unit_lattice",
    "unit_search",
]
