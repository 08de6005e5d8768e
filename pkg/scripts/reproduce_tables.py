"""Run the bundled scenario suite and print the main computed tables."""

import argparse
import sys
from dataclasses import dataclass

from unitgroups.covers import (
    fermat_unit_rank,
    hyperplane_matrix,
    hyperplane_scenario,
    irreducible_branch_table,
    localization_units_table,
    ramified_boundary_table,
)
from unitgroups.lattice import snf
from unitgroups.scenarios import bundled_suite_path, run_suite


@dataclass
class Config:
    max_hyperplanes: int = 8
    max_degree: int = 4
    max_nu: int = 3
    timing: bool = False


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-hyperplanes", type=int, default=Config.max_hyperplanes)
    ap.add_argument("--max-degree", type=int, default=Config.max_degree)
    ap.add_argument("--max-nu", type=int, default=Config.max_nu)
    ap.add_argument("--timing", action="store_true")
    cfg = Config(**vars(ap.parse_args(argv)))

    summary = run_suite(bundled_suite_path(), timing=cfg.timing)
    print(f"bundled suite: {summary.counts}")

    print("\nhyperplane complements: invariant factors, unit rank, candidate index")
    for n in range(2, cfg.max_hyperplanes + 1):
        rep = hyperplane_scenario(n)
        print(f"  n={n}: {snf(hyperplane_matrix(n)).factors}  rank={rep['unit_rank']}  index={rep['candidate_index']}")

    print("\nunits of a localization, cohomology by degree")
    for n in range(2, cfg.max_degree + 1):
        for nu in range(1, cfg.max_nu + 1):
            t = localization_units_table(n, nu)
            print(f"  n={n} nu={nu}: " + ", ".join(f"H^{i}={t[i]}" for i in sorted(t)))

    print("\nramified boundary: unit rank and H^1 of roots of unity")
    for r in range(1, 5):
        for nu in range(2, cfg.max_nu + 2):
            rep = ramified_boundary_table(r, nu)
            print(f"  r={r} nu={nu}: rank={rep['unit_rank']}  H1={rep['H1_mu']}")

    print("\nirreducible branch locus")
    for n in range(2, cfg.max_degree + 1):
        t = irreducible_branch_table(n)
        for name in ("T", "S"):
            print(f"  n={n} {name}: " + ", ".join(f"H^{i}={v}" for i, v in sorted(t[name].items())))

    print("\nFermat covers: unit rank")
    for n in range(2, cfg.max_degree + 1):
        print(f"  n={n}: {fermat_unit_rank(n)}")
    return summary.exit_code


if __name__ == "__main__":
    sys.exit(main())
