"""Bounded searches for non-constant units in A[z]/(z^n - f).

An empty result only rules out units inside the searched box.
"""

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from unitgroups.ring import CoverRing
from unitgroups.search import DEFAULT_CANDIDATE_GUARD, count_candidates, unit_search


@dataclass
class Case:
    f: str
    n: int
    variables: tuple
    degree_bound: int
    support_bound: int


DEFAULT_CASES = [
    Case("x1^2 + x2^2 - 1", 2, ("x1", "x2"), 2, 2),
    Case("x1^3 + x2^3 + 1", 3, ("x1", "x2"), 1, 2),
    Case("x^4 + x + 1", 2, ("x",), 2, 2),
    Case("x^4 + x", 2, ("x",), 2, 2),
    Case("(x*y - 1)*(x*y + 1)", 2, ("x", "y"), 2, 1),
]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--f", help="run a single case instead of the defaults")
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--variables", default="x1,x2")
    ap.add_argument("--degree-bound", type=int, default=2)
    ap.add_argument("--support-bound", type=int, default=2)
    ap.add_argument("--guard", type=int, default=DEFAULT_CANDIDATE_GUARD)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    cases = DEFAULT_CASES
    if args.f:
        cases = [Case(args.f, args.n, tuple(args.variables.split(",")), args.degree_bound, args.support_bound)]

    rows = []
    for c in cases:
        R = CoverRing.parse(c.f, c.n, c.variables)
        res = unit_search(R, c.degree_bound, c.support_bound, guard=args.guard)
        row = {"case": asdict(c), **res.summary()}
        if res.method != "pell" and res.method != "odd-degree":
            row["box_size"] = count_candidates(R, c.degree_bound, c.support_bound)
        rows.append(row)
        if not args.json:
            found = ", ".join(row["units"]) or "none"
            print(f"{c.f} (n={c.n}, deg<={c.degree_bound}, support<={c.support_bound}): "
                  f"method={row['method']} tested={row['candidates_tested']} units: {found}")
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
