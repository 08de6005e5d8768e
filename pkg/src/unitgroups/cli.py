"""Command-line front end.

Exit codes: 0 success, 1 expectation mismatch, 2 malformed input,
3 computation error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from .scenarios import (
    EXIT_COMPUTE,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_SCHEMA,
    ScenarioSchemaError,
    bundled_suite_path,
    dumps,
    load_scenario_file,
    run_scenario,
    run_suite,
)


class InputError(ValueError):
    pass


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} is not valid JSON: {exc}") from None


def _inline(kind: str, params: dict, args) -> tuple[dict, int]:
    doc = {"id": f"cli-{kind}", "kind": kind, "params": params}
    expect = None
    if getattr(args, "expect", None):
        expect = _load(args.expect)
    return run_scenario(doc, expect=expect, timing=args.timing)


def _load(path: str):
    try:
        return load_scenario_file(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _human(report: dict) -> str:
    lines = [f"[{report.get('status')}] {report.get('id')} ({report.get('kind', '?')})"]
    if "error" in report:
        lines.append(f"  error: {report['error']}")
    for key, value in sorted(report.get("result", {}).items()):
        lines.append(f"  {key}: {_fmt(value)}")
    for m in report.get("mismatches", []):
        lines.append(f"  MISMATCH {m}")
    if "wall_time_s" in report:
        lines.append(f"  wall time: {report['wall_time_s']} s")
    return "\n".join(lines)


def _fmt(value) -> str:
    if isinstance(value, dict) and set(value) == {"rank", "torsion"}:
        parts = ["Z"] * value["rank"] + [f"Z/{d}" for d in value["torsion"]]
        return " + ".join(parts) or "0"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_fmt(v)}" for k, v in sorted(value.items())) + "}"
    return json.dumps(value, ensure_ascii=False) if not isinstance(value, str) else value


def _emit(report: dict, args) -> None:
    print(dumps(report) if args.json else _human(report))


def cmd_snf(args):
    return _inline("snf", {"matrix": _json_arg(args.matrix, "matrix")}, args)


def cmd_cohomology(args):
    action = _json_arg(args.action, "action")
    params = {"n": args.n, "generators": len(action), "action": action, "degrees": args.degrees}
    if args.relations:
        params["relations"] = _json_arg(args.relations, "relations")
    return _inline("cohomology", params, args)


def cmd_nagata(args):
    doc = _load(args.file)
    if not isinstance(doc, dict):
        raise InputError("presentation file must hold a JSON object")
    return _inline("nagata", doc, args)


def cmd_pell(args):
    return _inline("pell", {"f": args.f, "variable": args.variable, "bound": args.bound}, args)


def cmd_norm(args):
    params = {
        "f": args.f,
        "n": args.n,
        "variables": args.variables.split(","),
        "element": args.element,
        "method": args.method,
    }
    if args.factors:
        params["factors"] = args.factors
    return _inline("norm", params, args)


def cmd_search(args):
    params = {
        "f": args.f,
        "n": args.n,
        "variables": args.variables.split(","),
        "degree_bound": args.degree_bound,
        "support_bound": args.support_bound,
        "pell_bound": args.bound,
    }
    if args.factors:
        params["factors"] = args.factors
    return _inline("unit_search", params, args)


def cmd_scenario_run(args):
    doc = _load(args.file)
    expect = _load(args.expect) if args.expect else None
    return run_scenario(doc, expect=expect, timing=args.timing)


def cmd_scenario_suite(args):
    path = args.dir or bundled_suite_path()
    try:
        summary = run_suite(path, timing=args.timing)
    except NotADirectoryError as exc:
        raise InputError(f"not a directory: {exc}") from None
    if args.json:
        print(dumps(summary.to_json()))
    else:
        for rep in summary.reports:
            print(f"[{rep['status']}] {rep.get('file')}: {rep.get('id')}")
            for m in rep.get("mismatches", []):
                print(f"    MISMATCH {m}")
            if "error" in rep:
                print(f"    error: {rep['error']}")
        c = summary.counts
        print(f"{c['total']} scenarios: {c['pass']} pass, {c['computed']} computed, {c['fail']} fail, "
              f"{c['schema-error']} malformed, {c['error']} errors")
    return None, summary.exit_code


def cmd_check(args):
    """Randomized property checks (Herbrand quotient, SNF against minors)."""
    from .cohomology import herbrand_check
    from .lattice import minors_gcd_factors, snf
    from .randomized import random_finite_module, random_matrix

    rng = random.Random(args.seed)
    failures = []
    start = time.perf_counter()
    for k in range(args.count):
        M = random_finite_module(rng)
        if not herbrand_check(M):
            failures.append({"check": "herbrand", "case": k, "module": M.to_json()})
        A = random_matrix(rng)
        d = snf(A)
        try:
            d.verify(A)
            ok = list(d.factors) == list(minors_gcd_factors(A))
        except AssertionError:
            ok = False
        if not ok:
            failures.append({"check": "snf", "case": k, "matrix": A.to_rows()})
    report = {"id": "check", "kind": "check", "seed": args.seed, "count": args.count,
              "failures": failures, "status": "pass" if not failures else "fail"}
    if args.timing:
        report["wall_time_s"] = round(time.perf_counter() - start, 6)
    if args.json:
        print(dumps(report))
    else:
        print(f"[{report['status']}] seed {args.seed}: {args.count} modules and {args.count} matrices, "
              f"{len(failures)} failures")
    return None, EXIT_OK if not failures else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    common.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")

    p = argparse.ArgumentParser(prog="unitgroups", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("snf", parents=[common], help="Smith normal form of an integer matrix")
    s.add_argument("matrix", help="JSON list of rows, e.g. '[[2,4],[6,8]]'")
    s.add_argument("--expect", help="JSON file with expected result fields")
    s.set_defaults(func=cmd_snf)

    s = sub.add_parser("cohomology", parents=[common], help="Tate cohomology of a cyclic group")
    s.add_argument("--n", type=int, required=True, help="order of the cyclic group")
    s.add_argument("--action", required=True, help="JSON rows of the generator's matrix")
    s.add_argument("--relations", help="JSON list of relation vectors")
    s.add_argument("--degrees", type=int, default=6)
    s.add_argument("--expect")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("nagata", parents=[common], help="unit lattice from a boundary presentation file")
    s.add_argument("file")
    s.add_argument("--expect")
    s.set_defaults(func=cmd_nagata)

    s = sub.add_parser("pell", parents=[common], help="solve a^2 - f b^2 = c for univariate f")
    s.add_argument("f")
    s.add_argument("--variable", default="x")
    s.add_argument("--bound", type=int, default=20, help="number of partial quotients to try")
    s.add_argument("--expect")
    s.set_defaults(func=cmd_pell)

    s = sub.add_parser("norm", parents=[common], help="norm and unit tests in A[z]/(z^n - f)")
    s.add_argument("element", help="element in z and the variables, e.g. 'z - x*y'")
    s.add_argument("--f", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--variables", default="x,y")
    s.add_argument("--factors", nargs="*", help="declared factorization of f")
    s.add_argument("--method", choices=["product", "determinant", "both"], default="both")
    s.add_argument("--expect")
    s.set_defaults(func=cmd_norm)

    s = sub.add_parser("search", parents=[common], help="bounded unit search")
    s.add_argument("--f", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--variables", default="x,y")
    s.add_argument("--factors", nargs="*")
    s.add_argument("--degree-bound", type=int, default=2)
    s.add_argument("--support-bound", type=int, default=2)
    s.add_argument("--bound", type=int, default=20, help="Pell bound for n = 2 in one variable")
    s.add_argument("--expect")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("scenario", help="run scenario documents")
    ssub = s.add_subparsers(dest="scenario_command", required=True)
    r = ssub.add_parser("run", parents=[common])
    r.add_argument("file")
    r.add_argument("--expect", help="override the scenario's expect block")
    r.set_defaults(func=cmd_scenario_run)
    r = ssub.add_parser("suite", parents=[common])
    r.add_argument("dir", nargs="?", help="directory of *.json scenarios (default: bundled suite)")
    r.set_defaults(func=cmd_scenario_suite)

    s = sub.add_parser("check", parents=[common], help="randomized property checks")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=100)
    s.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_SCHEMA if exc.code else EXIT_OK
    try:
        report, code = args.func(args)
    except (InputError, ScenarioSchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except Exception as exc:  # noqa: BLE001
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    if report is not None:
        _emit(report, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
