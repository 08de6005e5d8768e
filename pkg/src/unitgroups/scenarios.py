"""Scenario documents: validate, dispatch to an engine, compare with expectations.

A scenario is ``{"id", "kind", "params", "expect"?}``.  Reports are plain
JSON-compatible dicts with canonical values (groups as {"rank", "torsion"},
rationals as strings in lowest terms) so that identical inputs give
byte-identical output.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import jsonschema

from . import covers
from .cohomology import CyclicGModule, cohomology_table, herbrand_check
from .cyclotomic import CycNumber
from .divisor import CandidateUnits, NagataPresentation, classify_split_cover, nagata_report
from .lattice import INFINITE, FgAbelianGroup, IntMatrix, Presentation, cokernel, minors_gcd_factors, snf
from .poly import MultiPoly, parse_poly
from .ring import CoverRing, is_unit, is_unit_in_localization, localization_exponents, norm
from .search import SCOPE_NOTE, pell_solve, unit_search

EXIT_OK, EXIT_MISMATCH, EXIT_SCHEMA, EXIT_COMPUTE = 0, 1, 2, 3

KINDS = ("snf", "cohomology", "nagata", "form_product", "hyperplane", "fermat", "pell", "norm",
         "unit_search", "table")


class ScenarioSchemaError(ValueError):
    pass


# ---------------------------------------------------------------------------
# schemas

_INT = {"type": "integer"}
_POS = {"type": "integer", "minimum": 1}
_VEC = {"type": "array", "items": _INT}
_ROWS = {"type": "array", "items": _VEC}
_STR = {"type": "string"}
_NAMES = {"type": "array", "items": {"type": "string", "pattern": "^[A-Za-y_][A-Za-z0-9_]*$"}, "minItems": 1}

_RING = {
    "f": _STR,
    "n": _POS,
    "variables": _NAMES,
    "factors": {"type": "array", "items": _STR},
}

PARAM_SCHEMAS = {
    "snf": {
        "type": "object",
        "properties": {"matrix": {**_ROWS, "minItems": 1}},
        "required": ["matrix"],
    },
    "cohomology": {
        "type": "object",
        "properties": {
            "n": _POS,
            "generators": {"type": "integer", "minimum": 0},
            "action": _ROWS,
            "relations": _ROWS,
            "degrees": {"type": "integer", "minimum": 0, "maximum": 64},
        },
        "required": ["n", "generators", "action"],
    },
    "nagata": {
        "type": "object",
        "properties": {
            "chi": {**_ROWS, "minItems": 1},
            "target": {
                "type": "object",
                "properties": {"generators": _POS, "relations": _ROWS},
                "required": ["generators"],
            },
            "justification": _STR,
            "candidates": _ROWS,
            "labels": {"type": "array", "items": _STR},
            "dichotomy_prime": _POS,
        },
        "required": ["chi"],
    },
    "form_product": {
        "type": "object",
        "properties": {"degrees": {"type": "array", "items": _POS, "minItems": 2}, "m": {"type": "integer", "minimum": 2}},
        "required": ["degrees"],
    },
    "hyperplane": {
        "type": "object",
        "properties": {"n": {"type": "integer", "minimum": 2}},
        "required": ["n"],
    },
    "fermat": {
        "type": "object",
        "properties": {"n": {"type": "integer", "minimum": 2}},
        "required": ["n"],
    },
    "pell": {
        "type": "object",
        "properties": {"f": _STR, "variable": _STR, "bound": {"type": "integer", "minimum": 0}},
        "required": ["f"],
    },
    "norm": {
        "type": "object",
        "properties": {**_RING, "element": _STR, "method": {"enum": ["product", "determinant", "both"]}},
        "required": ["f", "n", "variables", "element"],
    },
    "unit_search": {
        "type": "object",
        "properties": {
            **_RING,
            "degree_bound": {"type": "integer", "minimum": 0},
            "support_bound": {"type": "integer", "minimum": 0},
            "coefficients": _VEC,
            "pell_bound": {"type": "integer", "minimum": 0},
            "guard": _POS,
        },
        "required": ["f", "n", "variables"],
    },
    "table": {
        "type": "object",
        "properties": {
            "table": {
                "enum": [
                    "localization_units",
                    "ramified_boundary",
                    "irreducible_branch",
                    "genus",
                    "hypersurface_complement",
                    "elliptic_triangle",
                    "cyclic_boundary_fixed",
                ]
            },
            "n": _INT,
            "nu": _INT,
            "r": _INT,
            "p": _INT,
            "d": _INT,
            "degrees": {"type": "integer", "minimum": 0, "maximum": 64},
        },
        "required": ["table"],
    },
}

SCENARIO_SCHEMA = {
    "type": "object",
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "kind": {"enum": list(KINDS)},
        "params": {"type": "object"},
        "expect": {"type": "object"},
        "description": {"type": "string"},
    },
    "required": ["id", "kind", "params"],
    "additionalProperties": False,
}


@dataclass(frozen=True)
class Scenario:
    id: str
    kind: str
    params: dict
    expect: dict | None = None
    description: str = ""

    @classmethod
    def from_json(cls, doc) -> Scenario:
        validate_document(doc)
        return cls(doc["id"], doc["kind"], doc["params"], doc.get("expect"), doc.get("description", ""))

    def to_json(self) -> dict:
        out = {"id": self.id, "kind": self.kind, "params": self.params}
        if self.expect is not None:
            out["expect"] = self.expect
        if self.description:
            out["description"] = self.description
        return out


def validate_document(doc) -> None:
    try:
        jsonschema.validate(doc, SCENARIO_SCHEMA)
        jsonschema.validate(doc["params"], PARAM_SCHEMAS[doc["kind"]])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ScenarioSchemaError(f"{where}: {exc.message}") from None


# ---------------------------------------------------------------------------
# canonical JSON values


def canonical(value):
    if isinstance(value, FgAbelianGroup):
        return value.to_json()
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return "infinite" if value == INFINITE else value
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, CycNumber):
        s = value.simplify()
        return canonical(s) if not isinstance(s, CycNumber) else str(s)
    if isinstance(value, IntMatrix):
        return value.to_rows()
    if isinstance(value, dict):
        return {str(k): canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [canonical(v) for v in value]
    if hasattr(value, "value") and hasattr(value, "name"):  # enums
        return value.value
    return str(value)


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2)


# ---------------------------------------------------------------------------
# engines


def _relations(rows, m) -> IntMatrix:
    if not rows:
        return IntMatrix.zeros(m, 0)
    return IntMatrix.from_columns(rows, rows=m)


def _run_snf(p):
    A = IntMatrix.from_rows(p["matrix"])
    d = snf(A)
    d.verify(A)
    out = {"factors": list(d.factors), "cokernel": cokernel(A), "verified": True}
    if A.rows <= 8 and A.cols <= 8:
        out["minors_oracle_agrees"] = list(minors_gcd_factors(A)) == list(d.factors)
    return out


def _run_cohomology(p):
    m = p["generators"]
    M = CyclicGModule(p["n"], Presentation(m, _relations(p.get("relations"), m)),
                      IntMatrix.from_rows(p["action"], cols=m))
    table = cohomology_table(M, p.get("degrees", 6))
    out = {"table": {str(i): g for i, g in table.items()}, "module": M.underlying_group()}
    if M.underlying_group().is_finite:
        out["herbrand"] = herbrand_check(M)
    return out


def _run_nagata(p):
    chi = IntMatrix.from_rows(p["chi"])
    tgt = p.get("target", {"generators": chi.rows})
    target = Presentation(tgt["generators"], _relations(tgt.get("relations"), tgt["generators"]))
    P = NagataPresentation(chi.cols, target, chi, p.get("justification", ""))
    C = None
    if "candidates" in p:
        C = CandidateUnits(_relations(p["candidates"], P.r), tuple(p.get("labels", ())))
    rep = nagata_report(P, C)
    if "dichotomy_prime" in p:
        rep["dichotomy"] = classify_split_cover(p["dichotomy_prime"], FgAbelianGroup.from_json(rep["H"]))
    return rep


def _run_form_product(p):
    rep = covers.analyze_form_product(covers.FormProductScenario(tuple(p["degrees"]), p.get("m", 2)))
    rep["matrix"] = covers.form_product_matrix(covers.FormProductScenario(tuple(p["degrees"]), p.get("m", 2)))
    return rep


def _run_hyperplane(p):
    rep = covers.hyperplane_scenario(p["n"])
    rep["matrix"] = covers.hyperplane_matrix(p["n"])
    return rep


def _run_fermat(p):
    n = p["n"]
    return {"n": n, "boundary_count": 3 * n, "unit_rank": covers.fermat_unit_rank(n),
            "expected_rank": covers.fermat_rank_formula(n)}


def _ring(p) -> CoverRing:
    return CoverRing.parse(p["f"], p["n"], p["variables"], p.get("factors", ()))


def _run_pell(p):
    var = p.get("variable", "x")
    f = parse_poly(p["f"], (var,))
    bound = p.get("bound", 20)
    res = pell_solve(f, bound)
    out = {"f": f.format((var,)), "bound": bound, "found": res.found, "steps": res.steps,
           "note": SCOPE_NOTE}
    if res.found:
        R = CoverRing(1, 2, f, names=(var,))
        out.update({"a": res.a.format((var,)), "b": res.b.format((var,)), "c": res.c,
                    "is_unit": is_unit(R.element(res.a, res.b))})
    else:
        out["bound_reached"] = True
    return out


def _run_norm(p):
    R = _ring(p)
    u = R.parse_element(p["element"])
    N = norm(u, p.get("method", "both"))
    exps = localization_exponents(u)
    out = {"element": u.format(), "norm": R.format_poly(N), "is_unit": is_unit(u),
           "is_unit_in_localization": is_unit_in_localization(u)}
    if exps is not None:
        out["localization_exponents"] = {"constant": exps[0], "exponents": exps[1]}
    return out


def _run_unit_search(p):
    R = _ring(p)
    res = unit_search(
        R,
        p.get("degree_bound", 2),
        p.get("support_bound", 2),
        tuple(p.get("coefficients", (-1, 1))),
        p.get("pell_bound", 20),
        **({"guard": p["guard"]} if "guard" in p else {}),
    )
    out = res.summary()
    out["found"] = bool(res.units)
    out["unit_count"] = len(res.units)
    return out


def _run_table(p):
    name = p["table"]
    if name == "localization_units":
        return {"table": {str(i): g for i, g in covers.localization_units_table(p["n"], p["nu"], p.get("degrees", 6)).items()}}
    if name == "ramified_boundary":
        return covers.ramified_boundary_table(p["r"], p["nu"])
    if name == "irreducible_branch":
        return covers.irreducible_branch_table(p["n"], p.get("degrees", 6))
    if name == "genus":
        return {"p": p["p"], "n": p["n"], "genus": covers.genus_rh(p["p"], p["n"])}
    if name == "hypersurface_complement":
        P = covers.hypersurface_complement(p["d"])
        return nagata_report(P)
    if name == "elliptic_triangle":
        return covers.elliptic_triangle_report()
    if name == "cyclic_boundary_fixed":
        return {"p": p["p"], "fixed_units": covers.cyclic_boundary_fixed_units(p["p"])}
    raise ScenarioSchemaError(f"unknown table {name!r}")


ENGINES = {
    "snf": _run_snf,
    "cohomology": _run_cohomology,
    "nagata": _run_nagata,
    "form_product": _run_form_product,
    "hyperplane": _run_hyperplane,
    "fermat": _run_fermat,
    "pell": _run_pell,
    "norm": _run_norm,
    "unit_search": _run_unit_search,
    "table": _run_table,
}


# ---------------------------------------------------------------------------
# running


def compare(expected, actual, path: str = "") -> list[str]:
    """Field-by-field comparison; keys absent from ``expected`` are ignored."""
    if isinstance(expected, dict):
        if not isinstance(actual, dict):
            return [f"{path or '<root>'}: expected an object, got {json.dumps(actual)}"]
        out = []
        for k in sorted(expected):
            sub = f"{path}.{k}" if path else k
            if k not in actual:
                out.append(f"{sub}: missing from result")
            else:
                out.extend(compare(expected[k], actual[k], sub))
        return out
    if expected != actual:
        return [f"{path or '<root>'}: expected {json.dumps(expected)}, got {json.dumps(actual)}"]
    return []


def run_scenario(S: Scenario | dict, expect: dict | None = None, timing: bool = False) -> tuple[dict, int]:
    """Run one scenario; returns (report, exit code)."""
    if isinstance(S, dict):
        try:
            S = Scenario.from_json(S)
        except ScenarioSchemaError as exc:
            return {"id": S.get("id") if isinstance(S, dict) else None, "status": "schema-error",
                    "error": str(exc)}, EXIT_SCHEMA
    expect = expect if expect is not None else S.expect
    report = {"id": S.id, "kind": S.kind, "params": S.params}
    start = time.perf_counter()
    try:
        result = canonical(ENGINES[S.kind](S.params))
    except ScenarioSchemaError as exc:
        report.update(status="schema-error", error=str(exc))
        return report, EXIT_SCHEMA
    except Exception as exc:  # noqa: BLE001 - every engine failure maps to one exit code
        report.update(status="error", error=f"{type(exc).__name__}: {exc}")
        return report, EXIT_COMPUTE
    report["result"] = result
    if timing:
        report["wall_time_s"] = round(time.perf_counter() - start, 6)
    if expect is None:
        report["status"] = "computed"
        return report, EXIT_OK
    report["expect"] = expect
    mismatches = compare(expect, result)
    report["mismatches"] = mismatches
    report["status"] = "fail" if mismatches else "pass"
    return report, EXIT_MISMATCH if mismatches else EXIT_OK


def load_scenario_file(path: Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


@dataclass
class SuiteSummary:
    reports: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK

    def to_json(self) -> dict:
        return {"counts": self.counts, "exit_code": self.exit_code, "scenarios": self.reports}


def run_suite(path, timing: bool = False) -> SuiteSummary:
    """Run every *.json scenario in a directory, in file-name order.

    The exit code is the largest per-scenario code, so any failure gives a
    nonzero result.
    """
    root = Path(path)
    if not root.is_dir():
        raise NotADirectoryError(str(root))
    summary = SuiteSummary()
    counts = {"total": 0, "pass": 0, "computed": 0, "fail": 0, "schema-error": 0, "error": 0}
    for file in sorted(root.glob("*.json")):
        counts["total"] += 1
        try:
            doc = load_scenario_file(file)
        except (OSError, json.JSONDecodeError) as exc:
            report, code = {"id": None, "status": "schema-error", "error": f"{type(exc).__name__}: {exc}"}, EXIT_SCHEMA
        else:
            report, code = run_scenario(doc, timing=timing)
        report["file"] = file.name
        counts[report["status"]] += 1
        summary.reports.append(report)
        summary.exit_code = max(summary.exit_code, code)
    summary.counts = counts
    return summary


def bundled_suite_path() -> Path:
    return Path(__file__).parent / "data" / "scenarios"
