"""JSON instance descriptors, cochain files, and deterministic reports.

A descriptor names a field, a Hopf algebra, a partial action and optionally
a twisting 2-cochain::

    {"field": "F3", "hopf": "kG:Z2", "action": {"subgroup": ["e"]}}

Scalars in JSON are integers or strings "a/b".  Structural problems raise
``SchemaError`` carrying a JSON-pointer path to the offending node.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .catalog import UnknownCatalogName, hopf_from_name
from .cohomology import KLEIN_SUBGROUP, klein_four_table
from .convolution import Cochain, NotInIdeal, NotInvertible, invert_in_ideal, zero_cochain
from .crossed_product import TwistedPartialAction
from .hopf import FinAlgebra, FinHopf, tensor_index
from .linalg import Field, Residue, field_from_name
from .partial_action import (
    CharDividesOrder,
    NotASubgroup,
    PartialActionMap,
    action_on_base_field,
    subgroup_to_action,
    trivial_global_action,
)
from .report import ValidationReport


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


# ------------------------------------------------------------------ schemas


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("parcoh").joinpath(f"schemas/{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def _join(prefix: str, parts) -> str:
    return (prefix + "".join(f"/{p}" for p in parts)) or "/"


def _check(instance: Any, schema: dict, prefix: str = "") -> None:
    """Raise SchemaError for the most relevant violation.  A missing
    required key is reported at the path where the key should be."""
    validator = jsonschema.Draft202012Validator(schema)
    error = jsonschema.exceptions.best_match(validator.iter_errors(instance))
    if error is None:
        return
    parts = list(error.absolute_path)
    if error.validator == "required" and isinstance(error.instance, dict):
        missing = [k for k in error.validator_value if k not in error.instance]
        if missing:
            raise SchemaError(_join(prefix, parts + [missing[0]]), f"required key {missing[0]!r} is missing")
    raise SchemaError(_join(prefix, parts), error.message)


def _check_def(instance: Any, schema_name: str, definition: str, prefix: str) -> None:
    base = load_schema(schema_name)
    _check(instance, {"$defs": base["$defs"], "$ref": f"#/$defs/{definition}"}, prefix)


# ------------------------------------------------------------------ scalars


def parse_scalar(F: Field, raw: Any, path: str):
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise SchemaError(path, "scalars are integers or strings 'a/b'")
    try:
        return F(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(path, f"bad scalar {raw!r}: {exc}") from exc


def parse_vector(F: Field, raw: Any, dim: int, path: str) -> tuple:
    if not isinstance(raw, list) or len(raw) != dim:
        raise SchemaError(path, f"expected a vector of length {dim}")
    return tuple(parse_scalar(F, x, f"{path}/{i}") for i, x in enumerate(raw))


def format_scalar(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, Residue):
        return f"{x.value} mod {x.p}"
    return str(x)


def to_jsonable(x: Any) -> Any:
    """Scalars become "n/d" or "r mod p"; containers become lists and
    dicts with string keys; cochains become label tables."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, (Fraction, Residue)):
        return format_scalar(x)
    if isinstance(x, Cochain):
        return {"degree": x.degree, "values": {k: to_jsonable(v) for k, v in x.label_table().items()}}
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (frozenset, set)):
        return sorted(to_jsonable(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    return str(x)


# -------------------------------------------------------------- descriptors


@dataclass(eq=False)
class InstanceDescriptor:
    raw: dict
    field: Field
    hopf: FinHopf
    action: PartialActionMap
    twist: TwistedPartialAction | None = None

    @property
    def twisted(self) -> TwistedPartialAction:
        return self.twist if self.twist is not None else TwistedPartialAction.untwisted(self.action)


def _read_json(source: str | Path | dict) -> Any:
    if isinstance(source, dict):
        return source
    text = str(source)
    if not text.lstrip().startswith(("{", "[")):
        path = Path(text)
        if not path.exists():
            raise SchemaError("/", f"no such file {text!r}")
        text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("/", f"invalid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from exc


def _parse_algebra(F: Field, raw: dict, path: str) -> FinAlgebra:
    labels = tuple(raw["labels"])
    d = len(labels)
    mult = raw["mult"]
    if len(mult) != d:
        raise SchemaError(f"{path}/mult", f"expected {d} rows")
    rows = []
    for i, row in enumerate(mult):
        if len(row) != d:
            raise SchemaError(f"{path}/mult/{i}", f"expected {d} entries")
        rows.append(tuple(parse_vector(F, v, d, f"{path}/mult/{i}/{j}") for j, v in enumerate(row)))
    unit = parse_vector(F, raw["unit"], d, f"{path}/unit")
    return FinAlgebra(F, labels, tuple(rows), unit)


def parse_inline_hopf(F: Field, raw: dict, path: str = "/hopf") -> FinHopf:
    _check(raw, load_schema("hopf"), path)
    alg = _parse_algebra(F, raw, path)
    d = alg.dim
    if len(raw["comult"]) != d:
        raise SchemaError(f"{path}/comult", f"expected {d} entries")
    comult = []
    for i, terms in enumerate(raw["comult"]):
        out = []
        for t, (j, k, c) in enumerate(terms):
            if j >= d or k >= d:
                raise SchemaError(f"{path}/comult/{i}/{t}", "basis index out of range")
            out.append((j, k, parse_scalar(F, c, f"{path}/comult/{i}/{t}/2")))
        comult.append(tuple(out))
    counit = parse_vector(F, raw["counit"], d, f"{path}/counit")
    if len(raw["antipode"]) != d:
        raise SchemaError(f"{path}/antipode", f"expected {d} entries")
    antipode = tuple(parse_vector(F, v, d, f"{path}/antipode/{i}") for i, v in enumerate(raw["antipode"]))
    return FinHopf(alg, tuple(comult), counit, antipode, None, "custom", "inline")


def parse_hopf(F: Field, raw: Any) -> FinHopf:
    if isinstance(raw, str):
        return hopf_from_name(raw, F)
    return parse_inline_hopf(F, raw)


def parse_action(H: FinHopf, raw: Any, path: str = "/action") -> PartialActionMap:
    F = H.field
    if raw == "global":
        return trivial_global_action(H)
    if isinstance(raw, str):
        raise SchemaError(path, f"unknown action {raw!r}; use \"global\" or an object")
    if "subgroup" in raw:
        _check_def(raw, "action", "subgroup", path)
        if H.group is None:
            raise SchemaError(f"{path}/subgroup", "subgroup actions need kG or (kG)*")
        elems = []
        for i, token in enumerate(raw["subgroup"]):
            try:
                elems.append(H.group.parse_element(token))
            except ValueError as exc:
                raise SchemaError(f"{path}/subgroup/{i}", str(exc)) from exc
        try:
            return subgroup_to_action(H, elems)
        except NotASubgroup as exc:
            raise SchemaError(f"{path}/subgroup", f"not a subgroup: {exc}") from exc
        except CharDividesOrder as exc:
            raise SchemaError(f"{path}/subgroup", str(exc)) from exc
    if "values" in raw:
        _check_def(raw, "action", "values", path)
        return action_on_base_field(H, parse_vector(F, raw["values"], H.dim, f"{path}/values"), "inline")
    _check_def(raw, "action", "inline", path)
    if "target" in raw:
        target_raw = raw["target"]
        _check(target_raw, load_schema("algebra"), f"{path}/target")
        A = _parse_algebra(F, target_raw, f"{path}/target")
    else:
        A = FinAlgebra(F, ("1",), (((F.one,),),), (F.one,))
    act = raw["act"]
    if len(act) != H.dim:
        raise SchemaError(f"{path}/act", f"expected {H.dim} rows, one per basis element of H")
    rows = []
    for h, row in enumerate(act):
        if len(row) != A.dim:
            raise SchemaError(f"{path}/act/{h}", f"expected {A.dim} vectors")
        rows.append(tuple(parse_vector(F, v, A.dim, f"{path}/act/{h}/{a}") for a, v in enumerate(row)))
    return PartialActionMap(H, A, tuple(rows), "inline")


def parse_cochain(pa: PartialActionMap, raw: Any, path: str = "") -> Cochain:
    """{"degree": n, "values": {"l1,l2": [..] or scalar}}; missing tuples
    are zero.  A bare scalar means that multiple of 1_A."""
    _check(raw, load_schema("cochain"), path)
    H, A = pa.hopf, pa.target
    F = pa.field
    n = raw["degree"]
    index = {lab: i for i, lab in enumerate(H.labels)}
    vals = list(zero_cochain(pa, n).values)
    for key, value in raw["values"].items():
        where = f"{path}/values/{key}"
        parts = [p.strip() for p in key.split(",")] if key.strip() else []
        if len(parts) != n:
            raise SchemaError(where, f"expected {n} labels")
        try:
            multi = [index[p] for p in parts]
        except KeyError as exc:
            raise SchemaError(where, f"unknown basis label {exc.args[0]!r}") from exc
        if isinstance(value, list):
            vec = parse_vector(F, value, A.dim, where)
        else:
            c = parse_scalar(F, value, where)
            vec = tuple(c * u for u in A.unit)
        vals[tensor_index([H.dim] * n, multi) if n else 0] = vec
    return Cochain(pa, n, tuple(vals))


def load_cochain(pa: PartialActionMap, source: str | Path | dict) -> Cochain:
    return parse_cochain(pa, _read_json(source))


def dump_cochain(f: Cochain) -> dict:
    """Inverse of parse_cochain for nonzero entries."""
    return {
        "degree": f.degree,
        "values": {k: [format_scalar(x) for x in v] for k, v in f.label_table().items() if any(v)},
    }


_KLEIN = re.compile(r"^\s*klein4\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)\s*$")


def _twist_from_cochain(omega: Cochain, inverse: Cochain | None) -> TwistedPartialAction:
    """Pair omega with its inverse; a missing inverse is computed, and when
    none exists the zero cochain stands in so that validation reports it."""
    if inverse is None:
        try:
            inverse = invert_in_ideal(omega)
        except (NotInvertible, NotInIdeal):
            inverse = zero_cochain(omega.pa, omega.degree)
    return TwistedPartialAction(omega.pa, omega, inverse)


def parse_cocycle(pa: PartialActionMap, raw: Any, path: str = "/cocycle") -> TwistedPartialAction:
    F = pa.field
    if raw == "trivial":
        return TwistedPartialAction.untwisted(pa)
    if isinstance(raw, str):
        m = _KLEIN.match(raw)
        if not m:
            raise SchemaError(path, f"unknown cocycle {raw!r}; use \"trivial\", \"klein4(x, xbar)\" or a table")
        H = pa.hopf
        if H.kind != "dual" or H.group is None or H.group.orders != (2, 2):
            raise SchemaError(path, "klein4 needs hopf dual:Z2xZ2")
        expected = subgroup_to_action(H, KLEIN_SUBGROUP)
        if pa.act != expected.act or pa.target.dim != 1:
            raise SchemaError(path, "klein4 needs the action of the subgroup {e, a}")
        x = parse_scalar(F, m.group(1), path)
        xbar = parse_scalar(F, m.group(2), path)
        return TwistedPartialAction(pa, klein_four_table(pa, x), klein_four_table(pa, xbar))
    omega = parse_cochain(pa, raw, path)
    if omega.degree != 2:
        raise SchemaError(f"{path}/degree", "a twist has degree 2")
    inverse = parse_cochain(pa, raw["inverse"], f"{path}/inverse") if "inverse" in raw else None
    if inverse is not None and inverse.degree != 2:
        raise SchemaError(f"{path}/inverse/degree", "a twist has degree 2")
    return _twist_from_cochain(omega, inverse)


def parse_instance(source: str | Path | dict, field_override: str | None = None) -> InstanceDescriptor:
    raw = _read_json(source)
    _check(raw, load_schema("descriptor"))
    if field_override is not None:
        raw = {**raw, "field": field_override}
        _check(raw, load_schema("descriptor"))
    try:
        F = field_from_name(raw["field"])
    except ValueError as exc:
        raise SchemaError("/field", str(exc)) from exc
    H = parse_hopf(F, raw["hopf"])
    pa = parse_action(H, raw["action"])
    twist = parse_cocycle(pa, raw["cocycle"]) if "cocycle" in raw else None
    return InstanceDescriptor(raw, F, H, pa, twist)


def descriptor(field_name: str, hopf: str, subgroup=None, cocycle: str | None = None) -> dict:
    """A one-line descriptor for a catalog instance."""
    out: dict = {"field": field_name, "hopf": hopf, "action": {"subgroup": list(subgroup)} if subgroup else "global"}
    if cocycle is not None:
        out["cocycle"] = cocycle
    return out


# ------------------------------------------------------------------ reports


@dataclass
class CommandReport:
    command: str
    instance: Any = None
    sections: list[ValidationReport] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)
    error: str | None = None
    timing: float | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and all(s.ok for s in self.sections)

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return 2
        return 0 if self.ok else 1

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "instance": to_jsonable(self.instance),
            "sections": [
                {
                    "title": s.title,
                    "checks": [
                        {"name": c.name, "passed": c.passed, "witness": to_jsonable(c.witness), "note": c.note}
                        for c in s.checks
                    ],
                }
                for s in self.sections
            ],
            "data": to_jsonable(self.data),
            "error": self.error,
            "result": self._result(),
            "exit_code": self.exit_code,
        }
        if self.timing is not None:
            out["timing_seconds"] = f"{self.timing:.3f}"
        return out

    def _result(self) -> str:
        if self.error is not None:
            return "error"
        return "pass" if self.ok else "fail"


def report_from_dict(raw: dict) -> CommandReport:
    from .report import Check

    sections = []
    for s in raw["sections"]:
        rep = ValidationReport(s["title"])
        rep.checks = [Check(c["name"], c["passed"], c["witness"], c["note"]) for c in s["checks"]]
        sections.append(rep)
    timing = raw.get("timing_seconds")
    return CommandReport(raw["command"], raw["instance"], sections, raw["data"], raw["error"],
                         float(timing) if timing is not None else None)


def _compact(x: Any) -> str:
    return json.dumps(to_jsonable(x), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def emit_report(report: CommandReport, fmt: str = "text") -> str:
    """Byte-stable rendering; timing appears only when recorded."""
    if fmt == "json":
        return json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"command: {report.command}"]
    if report.instance is not None:
        lines.append(f"instance: {_compact(report.instance)}")
    for s in report.sections:
        lines.append(f"[{s.title}]")
        for c in s.checks:
            lines.append(f"  {'PASS' if c.passed else 'FAIL'}  {c.name}")
            if c.note:
                lines.append(f"        note: {c.note}")
            if not c.passed and c.witness:
                lines.append(f"        witness: {_compact(c.witness)}")
    for key, value in report.data.items():
        value = to_jsonable(value)
        lines.append(f"{key}: {value if isinstance(value, str) else _compact(value)}")
    if report.error is not None:
        lines.append(f"error: {report.error}")
    if report.timing is not None:
        lines.append(f"timing: {report.timing:.3f}s")
    failed = sum(not c.passed for s in report.sections for c in s.checks)
    total = sum(len(s.checks) for s in report.sections)
    if report.error is not None:
        lines.append("result: error")
    elif failed:
        lines.append(f"result: FAIL ({failed} of {total} checks failed)")
    else:
        lines.append(f"result: pass ({total} checks)")
    return "\n".join(lines) + "\n"
