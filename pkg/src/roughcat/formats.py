"""Reading and writing the JSON and CSV file formats.

Space::      {"universe": ["a","b","c","d"], "blocks": [["a","b"],["c","d"]]}
Operator::   {"universe": [...], "backing": {"partition": {"blocks": [...]}, "mode": "upper"}}
             {"universe": [...], "backing": {"table": [{"in": ["a"], "out": ["a","b"]}, ...]}}
Map::        {"map": {"a": "p", "b": "p", ...}}
Hom::        {"objects": {...}, "attributes": {...}, "values": {...}}
CSV::        header ``object,<attr1>,<attr2>,...`` then one row per object.

Parse failures raise :class:`FormatError`, whose message names the file
and the location inside it.
"""
from __future__ import annotations

import csv
import io as _io
import json
from pathlib import Path

from .approximation import ApproximationSpace, Partition
from .errors import InputError
from .infosys import InfoSystem, OADHom
from .operators import SetOperator
from .sets import TotalMap, Universe

__all__ = [
    "FormatError",
    "load_json",
    "parse_space",
    "space_to_json",
    "parse_operator",
    "operator_to_json",
    "parse_map",
    "map_to_json",
    "parse_hom",
    "hom_to_json",
    "parse_infosys_csv",
    "infosys_to_csv",
    "read_space",
    "read_operator",
    "read_map",
    "read_hom",
    "read_infosys",
]


class FormatError(InputError):
    def __init__(self, source: str, location: str, message: str):
        self.source = source
        self.location = location
        super().__init__(f"{source}: {location}: {message}" if location else f"{source}: {message}")


def load_json(path: str | Path):
    path = str(path)
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(path, "", exc.strerror or str(exc)) from None
    except json.JSONDecodeError as exc:
        raise FormatError(path, f"line {exc.lineno} column {exc.colno}", exc.msg) from None


def _expect(cond: bool, src: str, loc: str, msg: str):
    if not cond:
        raise FormatError(src, loc, msg)


def _str_list(value, src: str, loc: str) -> list[str]:
    _expect(isinstance(value, list), src, loc, "expected a list of strings")
    for k, v in enumerate(value):
        _expect(isinstance(v, str), src, f"{loc}[{k}]", f"expected a string, got {json.dumps(v)}")
    return value


def _universe(value, src: str, loc: str) -> Universe:
    elems = _str_list(value, src, loc)
    try:
        return Universe(tuple(elems))
    except InputError as exc:
        raise FormatError(src, loc, str(exc)) from None


def _members(U: Universe, value, src: str, loc: str) -> int:
    bits = 0
    for k, v in enumerate(_str_list(value, src, loc)):
        _expect(v in U, src, f"{loc}[{k}]", f"unknown element {v!r}")
        bits |= 1 << U.index[v]
    return bits


def _blocks(U: Universe, value, src: str, loc: str) -> Partition:
    _expect(isinstance(value, list), src, loc, "expected a list of blocks")
    blocks = [_members(U, b, src, f"{loc}[{k}]") for k, b in enumerate(value)]
    try:
        return Partition(U, tuple(blocks))
    except InputError as exc:
        raise FormatError(src, loc, str(exc)) from None


def parse_space(obj, src: str = "<space>") -> ApproximationSpace:
    _expect(isinstance(obj, dict), src, "", "space file must be a JSON object")
    _expect("universe" in obj, src, "universe", "missing field")
    U = _universe(obj["universe"], src, "universe")
    if "blocks" in obj:
        P = _blocks(U, obj["blocks"], src, "blocks")
    elif "pairs" in obj:
        pairs = obj["pairs"]
        _expect(isinstance(pairs, list), src, "pairs", "expected a list of pairs")
        for k, p in enumerate(pairs):
            _str_list(p, src, f"pairs[{k}]")
            _expect(len(p) == 2, src, f"pairs[{k}]", "expected a pair")
            for j, v in enumerate(p):
                _expect(v in U, src, f"pairs[{k}][{j}]", f"unknown element {v!r}")
        try:
            P = Partition.from_pairs(U, [tuple(p) for p in pairs])
        except InputError as exc:
            raise FormatError(src, "pairs", str(exc)) from None
    else:
        raise FormatError(src, "blocks", "missing field")
    return ApproximationSpace(U, P)


def space_to_json(S: ApproximationSpace) -> dict:
    return {"universe": list(S.universe), "blocks": S.partition.as_lists()}


def parse_operator(obj, src: str = "<operator>") -> SetOperator:
    _expect(isinstance(obj, dict), src, "", "operator file must be a JSON object")
    _expect("universe" in obj, src, "universe", "missing field")
    U = _universe(obj["universe"], src, "universe")
    backing = obj.get("backing")
    _expect(isinstance(backing, dict), src, "backing", "missing or not an object")
    if "partition" in backing:
        part = backing["partition"]
        _expect(isinstance(part, dict) and "blocks" in part, src, "backing.partition", "expected {\"blocks\": [...]}")
        if "universe" in part:
            inner = _universe(part["universe"], src, "backing.partition.universe")
            _expect(inner == U, src, "backing.partition.universe", "differs from the operator universe")
        P = _blocks(U, part["blocks"], src, "backing.partition.blocks")
        mode = backing.get("mode", "upper")
        _expect(mode in ("upper", "lower"), src, "backing.mode", f"expected 'upper' or 'lower', got {mode!r}")
        return SetOperator.from_partition(P, mode)
    if "table" in backing:
        entries = backing["table"]
        _expect(isinstance(entries, list), src, "backing.table", "expected a list of entries")
        _expect(len(U) <= 16, src, "universe", "extensional tables are limited to 16 elements")
        rows = [None] * (1 << len(U))
        for k, e in enumerate(entries):
            loc = f"backing.table[{k}]"
            _expect(isinstance(e, dict) and "in" in e and "out" in e, src, loc, "expected {\"in\": [...], \"out\": [...]}")
            x = _members(U, e["in"], src, f"{loc}.in")
            _expect(rows[x] is None, src, f"{loc}.in", f"duplicate entry for {U.from_bits(x)}")
            rows[x] = _members(U, e["out"], src, f"{loc}.out")
        missing = [b for b, r in enumerate(rows) if r is None]
        _expect(not missing, src, "backing.table", f"no entry for subset {U.from_bits(missing[0]) if missing else ''}")
        return SetOperator(U, table=tuple(rows))
    raise FormatError(src, "backing", "expected a 'partition' or 'table' backing")


def operator_to_json(op: SetOperator) -> dict:
    out = {"universe": list(op.universe)}
    if op.partition is not None:
        out["backing"] = {"partition": {"blocks": op.partition.as_lists()}, "mode": op.mode}
    else:
        U = op.universe
        out["backing"] = {
            "table": [{"in": U.members(x), "out": U.members(y)} for x, y in enumerate(op.table)]
        }
    return out


def _str_dict(value, src: str, loc: str) -> dict[str, str]:
    _expect(isinstance(value, dict), src, loc, "expected an object of string -> string")
    for k, v in value.items():
        _expect(isinstance(v, str), src, f"{loc}.{k}", f"expected a string, got {json.dumps(v)}")
    return value


def parse_map(obj, source: Universe, target: Universe, src: str = "<map>") -> TotalMap:
    _expect(isinstance(obj, dict) and "map" in obj, src, "map", "missing field")
    assignment = _str_dict(obj["map"], src, "map")
    for u, v in assignment.items():
        _expect(u in source, src, f"map.{u}", f"unknown source element {u!r}")
        _expect(v in target, src, f"map.{u}", f"image {v!r} is not a target element")
    for u in source:
        _expect(u in assignment, src, "map", f"map is partial: no image for {u!r}")
    return TotalMap.from_dict(source, target, assignment)


def map_to_json(f: TotalMap) -> dict:
    return {"map": f.as_dict()}


def parse_hom(obj, source: InfoSystem, target: InfoSystem, src: str = "<hom>") -> OADHom:
    _expect(isinstance(obj, dict), src, "", "hom file must be a JSON object")
    for key in ("objects", "attributes", "values"):
        _expect(key in obj, src, key, "missing field")
    objects = parse_map({"map": _str_dict(obj["objects"], src, "objects")}, source.universe, target.universe, src)
    attrs = _str_dict(obj["attributes"], src, "attributes")
    values = _str_dict(obj["values"], src, "values")
    try:
        return OADHom(objects, attrs, values, source, target)
    except InputError as exc:
        loc = "attributes" if "attribute" in str(exc) else "values"
        raise FormatError(src, loc, str(exc)) from None


def hom_to_json(h: OADHom) -> dict:
    return {
        "objects": h.objects.as_dict(),
        "attributes": dict(h.attributes),
        "values": dict(sorted(h.values.items())),
    }


def parse_infosys_csv(text: str, src: str = "<csv>") -> InfoSystem:
    reader = csv.reader(_io.StringIO(text))
    rows = [r for r in reader if r]
    _expect(bool(rows), src, "line 1", "missing header row")
    header = rows[0]
    _expect(header[0] == "object", src, "line 1", f"first header column must be 'object', got {header[0]!r}")
    attrs = header[1:]
    seen = set()
    for k, a in enumerate(attrs):
        _expect(a not in seen, src, f"line 1 column {k + 2}", f"duplicate attribute {a!r}")
        seen.add(a)
    objects, cells = [], []
    where = {}
    for lineno, r in enumerate(rows[1:], start=2):
        _expect(len(r) == len(header), src, f"line {lineno}", f"expected {len(header)} fields, got {len(r)}")
        x = r[0]
        _expect(x not in where, src, f"line {lineno}", f"duplicate object {x!r} (first on line {where.get(x)})")
        where[x] = lineno
        objects.append(x)
        cells.append(tuple(r[1:]))
    return InfoSystem(Universe(tuple(objects)), tuple(attrs), tuple(cells))


def infosys_to_csv(T: InfoSystem) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["object", *T.attributes])
    for x, r in zip(T.universe, T.rows):
        w.writerow([x, *r])
    return buf.getvalue()


def read_space(path) -> ApproximationSpace:
    return parse_space(load_json(path), str(path))


def read_operator(path) -> SetOperator:
    return parse_operator(load_json(path), str(path))


def read_map(path, source: Universe, target: Universe) -> TotalMap:
    return parse_map(load_json(path), source, target, str(path))


def read_hom(path, source: InfoSystem, target: InfoSystem) -> OADHom:
    return parse_hom(load_json(path), source, target, str(path))


def read_infosys(path) -> InfoSystem:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(str(path), "", exc.strerror or str(exc)) from None
    return parse_infosys_csv(text, str(path))
