"""JSON documents for algebras, brackets, m3 operations and seed representations.

Every document carries ``"schema_version": 1``. Rationals are strings such
as ``"-3/2"``; floats never appear. Structural validation uses the shipped
JSON Schema documents, then semantic checks (index ranges, degree filter)
run on the parsed objects. ``dumps_canonical`` sorts keys and entries, so
equal objects serialize to identical bytes.
"""

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from precy.ainfinity import ALL_PATTERNS, TYPE_B_PATTERNS, SortPattern, TernaryOperation, degree_allowed
from precy.algebra import AssocAlgebra
from precy.double_poisson import DoubleBracket
from precy.errors import PrecyError, SchemaError
from precy.repspaces import RepPoint
from precy.scalars import format_scalar, to_scalar

SCHEMA_VERSION = 1


@lru_cache(maxsize=None)
def load_schema(kind):
    text = resources.files("precy").joinpath("data", "schemas", f"{kind}.schema.json").read_text()
    return json.loads(text)


def _location(error):
    path = "$"
    for part in error.absolute_path:
        path += f"[{part}]" if isinstance(part, int) else f".{part}"
    return path


def validate(doc, kind):
    validator = jsonschema.Draft202012Validator(load_schema(kind))
    errors = sorted(validator.iter_errors(doc), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        first = errors[0]
        raise SchemaError(f"{kind} document: {first.message}", _location(first))


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc.msg}", f"{path}:{exc.lineno}:{exc.colno}") from exc
    except OSError as exc:
        raise SchemaError(f"cannot read file: {exc.strerror}", str(path)) from exc


def _reject_float(text):
    raise SchemaError(f"floating-point literal {text} is not allowed; write rationals as strings")


def dumps_canonical(doc):
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(doc, path):
    text = dumps_canonical(doc)
    if path is None or str(path) == "-":
        return text
    Path(path).write_text(text, encoding="utf-8")
    return text


def _semantic(fn, location):
    try:
        return fn()
    except SchemaError:
        raise
    except (PrecyError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(str(exc), location) from exc


# --- algebra ----------------------------------------------------------------

def algebra_from_doc(doc, location="$", inline=False):
    if inline and isinstance(doc, dict) and "schema_version" not in doc:
        doc = {"schema_version": SCHEMA_VERSION, **doc}
    validate(doc, "algebra")
    n = doc["dim"]
    if len(doc["basis"]) != n:
        raise SchemaError(f"basis has {len(doc['basis'])} names but dim is {n}", f"{location}.basis")
    if len(set(doc["basis"])) != n:
        raise SchemaError("basis names must be distinct", f"{location}.basis")
    consts = {}
    for pos, (i, j, k, c) in enumerate(doc["structure_constants"]):
        if max(i, j, k) >= n:
            raise SchemaError(f"index out of range for dim {n}", f"{location}.structure_constants[{pos}]")
        if (i, j, k) in consts:
            raise SchemaError(f"duplicate entry {(i, j, k)}", f"{location}.structure_constants[{pos}]")
        consts[(i, j, k)] = _semantic(lambda: to_scalar(c), f"{location}.structure_constants[{pos}][3]")
    unit = doc.get("unit")
    if unit is not None and len(unit) != n:
        raise SchemaError(f"unit has length {len(unit)}, expected {n}", f"{location}.unit")
    return _semantic(lambda: AssocAlgebra(n, consts, list(doc["basis"]), unit=unit, name=doc.get("name", "")),
                     location)


def algebra_to_doc(alg: AssocAlgebra, with_header=True):
    doc = {
        "name": alg.name,
        "dim": alg.dim,
        "basis": list(alg.basis_names),
        "structure_constants": [[i, j, k, format_scalar(c)] for (i, j, k), c in sorted(alg.structure_constants.items())],
    }
    if alg.unit is not None:
        doc["unit"] = [format_scalar(c) for c in alg.unit]
    if with_header:
        doc = {"schema_version": SCHEMA_VERSION, "kind": "algebra", **doc}
    return doc


def load_algebra(path):
    return algebra_from_doc(read_json(path))


# --- bracket ------------------------------------------------------------------

def bracket_from_doc(doc, alg: AssocAlgebra = None, base_dir=None):
    validate(doc, "bracket")
    inline = doc.get("algebra")
    if isinstance(inline, str):
        ref = Path(base_dir or ".") / inline
        declared = load_algebra(ref)
    elif inline is not None:
        declared = algebra_from_doc(inline, "$.algebra", inline=True)
    else:
        declared = None
    if alg is None:
        if declared is None:
            raise SchemaError("bracket document names no algebra and none was given", "$.algebra")
        alg = declared
    elif declared is not None and declared != alg:
        raise SchemaError("bracket document refers to a different algebra", "$.algebra")
    entries = {}
    for pos, (i, j, k, l, c) in enumerate(doc["entries"]):
        if max(i, j, k, l) >= alg.dim:
            raise SchemaError(f"index out of range for dim {alg.dim}", f"$.entries[{pos}]")
        if (i, j, k, l) in entries:
            raise SchemaError(f"duplicate entry {(i, j, k, l)}", f"$.entries[{pos}]")
        entries[(i, j, k, l)] = _semantic(lambda: to_scalar(c), f"$.entries[{pos}][4]")
    return DoubleBracket(alg, entries)


def bracket_to_doc(D: DoubleBracket):
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "bracket",
        "algebra": algebra_to_doc(D.alg, with_header=False),
        "entries": [[*key, format_scalar(c)] for key, c in sorted(D.entries.items())],
    }


def load_bracket(path, alg=None):
    return bracket_from_doc(read_json(path), alg, Path(path).parent)


# --- m3 -----------------------------------------------------------------------

def m3_from_doc(doc, dim):
    validate(doc, "m3")
    if "dim" in doc and doc["dim"] != dim:
        raise SchemaError(f"m3 has dim {doc['dim']} but the algebra has dim {dim}", "$.dim")
    tables = {}
    for cpos, comp in enumerate(doc["components"]):
        pattern = SortPattern(tuple(comp["inputs"]), comp["output"])
        if pattern in tables:
            raise SchemaError(f"component {pattern} appears twice", f"$.components[{cpos}]")
        if not degree_allowed(pattern):
            raise SchemaError(f"component {pattern} is not of degree +1", f"$.components[{cpos}]")
        table = {}
        for pos, (i1, i2, i3, k, c) in enumerate(comp["entries"]):
            if max(i1, i2, i3, k) >= dim:
                raise SchemaError(f"index out of range for dim {dim}", f"$.components[{cpos}].entries[{pos}]")
            table[(i1, i2, i3, k)] = _semantic(lambda: to_scalar(c), f"$.components[{cpos}].entries[{pos}][4]")
        tables[pattern] = table
    return _semantic(lambda: TernaryOperation(dim, tables), "$.components")


def m3_to_doc(m3: TernaryOperation):
    """Type-B components are always listed, other components only when nonzero."""
    comps = []
    for pattern in ALL_PATTERNS:
        table = m3.table(pattern)
        if not table and pattern not in TYPE_B_PATTERNS:
            continue
        comps.append({
            "inputs": [s.value for s in pattern.inputs],
            "output": pattern.output.value,
            "entries": [[*key, format_scalar(c)] for key, c in sorted(table.items())],
        })
    return {"schema_version": SCHEMA_VERSION, "kind": "m3", "dim": m3.dim, "components": comps}


def load_m3(path, dim):
    return m3_from_doc(read_json(path), dim)


# --- seeds --------------------------------------------------------------------

def _seed_from_doc(doc, alg, location):
    n = doc["n"]
    mats = []
    names = doc["matrices"]
    unknown = sorted(set(names) - set(alg.basis_names))
    if unknown:
        raise SchemaError(f"unknown basis names {unknown}", f"{location}.matrices")
    for name in alg.basis_names:
        if name not in names:
            raise SchemaError(f"missing matrix for basis element {name!r}", f"{location}.matrices")
        mats.append(names[name])
    return _semantic(lambda: RepPoint(n, tuple(mats)), f"{location}.matrices")


def seeds_from_doc(doc, alg: AssocAlgebra):
    validate(doc, "rep-seeds")
    if "seeds" in doc:
        return [_seed_from_doc(s, alg, f"$.seeds[{i}]") for i, s in enumerate(doc["seeds"])]
    return [_seed_from_doc(doc, alg, "$")]


def seeds_to_doc(seeds, alg: AssocAlgebra):
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "rep-seeds",
        "seeds": [
            {"n": p.n, "matrices": {name: [[format_scalar(v) for v in row] for row in p.mats[a]]
                                    for a, name in enumerate(alg.basis_names)}}
            for p in seeds
        ],
    }


def load_seeds(path, alg):
    return seeds_from_doc(read_json(path), alg)
