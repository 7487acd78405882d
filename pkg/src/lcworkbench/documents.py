"""Algebra and module documents (TOML or JSON) and report serialization.

Every scalar and polynomial is written as a string in the same textual
format the parser reads, so documents round-trip exactly.

Algebra document::

    schemaVersion = 1
    name = "KB(-1)_[2]"
    kind = "kb"
    p = "-1"
    cutoff = 2

    [[basis]]
    family = "L"
    index = 0
    parity = 0
    degree = 0

    [[brackets]]
    left = "L_0"
    right = "L_0"
    value = "((-1)*D + (-2)*L)*L_0"

Module document: ``[algebra]`` (kind, p, cutoff) plus either ``[family]``
(name and parameters) or ``[[generators]]`` / ``[[actions]]`` tables.
"""

from __future__ import annotations

import json
import os

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .catalog import build_K2, build_KB_quotient, build_k
from .conformal import BasisSymbol, Combination, ConformalSuperalgebra
from .modules import ConformalModule, Generator, build_module
from .parsing import parse_combination, parse_constant
from .scalars import make_field

__all__ = [
    "SCHEMA_VERSION",
    "DocumentError",
    "algebra_to_doc",
    "algebra_from_doc",
    "module_to_doc",
    "module_from_doc",
    "build_algebra",
    "load_document",
    "dump_document",
    "to_toml",
    "report_json",
]

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    """Malformed or inconsistent input document."""


def build_algebra(kind="kb", p=None, cutoff=0):
    kind = kind.lower()
    if kind == "kb":
        if p is None:
            raise DocumentError("family kb needs p")
        return build_KB_quotient(p, int(cutoff))
    if kind == "kn":
        return build_k(int(cutoff))
    if kind == "k2":
        return build_K2(1 if p is None else p)
    raise DocumentError(f"unknown algebra family {kind!r} (expected kb, kn or k2)")


def _spec_of(A: ConformalSuperalgebra) -> dict:
    kind = A.meta.get("kind", "custom")
    out = {"kind": kind, "p": str(A.meta.get("p", "")), "cutoff": A.meta.get("cutoff", 0)}
    if kind == "kn":
        out["cutoff"] = A.meta["n"]
    return out


def algebra_to_doc(A: ConformalSuperalgebra) -> dict:
    doc = {"schemaVersion": SCHEMA_VERSION, "name": A.name}
    doc.update(_spec_of(A))
    if A.context.degree == 2 and A.context.p != A.meta.get("p"):
        doc["field"] = str(A.context.p)
    doc["basis"] = [{"family": s.family, "index": s.index, "parity": s.parity,
                     "degree": A.degree[s] if A.degree else s.index} for s in A.basis]
    br = []
    for a in A.basis:
        for b in A.basis:
            val = A.table.get((a, b))
            if val:
                br.append({"left": a.name, "right": b.name, "value": str(val)})
    doc["brackets"] = br
    return doc


def _check_version(doc):
    v = doc.get("schemaVersion", SCHEMA_VERSION)
    if v != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schemaVersion {v!r}")


def algebra_from_doc(doc: dict) -> ConformalSuperalgebra:
    """Rebuild an algebra from its document; the table is taken verbatim (no validation of axioms)."""
    _check_version(doc)
    try:
        p = doc.get("p")
        F = make_field(doc.get("field", p if p not in (None, "") else 1))
        basis = [BasisSymbol(str(b["family"]), int(b["index"]), int(b["parity"]) % 2)
                 for b in doc["basis"]]
        degree = {s: int(b.get("degree", s.index)) for s, b in zip(basis, doc["basis"])}
        by = {s.name: s for s in basis}
        table = {}
        for e in doc.get("brackets", []):
            a, b = by[e["left"]], by[e["right"]]
            val = parse_combination(str(e["value"]), F, by.get)
            if None in val and val[None]:
                raise DocumentError(f"bracket [{a} {b}] has a scalar part")
            val.pop(None, None)
            table[(a, b)] = Combination(val)
        meta = {"kind": doc.get("kind", "custom"), "cutoff": int(doc.get("cutoff", 0))}
        if p not in (None, ""):
            meta["p"] = parse_constant(str(p), F)
        if meta["kind"] == "kn":
            meta["n"] = meta["cutoff"]
        return ConformalSuperalgebra(F, basis, table, degree, doc.get("name", "algebra"), meta)
    except KeyError as exc:
        raise DocumentError(f"missing or unknown key {exc}") from None


def module_to_doc(M: ConformalModule) -> dict:
    doc = {"schemaVersion": SCHEMA_VERSION, "name": M.name, "algebra": _spec_of(M.algebra)}
    if M.family in ("V1", "V2", "V22", "trivial"):
        fam = {"name": M.family}
        fam.update({k: str(v) for k, v in sorted(M.params.items())})
        if M.family == "trivial":
            fam["parity"] = M.generators[0].parity
        if M.reversed and M.family != "trivial":
            fam["reversed"] = True
        doc["family"] = fam
    doc["generators"] = [{"name": g.name, "parity": g.parity} for g in M.generators]
    acts = []
    for a in M.algebra.basis:
        for g in M.generators:
            val = M.actions.get((a, g))
            if val:
                acts.append({"symbol": a.name, "generator": g.name, "value": str(val)})
    doc["actions"] = acts
    return doc


_PARAM_ALIASES = {"delta": "delta", "lambda": "lam", "lam": "lam", "alpha": "alpha", "beta": "beta"}


def module_from_doc(doc: dict, algebra=None) -> ConformalModule:
    """Family section wins when present; otherwise the raw generator/action tables are used."""
    _check_version(doc)
    if algebra is None:
        spec = doc.get("algebra")
        if not spec:
            raise DocumentError("module document needs an [algebra] section")
        algebra = build_algebra(spec.get("kind", "kb"), spec.get("p"), spec.get("cutoff", 0))
    fam = doc.get("family")
    if fam:
        name = fam.get("name")
        params = {}
        for k, v in fam.items():
            if k in _PARAM_ALIASES:
                params[_PARAM_ALIASES[k]] = str(v)
        M = build_module(name, params, algebra, parity=int(fam.get("parity", 0)))
        if fam.get("reversed"):
            from .modules import reverse_parity

            M = reverse_parity(M)
        return M
    try:
        gens = [Generator(str(g["name"]), int(g["parity"]) % 2) for g in doc["generators"]]
        by = {g.name: g for g in gens}
        F = algebra.context
        acts = {}
        for e in doc.get("actions", []):
            val = parse_combination(str(e["value"]), F, by.get)
            val.pop(None, None)
            acts[(algebra.symbol(e["symbol"]), by[e["generator"]])] = Combination(val)
    except KeyError as exc:
        raise DocumentError(f"missing or unknown key {exc}") from None
    return ConformalModule(algebra, gens, acts, family="custom", name=doc.get("name", "module"))


# -- files -----------------------------------------------------------------

def load_document(path) -> dict:
    path = os.fspath(path)
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    try:
        if path.endswith(".toml"):
            return tomllib.loads(data.decode())
        return json.loads(data)
    except (ValueError, UnicodeDecodeError) as exc:
        raise DocumentError(f"cannot parse {path}: {exc}") from None


def _toml_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    return json.dumps(str(v), ensure_ascii=False)


def to_toml(doc: dict) -> str:
    """TOML for the flat shape used here: scalars, one level of tables, arrays of tables."""
    head, tables, arrays = [], [], []
    for k, v in doc.items():
        if isinstance(v, dict):
            tables.append((k, v))
        elif isinstance(v, list):
            arrays.append((k, v))
        else:
            head.append(f"{k} = {_toml_value(v)}")
    out = head[:]
    for k, v in tables:
        out.append("")
        out.append(f"[{k}]")
        out.extend(f"{kk} = {_toml_value(vv)}" for kk, vv in v.items())
    for k, rows in arrays:
        for row in rows:
            out.append("")
            out.append(f"[[{k}]]")
            out.extend(f"{kk} = {_toml_value(vv)}" for kk, vv in row.items())
    return "\n".join(out) + "\n"


def dump_document(doc: dict, fmt="json") -> str:
    if fmt == "toml":
        return to_toml(doc)
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items() if not str(k).startswith("_")}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, float):
        return x
    return str(x)


def report_json(payload: dict) -> str:
    """Deterministic JSON: schemaVersion first, every non-JSON value stringified."""
    body = {"schemaVersion": SCHEMA_VERSION}
    body.update(_plain(payload))
    return json.dumps(body, indent=2, ensure_ascii=False) + "\n"
