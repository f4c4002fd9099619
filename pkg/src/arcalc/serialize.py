"""JSON object documents for modules, S-objects and maps.

Schema (version 1)::

    {"version": 1,
     "algebra": {"backend": "nakayama", "n": 3, "p": 32003},
     "ambient": {"partition": [3]}            # or {"T": [[...]], "degrees": [...]}
     "sub": "zero" | "full" | [[row], ...]}   # rows span the submodule

A general map (an object of the morphism category) replaces
``ambient``/``sub`` by ``"map": {"source": <ambient>, "target": <ambient>,
"matrix": [[...]]}``.  Graded partitions are lists of ``[length, top]``.
"""

from __future__ import annotations

import json

import numpy as np

from .modules import Algebra, LMap, Module, ModuleError, module_from_partition
from .morphisms import HObject, SObject, as_object, named_object

VERSION = 1


class DocumentError(ValueError):
    pass


def _algebra(doc: dict) -> Algebra:
    try:
        a = doc["algebra"]
        return Algebra(int(a["n"]), int(a.get("p", 32003)), a.get("backend", "nakayama"))
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"bad algebra block: {exc}") from None


def _module(alg: Algebra, spec: dict) -> Module:
    if "partition" in spec:
        parts = spec["partition"]
        if alg.graded:
            parts = [tuple(p) for p in parts]
        return module_from_partition(alg, parts)
    if "T" in spec:
        T = np.array(spec["T"], dtype=np.int64).reshape(len(spec["T"]), -1) if spec["T"] else np.zeros((0, 0), dtype=np.int64)
        return Module(alg, T, spec.get("degrees"))
    raise DocumentError("module spec needs 'partition' or 'T'")


def _module_doc(M: Module) -> dict:
    if M.jordan.U.shape == (M.dim, M.dim) and np.array_equal(M.jordan.U, np.eye(M.dim, dtype=np.int64)):
        return {"partition": [list(p) if M.alg.graded else p for p in M.partition]}
    doc = {"T": M.T.tolist()}
    if M.degrees is not None:
        doc["degrees"] = list(M.degrees)
    return doc


def load_object(doc: dict) -> HObject:
    if doc.get("version", VERSION) != VERSION:
        raise DocumentError(f"unsupported document version {doc.get('version')}")
    alg = _algebra(doc)
    F = alg.field
    try:
        if "map" in doc:
            m = doc["map"]
            A, B = _module(alg, m["source"]), _module(alg, m["target"])
            M = F.array(m["matrix"]) if A.dim and B.dim else np.zeros((B.dim, A.dim), dtype=np.int64)
            return as_object(LMap(A, B, M.reshape(B.dim, A.dim)).check())
        B = _module(alg, doc["ambient"])
        sub = doc.get("sub", "zero")
        if sub == "zero":
            basis = np.zeros((B.dim, 0), dtype=np.int64)
        elif sub == "full":
            basis = np.eye(B.dim, dtype=np.int64)
        else:
            rows = F.array(sub).reshape(-1, B.dim) if len(sub) else np.zeros((0, B.dim), dtype=np.int64)
            if F.rank(rows) != rows.shape[0]:
                raise DocumentError("sub rows are linearly dependent")
            basis = rows.T.copy()
        if basis.shape[1] == 0:
            return SObject(LMap(alg.zero_module(), B, basis))
        return SObject.from_sub(B, basis)
    except KeyError as exc:
        raise DocumentError(f"missing field {exc}") from None
    except ModuleError as exc:
        raise DocumentError(str(exc)) from None


def dump_object(x: HObject) -> dict:
    a = x.alg
    doc = {"version": VERSION, "algebra": {"backend": a.backend, "n": a.n, "p": a.p}}
    if isinstance(x, SObject):
        doc["ambient"] = _module_doc(x.target)
        F = a.field
        if x.source.dim == 0:
            doc["sub"] = "zero"
        elif x.source.dim == x.target.dim:
            doc["sub"] = "full"
        else:
            doc["sub"] = F.colspace_rref(x.f.M).T.tolist()
    else:
        doc["map"] = {
            "source": _module_doc(x.source),
            "target": _module_doc(x.target),
            "matrix": x.f.M.tolist(),
        }
    return doc


def dumps(x: HObject) -> str:
    return json.dumps(dump_object(x), sort_keys=True) + "\n"


def read_object(path_or_name: str, alg: Algebra | None = None) -> HObject:
    """Load a document from a file, or build a named object such as ``k_in_Lambda``."""
    if alg is not None and not path_or_name.endswith(".json"):
        try:
            return named_object(path_or_name, alg)
        except ValueError:
            pass
    try:
        with open(path_or_name, encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise DocumentError(f"no such file or object name: {path_or_name}") from None
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path_or_name}: invalid JSON ({exc})") from None
    return load_object(doc)
