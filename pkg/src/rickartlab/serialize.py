"""JSON formats for rings, modules, Z-modules, and witnesses."""

from __future__ import annotations

import dataclasses
import enum
import hashlib
import json
from typing import Any, Callable

from ._core import IndexSet, Verdict
from .finmod import FiniteModule, Homomorphism, SummandCertificate, build_module
from .finring import FiniteRing, build_ring, to_expression_tree
from .zmodsnf import FgZModule, ZModHom


class SchemaError(ValueError):
    """An input document does not match the expected format."""


def ring_to_json(R: FiniteRing) -> dict:
    tree = to_expression_tree(R.label)
    if tree is not None and build_ring(tree) == R:
        return {"constructor": tree}
    return {"tables": {"add": [list(r) for r in R.add], "mul": [list(r) for r in R.mul],
                       "zero": R.zero, "one": R.one}, "label": R.label}


def ring_from_json(obj, resolve: Callable[[str], Any] | None = None) -> FiniteRing:
    if isinstance(obj, str) and obj.startswith("builtin:"):
        if resolve is None:
            raise SchemaError(f"no resolver for {obj}")
        R = resolve(obj)
        if not isinstance(R, FiniteRing):
            raise SchemaError(f"{obj} is not a ring")
        return R
    if isinstance(obj, str):
        return build_ring(obj)
    if not isinstance(obj, dict):
        raise SchemaError("ring must be an object, an expression string, or a builtin reference")
    if "tables" in obj:
        t = obj["tables"]
        missing = [k for k in ("add", "mul", "zero", "one") if k not in t]
        if missing:
            raise SchemaError(f"ring tables missing field(s): {', '.join(missing)}")
        return build_ring(obj)
    if "constructor" in obj:
        return build_ring(obj["constructor"])
    raise SchemaError("ring object needs a 'constructor' or 'tables' field")


def module_to_json(M: FiniteModule) -> dict:
    return {
        "ring": ring_to_json(M.ring),
        "cyclic_orders": list(M.orders),
        "action": {str(r): [list(M.elements[y]) for y in M.action[r]] for r in range(M.ring.order)},
        "label": M.label,
    }


def module_from_json(obj, resolve: Callable[[str], Any] | None = None) -> FiniteModule:
    if isinstance(obj, str) and obj.startswith("builtin:"):
        if resolve is None:
            raise SchemaError(f"no resolver for {obj}")
        M = resolve(obj)
        if not isinstance(M, FiniteModule):
            raise SchemaError(f"{obj} is not a module")
        return M
    if not isinstance(obj, dict) or "ring" not in obj:
        raise SchemaError("module object needs a 'ring' field")
    R = ring_from_json(obj["ring"], resolve)
    spec = {k: v for k, v in obj.items() if k != "ring"}
    if "direct_sum" in spec:
        spec["direct_sum"] = [module_from_json(s, resolve) if isinstance(s, str) or "ring" in s else s
                              for s in spec["direct_sum"]]
    elif not (spec.get("regular") or spec.get("zero") or "cyclic_orders" in spec):
        raise SchemaError("module object needs 'cyclic_orders', 'regular', 'zero' or 'direct_sum'")
    return build_module(R, spec)


def zmodule_to_json(G: FgZModule) -> dict:
    return {"rank": G.rank, "torsion": list(G.torsion)}


def zmodule_from_json(obj, resolve: Callable[[str], Any] | None = None) -> FgZModule:
    if isinstance(obj, str) and obj.startswith("builtin:"):
        if resolve is None:
            raise SchemaError(f"no resolver for {obj}")
        G = resolve(obj)
        if not isinstance(G, FgZModule):
            raise SchemaError(f"{obj} is not a Z-module")
        return G
    if not isinstance(obj, dict) or "rank" not in obj:
        raise SchemaError("z-module object needs a 'rank' field")
    try:
        return FgZModule.from_orders(int(obj["rank"]), [int(d) for d in obj.get("torsion", [])])
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad z-module: {exc}") from exc


def to_jsonable(obj, module: FiniteModule | None = None):
    """Plain-JSON rendering of verdicts, witnesses and reports.

    Homomorphisms become generator-image arrays plus a readable rendering;
    submodules become member tuples when the ambient module is known.
    """
    rec = lambda x: to_jsonable(x, module)  # noqa: E731
    if isinstance(obj, Verdict):
        return {"property": obj.property, "status": obj.status.value, "witness": rec(obj.witness),
                "witnesses": [rec(w) for w in obj.witnesses] if len(obj.witnesses) > 1 else [],
                "certificate": rec(obj.certificate), "reason": obj.reason}
    if isinstance(obj, Homomorphism):
        return {"images": [list(obj.target.elements[y]) for y in obj.images], "render": obj.render(),
                "source": obj.source.label, "target": obj.target.label}
    if isinstance(obj, ZModHom):
        return {"matrix": [list(r) for r in obj.matrix], "render": obj.render(),
                "source": str(obj.source), "target": str(obj.target)}
    if isinstance(obj, FgZModule):
        return {"rank": obj.rank, "torsion": list(obj.torsion), "render": str(obj)}
    if isinstance(obj, SummandCertificate):
        return {"complement": rec(obj.complement), "idempotent": rec(obj.idempotent)}
    if isinstance(obj, IndexSet):
        if module is not None and type(obj).__name__ == "Submodule":
            return {"members": [list(module.elements[i]) for i in obj.elements]}
        return {"members": obj.elements}
    if isinstance(obj, enum.Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: rec(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        for name in ("status", "flags", "hypotheses", "condition_2"):
            if hasattr(type(obj), name):
                out[name] = rec(getattr(obj, name))
        return out
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): rec(v)
                for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [rec(x) for x in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return obj


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()
