"""Named builtin corpus: rings, modules, Z-modules, and direct-sum pairs.

Every entry is a JSON document in the same formats the CLI reads, so the
corpus doubles as a round-trip fixture. Objects are built on first use.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .serialize import module_from_json, ring_from_json, zmodule_from_json

CORPUS_VERSION = "1"


def _upper_triangular_z2() -> dict:
    """Upper-triangular 2x2 matrices over the 2-element field, as explicit tables."""
    mats = list(itertools.product(range(2), repeat=3))  # (a, b, d) = [[a, b], [0, d]]
    index = {m: i for i, m in enumerate(mats)}
    add = [[index[tuple((x + y) % 2 for x, y in zip(s, t))] for t in mats] for s in mats]
    mul = [[index[((s[0] * t[0]) % 2, (s[0] * t[1] + s[1] * t[2]) % 2, (s[2] * t[2]) % 2)]
            for t in mats] for s in mats]
    return {"tables": {"add": add, "mul": mul, "zero": index[(0, 0, 0)], "one": index[(1, 0, 1)]},
            "label": "upper_triangular(zmod(2), 2)"}


def _top_row_t2_z2() -> dict:
    """The right ideal of top-row matrices in ``t2_z2``: its socle admits no nonzero map from it."""
    mats = list(itertools.product(range(2), repeat=3))
    # row vector (x, y) times [[a, b], [0, d]] is (x a, x b + y d)
    action = {str(i): [[a, b], [0, d]] for i, (a, b, d) in enumerate(mats)}
    return {"ring": "builtin:t2_z2", "cyclic_orders": [2, 2], "action": action}


def _ring_specs() -> dict:
    rings = {f"z{n}": f"zmod({n})" for n in range(1, 13)}
    rings["z16"] = "zmod(16)"
    rings.update({
        "z2x2": "product(zmod(2), zmod(2))",
        "z2x2x2": "product(zmod(2), zmod(2), zmod(2))",
        "z2x2x2x2": "product(zmod(2), zmod(2), zmod(2), zmod(2))",
        "z2x4": "product(zmod(2), zmod(4))",
        "z4x4": "product(zmod(4), zmod(4))",
        "z2x2x4": "product(zmod(2), zmod(2), zmod(4))",
        "z2x2x2x3": "product(zmod(2), zmod(2), zmod(2), zmod(3))",
        "m2_z2": "matrix(zmod(2), 2)",
        "t2_z2": _upper_triangular_z2(),
        "z2_dual": "poly_quotient(zmod(2), [0, 0, 1])",
        "f4": "poly_quotient(zmod(2), [1, 1, 1])",
        "z3_dual": "poly_quotient(zmod(3), [0, 0, 1])",
        "z2_split": "poly_quotient(zmod(2), [0, 1, 1])",
        "gr4": "poly_quotient(zmod(4), [1, 1, 1])",
    })
    return rings


def _module_specs(rings: dict) -> dict:
    mods = {f"reg_{name}": {"ring": f"builtin:{name}", "regular": True} for name in rings if name != "z1"}

    def scalar(n, orders):
        return {"ring": f"builtin:z{n}", "cyclic_orders": orders, "action": "scalar"}

    mods.update({
        "z2_over_z2": scalar(2, [2]),
        "z2+z2_over_z2": scalar(2, [2, 2]),
        "z2_over_z4": scalar(4, [2]),
        "z4_over_z4": scalar(4, [4]),
        "z2+z2_over_z4": scalar(4, [2, 2]),
        "z2+z4_over_z4": scalar(4, [2, 4]),
        "z2_over_z6": scalar(6, [2]),
        "z3_over_z6": scalar(6, [3]),
        "z2+z3_over_z6": {"ring": "builtin:z6", "direct_sum": ["builtin:z2_over_z6", "builtin:z3_over_z6"]},
        "z3_over_z9": scalar(9, [3]),
        "z2_over_z8": scalar(8, [2]),
        "z2+z4_over_z8": scalar(8, [2, 4]),
        "z2+z8_over_z8": scalar(8, [2, 8]),
        "z2+z2_over_z6": scalar(6, [2, 2]),
        "z2+z6_over_z6": scalar(6, [2, 6]),
        "zero_over_z4": {"ring": "builtin:z4", "zero": True},
        "top_row_t2_z2": _top_row_t2_z2(),
    })
    return mods


def _zmodule_specs() -> dict:
    return {
        "z": {"rank": 1, "torsion": []},
        "z^2": {"rank": 2, "torsion": []},
        "z_plus_z2": {"rank": 1, "torsion": [2]},
        "z2_plus_z4": {"rank": 0, "torsion": [2, 4]},
        "z4": {"rank": 0, "torsion": [4]},
        "z6": {"rank": 0, "torsion": [6]},
        "z2_plus_z2": {"rank": 0, "torsion": [2, 2]},
        "zero": {"rank": 0, "torsion": []},
    }


PAIRS = [
    ("z2_over_z6", "z3_over_z6"),
    ("z2_over_z4", "z4_over_z4"),
    ("zero_over_z4", "z4_over_z4"),
    ("z2_over_z4", "z2_over_z4"),
    ("z2_over_z2", "z2_over_z2"),
    ("z3_over_z6", "z3_over_z6"),
    ("reg_z2x2", "reg_z2x2"),
    ("z2_over_z8", "z2_over_z8"),
]


@dataclass
class Corpus:
    """Named JSON specs plus lazily built objects."""

    ring_specs: dict = field(default_factory=dict)
    module_specs: dict = field(default_factory=dict)
    zmodule_specs: dict = field(default_factory=dict)
    pairs: list = field(default_factory=list)
    name: str = "custom"

    def __post_init__(self):
        self._cache: dict = {}

    @property
    def is_empty(self) -> bool:
        return not (self.ring_specs or self.module_specs or self.zmodule_specs)

    def resolve(self, ref: str):
        kind_name = ref.removeprefix("builtin:")
        for kind, specs in (("ring", self.ring_specs), ("module", self.module_specs),
                            ("zmodule", self.zmodule_specs)):
            if kind_name in specs:
                return self.get(kind, kind_name)
        if ref.startswith("builtin:") and self.name != "builtin":
            return builtins().resolve(ref)
        raise KeyError(f"unknown builtin {ref!r}")

    def get(self, kind: str, name: str):
        key = (kind, name)
        if key not in self._cache:
            specs = {"ring": self.ring_specs, "module": self.module_specs, "zmodule": self.zmodule_specs}[kind]
            if name not in specs:
                raise KeyError(f"unknown {kind} {name!r}")
            parse = {"ring": ring_from_json, "module": module_from_json, "zmodule": zmodule_from_json}[kind]
            obj = parse(specs[name], self.resolve)
            if kind == "module" and not isinstance(specs[name], str):
                obj.label = name
            self._cache[key] = obj
        return self._cache[key]

    def rings(self):
        return [(n, self.get("ring", n)) for n in self.ring_specs]

    def modules(self):
        return [(n, self.get("module", n)) for n in self.module_specs]

    def zmodules(self):
        return [(n, self.get("zmodule", n)) for n in self.zmodule_specs]

    def merge(self, other: "Corpus") -> "Corpus":
        return Corpus({**self.ring_specs, **other.ring_specs}, {**self.module_specs, **other.module_specs},
                      {**self.zmodule_specs, **other.zmodule_specs}, self.pairs + other.pairs,
                      name=f"{self.name}+{other.name}")

    @classmethod
    def from_json(cls, doc: dict, name: str = "file") -> "Corpus":
        from .serialize import SchemaError

        if not isinstance(doc, dict):
            raise SchemaError("corpus file must be a JSON object")
        unknown = set(doc) - {"rings", "modules", "zmodules", "pairs", "version"}
        if unknown:
            raise SchemaError(f"unknown corpus field(s): {', '.join(sorted(unknown))}")
        return cls(dict(doc.get("rings", {})), dict(doc.get("modules", {})), dict(doc.get("zmodules", {})),
                   [tuple(p) for p in doc.get("pairs", [])], name=name)


def builtin_corpus() -> Corpus:
    rings = _ring_specs()
    return Corpus(rings, _module_specs(rings), _zmodule_specs(), list(PAIRS), name="builtin")


_BUILTIN: Corpus | None = None


def builtins() -> Corpus:
    """Shared builtin corpus instance (objects are immutable once built)."""
    global _BUILTIN
    if _BUILTIN is None:
        _BUILTIN = builtin_corpus()
    return _BUILTIN
