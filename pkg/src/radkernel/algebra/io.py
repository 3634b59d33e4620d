"""Building algebras from JSON-style descriptors."""

from __future__ import annotations

from ..errors import FieldUnsupported
from ..exactmath import QQ, field_from_json
from .kinds import (
    ExpPolyAlgebra,
    MonomialQuotient,
    StructureConstantAlgebra,
    WordQuotient,
    parse_word,
)

_KIND_ALIASES = {
    "commutative": "commutative",
    "commutativepoly": "commutative",
    "noncommutative": "noncommutative",
    "freenoncommutative": "noncommutative",
    "structure_constants": "structure_constants",
    "structureconstants": "structure_constants",
    "exp_poly": "exp_poly",
    "exppoly": "exp_poly",
}


def make_algebra(desc: dict):
    """Validated algebra from a descriptor such as
    ``{"kind": "commutative", "variables": ["x"], "ideal": [[3]]}``."""
    field = field_from_json(desc.get("field"))
    kind = _KIND_ALIASES.get(str(desc.get("kind", "")).lower())
    if kind is None:
        raise ValueError(f"unknown algebra kind {desc.get('kind')!r}")
    names = desc.get("variables", [])
    if kind == "commutative":
        return MonomialQuotient(field, names, desc.get("ideal", []))
    if kind == "noncommutative":
        names = tuple(names)
        words = [parse_word(names, g) if isinstance(g, str) else tuple(g)
                 for g in desc.get("ideal", [])]
        return WordQuotient(field, names, words)
    if kind == "structure_constants":
        st = desc["structure"]
        table = [[[field(c) for c in v] for v in row] for row in st["table"]]
        if "dim" in st and st["dim"] != len(table):
            raise ValueError("structure dim does not match table size")
        return StructureConstantAlgebra(field, table, int(st.get("unit", 0)), names or None)
    if field != QQ:
        raise FieldUnsupported("exp_poly requires the rational field")
    return ExpPolyAlgebra(field)
