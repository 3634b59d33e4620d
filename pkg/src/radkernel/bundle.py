"""Algebra files: an algebra descriptor plus named derivations and operators."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .algebra import Algebra, make_algebra
from .derivation import Derivation
from .weylop import OperatorPolynomial


@dataclass
class Operator:
    name: str
    poly: OperatorPolynomial
    derivs: tuple


@dataclass
class Bundle:
    name: str
    algebra: Algebra
    derivations: dict = field(default_factory=dict)
    operators: list = field(default_factory=list)
    description: str = ""

    def summary(self) -> str:
        A = self.algebra
        lines = [f"{self.name}: {A!r}"]
        if A.is_finite:
            shown = [str(b) for b in A.basis_elements()[:12]]
            more = ", ..." if A.dim > 12 else ""
            lines.append(f"dim {A.dim}; basis {', '.join(shown)}{more}")
        else:
            lines.append("Infinite-dimensional")
        for D in self.derivations.values():
            imgs = D.images if D.images is not None else None
            desc = ", ".join(f"{v} -> {e}" for v, e in zip(A.names, imgs)) if imgs else "matrix form"
            lines.append(f"derivation {D.name}: {desc}")
        for op in self.operators:
            lines.append(f"operator {op.name} in {', '.join(d.name for d in op.derivs)}: {op.poly!r}")
        return "\n".join(lines)


def load_bundle(source) -> Bundle:
    """From a path, a JSON string, or an already-parsed dict."""
    if isinstance(source, dict):
        obj, name = source, source.get("name", "algebra")
    else:
        p = Path(source)
        obj = json.loads(p.read_text())
        name = obj.get("name", p.stem)
    A = make_algebra(obj)
    derivs = {}
    for d in obj.get("derivations", []):
        nm = d.get("name", f"D{len(derivs) + 1}")
        derivs[nm] = Derivation(A, images=d["images"], name=nm)
    ops = []
    for o in obj.get("operators", []):
        use = o.get("derivations") or list(derivs)[:int(o["arity"])]
        poly = OperatorPolynomial.from_json(A, o)
        if poly.arity != len(use):
            raise ValueError(f"operator {o.get('name')!r} has arity {poly.arity} but {len(use)} derivations")
        ops.append(Operator(o.get("name", f"P{len(ops) + 1}"), poly, tuple(derivs[u] for u in use)))
    return Bundle(name, A, derivs, ops, obj.get("description", ""))


def bundled(name: str) -> Bundle:
    """One of the example files shipped with the package, e.g. ``"word_yy"``."""
    text = resources.files("radkernel").joinpath("data", f"{name}.json").read_text()
    obj = json.loads(text)
    obj.setdefault("name", name)
    return load_bundle(obj)


def bundled_names() -> list[str]:
    d = resources.files("radkernel").joinpath("data")
    return sorted(p.name[:-5] for p in d.iterdir() if p.name.endswith(".json"))
