"""JSON (de)serialization for rings, modules, and quivers, plus DOT export
and a small DOT well-formedness checker."""

from __future__ import annotations

import json
import re
from pathlib import Path

from .module import ActionLabel, ModuleCategory
from .quiver import CoxeterGraph, Edge, FusionQuiver
from .ring import FusionRing, INFINITY


# ---------------------------------------------------------------------------
# JSON

def ring_to_dict(ring: FusionRing) -> dict:
    return {
        "names": list(ring.names),
        "unit": ring.unit,
        "N": [[list(row) for row in mat] for mat in ring.N],
        "dual": list(ring.dual),
    }


def ring_from_dict(d: dict) -> FusionRing:
    return FusionRing.from_data(
        d["names"], d.get("unit", 0), d["N"], d.get("dual")
    )


def module_to_dict(M: ModuleCategory) -> dict:
    return {
        "ring": ring_to_dict(M.ring),
        "mnames": list(M.mnames),
        "act": [[list(row) for row in mat] for mat in M.act],
    }


def module_from_dict(d: dict, base: Path | None = None) -> ModuleCategory:
    ring_spec = d["ring"]
    if isinstance(ring_spec, str):
        ring = ring_from_dict(_load_json(ring_spec, base))
    else:
        ring = ring_from_dict(ring_spec)
    return ModuleCategory.from_data(ring, d["mnames"], d["act"])


def _label_to_json(Q: FusionQuiver, label):
    if isinstance(label, ActionLabel):
        out = {"matrix": [list(row) for row in label.matrix]}
        if label.fpdim_override is not None:
            out["fpdim"] = label.fpdim_override
        return out
    if Q.ring is not None and sum(label) == 1 and all(c in (0, 1) for c in label):
        return Q.ring.names[label.index(1)]
    return list(label)


def _label_from_json(ring: FusionRing | None, spec):
    if isinstance(spec, dict):
        return ActionLabel.from_rows(spec["matrix"], spec.get("fpdim"))
    if isinstance(spec, str):
        if ring is None:
            raise ValueError("named label requires ring data")
        return ring.basis(spec)
    return tuple(int(c) for c in spec)


def quiver_to_dict(Q: FusionQuiver) -> dict:
    out = {
        "vertices": list(Q.vertices),
        "edges": [
            {"from": e.source, "to": e.target, "label": _label_to_json(Q, e.label)}
            for e in Q.edges
        ],
    }
    if Q.ring is not None:
        out["ring"] = ring_to_dict(Q.ring)
    if Q.module is not None:
        out["module"] = module_to_dict(Q.module)
    if Q.mnames is not None:
        out["mnames"] = list(Q.mnames)
    return out


def quiver_from_dict(d: dict, base: Path | None = None) -> FusionQuiver:
    ring = None
    if "ring" in d:
        spec = d["ring"]
        ring = ring_from_dict(_load_json(spec, base) if isinstance(spec, str) else spec)
    module = None
    if "module" in d:
        spec = d["module"]
        module = module_from_dict(
            _load_json(spec, base) if isinstance(spec, str) else spec, base
        )
        if ring is None:
            ring = module.ring
    edges = tuple(
        Edge(int(e["from"]), int(e["to"]), _label_from_json(ring, e["label"]))
        for e in d["edges"]
    )
    mnames = tuple(d["mnames"]) if "mnames" in d else None
    return FusionQuiver(
        vertices=tuple(d["vertices"]), edges=edges, ring=ring, module=module,
        mnames=mnames,
    )


def _load_json(path, base: Path | None = None) -> dict:
    p = Path(path)
    if base is not None and not p.is_absolute():
        p = base / p
    return json.loads(p.read_text())


def load_ring(path) -> FusionRing:
    return ring_from_dict(_load_json(path))


def load_module(path) -> ModuleCategory:
    return module_from_dict(_load_json(path), Path(path).parent)


def load_quiver(path) -> FusionQuiver:
    return quiver_from_dict(_load_json(path), Path(path).parent)


def dumps(obj_dict: dict) -> str:
    return json.dumps(obj_dict, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# DOT

def _q(s) -> str:
    return '"' + str(s).replace('"', '\\"') + '"'


def label_pretty(Q: FusionQuiver, label) -> str:
    if isinstance(label, ActionLabel):
        return "matrix"
    parts = []
    for name, c in zip(Q.ring.names, label):
        if c == 1:
            parts.append(name)
        elif c:
            parts.append(f"{c}*{name}")
    return "+".join(parts) if parts else "0"


def quiver_dot(Q: FusionQuiver) -> str:
    lines = ["digraph fusion_quiver {"]
    for v in Q.vertices:
        lines.append(f"  {_q(v)};")
    for e in Q.edges:
        lbl = label_pretty(Q, e.label) if Q.ring is not None else "matrix"
        lines.append(
            f"  {_q(Q.vertices[e.source])} -> {_q(Q.vertices[e.target])} "
            f"[label={_q(lbl)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def gamma_dot(G: CoxeterGraph) -> str:
    lines = ["graph coxeter {"]
    for v in G.vertices:
        lines.append(f"  {_q(v)};")
    for u, v, m in G.edges:
        lbl = "inf" if m == INFINITY else str(int(m))
        lines.append(
            f"  {_q(G.vertices[u])} -- {_q(G.vertices[v])} [label={_q(lbl)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def unfolded_dot(U) -> str:
    names = U.vertex_names()
    lines = ["digraph unfolded {"]
    for nm in names:
        lines.append(f"  {_q(nm)};")
    for s, t, m in U.arrows:
        attr = f" [label={_q(str(m))}]" if m != 1 else ""
        lines.append(f"  {_q(names[s])} -> {_q(names[t])}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_HEADER = re.compile(r"^(di)?graph\s+\w+\s*\{$")
_DOT_NODE = re.compile(r'^"(?:[^"\\]|\\.)*"\s*;$')
_DOT_EDGE = re.compile(
    r'^"(?:[^"\\]|\\.)*"\s*(->|--)\s*"(?:[^"\\]|\\.)*"'
    r'(\s*\[label="(?:[^"\\]|\\.)*"\])?\s*;$'
)


def check_dot(text: str) -> bool:
    """Minimal DOT grammar check: one header, node/edge statements only,
    matching arrow style, closing brace."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not _DOT_HEADER.match(lines[0]) or lines[-1] != "}":
        return False
    directed = lines[0].startswith("digraph")
    for ln in lines[1:-1]:
        if _DOT_NODE.match(ln):
            continue
        m = _DOT_EDGE.match(ln)
        if not m or (m.group(1) == "->") != directed:
            return False
    return True
