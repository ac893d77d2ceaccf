"""DOT and JSON renderings of attack and defeat graphs."""

from __future__ import annotations

import json

from .dung import SEMANTICS, DefeatGraph, FrameworkTooLarge, compute_semantics
from .logic import format_formula

__all__ = ["graph_document", "to_json", "to_dot"]


def _ids(graph: DefeatGraph) -> dict:
    return {a: f"A{i}" for i, a in enumerate(graph.pool)}


def graph_document(graph: DefeatGraph, semantics=SEMANTICS) -> dict:
    """Plain data for a defeat graph; semantics too large to enumerate are
    reported as ``None``."""
    ids = _ids(graph)
    inst = graph.instantiation
    arguments = [{
        "id": ids[a],
        "argument": a.label,
        "conclusion": format_formula(a.conclusion),
        "rules": sorted(inst.dr_names(a)),
        "strict": a.is_strict,
    } for a in graph.pool]
    attacks = sorted({(ids[t.attacker], ids[t.target], ids[t.target_sub]) for t in graph.attacks},
                     key=_edge_key)
    defeats = sorted({(ids[a], ids[b]) for a, b in graph.defeats}, key=_edge_key)
    af = graph.framework
    extensions: dict[str, list | None] = {}
    for sem in semantics:
        try:
            exts = compute_semantics(af, sem)
        except FrameworkTooLarge:
            extensions[sem] = None
            continue
        extensions[sem] = sorted((sorted((ids[a] for a in e), key=_id_key) for e in exts),
                                 key=lambda e: [_id_key(x) for x in e])
    return {
        "order": graph.kind.value,
        "arguments": arguments,
        "attacks": [{"attacker": a, "target": b, "on": s} for a, b, s in attacks],
        "defeats": [{"attacker": a, "target": b} for a, b in defeats],
        "extensions": extensions,
    }


def _id_key(x: str) -> int:
    return int(x[1:])


def _edge_key(e):
    return tuple(_id_key(x) for x in e)


def to_json(graph: DefeatGraph, semantics=SEMANTICS) -> str:
    return json.dumps(graph_document(graph, semantics), indent=2) + "\n"


def _quote(s: str) -> str:
    escaped = s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return '"' + escaped + '"'


def to_dot(graph: DefeatGraph) -> str:
    """Attacks that are not defeats are drawn solid, defeats bold."""
    ids = _ids(graph)
    lines = ["digraph arguments {", "  node [shape=box, fontname=monospace];"]
    for a in graph.pool:
        label = f"{ids[a]}: {a.label}\nconcludes {format_formula(a.conclusion)}"
        lines.append(f"  {ids[a]} [label={_quote(label)}];")
    pairs = sorted({(t.attacker, t.target) for t in graph.attacks},
                   key=lambda p: (_id_key(ids[p[0]]), _id_key(ids[p[1]])))
    for a, b in pairs:
        style = "bold" if (a, b) in graph.defeats else "solid"
        lines.append(f"  {ids[a]} -> {ids[b]} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
