"""Reading and writing decorations, graphs and rotation systems."""

from __future__ import annotations

import io
import json
from typing import Any

import networkx as nx
import pydot

from .cayley import ColoredGraph, Edge
from .errors import InvalidDecoration, PresentationError
from .presentation import (
    Presentation,
    format_presentation,
    parse_presentation,
    parse_word,
)
from .spin import CyclicOrder, GenericDecoration, SpecialDecoration, SpinStructure
from .words import Letter, letter_key


def _letter(text: str, generators: tuple[str, ...]) -> Letter:
    word = parse_word(text, generators)
    if len(word) != 1:
        raise InvalidDecoration(f"expected a single letter, got {text!r}")
    return word[0]


def _letters(items: list[str], generators: tuple[str, ...]) -> tuple[Letter, ...]:
    if not isinstance(items, list):
        raise InvalidDecoration("expected a list of letters")
    return tuple(_letter(x, generators) for x in items)


def _bit(value: Any, where: str) -> int:
    if value not in (0, 1) or isinstance(value, float):
        raise InvalidDecoration(f"{where} must be 0 or 1")
    return int(value)


def decoration_from_json(data: dict) -> tuple[Presentation, SpecialDecoration | GenericDecoration]:
    """Load a presentation with its decoration; blocks are numbered from 0."""
    if not isinstance(data, dict) or "presentation" not in data or "sigma" not in data:
        raise InvalidDecoration("decoration needs 'presentation' and 'sigma'")
    p = parse_presentation(data["presentation"])
    gens = p.generators
    try:
        if "blocks" not in data:
            sigma = CyclicOrder(_letters(data["sigma"], gens))
            tau = data.get("tau", {})
            if not isinstance(tau, dict):
                raise InvalidDecoration("tau must map generators to bits")
            return p, SpecialDecoration(sigma, {g: _bit(tau.get(g, 0), f"tau[{g}]") for g in gens})
        structure = SpinStructure(tuple(frozenset(_letters(b, gens)) for b in data["blocks"]))
        sigma = tuple(CyclicOrder(_letters(s, gens)) for s in data["sigma"])
        tau_rows = data.get("tau", [{} for _ in data["blocks"]])
        if not isinstance(tau_rows, list) or len(tau_rows) != len(data["blocks"]):
            raise InvalidDecoration("tau must hold one map per block")
        tau = {(g, i): _bit(row.get(g, 0), f"tau[{i}][{g}]") for i, row in enumerate(tau_rows) for g in gens}
        mu = {g: {int(i): int(j) for i, j in m.items()} for g, m in data.get("mu", {}).items()}
    except (ValueError, TypeError, AttributeError) as exc:
        if isinstance(exc, (InvalidDecoration, PresentationError)):
            raise
        raise InvalidDecoration(str(exc)) from None
    return p, GenericDecoration(structure, sigma, tau, mu)


def decoration_to_json(p: Presentation, d: SpecialDecoration | GenericDecoration) -> dict:
    out: dict[str, Any] = {"presentation": format_presentation(p)}
    if isinstance(d, SpecialDecoration):
        out["sigma"] = [str(x) for x in d.sigma.ring]
        out["tau"] = {g: d.tau.get(g, 0) for g in p.generators}
        return out
    out["blocks"] = [[str(x) for x in sorted(b, key=letter_key)] for b in d.structure.blocks]
    out["sigma"] = [[str(x) for x in s.ring] for s in d.sigma]
    out["tau"] = [{g: d.tau_of(g, i) for g in p.generators} for i in range(len(d.structure.blocks))]
    out["mu"] = {g: {str(i): j for i, j in sorted(m.items())} for g, m in sorted(d.mu.items())}
    return out


def load_decoration(text: str) -> tuple[Presentation, SpecialDecoration | GenericDecoration]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidDecoration(f"not JSON: {exc}") from None
    return decoration_from_json(data)


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(g: ColoredGraph) -> str:
    lines = ["digraph cayley {"]
    lines += [f"  {_quote(g.vertex_name(v))};" for v in range(g.n)]
    for e in g.edges:
        attrs = [f"color={_quote(e.color)}"]
        if not e.directed:
            attrs.append("dir=none")
        lines.append(f"  {_quote(g.vertex_name(e.tail))} -> {_quote(g.vertex_name(e.head))} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _unquote(s: str) -> str:
    if len(s) >= 2 and s[0] == s[-1] == '"':
        return s[1:-1].replace('\\"', '"').replace("\\\\", "\\")
    return s


def graph_from_dot(text: str) -> ColoredGraph:
    """Parse a coloured graph; ``dir=none`` marks involution edges, a ``dir=none`` self-loop a half-loop."""
    graphs = pydot.graph_from_dot_data(text)
    if not graphs:
        raise ValueError("no graph in DOT input")
    dot = graphs[0]
    names: list[str] = []
    index: dict[str, int] = {}

    def vertex(name: str) -> int:
        name = _unquote(name)
        if name not in index:
            index[name] = len(names)
            names.append(name)
        return index[name]

    for node in dot.get_nodes():
        if node.get_name() not in ("node", "edge", "graph", "\\n"):
            vertex(node.get_name())
    edges = []
    for e in dot.get_edges():
        attrs = e.get_attributes()
        if "color" not in attrs:
            raise ValueError("every edge needs a color attribute")
        u, v = vertex(str(e.get_source())), vertex(str(e.get_destination()))
        undirected = _unquote(attrs.get("dir", "")) == "none" or dot.get_type() == "graph"
        edges.append(Edge(u, v, _unquote(attrs["color"]), directed=not undirected, degenerate=undirected and u == v))
    return ColoredGraph(len(names), edges, names)


def graph_to_graphml(g: ColoredGraph) -> str:
    h = nx.MultiDiGraph()
    h.add_nodes_from(g.vertex_name(v) for v in range(g.n))
    for e in g.edges:
        h.add_edge(g.vertex_name(e.tail), g.vertex_name(e.head), color=e.color, directed=e.directed)
    buf = io.BytesIO()
    nx.write_graphml(h, buf)
    return buf.getvalue().decode()


def graph_from_graphml(text: str) -> ColoredGraph:
    h = nx.read_graphml(io.BytesIO(text.encode()), force_multigraph=True)
    names = [str(v) for v in h.nodes]
    index = {v: i for i, v in enumerate(h.nodes)}
    edges = []
    for u, v, attrs in h.edges(data=True):
        directed = bool(attrs.get("directed", True))
        edges.append(Edge(index[u], index[v], attrs["color"], directed, not directed and u == v))
    return ColoredGraph(len(names), edges, names)


def read_graph(text: str) -> ColoredGraph:
    return graph_from_graphml(text) if text.lstrip().startswith("<") else graph_from_dot(text)
