"""Planar embeddings of coloured graphs and what can be read off them."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import pairwise

import networkx as nx

from .cayley import ColoredGraph, build_cayley_graph, color_isomorphic, coset_enumerate
from .errors import (
    BudgetExceeded,
    InvalidRotation,
    NotAPath,
    NotConsistent,
    NotPlanar,
    NotThreeConnected,
    NotTwoConnected,
    PPKError,
)
from .presentation import Presentation
from .spin import CyclicOrder, SpecialDecoration
from .words import Letter, Word

Dart = tuple[int, int]


@dataclass
class RotationSystem:
    """Clockwise order of darts around every vertex."""

    order: dict[int, list[Dart]]

    def successor(self, v: int, d: Dart) -> Dart:
        ring = self.order[v]
        return ring[(ring.index(d) + 1) % len(ring)]

    def reflected(self) -> RotationSystem:
        return RotationSystem({v: list(reversed(r)) for v, r in self.order.items()})

    def to_json(self, g: ColoredGraph) -> dict[str, list[str]]:
        return {
            g.vertex_name(v): [f"{k}{'+' if end == 0 else '-'}" for k, end in ring]
            for v, ring in sorted(self.order.items())
        }

    @classmethod
    def from_json(cls, data: dict[str, list[str]], g: ColoredGraph) -> RotationSystem:
        names = {g.vertex_name(v): v for v in range(g.n)}
        order = {}
        for name, ring in data.items():
            if name not in names:
                raise InvalidRotation(f"unknown vertex {name!r}")
            darts = []
            for token in ring:
                if not token or token[-1] not in "+-" or not token[:-1].isdigit():
                    raise InvalidRotation(f"bad dart {token!r}")
                darts.append((int(token[:-1]), 0 if token[-1] == "+" else 1))
            order[names[name]] = darts
        return cls(order)


def rotation_from_spin(g: ColoredGraph, sigma: CyclicOrder, orientation: Sequence[int] | None = None) -> RotationSystem:
    """Order the darts at each vertex by ``sigma``, mirrored where ``orientation`` is 1."""
    rank = {x: i for i, x in enumerate(sigma.ring)}
    order = {}
    for v in range(g.n):
        ring = sorted(g.darts(v), key=lambda d: rank[g.label(d)])
        order[v] = ring[::-1] if orientation and orientation[v] else ring
    return RotationSystem(order)


def validate_rotation(g: ColoredGraph, rot: RotationSystem) -> None:
    for v in range(g.n):
        ring = rot.order.get(v, [])
        if len(set(ring)) != len(ring) or set(ring) != set(g.darts(v)):
            raise InvalidRotation(f"rotation at vertex {g.vertex_name(v)} does not list its darts exactly once")
    extra = set(rot.order) - set(range(g.n))
    if extra:
        raise InvalidRotation(f"rotation mentions unknown vertices {sorted(extra)}")


def trace_faces(g: ColoredGraph, rot: RotationSystem) -> list[list[Dart]]:
    """Face boundaries as cyclic dart sequences: arrive, then turn to the next dart clockwise."""
    faces = []
    seen: set[Dart] = set()
    for v in range(g.n):
        for start in rot.order.get(v, []):
            if start in seen:
                continue
            face = []
            d = start
            while d not in seen:
                seen.add(d)
                face.append(d)
                arrive = g.twin(d)
                d = rot.successor(g.endpoint(arrive), arrive)
            faces.append(face)
    return faces


def _components(g: ColoredGraph) -> list[set[int]]:
    seen: set[int] = set()
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.neighbours(v):
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def euler_holds(g: ColoredGraph, rot: RotationSystem) -> bool:
    """``V - E + F == 2`` on every component (half-loops count as pendant edges)."""
    faces = trace_faces(g, rot)
    for comp in _components(g):
        edges = [e for e in g.edges if e.tail in comp]
        half = sum(e.degenerate for e in edges)
        f = sum(1 for face in faces if g.endpoint(face[0]) in comp) or 1
        if len(comp) + half - len(edges) + f != 2:
            return False
    return True


@dataclass
class PlanarityResult:
    planar: bool
    rotation: RotationSystem | None = None
    witness: list[int] | None = None
    faces: int | None = None
    kuratowski: str | None = None

    def __bool__(self) -> bool:
        return self.planar


def _subdivided(g: ColoredGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(("v", v) for v in range(g.n))
    for k, e in enumerate(g.edges):
        if e.degenerate:
            continue
        if e.tail == e.head:
            nx.add_path(h, [("v", e.tail), ("e", k, 0), ("e", k, 1), ("v", e.tail)])
        else:
            nx.add_path(h, [("v", e.tail), ("e", k, 0), ("v", e.head)])
    return h


def planarity_test(g: ColoredGraph) -> PlanarityResult:
    """Planar embedding as a verified rotation system, or a verified Kuratowski witness."""
    h = _subdivided(g)
    planar, cert = nx.check_planarity(h, counterexample=True)
    if not planar:
        witness = sorted({node[1] for node in cert.nodes if node[0] == "e"})
        kind = kuratowski_type(g, witness)
        if kind is None:
            raise PPKError("planarity witness is not a Kuratowski subdivision")
        return PlanarityResult(False, witness=witness, kuratowski=kind)
    order: dict[int, list[Dart]] = {}
    for v in range(g.n):
        ring = []
        for node in cert.neighbors_cw_order(("v", v)):
            k = node[1]
            e = g.edges[k]
            if e.tail == e.head:
                ring.append((k, node[2]))
            else:
                ring.append((k, 0 if e.tail == v else 1))
        ring.extend((k, 0) for k, e in enumerate(g.edges) if e.degenerate and e.tail == v)
        order[v] = ring
    rot = RotationSystem(order)
    if not euler_holds(g, rot):
        raise PPKError("planar rotation system fails Euler's formula")
    return PlanarityResult(True, rotation=rot, faces=len(trace_faces(g, rot)))


def kuratowski_type(g: ColoredGraph, edge_ids: Iterable[int]) -> str | None:
    """``"K5"`` or ``"K3,3"`` if the edges form a subdivision of one, else ``None``."""
    adj: dict[int, list[int]] = {}
    for k in edge_ids:
        e = g.edges[k]
        if e.tail == e.head:
            return None
        adj.setdefault(e.tail, []).append(e.head)
        adj.setdefault(e.head, []).append(e.tail)
    changed = True
    while changed:
        changed = False
        for v in list(adj):
            if len(adj[v]) == 2:
                a, b = adj.pop(v)
                if a == b or a == v or b == v:
                    return None
                adj[a].remove(v)
                adj[b].remove(v)
                adj[a].append(b)
                adj[b].append(a)
                changed = True
    simple = nx.Graph()
    for v, nbrs in adj.items():
        if len(set(nbrs)) != len(nbrs):
            return None
        for w in nbrs:
            simple.add_edge(v, w)
    if nx.is_isomorphic(simple, nx.complete_graph(5)):
        return "K5"
    if nx.is_isomorphic(simple, nx.complete_bipartite_graph(3, 3)):
        return "K3,3"
    return None


# ---------------------------------------------------------------------------
# spins and consistency
# ---------------------------------------------------------------------------


@dataclass
class SpinReport:
    consistent: bool
    sigma: CyclicOrder | None = None
    tau: dict[str, int] = field(default_factory=dict)
    orientation: list[int] = field(default_factory=list)
    reason: str = ""

    def __bool__(self) -> bool:
        return self.consistent


def check_consistent(g: ColoredGraph, rot: RotationSystem) -> SpinReport:
    """Is every colour uniformly spin-preserving or uniformly spin-reversing?"""
    validate_rotation(g, rot)
    if g.n == 0:
        return SpinReport(True)
    spins = []
    for v in range(g.n):
        labels = tuple(g.label(d) for d in rot.order[v])
        if len(set(labels)) != len(labels):
            return SpinReport(False, reason=f"vertex {g.vertex_name(v)} repeats a dart label")
        spins.append(CyclicOrder(labels))
    sigma = spins[0]
    orientation = []
    for v, spin in enumerate(spins):
        if spin == sigma:
            orientation.append(0)
        elif spin == sigma.reflected():
            orientation.append(1)
        else:
            return SpinReport(False, reason=f"vertex {g.vertex_name(v)} has a different spin")
    tau: dict[str, int] = {}
    for e in g.edges:
        if e.degenerate:
            continue
        flip = orientation[e.tail] ^ orientation[e.head]
        if tau.setdefault(e.color, flip) != flip:
            return SpinReport(False, reason=f"colour {e.color} both preserves and reverses spin")
    return SpinReport(True, sigma, tau, orientation)


# ---------------------------------------------------------------------------
# crossing walks
# ---------------------------------------------------------------------------


def _edge_between(g: ColoredGraph, u: int, v: int) -> int:
    for k, end in g.darts(u):
        if g.far_end((k, end)) == v:
            return k
    raise ValueError(f"no edge between {g.vertex_name(u)} and {g.vertex_name(v)}")


def _dart_towards(g: ColoredGraph, u: int, k: int, v: int) -> Dart:
    for d in g.darts(u):
        if d[0] == k and g.far_end(d) == v:
            return d
    raise ValueError("edge does not join the given vertices")


def walk_crossing(g: ColoredGraph, rot: RotationSystem, x: Sequence[int], y: Sequence[int]) -> bool:
    """Does the closed walk ``y`` cross the path ``x``?

    Both are vertex sequences; consecutive vertices are joined by their
    lowest-numbered edge.  ``y`` may repeat its first vertex at the end.
    """
    x = list(x)
    if len(set(x)) != len(x) or not x:
        raise NotAPath("path repeats a vertex")
    x_edges = []
    for a, b in pairwise(x):
        try:
            x_edges.append(_edge_between(g, a, b))
        except ValueError as exc:
            raise NotAPath(str(exc)) from None
    pos = {v: i for i, v in enumerate(x)}
    x_edge_set = set(x_edges)
    y = list(y)
    if len(y) > 1 and y[0] == y[-1]:
        y.pop()
    n = len(y)
    if n < 2:
        return False
    y_edges = [_edge_between(g, y[t], y[(t + 1) % n]) for t in range(n)]
    on_x = [y[t] in pos and (y_edges[t] in x_edge_set) for t in range(n)]
    # on_x[t]: the step y[t] -> y[t+1] runs along x

    def side(v: int, d: Dart) -> bool | None:
        i = pos[v]
        if i == 0 or i == len(x) - 1:
            return None
        incoming = _dart_towards(g, v, x_edges[i - 1], x[i - 1])
        outgoing = _dart_towards(g, v, x_edges[i], x[i + 1])
        ring = rot.order[v]
        k = len(ring)
        o = ring.index(outgoing)
        return (ring.index(d) - o) % k < (ring.index(incoming) - o) % k

    if all(on_x):
        return False
    start = next(t for t in range(n) if not on_x[t])
    t = start
    for _ in range(n):
        t_next = (t + 1) % n
        if not on_x[t] and y[t_next] in pos:
            # y enters x at y[t_next]; follow it along x to where it leaves
            entry = _dart_towards(g, y[t_next], y_edges[t], y[t])
            u = t_next
            while on_x[u]:
                u = (u + 1) % n
            exit_ = _dart_towards(g, y[u], y_edges[u], y[(u + 1) % n])
            s1, s2 = side(y[t_next], entry), side(y[u], exit_)
            if s1 is not None and s2 is not None and s1 != s2:
                return True
        t = t_next
    return False


# ---------------------------------------------------------------------------
# separators
# ---------------------------------------------------------------------------


def is_k_connected(g: ColoredGraph, k: int) -> bool:
    """Connected after removing any set of fewer than ``k`` vertices."""
    if not g.is_connected():
        return False
    if k >= 2:
        for v in range(g.n):
            if not g.is_connected(frozenset({v})):
                return False
    if k >= 3:
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if not g.is_connected(frozenset({u, v})):
                    return False
    if k >= 4:
        raise ValueError("only k <= 3 is supported")
    return True


def two_separators(g: ColoredGraph) -> list[tuple[int, int]]:
    if not is_k_connected(g, 2):
        raise NotTwoConnected("graph is not 2-connected")
    return [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if g.n > 2 and not g.is_connected(frozenset({u, v}))]


def well_separated(g: ColoredGraph) -> bool:
    """Every separating pair of vertices is joined by an edge."""
    return all(v in g.neighbours(u) for u, v in two_separators(g))


def hinge_failures(g: ColoredGraph, colors: Iterable[str]) -> list[tuple[int, str]]:
    colors = set(colors)
    failures = []
    for k, e in enumerate(g.edges):
        if e.color not in colors:
            continue
        if e.degenerate:
            failures.append((k, "half-loop"))
        elif e.tail == e.head:
            failures.append((k, "loop"))
        elif _is_bridge(g, k):
            failures.append((k, "bridge, not a hinge"))
        elif g.is_connected(frozenset({e.tail, e.head})):
            failures.append((k, "endpoints do not separate the graph"))
    return failures


def hinge_separation(g: ColoredGraph, colors: Iterable[str]) -> bool:
    """Does every edge of the given colours have a separating pair of endpoints?"""
    return not hinge_failures(g, colors)


def _is_bridge(g: ColoredGraph, k: int) -> bool:
    e = g.edges[k]
    seen = {e.tail}
    stack = [e.tail]
    while stack:
        v = stack.pop()
        for d in g.darts(v):
            if d[0] == k:
                continue
            w = g.far_end(d)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return e.head not in seen


# ---------------------------------------------------------------------------
# extraction
# ---------------------------------------------------------------------------


def _letter_rank(generators: Sequence[str]):
    index = {gname: i for i, gname in enumerate(generators)}
    return lambda x: (index[x.gen], 0 if x.sign > 0 else 1)


def _face_class_rep(word: Word, involutions: set[str], rank) -> Word:
    inverse = tuple(Letter(x.gen, 1) if x.gen in involutions else x.inverse() for x in reversed(word))
    candidates = [w[i:] + w[:i] for w in (word, inverse) for i in range(len(w))]
    return min(candidates, key=lambda w: [rank(x) for x in w])


def extract_special_presentation(g: ColoredGraph, rot: RotationSystem) -> tuple[Presentation, SpecialDecoration]:
    """Read a special planar presentation off a consistent planar embedding.

    The output is checked before it is returned: its decoration passes the
    special conditions and its Cayley graph is colour-isomorphic to ``g``.
    """
    from .conditions import check_special

    validate_rotation(g, rot)
    if not euler_holds(g, rot):
        raise NotPlanar("rotation system is not a sphere embedding")
    if not is_k_connected(g, 3):
        raise NotThreeConnected("graph is not 3-connected")
    report = check_consistent(g, rot)
    if not report:
        raise NotConsistent(report.reason)
    generators = tuple(g.colors)
    involutions = {e.color for e in g.edges if not e.directed}
    rank = _letter_rank(generators)
    relators: list[Word] = []
    for face in trace_faces(g, rot):
        rep = _face_class_rep(tuple(g.label(d) for d in face), involutions, rank)
        if rep not in relators:
            relators.append(rep)
    relators.sort(key=lambda w: (len(w), [rank(x) for x in w]))
    relators.extend((Letter(s, 1), Letter(s, 1)) for s in generators if s in involutions)
    p = Presentation(generators, tuple(relators))
    d = SpecialDecoration(report.sigma, {s: report.tau.get(s, 0) for s in generators})
    if not check_special(p, d).accepted:
        raise PPKError("extracted decoration fails the special conditions")
    try:
        rebuilt = build_cayley_graph(p, coset_enumerate(p, max(4 * g.n, 16)))
    except BudgetExceeded:
        raise PPKError("extracted presentation does not enumerate to a finite group") from None
    if not color_isomorphic(g, rebuilt):
        raise PPKError("extracted presentation does not reproduce the graph")
    return p, d
