"""Coset enumeration and finite Cayley graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetExceeded, IncompleteTable
from .presentation import Presentation, involution_set
from .words import Letter, Word

# ---------------------------------------------------------------------------
# coset enumeration (HLT with lookahead)
# ---------------------------------------------------------------------------


@dataclass
class CosetTable:
    """Action of generators on cosets of the trivial subgroup.

    Column ``2k`` is generator ``k``, column ``2k + 1`` its inverse.  Row 0
    is the identity coset.
    """

    generators: tuple[str, ...]
    rows: list[list[int | None]]
    complete: bool
    max_cosets: int

    @property
    def status(self) -> str:
        return "complete" if self.complete else "incomplete"

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, letter: Letter) -> int:
        return 2 * self.generators.index(letter.gen) + (letter.sign < 0)

    def act(self, coset: int, word: Word) -> int:
        for x in word:
            coset = self.rows[coset][self.column(x)]
        return coset


class _Enumerator:
    def __init__(self, p: Presentation, max_cosets: int) -> None:
        self.p = p
        self.ncols = 2 * len(p.generators)
        index = {g: k for k, g in enumerate(p.generators)}
        self.relators = [[2 * index[x.gen] + (x.sign < 0) for x in r] for r in p.relators if r]
        self.max_cosets = max_cosets
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]
        self.live = 1

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def define(self, c: int, x: int) -> None:
        if self.live >= self.max_cosets:
            self.lookahead()
            if not self.alive(c) or self.table[c][x] is not None:
                return
            if self.live >= self.max_cosets:
                raise _Full
        d = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(d)
        self.live += 1
        self.table[c][x] = d
        self.table[d][x ^ 1] = c

    def scan(self, alpha: int, word: list[int], fill: bool) -> None:
        t = self.table
        f, i = alpha, 0
        b, j = alpha, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] is not None:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][word[j] ^ 1] is not None:
                b = t[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][word[i] ^ 1] = f
                return
            if not fill:
                return
            self.define(f, word[i])

    def merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.rep(a), self.rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            self.live -= 1
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        t = self.table
        queue: list[int] = []
        self.merge(a, b, queue)
        q = 0
        while q < len(queue):
            gamma = queue[q]
            q += 1
            for x in range(self.ncols):
                delta = t[gamma][x]
                if delta is None:
                    continue
                t[delta][x ^ 1] = None
                mu, nu = self.rep(gamma), self.rep(delta)
                if t[mu][x] is not None:
                    self.merge(nu, t[mu][x], queue)
                elif t[nu][x ^ 1] is not None:
                    self.merge(mu, t[nu][x ^ 1], queue)
                else:
                    t[mu][x] = nu
                    t[nu][x ^ 1] = mu

    def lookahead(self) -> None:
        for beta in range(len(self.table)):
            for w in self.relators:
                if not self.alive(beta):
                    break
                self.scan(beta, w, fill=False)

    def run(self) -> bool:
        alpha = 0
        try:
            while alpha < len(self.table):
                if self.alive(alpha):
                    for w in self.relators:
                        if not self.alive(alpha):
                            break
                        self.scan(alpha, w, fill=True)
                    if self.alive(alpha):
                        for x in range(self.ncols):
                            if self.table[alpha][x] is None:
                                self.define(alpha, x)
                alpha += 1
        except _Full:
            return False
        return True

    def standardized(self) -> list[list[int | None]]:
        """Live rows renumbered in breadth-first order from the identity."""
        order = {0: 0}
        queue = deque([0])
        while queue:
            c = queue.popleft()
            for x in range(self.ncols):
                d = self.table[c][x]
                if d is not None:
                    d = self.rep(d)
                    if d not in order:
                        order[d] = len(order)
                        queue.append(d)
        rows: list[list[int | None]] = [[None] * self.ncols for _ in order]
        for c, k in order.items():
            for x in range(self.ncols):
                d = self.table[c][x]
                rows[k][x] = order[self.rep(d)] if d is not None else None
        return rows


class _Full(Exception):
    pass


def coset_enumerate(p: Presentation, max_cosets: int = 10_000) -> CosetTable:
    """Enumerate cosets of the trivial subgroup; raises ``BudgetExceeded`` when out of room."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    e = _Enumerator(p, max_cosets)
    done = e.run()
    table = CosetTable(p.generators, e.standardized(), done, max_cosets)
    if not done:
        raise BudgetExceeded(table)
    return table


def abelianization_is_infinite(p: Presentation) -> bool:
    """True when the relator exponent-sum matrix has rank below the number of generators."""
    index = {g: k for k, g in enumerate(p.generators)}
    rows = []
    for r in p.relators:
        row = [Fraction(0)] * len(p.generators)
        for x in r:
            row[index[x.gen]] += x.sign
        rows.append(row)
    rank = 0
    for col in range(len(p.generators)):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                factor = rows[i][col] / rows[rank][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank < len(p.generators)


# ---------------------------------------------------------------------------
# coloured graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    color: str
    directed: bool = True
    degenerate: bool = False

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head and not self.degenerate


@dataclass
class ColoredGraph:
    """Edge-coloured multigraph on vertices ``0..n-1``.

    Undirected edges stand for involution colours.  A half-loop
    (``degenerate``) marks a vertex fixed by an involution.
    """

    n: int
    edges: list[Edge]
    names: list[str] | None = None
    _incidence: list[list[tuple[int, int]]] | None = field(default=None, repr=False, compare=False)

    @property
    def colors(self) -> list[str]:
        return sorted({e.color for e in self.edges})

    def vertex_name(self, v: int) -> str:
        return self.names[v] if self.names else str(v)

    def darts(self, v: int) -> list[tuple[int, int]]:
        """Edge ends at ``v`` as ``(edge index, end)``; end 0 is the tail."""
        if self._incidence is None:
            inc: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
            for k, e in enumerate(self.edges):
                inc[e.tail].append((k, 0))
                if not e.degenerate:
                    inc[e.head].append((k, 1))
            self._incidence = inc
        return self._incidence[v]

    def endpoint(self, dart: tuple[int, int]) -> int:
        e = self.edges[dart[0]]
        return e.tail if dart[1] == 0 else e.head

    def far_end(self, dart: tuple[int, int]) -> int:
        e = self.edges[dart[0]]
        return e.head if dart[1] == 0 else e.tail

    def twin(self, dart: tuple[int, int]) -> tuple[int, int]:
        if self.edges[dart[0]].degenerate:
            return dart
        return (dart[0], 1 - dart[1])

    def label(self, dart: tuple[int, int]) -> Letter:
        """The letter read when leaving a vertex along ``dart``."""
        e = self.edges[dart[0]]
        if not e.directed or dart[1] == 0:
            return Letter(e.color, 1)
        return Letter(e.color, -1)

    def neighbours(self, v: int) -> list[int]:
        return [self.far_end(d) for d in self.darts(v)]

    def degree(self, v: int) -> int:
        return len(self.darts(v))

    def is_connected(self, removed: frozenset[int] = frozenset()) -> bool:
        rest = [v for v in range(self.n) if v not in removed]
        if not rest:
            return True
        seen = {rest[0]}
        stack = [rest[0]]
        while stack:
            v = stack.pop()
            for w in self.neighbours(v):
                if w not in seen and w not in removed:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(rest)


def build_cayley_graph(p: Presentation, table: CosetTable) -> ColoredGraph:
    if not table.complete:
        raise IncompleteTable("coset table is incomplete")
    inv = involution_set(p)
    edges: list[Edge] = []
    for k, s in enumerate(p.generators):
        for g, row in enumerate(table.rows):
            h = row[2 * k]
            if s not in inv:
                edges.append(Edge(g, h, s))
            elif g == h:
                edges.append(Edge(g, g, s, directed=False, degenerate=True))
            elif g < h:
                edges.append(Edge(g, h, s, directed=False))
    return ColoredGraph(len(table.rows), edges)


def ball(g: ColoredGraph, v: int, radius: int) -> ColoredGraph:
    """Induced subgraph on vertices within undirected distance ``radius`` of ``v``."""
    dist = {v: 0}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        if dist[x] == radius:
            continue
        for y in g.neighbours(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    keep = sorted(dist, key=lambda x: (dist[x], x))
    new = {x: i for i, x in enumerate(keep)}
    edges = [
        Edge(new[e.tail], new[e.head], e.color, e.directed, e.degenerate)
        for e in g.edges
        if e.tail in new and e.head in new
    ]
    return ColoredGraph(len(keep), edges, [g.vertex_name(x) for x in keep])


def color_isomorphic(g: ColoredGraph, h: ColoredGraph) -> bool:
    """Is there a bijection of vertices carrying coloured edges onto coloured edges?"""
    if g.n != h.n or len(g.edges) != len(h.edges) or g.colors != h.colors:
        return False
    if g.n == 0:
        return True
    g_step, h_step = _label_steps(g), _label_steps(h)
    if g_step is None or h_step is None or not g.is_connected():
        return _isomorphic_general(g, h)
    for target in range(h.n):
        image = {0: target}
        queue = deque([0])
        ok = True
        while queue and ok:
            x = queue.popleft()
            for lab, y in g_step[x].items():
                y2 = h_step[image[x]].get(lab)
                if y2 is None:
                    ok = False
                    break
                if y in image:
                    if image[y] != y2:
                        ok = False
                        break
                else:
                    image[y] = y2
                    queue.append(y)
        if ok and len(set(image.values())) == g.n and _same_edges(g, h, image):
            return True
    return False


def _label_steps(g: ColoredGraph) -> list[dict[tuple, int]] | None:
    """Per vertex, the neighbour reached along each dart label, if labels are unique."""
    out = []
    for v in range(g.n):
        steps: dict[tuple, int] = {}
        for d in g.darts(v):
            e = g.edges[d[0]]
            lab = (e.color, e.directed, d[1], e.degenerate)
            if lab in steps:
                return None
            steps[lab] = g.far_end(d)
        out.append(steps)
    return out


def _edge_multiset(g: ColoredGraph, image: dict[int, int] | None = None) -> list[tuple]:
    f = (lambda v: image[v]) if image else (lambda v: v)
    keys = []
    for e in g.edges:
        a, b = f(e.tail), f(e.head)
        if not e.directed:
            a, b = min(a, b), max(a, b)
        keys.append((a, b, e.color, e.directed, e.degenerate))
    return sorted(keys)


def _same_edges(g: ColoredGraph, h: ColoredGraph, image: dict[int, int]) -> bool:
    return _edge_multiset(g, image) == _edge_multiset(h)


def _isomorphic_general(g: ColoredGraph, h: ColoredGraph) -> bool:
    import networkx as nx
    from networkx.algorithms.isomorphism import categorical_multiedge_match

    def as_nx(x: ColoredGraph):
        m = nx.MultiDiGraph()
        m.add_nodes_from(range(x.n))
        for e in x.edges:
            kind = (e.color, e.directed, e.degenerate)
            m.add_edge(e.tail, e.head, kind=kind)
            if not e.directed and not e.degenerate:
                m.add_edge(e.head, e.tail, kind=kind)
        return m

    return nx.is_isomorphic(as_nx(g), as_nx(h), edge_match=categorical_multiedge_match("kind", None))


# ---------------------------------------------------------------------------
# cycle space
# ---------------------------------------------------------------------------


def gf2_rank(rows: list[int]) -> int:
    """Rank over GF(2) of integers read as bit vectors."""
    basis: dict[int, int] = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top not in basis:
                basis[top] = row
                break
            row ^= basis[top]
    return len(basis)


def relator_walk_vector(g: ColoredGraph, start: int, word: Word) -> tuple[int, int]:
    """Walk ``word`` from ``start``; return the end vertex and the GF(2) edge vector."""
    steps = _dart_index(g)
    v, vec = start, 0
    for x in word:
        k, end = steps[v][x]
        if not g.edges[k].degenerate:
            vec ^= 1 << k
        v = end
    return v, vec


def _dart_index(g: ColoredGraph) -> list[dict[Letter, tuple[int, int]]]:
    out: list[dict[Letter, tuple[int, int]]] = [{} for _ in range(g.n)]
    for v in range(g.n):
        for d in g.darts(v):
            e = g.edges[d[0]]
            out[v][g.label(d)] = (d[0], g.far_end(d))
            if not e.directed:
                out[v][Letter(e.color, -1)] = (d[0], g.far_end(d))
    return out


def relator_span_rank(p: Presentation, g: ColoredGraph) -> int:
    """Dimension of the span of all relator walks at all vertices."""
    rows = []
    for v in range(g.n):
        for r in p.relators:
            _, vec = relator_walk_vector(g, v, r)
            rows.append(vec)
    return gf2_rank(rows)


def cycle_space_dimension(g: ColoredGraph) -> int:
    """``|E| - |V| + components``, with half-loops counted as pendant edges."""
    comps = 0
    seen: set[int] = set()
    for s in range(g.n):
        if s in seen:
            continue
        comps += 1
        stack = [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            for w in g.neighbours(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    proper = sum(1 for e in g.edges if not e.degenerate)
    return proper - g.n + comps
