"""Undirected graphs with loops, structural queries and constructions.

Vertices are dense integer indices ``0..n-1``.  A loop ``{v, v}`` is stored
as self-membership in the neighbor set, so ``v in g.adj[v]`` exactly when
``v`` carries a loop.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

INF = float("inf")


class Graph:
    """Immutable undirected graph on ``range(n)``; loops allowed."""

    __slots__ = ("n", "edges", "adj", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [set() for _ in range(n)]
        norm = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u > v:
                u, v = v, u
            norm.add((u, v))
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges = frozenset(norm)
        self.adj = tuple(frozenset(s) for s in adj)
        self._hash = None

    def __repr__(self):
        return f"Graph({self.n}, {self.edge_list()})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.edges))
        return self._hash

    def __len__(self):
        return self.n

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def has_loop(self, v: int) -> bool:
        return v in self.adj[v]

    def loops(self) -> list[int]:
        return [v for v in range(self.n) if v in self.adj[v]]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return ``(sub, order)`` where ``order[i]`` is the original vertex of ``i``."""
        order = sorted(set(vertices))
        index = {v: i for i, v in enumerate(order)}
        edges = [
            (index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        ]
        return Graph(len(order), edges), order

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def disjoint_union(self, other: "Graph") -> "Graph":
        off = self.n
        return Graph(
            self.n + other.n,
            itertools.chain(self.edges, ((u + off, v + off) for u, v in other.edges)),
        )


# --------------------------------------------------------------------------
# named graphs


def path_graph(t: int) -> Graph:
    return Graph(t, ((i, i + 1) for i in range(t - 1)))


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise ValueError("a simple cycle needs at least 3 vertices")
    return Graph(k, ((i, (i + 1) % k) for i in range(k)))


def complete_graph(k: int) -> Graph:
    return Graph(k, itertools.combinations(range(k), 2))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with center 0."""
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def with_loops(g: Graph, vertices: Iterable[int]) -> Graph:
    return Graph(g.n, itertools.chain(g.edges, ((v, v) for v in vertices)))


K1 = Graph(1)
K1_LOOP = Graph(1, [(0, 0)])
K2 = path_graph(2)
K2_ONE_LOOP = Graph(2, [(0, 1), (0, 0)])
K2_TWO_LOOPS = Graph(2, [(0, 1), (0, 0), (1, 1)])
P3 = path_graph(3)
P4 = path_graph(4)
C4 = cycle_graph(4)
K3 = complete_graph(3)
K13 = star_graph(3)


# --------------------------------------------------------------------------
# structural queries


@dataclass(frozen=True)
class Bipartition:
    class_a: frozenset[int]
    class_b: frozenset[int]

    def side(self, v: int) -> int:
        return 0 if v in self.class_a else 1


def bipartition(g: Graph) -> Bipartition | None:
    """Two-coloring of a loopless bipartite graph, or ``None``.

    Each component's lowest-index vertex is placed in ``class_a``.
    """
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    a = frozenset(v for v in range(g.n) if color[v] == 0)
    b = frozenset(v for v in range(g.n) if color[v] == 1)
    return Bipartition(a, b)


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by least vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def max_degree(g: Graph) -> int:
    return max((len(a) for a in g.adj), default=0)


def girth(g: Graph) -> float:
    """Length of a shortest cycle; a loop is a cycle of length 1.

    Returns ``INF`` for forests.
    """
    if g.loops():
        return 1
    best = INF
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def distances_from(g: Graph, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


# --------------------------------------------------------------------------
# constructions


class Product(NamedTuple):
    graph: Graph
    pairs: list[tuple[int, int]]

    def index(self, u: int, v: int, n_right: int) -> int:
        return u * n_right + v


def direct_product(g: Graph, h: Graph) -> Product:
    """Direct (tensor) product; vertex ``(u, v)`` gets index ``u * h.n + v``."""
    nh = h.n
    pairs = [(u, v) for u in range(g.n) for v in range(nh)]
    edges = []
    for u1, u2 in g.edges:
        for v1, v2 in h.edges:
            edges.append((u1 * nh + v1, u2 * nh + v2))
            edges.append((u1 * nh + v2, u2 * nh + v1))
    return Product(Graph(g.n * nh, edges), pairs)


class Associated(NamedTuple):
    """``H* = H x K2`` with ``v' = prime[v]`` and ``v'' = dprime[v]``."""

    graph: Graph
    prime: list[int]
    dprime: list[int]

    def base_vertex(self, w: int) -> int:
        n = len(self.prime)
        return w if w < n else w - n


def associated_bipartite(h: Graph) -> Associated:
    n = h.n
    edges = []
    for u, v in h.edges:
        edges.append((u, n + v))
        edges.append((v, n + u))
    return Associated(Graph(2 * n, edges), list(range(n)), [n + v for v in range(n)])


# --------------------------------------------------------------------------
# pattern graphs (paths, subdivided claws, and forests of them)

_PATTERN_TOKEN = re.compile(r"^\s*(?:P\s*(\d+)|S\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\))\s*$")


@dataclass(frozen=True)
class PatternGraph:
    """A path ``P_t``, a subdivided claw ``S_{a,b,c}``, or a forest of those.

    For a claw the central vertex is vertex 0 of :meth:`to_graph`; arms
    follow in order.
    """

    kind: str
    params: tuple

    @classmethod
    def path(cls, t: int) -> "PatternGraph":
        if t < 1:
            raise ValueError("P_t needs t >= 1")
        return cls("path", (t,))

    @classmethod
    def claw(cls, a: int, b: int, c: int) -> "PatternGraph":
        if min(a, b, c) < 1:
            raise ValueError("S_{a,b,c} needs a, b, c >= 1")
        return cls("claw", (a, b, c))

    @classmethod
    def forest(cls, parts: Iterable["PatternGraph"]) -> "PatternGraph":
        flat = []
        for p in parts:
            flat.extend(p.components())
        if not flat:
            raise ValueError("empty forest")
        if len(flat) == 1:
            return flat[0]
        return cls("forest", tuple(flat))

    def components(self) -> list["PatternGraph"]:
        return list(self.params) if self.kind == "forest" else [self]

    @property
    def vertex_count(self) -> int:
        if self.kind == "path":
            return self.params[0]
        if self.kind == "claw":
            return sum(self.params) + 1
        return sum(c.vertex_count for c in self.params)

    def to_graph(self) -> Graph:
        if self.kind == "path":
            return path_graph(self.params[0])
        if self.kind == "claw":
            edges = []
            nxt = 1
            for arm in self.params:
                prev = 0
                for _ in range(arm):
                    edges.append((prev, nxt))
                    prev = nxt
                    nxt += 1
            return Graph(nxt, edges)
        g = Graph(0)
        for c in self.params:
            g = g.disjoint_union(c.to_graph())
        return g

    def __str__(self):
        if self.kind == "path":
            return f"P{self.params[0]}"
        if self.kind == "claw":
            return "S({},{},{})".format(*self.params)
        return "+".join(str(c) for c in self.params)


def parse_pattern(text: str) -> PatternGraph:
    """Parse ``"S(2,2,2)+P4"``-style pattern syntax."""
    parts = []
    for token in text.split("+"):
        m = _PATTERN_TOKEN.match(token)
        if not m:
            raise ValueError(f"bad pattern component: {token!r}")
        if m.group(1) is not None:
            parts.append(PatternGraph.path(int(m.group(1))))
        else:
            parts.append(PatternGraph.claw(*(int(m.group(i)) for i in (2, 3, 4))))
    return PatternGraph.forest(parts)


# --------------------------------------------------------------------------
# induced subgraph search


def find_induced(g: Graph, pattern: PatternGraph | Graph) -> tuple[int, ...] | None:
    """Lexicographically least induced embedding of ``pattern`` into ``g``.

    The result maps pattern vertex ``i`` to ``result[i]``; loops must match
    exactly (an induced copy of a looped vertex is a looped vertex).
    """
    f = pattern.to_graph() if isinstance(pattern, PatternGraph) else pattern
    k = f.n
    if k == 0:
        return ()
    if k > g.n:
        return None
    if not f.loops() and f.m == k - 1 and all(f.has_edge(i, i + 1) for i in range(k - 1)):
        return _find_induced_path(g, k)
    fdeg = [len(a) for a in f.adj]
    gdeg = [len(a) for a in g.adj]
    # an earlier neighbor, if any, restricts candidates to its image's neighborhood
    anchor = []
    for i in range(k):
        earlier = [j for j in f.adj[i] if j < i]
        anchor.append(min(earlier) if earlier else -1)
    floop = [f.has_loop(i) for i in range(k)]
    fadj = f.adj
    gadj = g.adj
    image = [-1] * k
    used = set()

    def candidates(i):
        a = anchor[i]
        if a < 0:
            return range(g.n)
        return sorted(gadj[image[a]])

    def ok(i, v):
        if v in used or gdeg[v] < fdeg[i] or (v in gadj[v]) != floop[i]:
            return False
        for j in range(i):
            if (j in fadj[i]) != (image[j] in gadj[v]):
                return False
        return True

    stack = [iter(candidates(0))]
    i = 0
    while stack:
        it = stack[-1]
        placed = False
        for v in it:
            if ok(i, v):
                image[i] = v
                used.add(v)
                placed = True
                break
        if not placed:
            stack.pop()
            i -= 1
            if i >= 0:
                used.discard(image[i])
                image[i] = -1
            continue
        if i == k - 1:
            return tuple(image)
        i += 1
        stack.append(iter(candidates(i)))
    return None


def _find_induced_path(g: Graph, k: int) -> tuple[int, ...] | None:
    """Bitset search for the lexicographically least induced path on ``k``
    vertices, as an image tuple along the path."""
    loopy = 0
    for v in g.loops():
        loopy |= 1 << v
    nbr = [sum(1 << u for u in a if u != v) & ~loopy for v, a in enumerate(g.adj)]
    closed = [nbr[v] | (1 << v) for v in range(g.n)]
    for s in range(g.n):
        if loopy >> s & 1:
            continue
        if k == 1:
            return (s,)
        # frame: (last vertex, blocked mask of all earlier vertices, open candidates)
        path = [s]
        stack = [(0, nbr[s])]
        while stack:
            blocked, cand = stack[-1]
            if not cand:
                stack.pop()
                path.pop()
                continue
            low = cand & -cand
            stack[-1] = (blocked, cand ^ low)
            v = low.bit_length() - 1
            path.append(v)
            if len(path) == k:
                return tuple(path)
            nb = blocked | closed[path[-2]]
            stack.append((nb, nbr[v] & ~nb))
    return None


def longest_induced_path(g: Graph) -> int:
    """Vertex count of a longest induced path (loops excluded); exponential."""
    k = 0
    while k < g.n and find_induced(g, path_graph(k + 1)) is not None:
        k += 1
    return k


def find_isomorphism(g: Graph, h: Graph) -> tuple[int, ...] | None:
    """A bijection ``phi`` with ``uv in E(g) <=> phi(u)phi(v) in E(h)``.

    Exhaustive over degree-compatible permutations; intended for the
    constant-sized targets only.
    """
    if g.n != h.n or g.m != h.m:
        return None
    if sorted(map(len, g.adj)) != sorted(map(len, h.adj)):
        return None
    if len(g.loops()) != len(h.loops()):
        return None
    return find_induced(h, g) if g.n else ()


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None
