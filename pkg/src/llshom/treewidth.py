"""Heuristic tree decompositions and the dynamic program for the auxiliary
P3 problem (pick a color in ``{1, 3}`` for every X-vertex so that every
Y-vertex sees all colors of its demand set ``sigma``).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable

from .graph import Graph
from .instance import ONE, THREE, AuxInstance


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def audit(self, vertices: Iterable, edges: Iterable[tuple]) -> list[str]:
        """Violations of the cover, edge and connectivity conditions."""
        problems = []
        covered = set().union(*self.bags) if self.bags else set()
        for v in vertices:
            if v not in covered:
                problems.append(f"vertex {v} in no bag")
        for u, v in edges:
            if not any(u in b and v in b for b in self.bags):
                problems.append(f"edge ({u}, {v}) in no bag")
        nb = len(self.bags)
        tadj = [[] for _ in range(nb)]
        for i, j in self.edges:
            tadj[i].append(j)
            tadj[j].append(i)
        if nb and len(self.edges) != nb - 1:
            problems.append("decomposition tree has wrong edge count")
        for v in covered:
            holding = [i for i in range(nb) if v in self.bags[i]]
            seen = {holding[0]}
            stack = [holding[0]]
            while stack:
                i = stack.pop()
                for j in tadj[i]:
                    if j not in seen and v in self.bags[j]:
                        seen.add(j)
                        stack.append(j)
            if len(seen) != len(holding):
                problems.append(f"bags holding {v} are not connected")
        return problems


def _fill(adj, v):
    nb = list(adj[v])
    missing = 0
    for i, a in enumerate(nb):
        aa = adj[a]
        for b in nb[i + 1:]:
            if b not in aa:
                missing += 1
    return missing


def elimination_order(g: Graph, heuristic: str = "min_fill") -> list[int]:
    """Greedy elimination ordering.

    ``min_fill`` picks the vertex adding the fewest fill edges, breaking ties
    by degree and then index; ``min_degree`` uses degree then index.
    """
    if heuristic not in ("min_fill", "min_degree"):
        raise ValueError(f"unknown heuristic {heuristic!r}")
    use_fill = heuristic == "min_fill"
    adj = [set(a) - {v} for v, a in enumerate(g.adj)]
    alive = [True] * g.n

    def key(v):
        return (_fill(adj, v) if use_fill else 0, len(adj[v]), v)

    current = {v: key(v) for v in range(g.n)}
    heap = list(current.values())
    heapq.heapify(heap)
    order = []
    while heap:
        k = heapq.heappop(heap)
        v = k[2]
        if not alive[v] or current[v] != k:
            continue
        alive[v] = False
        order.append(v)
        nb = adj[v]
        for a in nb:
            adj[a].discard(v)
            adj[a] |= nb - {a}
        affected = set(nb)
        if use_fill:
            for a in nb:
                affected |= adj[a]
        adj[v] = set()
        for u in affected:
            if alive[u]:
                k2 = key(u)
                if k2 != current[u]:
                    current[u] = k2
                    heapq.heappush(heap, k2)
    return order


def decompose(g: Graph, heuristic: str = "min_fill") -> TreeDecomposition:
    """Tree decomposition from a greedy elimination ordering (deterministic)."""
    n = g.n
    if n == 0:
        return TreeDecomposition((), ())
    order = elimination_order(g, heuristic)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    adj = [set(a) - {v} for v, a in enumerate(g.adj)]
    bags = []
    parent = [-1] * n
    for i, v in enumerate(order):
        later = {u for u in adj[v] if pos[u] > i}
        bags.append(frozenset(later | {v}))
        for a in later:
            adj[a] |= later - {a}
        if later:
            parent[i] = min(pos[u] for u in later)
    edges = []
    roots = []
    for i in range(n):
        if parent[i] >= 0:
            edges.append((i, parent[i]))
        else:
            roots.append(i)
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition(tuple(bags), tuple(edges))


def augment_bags(td: TreeDecomposition, extra: Iterable) -> TreeDecomposition:
    """Add ``extra`` to every bag (a single bag if the decomposition is empty)."""
    extra = frozenset(extra)
    if not extra:
        return td
    if not td.bags:
        return TreeDecomposition((extra,), ())
    return TreeDecomposition(tuple(b | extra for b in td.bags), td.edges)


def relabel_td(td: TreeDecomposition, names) -> TreeDecomposition:
    return TreeDecomposition(
        tuple(frozenset(names[v] for v in b) for b in td.bags), td.edges
    )


# --------------------------------------------------------------------------
# nice decompositions

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: tuple  # sorted
    vertex: object = None
    children: tuple = ()


def make_nice(td: TreeDecomposition) -> list[NiceNode]:
    """Nice form rooted at bag 0, children before parents; the last node
    is the root and has an empty bag."""
    nodes: list[NiceNode] = []

    def add(kind, bag, vertex=None, children=()):
        nodes.append(NiceNode(kind, tuple(sorted(bag)), vertex, tuple(children)))
        return len(nodes) - 1

    def chain(top, have, want):
        cur = set(have)
        for v in sorted(have - want):
            cur.discard(v)
            top = add(FORGET, cur, v, (top,))
        for v in sorted(want - have):
            cur.add(v)
            top = add(INTRODUCE, cur, v, (top,))
        return top

    nb = len(td.bags)
    if nb == 0:
        add(LEAF, ())
        return nodes
    tadj = [[] for _ in range(nb)]
    for i, j in td.edges:
        tadj[i].append(j)
        tadj[j].append(i)
    # iterative post-order from bag 0
    parent = [-1] * nb
    visit = []
    stack = [0]
    seen = [False] * nb
    seen[0] = True
    while stack:
        t = stack.pop()
        visit.append(t)
        for s in sorted(tadj[t], reverse=True):
            if not seen[s]:
                seen[s] = True
                parent[s] = t
                stack.append(s)
    top = [0] * nb
    kids = [[] for _ in range(nb)]
    for t in visit[1:]:
        kids[parent[t]].append(t)
    for t in reversed(visit):
        bag = set(td.bags[t])
        branches = [chain(top[c], set(td.bags[c]), bag) for c in sorted(kids[t])]
        if not branches:
            top[t] = chain(add(LEAF, ()), set(), bag)
            continue
        cur = branches[0]
        for b in branches[1:]:
            cur = add(JOIN, bag, None, (cur, b))
        top[t] = cur
    chain(top[0], set(td.bags[0]), set())
    return nodes


# --------------------------------------------------------------------------
# dynamic program


class DPStats:
    def __init__(self):
        self.max_states = 0
        self.bound_violations = 0
        self.nodes = 0


def _prune(table: dict, x_pos: list[int], y_pos: list[int]) -> dict:
    """Drop states whose Y seen-sets are pointwise contained in another
    state's with the same X-coloring."""
    if not y_pos:
        return table
    groups: dict = {}
    for key in table:
        groups.setdefault(tuple(key[i] for i in x_pos), []).append(key)
    out = {}
    for keys in groups.values():
        if len(keys) == 1:
            out[keys[0]] = table[keys[0]]
            continue
        # larger seen-sets first so dominators are kept before the dominated
        keys.sort(key=lambda k: (-sum(bin(k[i]).count("1") for i in y_pos), k))
        kept = []
        for k in keys:
            dominated = False
            for other in kept:
                if all(k[i] & ~other[i] == 0 for i in y_pos):
                    dominated = True
                    break
            if not dominated:
                kept.append(k)
                out[k] = table[k]
    return out


def dp_solve(
    aux: AuxInstance, td: TreeDecomposition, stats: DPStats | None = None
) -> dict[int, int] | None:
    """X-coloring (color bit per X-vertex) meeting every demand, or ``None``.

    ``td`` must be a valid decomposition of the aux graph.
    """
    nodes = make_nice(td)
    is_x = aux.x_lists
    sigma = aux.sigma
    adj = aux.adj
    tables: list[dict] = [None] * len(nodes)
    for idx, node in enumerate(nodes):
        bag = node.bag
        if node.kind == LEAF:
            table = {(): None}
        elif node.kind == INTRODUCE:
            v = node.vertex
            pos = bag.index(v)
            child = tables[node.children[0]]
            table = {}
            if v in is_x:
                ys = [i for i, w in enumerate(bag) if w in adj[v]]
                for key in child:
                    for c in (ONE, THREE):
                        if not c & is_x[v]:
                            continue
                        new = list(key)
                        new.insert(pos, c)
                        for i in ys:
                            new[i] |= c & sigma[bag[i]]
                        table[tuple(new)] = key
            else:
                xs = [i for i, w in enumerate(bag) if w in adj[v]]
                s = sigma[v]
                for key in child:
                    new = list(key)
                    new.insert(pos, 0)
                    seen = 0
                    for i in xs:
                        seen |= new[i]
                    new[pos] = seen & s
                    table[tuple(new)] = key
        elif node.kind == FORGET:
            v = node.vertex
            child_node = nodes[node.children[0]]
            pos = child_node.bag.index(v)
            child = tables[node.children[0]]
            table = {}
            need = sigma.get(v)
            for key in child:
                if need is not None and key[pos] != need:
                    continue
                new = key[:pos] + key[pos + 1:]
                if new not in table:
                    table[new] = key
        else:
            left = tables[node.children[0]]
            right = tables[node.children[1]]
            x_pos = [i for i, w in enumerate(bag) if w in is_x]
            by_x: dict = {}
            for key in right:
                by_x.setdefault(tuple(key[i] for i in x_pos), []).append(key)
            table = {}
            y_pos = [i for i, w in enumerate(bag) if w not in is_x]
            for lk in left:
                for rk in by_x.get(tuple(lk[i] for i in x_pos), ()):
                    new = list(lk)
                    for i in y_pos:
                        new[i] |= rk[i]
                    new = tuple(new)
                    if new not in table:
                        table[new] = (lk, rk)
        if node.kind in (FORGET, JOIN, INTRODUCE):
            x_pos = [i for i, w in enumerate(bag) if w in is_x]
            y_pos = [i for i, w in enumerate(bag) if w not in is_x]
            if stats is not None and len(table) > (1 << len(x_pos)) * 4 ** len(y_pos):
                stats.bound_violations += 1
            table = _prune(table, x_pos, y_pos)
            if stats is not None and len(table) > (1 << len(x_pos)) * 3 ** len(y_pos):
                stats.bound_violations += 1
        if stats is not None:
            stats.max_states = max(stats.max_states, len(table))
            stats.nodes += 1
        tables[idx] = table
        if not table:
            return None
    root = len(nodes) - 1
    if () not in tables[root]:
        return None
    # traceback
    coloring: dict[int, int] = {}
    stack = [(root, ())]
    while stack:
        idx, key = stack.pop()
        node = nodes[idx]
        back = tables[idx][key]
        if node.kind == LEAF:
            continue
        if node.kind == JOIN:
            stack.append((node.children[0], back[0]))
            stack.append((node.children[1], back[1]))
            continue
        if node.kind == INTRODUCE and node.vertex in is_x:
            coloring[node.vertex] = key[node.bag.index(node.vertex)]
        stack.append((node.children[0], back))
    return coloring
