"""Instance generators for the hardness reductions.

Each generator returns a :class:`GadgetOutput`: the instance, named vertex
roles, and (where the construction supplies one) canonical maps that the
construction promises to be locally surjective.

Target labels: a path ``P_k`` or ``K2oo`` uses index ``i`` for the vertex the
reductions call ``i + 1``; ``K_{1,3}`` uses 0 for the center and 1..3 for the
leaves.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .formats import CnfFormula
from .graph import (
    C4,
    K13,
    K2_TWO_LOOPS,
    P3,
    P4,
    Graph,
    associated_bipartite,
    direct_product,
    find_induced,
    find_isomorphism,
    is_connected,
    longest_induced_path,
)
from .instance import Instance
from .verify import verify_solution


class GadgetTooLarge(ValueError):
    pass


@dataclass
class GadgetOutput:
    instance: Instance
    annotations: dict[str, list[int]] = field(default_factory=dict)
    maps: dict[str, tuple[int, ...]] = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    def annotations_text(self) -> str:
        lines = []
        for role in sorted(self.annotations):
            lines.append(" ".join([role] + [str(v) for v in self.annotations[role]]))
        return "\n".join(lines) + "\n"


class _Builder:
    def __init__(self):
        self.lists: list[frozenset[int]] = []
        self.edges: list[tuple[int, int]] = []
        self.roles: dict[str, list[int]] = {}

    def add(self, lst: Iterable[int], role: str | None = None) -> int:
        self.lists.append(frozenset(lst))
        v = len(self.lists) - 1
        if role is not None:
            self.roles.setdefault(role, []).append(v)
        return v

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def path(self, vertices: Sequence[int]) -> None:
        for a, b in zip(vertices, vertices[1:]):
            self.edge(a, b)

    def graph(self) -> Graph:
        return Graph(len(self.lists), self.edges)

    def output(self, target: Graph, **info) -> GadgetOutput:
        inst = Instance(target, self.graph(), tuple(self.lists))
        return GadgetOutput(inst, {k: list(v) for k, v in self.roles.items()}, {}, dict(info))

    def attach(self, out: GadgetOutput, contact: int | None = None) -> list[int]:
        """Copy ``out``'s graph in; vertex 0 of the copy is identified with
        ``contact`` when given.  Returns the new index of every copied vertex."""
        g = out.instance.source
        index = []
        for v in range(g.n):
            if v == 0 and contact is not None:
                index.append(contact)
            else:
                index.append(self.add(out.instance.lists[v]))
        for u, v in g.edge_list():
            self.edge(index[u], index[v])
        return index


# --------------------------------------------------------------------------
# formulas


def pad_formula(f: CnfFormula) -> CnfFormula:
    """Append ``(x or not x or x)`` for every variable missing a polarity.

    The added clauses are satisfied and not-all-equal satisfied by every
    assignment, so both satisfiability notions are preserved.
    """
    pos = set()
    neg = set()
    for c in f.clauses:
        for lit in c:
            (pos if lit > 0 else neg).add(abs(lit))
    extra = [
        (x, -x, x) for x in range(1, f.num_vars + 1) if x not in pos or x not in neg
    ]
    return CnfFormula(f.num_vars, f.clauses + tuple(extra))


def _occurrences(f: CnfFormula):
    """``(clause, position, literal)`` in clause-major, literal-minor order."""
    for j, c in enumerate(f.clauses):
        for i, lit in enumerate(c):
            yield j, i, lit


# --------------------------------------------------------------------------
# K_{1,3}


def gen_k13(f: CnfFormula) -> GadgetOutput:
    """Satisfiability to LLSHom(K_{1,3}); the output is P10-free."""
    f = pad_formula(f)
    b = _Builder()
    x = {}
    xn = {}
    for z in range(1, f.num_vars + 1):
        v0 = b.add({0}, "var_center")
        x[z] = b.add({1, 2}, "var_x")
        xn[z] = b.add({1, 2}, "var_xneg")
        w = b.add({3}, "var_w")
        for u in (x[z], xn[z], w):
            b.edge(v0, u)
    for c in f.clauses:
        y = b.add({0}, "clause_center")
        for lit in c:
            s1 = b.add({1, 3}, "clause_s1")
            s2 = b.add({0}, "clause_s2")
            s3 = b.add({2, 3}, "clause_s3")
            b.path([y, s1, s2, s3])
            b.edge(s2, x[lit] if lit > 0 else xn[-lit])
        for z in range(1, f.num_vars + 1):
            b.edge(y, x[z])
            b.edge(y, xn[z])
    return b.output(K13, formula=f)


# --------------------------------------------------------------------------
# double-sided brooms: P4 and K2oo


def _polarity_counts(f: CnfFormula):
    pos = [0] * (f.num_vars + 1)
    neg = [0] * (f.num_vars + 1)
    for _, _, lit in _occurrences(f):
        if lit > 0:
            pos[lit] += 1
        else:
            neg[-lit] += 1
    return pos, neg


def _broom_reduction(f, target, handle_lists, leaf_list, center_list, arm_lists):
    f = pad_formula(f)
    pos, neg = _polarity_counts(f)
    b = _Builder()
    leaves_pos: dict[int, deque] = {}
    leaves_neg: dict[int, deque] = {}
    all_leaves = []
    for z in range(1, f.num_vars + 1):
        handle = [b.add(l, f"handle_r{i + 1}") for i, l in enumerate(handle_lists)]
        b.path(handle)
        leaves_pos[z] = deque()
        leaves_neg[z] = deque()
        for _ in range(pos[z]):
            leaf = b.add(leaf_list, "leaf_pos")
            b.edge(handle[0], leaf)
            leaves_pos[z].append(leaf)
            all_leaves.append(leaf)
        for _ in range(neg[z]):
            leaf = b.add(leaf_list, "leaf_neg")
            b.edge(handle[-1], leaf)
            leaves_neg[z].append(leaf)
            all_leaves.append(leaf)
    for c in f.clauses:
        y = b.add(center_list, "clause_center")
        for lit in c:
            arm = [y] + [b.add(l, f"clause_s{i + 1}") for i, l in enumerate(arm_lists)]
            b.path(arm)
            pool = leaves_pos[lit] if lit > 0 else leaves_neg[-lit]
            b.edge(arm[-1], pool.popleft())
        for leaf in all_leaves:
            b.edge(y, leaf)
    return b.output(target, formula=f)


def gen_p4(f: CnfFormula) -> GadgetOutput:
    """Satisfiability to LLSHom(P4); the output is P14-free."""
    return _broom_reduction(
        f,
        P4,
        [{0, 2}, {1, 3}, {2}, {1, 3}, {0, 2}],
        {1},
        {2},
        [{1, 3}, {0, 2}],
    )


def gen_k2loops(f: CnfFormula) -> GadgetOutput:
    """Satisfiability to LLSHom(K2oo); the output is P12-free."""
    return _broom_reduction(
        f,
        K2_TWO_LOOPS,
        [{0, 1}, {0}, {0, 1}],
        {1},
        {1},
        [{0, 1}, {0}, {0, 1}],
    )


def variable_gadget(kind: str, pos: int = 1, neg: int = 1) -> tuple[Instance, tuple[int, ...]]:
    """An isolated variable gadget and the vertices that must be happy.

    ``kind`` is ``"k13"`` (the whole star must be happy), ``"p4"`` or
    ``"k2loops"`` (the handle must be happy; ``pos``/``neg`` leaves hang off
    its two ends).  Vertex order follows the generators.
    """
    if kind == "k13":
        b = _Builder()
        v0 = b.add({0})
        for l in ({1, 2}, {1, 2}, {3}):
            b.edge(v0, b.add(l))
        return b.output(K13).instance, (0, 1, 2, 3)
    if kind == "p4":
        target, handle_lists = P4, [{0, 2}, {1, 3}, {2}, {1, 3}, {0, 2}]
    elif kind == "k2loops":
        target, handle_lists = K2_TWO_LOOPS, [{0, 1}, {0}, {0, 1}]
    else:
        raise ValueError(f"unknown gadget kind {kind!r}")
    b = _Builder()
    handle = [b.add(l) for l in handle_lists]
    b.path(handle)
    for end, count in ((handle[0], pos), (handle[-1], neg)):
        for _ in range(count):
            b.edge(end, b.add({1}))
    return b.output(target).instance, tuple(handle)


# --------------------------------------------------------------------------
# NAE-3-SAT to P3 on sparse, high-girth graphs


def gen_nae_p3(f: CnfFormula, p: int) -> GadgetOutput:
    """NAE-satisfiability to LLSHom(P3) with max degree 3, girth at least
    ``p`` and degree-3 vertices pairwise at distance at least ``p``.

    All variable cycles are numbered before the clause gadgets.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    f = pad_formula(f)
    span = 4 * p
    occ = [0] * (f.num_vars + 1)
    for _, _, lit in _occurrences(f):
        occ[abs(lit)] += 1
    b = _Builder()
    heads: dict[int, deque] = {}
    for z in range(1, f.num_vars + 1):
        r = occ[z]
        cycle = []
        heads[z] = deque()
        for i in range(r * span):
            v = b.add({0, 2} if i % 2 == 0 else {1}, "cycle")
            cycle.append(v)
            if i % span == 0:
                heads[z].append(v)
                b.roles.setdefault("head", []).append(v)
        b.path(cycle)
        b.edge(cycle[-1], cycle[0])
    for c in f.clauses:
        center = b.add({1}, "clause_center")
        for lit in c:
            length = span if lit > 0 else span + 2
            arm = [
                b.add({1} if i % 2 == 1 else {0, 2}, "arm_pos" if lit > 0 else "arm_neg")
                for i in range(1, length + 1)
            ]
            b.path(arm)
            b.edge(heads[abs(lit)].popleft(), arm[0])
            b.edge(arm[-1], center)
    return b.output(P3, formula=f, p=p)


def degree3_spacing(g: Graph) -> float:
    """Least distance between two distinct vertices of degree 3 (inf if < 2)."""
    deg3 = [v for v in range(g.n) if len(g.adj[v]) == 3]
    if len(deg3) < 2:
        return float("inf")
    targets = set(deg3)
    best = float("inf")
    for s in deg3:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if dist[u] + 1 >= best:
                break
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    if w in targets:
                        best = min(best, dist[w])
                    queue.append(w)
    return best


# --------------------------------------------------------------------------
# cross gadget


def cross_gadget(h: Graph, u: int, v: int) -> GadgetOutput:
    """``Z = H x H`` rooted at ``(u, v)`` with ``L(root) = {u, v}``.

    Both coordinate projections are locally surjective list homomorphisms;
    this is verified before returning.
    """
    isolated = [a for a in range(h.n) if not h.adj[a]]
    if isolated:
        raise ValueError(f"target has isolated vertex {isolated[0]}")
    prod = direct_product(h, h)
    n = h.n
    root = u * n + v
    full = frozenset(range(n))
    lists = [full] * prod.graph.n
    lists[root] = frozenset({u, v})
    # put the root first so it can be identified with a contact vertex
    order = [root] + [w for w in range(prod.graph.n) if w != root]
    pos = {w: i for i, w in enumerate(order)}
    g = Graph(len(order), ((pos[a], pos[c]) for a, c in prod.graph.edges))
    inst = Instance(h, g, tuple(lists[w] for w in order))
    proj_u = tuple(prod.pairs[w][0] for w in order)
    proj_v = tuple(prod.pairs[w][1] for w in order)
    for name, m in (("h_u", proj_u), ("h_v", proj_v)):
        verdict = verify_solution(inst, m)
        if not verdict:
            raise RuntimeError(f"cross gadget projection {name} fails: {verdict.message}")
    return GadgetOutput(inst, {"root": [0]}, {"h_u": proj_u, "h_v": proj_v}, {"pairs": [prod.pairs[w] for w in order]})


# --------------------------------------------------------------------------
# funny gadgets


def check_p3(h: Graph, p3: Sequence[int]) -> tuple[int, int, int]:
    one, two, three = p3
    if len({one, two, three}) != 3 or not (h.has_edge(one, two) and h.has_edge(two, three)):
        raise ValueError(f"{tuple(p3)} is not a P3 subgraph of the target")
    return one, two, three


def default_p3(h: Graph) -> tuple[int, int, int]:
    """Least middle vertex with two other neighbors, then the least pair."""
    for m in range(h.n):
        nb = sorted(h.adj[m] - {m})
        if len(nb) >= 2:
            return nb[0], m, nb[1]
    raise ValueError("target contains no P3 subgraph")


def is_trivial(h: Graph, p3: Sequence[int], vertex: int) -> bool:
    one, two, three = p3
    if vertex == two:
        return h.adj[two] <= {one, three}
    return h.adj[vertex] == frozenset({two})


def _unfold(adj, labels, start, first_level, depth, exclude_root, max_vertices):
    """Non-backtracking unfolding of a graph given by ``adj`` from ``start``.

    Children of a copy of ``b`` whose parent is a copy of ``a`` are copies of
    ``adj[b] - {a}``; the root's children are ``first_level``.  Copies at
    ``depth`` get edges to the earliest copy (creation order) of each missing
    neighbor among the first ``depth // 2`` levels.
    """
    base = [start]
    parent = [-1]
    level = [0]
    edges = []
    frontier = [0]
    for d in range(1, depth + 1):
        nxt = []
        for node in frontier:
            b = base[node]
            kids = first_level if node == 0 else sorted(adj[b] - {base[parent[node]]})
            for c in kids:
                base.append(c)
                parent.append(node)
                level.append(d)
                edges.append((node, len(base) - 1))
                nxt.append(len(base) - 1)
                if len(base) > max_vertices:
                    raise GadgetTooLarge(
                        f"gadget exceeds {max_vertices} vertices at depth {d}"
                    )
        frontier = nxt
    p = depth // 2
    first_copy = {}
    for node in range(len(base)):
        if level[node] > p:
            break
        if node == 0 and exclude_root:
            continue
        first_copy.setdefault(base[node], node)
    for node in frontier:
        b = base[node]
        for w in sorted(adj[b] - {base[parent[node]]}):
            if w not in first_copy:
                raise ValueError(
                    f"no copy of {labels(w)} within the first {p} levels"
                )
            edges.append((node, first_copy[w]))
    return base, edges


def funny_gadget(
    h: Graph,
    s: str | Iterable[int],
    p: int,
    p3: Sequence[int] | None = None,
    check_p: bool = True,
    max_vertices: int = 200_000,
) -> GadgetOutput:
    """Gadget whose root carries list ``S`` (``"2"`` or ``"13"``).

    ``p3 = (one, two, three)`` designates the path; ``S = {2}`` means the
    list ``{two}`` and ``S = {1,3}`` the list ``{one, three}``.  Vertex 0 is
    the root.  ``maps`` holds ``h2`` (for ``{2}``) or ``h1`` and ``h3``.
    """
    one, two, three = check_p3(h, p3 if p3 is not None else default_p3(h))
    kind = s if isinstance(s, str) else "".join(str(x) for x in sorted(s))
    if kind not in ("2", "13"):
        raise ValueError("S must be {2} or {1,3}")
    if check_p and p < h.n ** 2:
        raise ValueError(f"p = {p} is below |V(H)|^2 = {h.n ** 2}")
    if p < 1:
        raise ValueError("p must be at least 1")
    tri = {w: is_trivial(h, (one, two, three), w) for w in (one, two, three)}
    if kind == "2":
        if tri[two]:
            raise ValueError("vertex 2 is trivial; no gadget is needed")
        first = sorted(h.adj[two] - {one, three})
        base, edges = _unfold(
            [set(a) for a in h.adj], str, two, first, 2 * p, True, max_vertices
        )
        lists = [frozenset({two})] + [frozenset({b}) for b in base[1:]]
        g = Graph(len(base), edges)
        inst = Instance(h, g, tuple(lists))
        h2 = tuple(base)
        out = GadgetOutput(inst, {"root": [0], "root_children": sorted(g.adj[0])}, {"h2": h2})
        # all vertices but the root are happy, the root sees N(2) minus {1, 3}
        _check_funny_two(out, h, (one, two, three))
        return _with_diagnostics(out, p)

    if tri[one] and tri[three]:
        raise ValueError("vertices 1 and 3 are trivial; no gadget is needed")
    n = h.n
    prod = direct_product(h, h)
    kadj = [set(a) for a in prod.graph.adj]
    start = one * n + three
    base, edges = _unfold(
        kadj,
        lambda w: prod.pairs[w],
        start,
        sorted(kadj[start]),
        2 * p,
        False,
        max_vertices,
    )
    pairs = [prod.pairs[w] for w in base]
    lists = [frozenset(pr) for pr in pairs]
    g = Graph(len(base), edges)
    inst = Instance(h, g, tuple(lists))
    h1 = tuple(a for a, _ in pairs)
    h3 = tuple(c for _, c in pairs)
    out = GadgetOutput(inst, {"root": [0]}, {"h1": h1, "h3": h3})
    for name, m in (("h1", h1), ("h3", h3)):
        verdict = verify_solution(inst, m)
        if not verdict:
            raise RuntimeError(f"funny gadget map {name} fails: {verdict.message}")
    return _with_diagnostics(out, p)


def _check_funny_two(out: GadgetOutput, h: Graph, p3) -> None:
    from .verify import happy_vertices, is_list_homomorphism

    one, two, three = p3
    inst = out.instance
    h2 = out.maps["h2"]
    if not is_list_homomorphism(inst, h2):
        raise RuntimeError("funny gadget map h2 is not a list homomorphism")
    unhappy = set(range(inst.source.n)) - happy_vertices(inst, h2)
    if unhappy - {0}:
        raise RuntimeError(f"funny gadget leaves {sorted(unhappy - {0})[:5]} unhappy")
    image = {h2[u] for u in inst.source.adj[0]}
    if image != set(h.adj[two]) - {one, three}:
        raise RuntimeError("funny gadget root image differs from N(2) minus {1, 3}")
    for u in inst.source.adj[0]:
        if inst.lists[u] & {one, three}:
            raise RuntimeError("root neighbor list contains 1 or 3")


def _with_diagnostics(out: GadgetOutput, p: int) -> GadgetOutput:
    from .graph import max_degree

    out.info["p"] = p
    out.info["max_degree"] = max_degree(out.instance.source)
    return out


# --------------------------------------------------------------------------
# general targets


def _is_poly(h: Graph) -> bool:
    return h.n == 1 or (h.n == 2 and h.m == 1 and not h.loops())


def path_length_bound(h: Graph) -> int:
    """``14 + 2q`` with ``q`` the longest induced path in ``H x H``.

    Every instance from :func:`gen_general_h_pathfree` is claimed to be
    ``P_t``-free for some ``t`` at most this.  Exponential in ``|V(H)|``.
    """
    return 14 + 2 * longest_induced_path(direct_product(h, h).graph)


def find_base_pattern(h: Graph) -> tuple[str, tuple[int, ...]] | None:
    """First induced ``K2oo``, ``P4`` or ``K_{1,3}`` (in that priority)."""
    for name, pattern in (("k2loops", K2_TWO_LOOPS), ("p4", P4), ("k13", K13)):
        emb = find_induced(h, pattern)
        if emb is not None:
            return name, emb
    return None


_BASE_GEN = {"k2loops": gen_k2loops, "p4": gen_p4, "k13": gen_k13}


def gen_general_h_pathfree(
    f: CnfFormula, h: Graph, via_star: bool = False
) -> GadgetOutput:
    """Satisfiability to LLSHom(H) on P_t-free graphs for a general target.

    Builds the reduction for an induced ``H'`` in ``{K2oo, P4, K_{1,3}}`` and
    attaches copies of ``H`` and cross gadgets through contact vertices so
    that base vertices can see their neighbors outside ``H'``.  When no such
    ``H'`` exists and ``via_star`` is set, the construction runs on ``H*``
    (the output is then an instance over ``H*``).
    """
    if not is_connected(h):
        raise ValueError("target must be connected")
    if _is_poly(h) or find_isomorphism(P3, h) or find_isomorphism(C4, h):
        raise ValueError("target is polynomial, P3 or C4; no hardness construction")
    found = find_base_pattern(h)
    if found is None:
        if via_star:
            star = associated_bipartite(h).graph
            out = gen_general_h_pathfree(f, star, via_star=False)
            out.info["route"] = "star"
            return out
        raise ValueError(
            "target has no induced K2oo, P4 or K_{1,3}; use its associated bipartite graph"
        )
    name, emb = found
    base = _BASE_GEN[name](f)
    bi = base.instance
    bg = bi.source
    lists = [frozenset(emb[a] for a in l) for l in bi.lists]
    b = _Builder()
    for l in lists:
        b.add(l)
    for u, v in bg.edge_list():
        b.edge(u, v)
    b.roles = {k: list(v) for k, v in base.annotations.items()}
    outside = frozenset(range(h.n)) - frozenset(emb)
    identity = Instance(h, h, tuple(frozenset({a}) for a in range(h.n)))
    for w in range(bg.n):
        lw = lists[w]
        if len(lw) == 1:
            (cw,) = lw
            for c in sorted(outside & h.adj[cw]):
                _attach_copy(b, identity, c, w)
        elif len(lw) == 2:
            a, bb = sorted(lw)
            qs = [q for q in sorted(bg.adj[w]) if len(lists[q]) == 1]
            if not qs:
                raise ValueError(f"base vertex {w} with a 2-list has no 1-list neighbor")
            (cq,) = lists[qs[0]]
            both = outside & h.adj[a] & h.adj[bb]
            private = ((outside & h.adj[a]) | (outside & h.adj[bb])) - both
            for c in sorted(both):
                _attach_copy(b, identity, c, w)
            for c in sorted(private):
                z = cross_gadget(h, c, cq)
                index = b.attach(z)
                b.edge(index[0], w)
                b.roles.setdefault("cross_root", []).append(index[0])
        elif lw:
            raise ValueError("base construction has a list with more than two entries")
    return b.output(h, formula=base.info["formula"], base=name, embedding=emb)


def _attach_copy(b: _Builder, identity: Instance, contact: int, w: int) -> None:
    start = len(b.lists)
    for l in identity.lists:
        b.add(l)
    for u, v in identity.source.edge_list():
        b.edge(start + u, start + v)
    b.edge(start + contact, w)
    b.roles.setdefault("contact", []).append(start + contact)


def gen_general_h_girth(
    f: CnfFormula,
    h: Graph,
    p: int | None = None,
    p3: Sequence[int] | None = None,
    check_p: bool = True,
    max_vertices: int = 200_000,
) -> GadgetOutput:
    """NAE-satisfiability to LLSHom(H) on graphs of bounded degree and
    large girth: the P3 construction plus funny gadgets on every vertex
    whose list involves a non-trivial vertex of the designated path.

    Targets on at most two vertices are handled through ``H*``.
    """
    if not is_connected(h):
        raise ValueError("target must be connected")
    if _is_poly(h):
        raise ValueError("target is polynomial; no hardness construction")
    if h.n <= 2:
        star = associated_bipartite(h).graph
        out = gen_general_h_girth(f, star, p, None, check_p, max_vertices)
        out.info["route"] = "star"
        return out
    one, two, three = check_p3(h, p3 if p3 is not None else default_p3(h))
    if p is None:
        p = h.n ** 2
    if check_p and p < h.n ** 2:
        raise ValueError(f"p = {p} is below |V(H)|^2 = {h.n ** 2}")
    base = gen_nae_p3(f, p)
    relabel = {0: one, 1: two, 2: three}
    b = _Builder()
    for l in base.instance.lists:
        b.add(relabel[a] for a in l)
    for u, v in base.instance.source.edge_list():
        b.edge(u, v)
    b.roles = {k: list(v) for k, v in base.annotations.items()}
    p3 = (one, two, three)
    g2 = None
    g13 = None
    if not is_trivial(h, p3, two):
        g2 = funny_gadget(h, "2", p, p3, check_p, max_vertices)
    if not (is_trivial(h, p3, one) and is_trivial(h, p3, three)):
        g13 = funny_gadget(h, "13", p, p3, check_p, max_vertices)
    n_base = base.instance.source.n
    for u in range(n_base):
        gadget = g2 if len(base.instance.lists[u]) == 1 else g13
        if gadget is not None:
            b.attach(gadget, contact=u)
            if len(b.lists) > max_vertices:
                raise GadgetTooLarge(f"output exceeds {max_vertices} vertices")
    return b.output(h, formula=base.info["formula"], p=p, p3=p3)
