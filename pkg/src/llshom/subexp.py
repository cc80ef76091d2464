"""Branch-and-decompose solver for LLSHom(P3) and its C4 wrapper.

Pipeline for one connected, consistently oriented P3 instance: turn it into
an auxiliary instance (X-vertices choose an end color, every Y-vertex must
see all colors of ``sigma(y)``), preprocess, branch on X-vertices of high
degree, set the high-degree Y-vertices aside, optionally guess colorings
around induced copies of the forbidden forest components, and finish with
dynamic programming over a tree decomposition whose bags all contain the
set-aside Y-vertices.
"""

from __future__ import annotations

import itertools
import logging
import math
import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .graph import (
    C4,
    P3,
    Bipartition,
    Graph,
    PatternGraph,
    find_induced,
    find_isomorphism,
    max_degree,
)
from .instance import (
    BOTH,
    ONE,
    THREE,
    AuxInstance,
    Instance,
    reduce_c4_to_p3,
    split_components,
    split_consistent,
)
from .result import Result, no, yes
from .treewidth import DPStats, augment_bags, decompose, dp_solve, relabel_td

log = logging.getLogger(__name__)


@dataclass
class SolveStats:
    branches: int = 0
    guesses: int = 0
    dp_calls: int = 0
    max_width: int = -1
    max_y_prime: int = 0
    width_bound: int = -1  # largest 56*t*Delta seen, report only
    over_bound: int = 0
    nodes: list = field(default_factory=list)  # (n, mu) per recursive call
    edges: list = field(default_factory=list)  # (parent mu, child mu)
    dp: DPStats = field(default_factory=DPStats)

    def measure_violations(self) -> int:
        bad = sum(1 for n, mu in self.nodes if not n <= mu <= 2 * n)
        return bad + sum(1 for parent, child in self.edges if not child < parent)

    def merge(self, other: "SolveStats") -> None:
        self.branches += other.branches
        self.guesses += other.guesses
        self.dp_calls += other.dp_calls
        self.max_width = max(self.max_width, other.max_width)
        self.max_y_prime = max(self.max_y_prime, other.max_y_prime)
        self.width_bound = max(self.width_bound, other.width_bound)
        self.over_bound += other.over_bound
        self.nodes.extend(other.nodes)
        self.edges.extend(other.edges)
        self.dp.max_states = max(self.dp.max_states, other.dp.max_states)
        self.dp.bound_violations += other.dp.bound_violations
        self.dp.nodes += other.dp.nodes

    def summary(self) -> dict:
        return {
            "branches": self.branches,
            "guesses": self.guesses,
            "dp_calls": self.dp_calls,
            "max_width": self.max_width,
            "y_prime": self.max_y_prime,
            "width_bound": self.width_bound,
            "over_bound": self.over_bound,
        }


def _root_ceil(base: float, power: int, root: int) -> int:
    """Least integer c with c**root >= base**power (base >= 0)."""
    target = base ** power
    c = max(0, math.ceil(target ** (1.0 / root) - 1e-9))
    while c ** root < target * (1 - 1e-12):
        c += 1
    while c > 0 and (c - 1) ** root >= target * (1 + 1e-12):
        c -= 1
    return c


def thresholds(n: int) -> tuple[int, int]:
    """``(ceil((n log2 n)^(1/3)), ceil((n log2 n)^(2/3)))`` for ``n >= 2``."""
    if n < 2:
        raise ValueError("thresholds need n >= 2")
    base = n * math.log2(n)
    return _root_ceil(base, 1, 3), _root_ceil(base, 2, 3)


# --------------------------------------------------------------------------
# pipeline stages


def preprocess(aux: AuxInstance) -> AuxInstance | None:
    """Apply the reduction rules to a fixed point, FIFO over vertex names.

    Empty X-list rejects; empty demand deletes the Y-vertex; a singleton
    X-list removes its color from neighboring demands and deletes the
    X-vertex (recorded in ``fixed``).  An isolated Y-vertex with a nonempty
    demand rejects.  Returns ``None`` on rejection.
    """
    a = aux.copy()
    queue = deque(sorted(a.adj))
    queued = set(queue)

    def push(v):
        if v not in queued:
            queued.add(v)
            queue.append(v)

    while queue:
        v = queue.popleft()
        queued.discard(v)
        if v not in a.adj:
            continue
        if v in a.x_lists:
            m = a.x_lists[v]
            if m == 0:
                return None
            if m == BOTH:
                continue
            for y in sorted(a.adj[v]):
                a.sigma[y] &= ~m
                a.adj[y].discard(v)
                push(y)
            del a.adj[v], a.x_lists[v]
            a.fixed[v] = m
        elif a.sigma[v] == 0:
            for x in a.adj[v]:
                a.adj[x].discard(v)
            del a.adj[v], a.sigma[v]
    for y, s in a.sigma.items():
        if not a.adj[y]:
            return None
    return a


def branch_high_degree(aux: AuxInstance) -> tuple[int, list[AuxInstance]] | None:
    """Children pinning the max-degree X-vertex to each of 1 and 3 left in its
    list, if its degree exceeds the first threshold."""
    if aux.n < 2:
        return None
    th1, _ = thresholds(aux.n)
    best = None
    for x in sorted(aux.x_lists):
        d = len(aux.adj[x])
        if d > th1 and (best is None or d > len(aux.adj[best])):
            best = x
    if best is None:
        return None
    colors = [c for c in (ONE, THREE) if aux.x_lists[best] & c]
    return best, [aux.pinned({best: c}) for c in colors]


def extract_high_degree_y(aux: AuxInstance) -> tuple[frozenset[int], AuxInstance]:
    """``Y'`` (Y-vertices of degree at least the second threshold) and the
    instance with ``Y'`` removed."""
    if aux.n < 2:
        return frozenset(), aux
    _, th2 = thresholds(aux.n)
    yp = frozenset(y for y in aux.sigma if len(aux.adj[y]) >= th2)
    if not yp:
        return yp, aux
    return yp, aux.restrict(v for v in aux.adj if v not in yp)


def _as_graph(aux: AuxInstance) -> tuple[Graph, list[int]]:
    names = sorted(aux.adj)
    index = {v: i for i, v in enumerate(names)}
    edges = [(index[x], index[y]) for x in aux.x_lists for y in aux.adj[x]]
    return Graph(len(names), edges), names


def forest_guess(
    aux: AuxInstance, y_prime: frozenset[int], parts: list[PatternGraph]
) -> tuple[list[AuxInstance], list[PatternGraph]] | None:
    """Pin every coloring of ``N[S] & X`` for an induced copy ``S`` of
    ``parts[0]`` in ``G - Y'``.  ``None`` when fewer than two parts remain
    or no copy exists."""
    if len(parts) < 2:
        return None
    rest = aux.restrict(v for v in aux.adj if v not in y_prime)
    g, names = _as_graph(rest)
    emb = find_induced(g, parts[0])
    if emb is None:
        return None
    s = {names[i] for i in emb}
    closed = set(s)
    for v in s:
        closed |= rest.adj[v]
    xs = sorted(v for v in closed if v in aux.x_lists)
    choices = [[c for c in (ONE, THREE) if c & aux.x_lists[x]] for x in xs]
    children = [aux.pinned(dict(zip(xs, combo))) for combo in itertools.product(*choices)]
    return children, parts[1:]


def _direct(aux: AuxInstance) -> dict[int, int] | None:
    xs = sorted(aux.x_lists)
    choices = [[c for c in (ONE, THREE) if c & aux.x_lists[x]] for x in xs]
    for combo in itertools.product(*choices):
        col = dict(zip(xs, combo))
        if aux.satisfied_by(col):
            return col
    return None


def solve_aux(
    aux: AuxInstance,
    forest: list[PatternGraph],
    stats: SolveStats,
    parent_mu: int | None = None,
) -> dict[int, int] | None:
    """Full X-coloring (color bits) solving ``aux`` or ``None``."""
    red = preprocess(aux)
    if red is None:
        return None
    if parent_mu is not None:
        stats.edges.append((parent_mu, red.measure()))
    coloring = dict(red.fixed)
    for comp in red.components():
        col = _solve_component(red.restrict(comp), forest, stats)
        if col is None:
            return None
        coloring.update(col)
    return coloring


def claw_parameter(forest: list[PatternGraph]) -> int | None:
    """Least ``t >= 2`` such that ``S_{t,t,t}`` contains every part, or ``None``.

    ``P_k`` sits inside ``S_{t,t,t}`` once ``2t + 1 >= k``.
    """
    if not forest:
        return None
    t = 2
    for part in forest:
        if part.kind == "path":
            t = max(t, part.params[0] // 2)
        else:
            t = max(t, *part.params)
    return t


def _solve_component(aux, forest, stats):
    n = aux.n
    mu = aux.measure()
    stats.nodes.append((n, mu))
    if n < 2:
        return _direct(aux)
    br = branch_high_degree(aux)
    if br is not None:
        stats.branches += 1
        for child in br[1]:
            col = solve_aux(child, forest, stats, mu)
            if col is not None:
                return col
        return None
    yp, rest = extract_high_degree_y(aux)
    stats.max_y_prime = max(stats.max_y_prime, len(yp))
    guess = forest_guess(aux, yp, forest)
    if guess is not None:
        children, remainder = guess
        stats.guesses += 1
        for child in children:
            col = solve_aux(child, remainder, stats, mu)
            if col is not None:
                return col
        return None
    g, names = _as_graph(rest)
    base_td = decompose(g)
    t = claw_parameter(forest)
    if t is not None and g.n:
        bound = 56 * t * max_degree(g)
        stats.width_bound = max(stats.width_bound, bound)
        stats.over_bound += base_td.width > bound
    td = augment_bags(relabel_td(base_td, names), yp)
    stats.dp_calls += 1
    stats.max_width = max(stats.max_width, td.width)
    return dp_solve(aux, td, stats.dp)


# --------------------------------------------------------------------------
# P3


def _p3_roles(h: Graph) -> tuple[int, int, int]:
    iso = find_isomorphism(P3, h)
    if iso is None:
        raise ValueError("target is not isomorphic to P3")
    e1, m, e2 = iso
    if e1 > e2:
        e1, e2 = e2, e1
    return e1, m, e2


def _forest_parts(forbidden) -> list[PatternGraph]:
    if forbidden is None:
        return []
    parts = forbidden.components()
    return sorted(parts, key=lambda p: -p.vertex_count)


def _solve_p3_component(sub: Instance, roles, forest):
    e1, m, e2 = roles
    stats = SolveStats()
    classes = Bipartition(frozenset((e1, e2)), frozenset((m,)))
    for part in split_consistent(sub, classes):
        xs, ys = part.to_x, part.to_y
        if not ys:
            continue
        lists = part.instance.lists
        if any(m not in lists[y] for y in ys):
            continue
        x_lists = {
            x: [c for c, a in ((1, e1), (3, e2)) if a in lists[x]] for x in xs
        }
        edges = [(u, v) for u, v in sub.source.edges]
        aux = AuxInstance.create(edges, x_lists, {y: (1, 3) for y in ys})
        col = solve_aux(aux, forest, stats)
        if col is not None:
            h = [m] * sub.source.n
            for x in xs:
                h[x] = e1 if col[x] == ONE else e2
            return tuple(h), stats
    return None, stats


def _component_task(args):
    sub, roles, forest = args
    return _solve_p3_component(sub, roles, forest)


def solve_p3(
    inst: Instance,
    forbidden: PatternGraph | None = None,
    threads: int | None = None,
    stats: SolveStats | None = None,
) -> Result:
    """Exact solver for a target isomorphic to P3.

    ``forbidden`` names a forest the source is promised to exclude; it only
    steers the guessing phase and is never checked.  ``threads > 1`` solves
    source components in separate processes.
    """
    roles = _p3_roles(inst.target)
    forest = _forest_parts(forbidden)
    stats = stats if stats is not None else SolveStats()
    if threads is None:
        threads = int(os.environ.get("LLSHOM_THREADS", "1"))
    comps = split_components(inst)
    tasks = [(sub, roles, forest) for sub, _ in comps]
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(_component_task, tasks))
    else:
        outcomes = []
        for t in tasks:
            outcomes.append(_component_task(t))
            if outcomes[-1][0] is None:
                break
    witness = [0] * inst.source.n
    for (h, st), (_, order) in zip(outcomes, comps):
        stats.merge(st)
        if h is None:
            return no(**stats.summary())
        for i, v in enumerate(order):
            witness[v] = h[i]
    if len(outcomes) < len(comps):
        return no(**stats.summary())
    return yes(witness, **stats.summary())


# --------------------------------------------------------------------------
# C4


def solve_c4(
    inst: Instance,
    forbidden: PatternGraph | None = None,
    threads: int | None = None,
    stats: SolveStats | None = None,
) -> Result:
    """Exact solver for a target isomorphic to C4: per component and
    orientation, both reduced P3 instances must be yes."""
    if find_isomorphism(C4, inst.target) is None:
        raise ValueError("target is not isomorphic to C4")
    stats = stats if stats is not None else SolveStats()
    witness = [0] * inst.source.n
    for sub, order in split_components(inst):
        for part in split_consistent(sub):
            red = reduce_c4_to_p3(part.instance)
            r1 = solve_p3(red.first, forbidden, threads, stats)
            if not r1.yes:
                continue
            r2 = solve_p3(red.second, forbidden, threads, stats)
            if not r2.yes:
                continue
            h = red.combine(r1.witness, r2.witness)
            for i, v in enumerate(order):
                witness[v] = h[i]
            break
        else:
            return no(**stats.summary())
    return yes(witness, **stats.summary())
