"""Instances ``(G, L)`` of LLSHom(H) and the reductions between targets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graph import (
    C4,
    P3,
    Associated,
    Bipartition,
    Graph,
    associated_bipartite,
    bipartition,
    components,
    find_isomorphism,
    is_connected,
)


@dataclass(frozen=True)
class Instance:
    """Source graph ``source`` with per-vertex lists into ``target``."""

    target: Graph
    source: Graph
    lists: tuple[frozenset[int], ...]

    def __post_init__(self):
        lists = tuple(frozenset(l) for l in self.lists)
        object.__setattr__(self, "lists", lists)
        if len(lists) != self.source.n:
            raise ValueError(
                f"{len(lists)} lists given for {self.source.n} source vertices"
            )
        nh = self.target.n
        for v, l in enumerate(lists):
            for a in l:
                if not 0 <= a < nh:
                    raise ValueError(f"list of vertex {v} names unknown target vertex {a}")

    @classmethod
    def full_lists(cls, target: Graph, source: Graph) -> "Instance":
        full = frozenset(range(target.n))
        return cls(target, source, (full,) * source.n)

    def with_lists(self, lists: Sequence[Iterable[int]]) -> "Instance":
        return Instance(self.target, self.source, tuple(frozenset(l) for l in lists))

    def restrict(self, vertices: Iterable[int]) -> tuple["Instance", list[int]]:
        """Sub-instance induced on ``vertices`` and the original index of each."""
        sub, order = self.source.induced_subgraph(vertices)
        return Instance(self.target, sub, tuple(self.lists[v] for v in order)), order


def split_components(inst: Instance) -> list[tuple[Instance, list[int]]]:
    """Connected components of the source, ordered by least vertex index."""
    comps = components(inst.source)
    if len(comps) == 1:
        return [(inst, list(range(inst.source.n)))]
    return [inst.restrict(c) for c in comps]


# --------------------------------------------------------------------------
# consistency


@dataclass(frozen=True)
class ConsistentPart:
    """A consistent instance: ``to_x`` maps into target class X, the rest into Y."""

    instance: Instance
    to_x: frozenset[int]
    to_y: frozenset[int]
    target_x: frozenset[int]
    target_y: frozenset[int]


def target_classes(h: Graph) -> Bipartition:
    bp = bipartition(h)
    if bp is None:
        raise ValueError("target graph is not bipartite")
    return bp


def split_consistent(
    inst: Instance, classes: Bipartition | None = None
) -> list[ConsistentPart]:
    """The two consistent instances ``L1``/``L2`` of a connected instance.

    Returns an empty list when the source is not bipartite.  Disconnected
    sources must be split with :func:`split_components` first, since each
    component picks its orientation independently.
    """
    if not is_connected(inst.source):
        raise ValueError("split_consistent expects a connected source graph")
    hb = classes if classes is not None else target_classes(inst.target)
    gb = bipartition(inst.source)
    if gb is None:
        return []
    tx, ty = hb.class_a, hb.class_b
    out = []
    for ax, bx in ((tx, ty), (ty, tx)):
        lists = [
            inst.lists[v] & (ax if v in gb.class_a else bx)
            for v in range(inst.source.n)
        ]
        new = inst.with_lists(lists)
        if ax is tx:
            out.append(ConsistentPart(new, gb.class_a, gb.class_b, tx, ty))
        else:
            out.append(ConsistentPart(new, gb.class_b, gb.class_a, tx, ty))
    return out


def is_consistent(inst: Instance, classes: Bipartition | None = None) -> bool:
    """Connected bipartite source whose classes list into opposite target classes."""
    if not is_connected(inst.source):
        return False
    gb = bipartition(inst.source)
    if gb is None:
        return False
    hb = classes if classes is not None else target_classes(inst.target)
    la = frozenset().union(*(inst.lists[v] for v in gb.class_a))
    lb = frozenset().union(*(inst.lists[v] for v in gb.class_b))
    return (la <= hb.class_a and lb <= hb.class_b) or (
        la <= hb.class_b and lb <= hb.class_a
    )


# --------------------------------------------------------------------------
# associated bipartite graph


def _check_star_consistent(inst_star: Instance, assoc: Associated) -> None:
    gb = bipartition(inst_star.source)
    if gb is None:
        raise ValueError("instance over H* has a non-bipartite source")
    primes = frozenset(assoc.prime)
    for comp in components(inst_star.source):
        a = [v for v in comp if v in gb.class_a]
        b = [v for v in comp if v in gb.class_b]
        la = frozenset().union(*(inst_star.lists[v] for v in a))
        lb = frozenset().union(*(inst_star.lists[v] for v in b))
        if not ((la <= primes and not (lb & primes)) or (lb <= primes and not (la & primes))):
            raise ValueError(f"instance over H* is not consistent on component {comp}")


def lift_to_base(inst_star: Instance, base: Graph) -> Instance:
    """Instance over ``base`` with ``L(v) = {x : {x', x''} & L'(v) != {}}``.

    ``inst_star.target`` must be :func:`associated_bipartite` of ``base``.
    """
    assoc = associated_bipartite(base)
    if inst_star.target != assoc.graph:
        raise ValueError("target is not the associated bipartite graph of base")
    _check_star_consistent(inst_star, assoc)
    lists = [
        frozenset(assoc.base_vertex(w) for w in l) for l in inst_star.lists
    ]
    return Instance(base, inst_star.source, tuple(lists))


def lift_witness(inst_star: Instance, base: Graph, h: Sequence[int]) -> tuple[int, ...]:
    """Turn a solution of the lifted instance into one over H*."""
    n = base.n
    out = []
    for v, x in enumerate(h):
        out.append(x if x in inst_star.lists[v] else n + x)
    return tuple(out)


def find_star_base(h: Graph) -> tuple[Graph, tuple[int, ...]] | None:
    """Recognize ``h`` as ``B*`` for some graph ``B``.

    Returns ``(B, iso)`` where ``iso`` maps vertices of ``h`` to the
    standard layout of ``associated_bipartite(B)``; ``None`` otherwise.
    Exhaustive over bijections between the classes, so only for tiny ``h``.
    """
    bp = bipartition(h)
    if bp is None or len(bp.class_a) != len(bp.class_b) or h.n == 0:
        return None
    if not is_connected(h):
        return None
    left = sorted(bp.class_a)
    right = sorted(bp.class_b)
    k = len(left)
    for perm in itertools.permutations(right):
        # perm[i] plays the role of left[i]''
        pos = {w: i for i, w in enumerate(perm)}
        edges = set()
        for i, u in enumerate(left):
            for w in h.adj[u]:
                j = pos[w]
                edges.add((min(i, j), max(i, j)))
        symmetric = all(
            perm[j] in h.adj[left[i]] and perm[i] in h.adj[left[j]] for i, j in edges
        )
        if not symmetric:
            continue
        base = Graph(k, edges)
        if associated_bipartite(base).graph.m != h.m:
            continue
        iso = [0] * h.n
        for i, u in enumerate(left):
            iso[u] = i
            iso[perm[i]] = k + i
        return base, tuple(iso)
    return None


# --------------------------------------------------------------------------
# C4 -> P3


@dataclass(frozen=True)
class C4Reduction:
    """The two P3 instances of a consistent C4 instance.

    ``labels[i]`` is the C4 vertex playing the role of cycle position
    ``i + 1``.  ``first`` is over ``C4[1,2,3]`` and ``second`` over
    ``C4[4,1,2]``; ``first_map`` / ``second_map`` send the P3 vertices back
    into the original target.
    """

    first: Instance
    second: Instance
    first_map: tuple[int, int, int]
    second_map: tuple[int, int, int]
    labels: tuple[int, int, int, int]
    x_side: frozenset[int]
    y_side: frozenset[int]

    def combine(self, h_first: Sequence[int], h_second: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            self.first_map[h_first[v]] if v in self.x_side else self.second_map[h_second[v]]
            for v in range(len(h_first))
        )


def c4_labels(h: Graph) -> tuple[int, int, int, int]:
    """A consecutive labeling ``(1, 2, 3, 4)`` of a graph isomorphic to C4."""
    iso = find_isomorphism(C4, h)
    if iso is None:
        raise ValueError("target is not a 4-cycle")
    return tuple(iso)


def reduce_c4_to_p3(inst: Instance) -> C4Reduction:
    if not is_consistent(inst):
        raise ValueError("reduce_c4_to_p3 needs a consistent instance")
    h = inst.target
    hb = target_classes(h)
    if find_isomorphism(C4, h) is None:
        raise ValueError("target is not a 4-cycle")
    gb = bipartition(inst.source)
    x_side, y_side = gb.class_a, gb.class_b  # class of the least vertex is X
    lx = frozenset().union(*(inst.lists[v] for v in x_side))
    ly = frozenset().union(*(inst.lists[v] for v in y_side))
    if lx:
        odd = hb.class_a if lx <= hb.class_a else hb.class_b
    elif ly:
        odd = hb.class_b if ly <= hb.class_a else hb.class_a
    else:
        odd = hb.class_a
    even = hb.class_b if odd is hb.class_a else hb.class_a
    one, three = sorted(odd)
    two, four = sorted(even)
    labels = (one, two, three, four)

    first_map = (one, two, three)  # C4[1,2,3]
    second_map = (four, one, two)  # C4[4,1,2]
    inv1 = {c: i for i, c in enumerate(first_map)}
    inv2 = {c: i for i, c in enumerate(second_map)}
    n = inst.source.n
    l1, l2 = [], []
    for v in range(n):
        if v in x_side:
            l1.append(frozenset(inv1[c] for c in inst.lists[v]))
            l2.append(frozenset({inv2[one]}))
        else:
            l1.append(frozenset({inv1[two]}))
            l2.append(frozenset(inv2[c] for c in inst.lists[v]))
    return C4Reduction(
        Instance(P3, inst.source, tuple(l1)),
        Instance(P3, inst.source, tuple(l2)),
        first_map,
        second_map,
        labels,
        x_side,
        y_side,
    )


# --------------------------------------------------------------------------
# auxiliary instances for the P3 algorithm

ONE = 1  # bit for endpoint color "1"
THREE = 2  # bit for endpoint color "3"
BOTH = ONE | THREE
_COLOR_BIT = {1: ONE, 3: THREE}


def colors_to_mask(colors: Iterable[int]) -> int:
    m = 0
    for c in colors:
        m |= _COLOR_BIT[c]
    return m


def mask_to_colors(mask: int) -> frozenset[int]:
    return frozenset(c for c, b in _COLOR_BIT.items() if mask & b)


@dataclass
class AuxInstance:
    """Auxiliary P3 problem: pick ``h(x)`` in ``L(x)`` for every X-vertex so
    that each Y-vertex ``y`` sees every color of ``sigma(y)`` among its
    neighbors.  Colors are bitmasks over ``{1, 3}`` (``ONE``, ``THREE``).

    Vertex names are arbitrary integers (normally source-graph indices).
    """

    adj: dict[int, set[int]]
    x_lists: dict[int, int]
    sigma: dict[int, int]
    fixed: dict[int, int] = field(default_factory=dict)

    @classmethod
    def create(
        cls,
        edges: Iterable[tuple[int, int]],
        x_lists: Mapping[int, Iterable[int]],
        sigma: Mapping[int, Iterable[int]],
    ) -> "AuxInstance":
        adj = {v: set() for v in list(x_lists) + list(sigma)}
        for u, v in edges:
            if (u in x_lists) == (v in x_lists):
                raise ValueError(f"edge ({u}, {v}) is not between X and Y")
            adj[u].add(v)
            adj[v].add(u)
        return cls(
            adj,
            {x: colors_to_mask(l) for x, l in x_lists.items()},
            {y: colors_to_mask(s) for y, s in sigma.items()},
        )

    def copy(self) -> "AuxInstance":
        return AuxInstance(
            {v: set(a) for v, a in self.adj.items()},
            dict(self.x_lists),
            dict(self.sigma),
            dict(self.fixed),
        )

    @property
    def n(self) -> int:
        return len(self.adj)

    def edge_count(self) -> int:
        return sum(len(self.adj[x]) for x in self.x_lists)

    def measure(self) -> int:
        return sum(bin(m).count("1") for m in self.x_lists.values()) + sum(
            bin(m).count("1") for m in self.sigma.values()
        )

    def pinned(self, colors: Mapping[int, int]) -> "AuxInstance":
        """Copy with ``L(x) = {colors[x]}`` (colors given as bit masks)."""
        out = self.copy()
        for x, c in colors.items():
            out.x_lists[x] = c
        return out

    def restrict(self, vertices: Iterable[int]) -> "AuxInstance":
        keep = set(vertices)
        return AuxInstance(
            {v: self.adj[v] & keep for v in keep},
            {x: m for x, m in self.x_lists.items() if x in keep},
            {y: s for y, s in self.sigma.items() if y in keep},
        )

    def components(self) -> list[list[int]]:
        seen = set()
        out = []
        for s in sorted(self.adj):
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def satisfied_by(self, coloring: Mapping[int, int]) -> bool:
        """Direct check of the covering condition for a full X-coloring."""
        for x, m in self.x_lists.items():
            if not coloring.get(x, 0) & m:
                return False
        for y, s in self.sigma.items():
            seen = 0
            for x in self.adj[y]:
                seen |= coloring[x]
            if s & ~seen:
                return False
        return True
