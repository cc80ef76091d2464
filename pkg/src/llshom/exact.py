"""Brute-force oracle, polynomial special cases and the top-level dispatcher."""

from __future__ import annotations

import logging

from .graph import (
    C4,
    K2,
    P3,
    Graph,
    bipartition,
    find_isomorphism,
    is_connected,
)
from .instance import (
    Instance,
    find_star_base,
    lift_to_base,
    lift_witness,
    split_components,
    split_consistent,
)
from .result import Result, Status, no, yes

log = logging.getLogger(__name__)


class BudgetExceeded(Exception):
    pass


class _Search:
    """Backtracking over bitmask domains with a trail for undo.

    Propagation rules: an empty domain fails; a singleton domain ``{a}``
    filters every neighbor's domain to ``N_H(a)``; a singleton ``{a}`` fails
    when some ``b`` in ``N_H(a)`` is absent from all neighbor domains.
    """

    def __init__(self, inst: Instance, budget: int | None, counter: list[int]):
        self.adj = [tuple(sorted(a)) for a in inst.source.adj]
        t = inst.target
        self.hadj = [sum(1 << b for b in t.adj[a]) for a in range(t.n)]
        self.dom = [sum(1 << a for a in l) for l in inst.lists]
        self.trail: list[tuple[int, int]] = []
        self.budget = budget
        self.counter = counter

    def _set(self, v, mask):
        self.trail.append((v, self.dom[v]))
        self.dom[v] = mask

    def _undo(self, mark):
        trail, dom = self.trail, self.dom
        while len(trail) > mark:
            v, old = trail.pop()
            dom[v] = old

    def _happy_possible(self, w) -> bool:
        dom = self.dom
        dw = dom[w]
        need = self.hadj[dw.bit_length() - 1]
        seen = 0
        for u in self.adj[w]:
            seen |= dom[u]
        return not (need & ~seen)

    def propagate(self, queue: list[int]) -> bool:
        dom, adj, hadj = self.dom, self.adj, self.hadj
        while queue:
            v = queue.pop()
            d = dom[v]
            if d == 0:
                return False
            if d & (d - 1) == 0:
                allowed = hadj[d.bit_length() - 1]
                for u in adj[v]:
                    du = dom[u]
                    nd = du & allowed
                    if nd != du:
                        if nd == 0:
                            return False
                        self._set(u, nd)
                        queue.append(u)
                if not self._happy_possible(v):
                    return False
            for w in adj[v]:
                dw = dom[w]
                if dw & (dw - 1) == 0 and not self._happy_possible(w):
                    return False
        return True

    def _leaf_ok(self) -> bool:
        return all(self._happy_possible(w) for w in range(len(self.dom)))

    def _next_open(self, start):
        dom = self.dom
        for v in range(start, len(dom)):
            d = dom[v]
            if d & (d - 1):
                return v
        return None

    def run(self) -> tuple[int, ...] | None:
        n = len(self.dom)
        if any(d == 0 for d in self.dom):
            return None
        if not self.propagate(list(range(n - 1, -1, -1))):
            return None
        var = self._next_open(0)
        if var is None:
            return self._witness() if self._leaf_ok() else None
        stack = [[var, self.dom[var], len(self.trail)]]
        while stack:
            frame = stack[-1]
            var, rem, mark = frame
            self._undo(mark)
            if rem == 0:
                stack.pop()
                continue
            low = rem & -rem
            frame[1] = rem ^ low
            self.counter[0] += 1
            if self.budget is not None and self.counter[0] > self.budget:
                raise BudgetExceeded
            self._set(var, low)
            if not self.propagate([var]):
                continue
            nxt = self._next_open(var + 1)
            if nxt is None:
                if self._leaf_ok():
                    return self._witness()
                continue
            stack.append([nxt, self.dom[nxt], len(self.trail)])
        return None

    def _witness(self):
        return tuple(d.bit_length() - 1 for d in self.dom)


def solve_bruteforce(inst: Instance, budget: int | None = None) -> Result:
    """Exact search; ``budget`` caps the number of branching nodes.

    Components of the source are searched one after another in order of
    their least vertex; the node budget is shared.
    """
    counter = [0]
    witness = [0] * inst.source.n
    try:
        for sub, order in split_components(inst):
            found = _Search(sub, budget, counter).run()
            if found is None:
                return no(nodes=counter[0])
            for i, v in enumerate(order):
                witness[v] = found[i]
    except BudgetExceeded:
        return Result(Status.BUDGET_EXCEEDED, None, {"nodes": counter[0]})
    return yes(witness, nodes=counter[0])


# --------------------------------------------------------------------------
# polynomial cases


def poly_kind(h: Graph) -> str | None:
    if h.n == 1:
        return "K1o" if h.loops() else "K1"
    if find_isomorphism(K2, h) is not None:
        return "K2"
    return None


def solve_poly(inst: Instance) -> Result:
    """Direct characterizations for ``H`` in ``{K1, K1o, K2}``."""
    kind = poly_kind(inst.target)
    if kind is None:
        return Result(Status.NOT_APPLICABLE)
    g = inst.source
    if any(not l for l in inst.lists):
        return no(route="poly")
    if kind == "K1":
        return yes([0] * g.n, route="poly") if g.m == 0 else no(route="poly")
    if kind == "K1o":
        if any(not g.adj[v] for v in range(g.n)):
            return no(route="poly")
        return yes([0] * g.n, route="poly")

    a, b = find_isomorphism(K2, inst.target)
    bp = bipartition(g)
    if bp is None:
        return no(route="poly")
    witness = [0] * g.n
    for sub, order in split_components(inst):
        if sub.source.n == 1:
            return no(route="poly")
        side = bipartition(sub.source)
        for ca, cb in ((a, b), (b, a)):
            if all(
                (ca if v in side.class_a else cb) in sub.lists[v]
                for v in range(sub.source.n)
            ):
                for i, v in enumerate(order):
                    witness[v] = ca if i in side.class_a else cb
                break
        else:
            return no(route="poly")
    return yes(witness, route="poly")


# --------------------------------------------------------------------------
# dispatcher


def _target_kind(h: Graph) -> str:
    kind = poly_kind(h)
    if kind is not None:
        return "poly"
    if find_isomorphism(P3, h) is not None:
        return "p3"
    if find_isomorphism(C4, h) is not None:
        return "c4"
    if h.n <= 10 and is_connected(h) and find_star_base(h) is not None:
        return "star"
    return "brute"


def solve_auto(inst: Instance, forbidden=None, budget: int | None = None) -> Result:
    """Route an instance to the best applicable exact solver.

    Order: polynomial cases; P3 and C4 through the branch-and-decompose
    algorithm; targets of the form ``B*`` through the lift to ``B``;
    brute force otherwise.
    """
    from .subexp import solve_c4, solve_p3

    kind = _target_kind(inst.target)
    if kind == "poly":
        return solve_poly(inst)
    if kind == "p3":
        res = solve_p3(inst, forbidden)
        res.stats["route"] = "p3"
        return res
    if kind == "c4":
        res = solve_c4(inst, forbidden)
        res.stats["route"] = "c4"
        return res
    if kind == "brute":
        res = solve_bruteforce(inst, budget)
        res.stats["route"] = "brute"
        return res

    base, iso = find_star_base(inst.target)
    std = Instance(
        Graph(inst.target.n, ((iso[u], iso[v]) for u, v in inst.target.edges)),
        inst.source,
        tuple(frozenset(iso[a] for a in l) for l in inst.lists),
    )
    inv = [0] * len(iso)
    for u, w in enumerate(iso):
        inv[w] = u
    witness = [0] * inst.source.n
    for sub, order in split_components(std):
        for part in split_consistent(sub):
            lifted = lift_to_base(part.instance, base)
            res = solve_auto(lifted, forbidden, budget)
            if res.status is Status.BUDGET_EXCEEDED:
                return res
            if res.yes:
                h_star = lift_witness(part.instance, base, res.witness)
                for i, v in enumerate(order):
                    witness[v] = inv[h_star[i]]
                break
        else:
            return no(route="star")
    return yes(witness, route="star")
