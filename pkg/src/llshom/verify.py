"""Ground-truth checks for candidate solutions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .instance import Instance


@dataclass(frozen=True)
class HomCheck:
    ok: bool
    edge: tuple[int, int] | None = None
    vertex: int | None = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    message: str = "ok"
    vertex: int | None = None
    missing: int | None = None

    def __bool__(self):
        return self.accepted


def is_list_homomorphism(inst: Instance, h: Sequence[int]) -> HomCheck:
    """First violated list (``vertex``) or edge (``edge``), in index order."""
    g, t = inst.source, inst.target
    if len(h) != g.n:
        raise ValueError(f"map covers {len(h)} of {g.n} vertices")
    for v in range(g.n):
        if h[v] not in inst.lists[v]:
            return HomCheck(False, vertex=v)
    for u, v in g.edge_list():
        if h[v] not in t.adj[h[u]]:
            return HomCheck(False, edge=(u, v))
    return HomCheck(True)


def missing_neighbors(inst: Instance, h: Sequence[int], v: int) -> set[int]:
    seen = {h[u] for u in inst.source.adj[v]}
    return set(inst.target.adj[h[v]]) - seen


def happy_vertices(inst: Instance, h: Sequence[int]) -> set[int]:
    return {
        v for v in range(inst.source.n) if not missing_neighbors(inst, h, v)
    }


def verify_solution(inst: Instance, h: Sequence[int]) -> Verdict:
    check = is_list_homomorphism(inst, h)
    if not check:
        if check.vertex is not None:
            v = check.vertex
            return Verdict(False, f"vertex {v} mapped to {h[v]} outside its list", vertex=v)
        u, v = check.edge
        return Verdict(False, f"edge ({u}, {v}) maps to non-edge ({h[u]}, {h[v]})")
    for v in range(inst.source.n):
        miss = missing_neighbors(inst, h, v)
        if miss:
            b = min(miss)
            return Verdict(
                False,
                f"vertex {v} (mapped to {h[v]}) is unhappy: no neighbor mapped to {b}",
                vertex=v,
                missing=b,
            )
    return Verdict(True)
