import random

import pytest
from hypothesis import given, settings

from helpers import definitional_answer, instances
from llshom.acceptance import planted_map
from llshom.exact import poly_kind, solve_auto, solve_bruteforce, solve_poly
from llshom.graph import (
    C4,
    K1,
    K1_LOOP,
    K2,
    K2_ONE_LOOP,
    K2_TWO_LOOPS,
    K3,
    K13,
    P3,
    P4,
    Graph,
    associated_bipartite,
    cycle_graph,
    path_graph,
)
from llshom.instance import Instance
from llshom.result import Status
from llshom.verify import verify_solution


def test_bruteforce_k1_edge_is_no():
    assert solve_bruteforce(Instance.full_lists(K1, K2)).status is Status.NO


def test_bruteforce_alternating_c4_into_p3():
    inst = Instance(P3, C4, (frozenset({0, 2}), frozenset({1}), frozenset({0, 2}), frozenset({1})))
    res = solve_bruteforce(inst)
    assert res.yes
    assert res.witness == (0, 1, 2, 1)


def test_bruteforce_empty_list_is_no():
    inst = Instance(P3, C4, (frozenset({0, 2}), frozenset(), frozenset({0, 2}), frozenset({1})))
    assert solve_bruteforce(inst).status is Status.NO


def test_bruteforce_budget():
    g = cycle_graph(12)
    res = solve_bruteforce(Instance.full_lists(K3, g), budget=3)
    assert res.status is Status.BUDGET_EXCEEDED
    assert res.stats["nodes"] > 3


@given(instances(P3, max_n=6))
@settings(max_examples=150, deadline=None)
def test_bruteforce_matches_definition_p3(inst):
    res = solve_bruteforce(inst)
    assert res.yes == definitional_answer(inst)
    if res.yes:
        assert verify_solution(inst, res.witness)


@given(instances(K2_ONE_LOOP, max_n=6))
@settings(max_examples=100, deadline=None)
def test_bruteforce_matches_definition_looped(inst):
    assert solve_bruteforce(inst).yes == definitional_answer(inst)


def test_poly_kinds():
    assert poly_kind(K1) == "K1"
    assert poly_kind(K1_LOOP) == "K1o"
    assert poly_kind(K2) == "K2"
    assert poly_kind(P3) is None
    assert solve_poly(Instance.full_lists(P3, K2)).status is Status.NOT_APPLICABLE


def test_poly_examples():
    assert solve_poly(Instance.full_lists(K1_LOOP, K2)).witness == (0, 0)
    res = solve_poly(Instance.full_lists(K2, path_graph(3)))
    assert res.yes and verify_solution(Instance.full_lists(K2, path_graph(3)), res.witness)
    forced = Instance(K2, path_graph(3), (frozenset({0}), frozenset({0, 1}), frozenset({1})))
    assert solve_poly(forced).status is Status.NO
    assert solve_bruteforce(forced).status is Status.NO


@pytest.mark.parametrize("h", [K1, K1_LOOP, K2])
@given(data=instances(K2, max_n=7))
@settings(max_examples=80, deadline=None)
def test_poly_matches_bruteforce(h, data):
    inst = Instance(h, data.source, tuple(frozenset(a for a in l if a < h.n) for l in data.lists))
    assert solve_poly(inst).status is solve_bruteforce(inst).status


def test_auto_routes():
    assert solve_auto(Instance.full_lists(K2, K2)).stats["route"] == "poly"
    assert solve_auto(Instance.full_lists(P3, C4)).stats["route"] == "p3"
    assert solve_auto(Instance.full_lists(C4, C4)).stats["route"] == "c4"
    assert solve_auto(Instance.full_lists(K13, K2)).stats["route"] == "brute"


def test_auto_star_route_on_c6():
    star = associated_bipartite(K3).graph
    res = solve_auto(Instance.full_lists(star, cycle_graph(6)))
    assert res.stats["route"] == "star"
    assert res.yes == solve_bruteforce(Instance.full_lists(star, cycle_graph(6))).yes


@pytest.mark.parametrize("target", [P3, C4, K3, P4, K2_TWO_LOOPS, cycle_graph(6), path_graph(5)])
@pytest.mark.parametrize("seed", range(30))
def test_auto_equals_bruteforce(target, seed):
    rng = random.Random(seed)
    n = rng.randint(1, 9)
    got = planted_map(rng, target, n, 0.3) if seed % 2 else None
    if got is None:
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.35])
        lists = tuple(frozenset(a for a in range(target.n) if rng.random() < 0.7) for _ in range(n))
    else:
        g, hv = got
        lists = tuple(frozenset({a}) | {b for b in range(target.n) if rng.random() < 0.4} for a in hv)
    inst = Instance(target, g, lists)
    res = solve_auto(inst)
    assert res.status is solve_bruteforce(inst).status
    if res.yes:
        assert verify_solution(inst, res.witness)
