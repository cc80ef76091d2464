import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from llshom.acceptance import (
    planted_map,
    random_aux,
    random_connected_bipartite,
    random_consistent_lists,
)
from llshom.exact import solve_bruteforce
from llshom.graph import C4, P3, Graph, complete_bipartite, parse_pattern, path_graph, star_graph
from llshom.instance import AuxInstance, Instance
from llshom.result import Status
from llshom.subexp import (
    SolveStats,
    _direct,
    branch_high_degree,
    extract_high_degree_y,
    forest_guess,
    preprocess,
    solve_aux,
    solve_c4,
    solve_p3,
    thresholds,
)
from llshom.verify import verify_solution


def _ceil_root(n, k):
    # independent evaluation: smallest integer c with c^3 >= (n log2 n)^k
    base = n * math.log2(n)
    c = 0
    while c ** 3 < base ** k - 1e-9:
        c += 1
    return c


@pytest.mark.parametrize("n", [2, 3, 6, 10, 100, 1000])
def test_thresholds(n):
    assert thresholds(n) == (_ceil_root(n, 1), _ceil_root(n, 2))


def test_thresholds_guard():
    with pytest.raises(ValueError):
        thresholds(1)


def test_preprocess_singleton_shrinks_demand():
    aux = AuxInstance.create([(0, 1), (2, 1)], {0: (1,), 2: (1, 3)}, {1: (1, 3)})
    red = preprocess(aux)
    assert 0 not in red.adj
    assert red.sigma[1] == 2  # only color 3 left
    assert red.fixed[0] == 1


def test_preprocess_deletes_empty_demand():
    aux = AuxInstance.create([(0, 1), (0, 2)], {0: (1, 3)}, {1: (), 2: (1,)})
    red = preprocess(aux)
    assert red is not None and 1 not in red.adj


def test_preprocess_rejects_empty_list_and_isolated_demand():
    assert preprocess(AuxInstance.create([(0, 1)], {0: ()}, {1: (1,)})) is None
    # pinning x leaves y with demand {3} and no neighbor
    aux = AuxInstance.create([(0, 1)], {0: (1,)}, {1: (1, 3)})
    assert preprocess(aux) is None
    assert _direct(aux) is None


def test_branching_on_star():
    xs_edges = [(0, y) for y in range(1, 6)]
    aux = AuxInstance.create(xs_edges, {0: (1, 3)}, {y: (1, 3) for y in range(1, 6)})
    assert thresholds(6)[0] == 3
    x, kids = branch_high_degree(aux)
    assert x == 0
    assert [k.x_lists[0] for k in kids] == [1, 2]


def test_branching_keeps_list():
    xs_edges = [(0, y) for y in range(1, 6)]
    aux = AuxInstance.create(xs_edges, {0: (3,)}, {y: (1, 3) for y in range(1, 6)})
    x, kids = branch_high_degree(aux)
    assert x == 0
    assert [k.x_lists[0] for k in kids] == [2]


def test_no_branching_when_degrees_small():
    aux = AuxInstance.create([(0, 2), (1, 2)], {0: (1, 3), 1: (1, 3)}, {2: (1, 3)})
    assert branch_high_degree(aux) is None


@given(st.integers(0, 2**32))
@settings(max_examples=150, deadline=None)
def test_branch_children_preserve_answer(seed):
    rng = random.Random(seed)
    aux = random_aux(rng, rng.randint(2, 12))
    br = branch_high_degree(aux)
    if br is None:
        return
    truth = _direct(aux) is not None
    assert truth == any(_direct(k) is not None for k in br[1])


def test_extract_hub():
    n = 40
    theta2 = thresholds(n)[1]
    hub = n - 1
    edges = [(x, hub) for x in range(n - 1)]
    aux = AuxInstance.create(edges, {x: (1, 3) for x in range(n - 1)}, {hub: (1, 3)})
    assert n - 1 >= theta2
    yp, rest = extract_high_degree_y(aux)
    assert yp == {hub} and hub not in rest.adj


def test_extract_nothing_when_sparse():
    aux = AuxInstance.create([(0, 2), (1, 2)], {0: (1, 3), 1: (1, 3)}, {2: (1, 3)})
    yp, rest = extract_high_degree_y(aux)
    assert yp == frozenset() and set(rest.adj) == set(aux.adj)


@given(st.integers(0, 2**32))
@settings(max_examples=80, deadline=None)
def test_extract_degree_audit(seed):
    rng = random.Random(seed)
    aux = random_aux(rng, rng.randint(2, 14))
    yp, rest = extract_high_degree_y(aux)
    theta2 = thresholds(aux.n)[1]
    assert all(len(rest.adj[v]) <= theta2 for v in rest.adj)
    assert len(yp) * theta2 <= aux.edge_count()


def test_forest_guess_single_part_is_direct_handoff():
    aux = AuxInstance.create([(0, 2), (1, 2)], {0: (1, 3), 1: (1, 3)}, {2: (1, 3)})
    assert forest_guess(aux, frozenset(), [parse_pattern("P3")]) is None


@given(st.integers(0, 2**32))
@settings(max_examples=120, deadline=None)
def test_forest_guess_children_preserve_answer(seed):
    rng = random.Random(seed)
    aux = random_aux(rng, rng.randint(2, 12))
    parts = parse_pattern("P2+P2").components()
    got = forest_guess(aux, frozenset(), parts)
    if got is None:
        return
    children, rest = got
    assert [str(p) for p in rest] == ["P2"]
    assert (_direct(aux) is not None) == any(_direct(c) is not None for c in children)


@given(st.integers(0, 2**32))
@settings(max_examples=120, deadline=None)
def test_solve_aux_matches_enumeration(seed):
    rng = random.Random(seed)
    aux = random_aux(rng, rng.randint(1, 12))
    stats = SolveStats()
    forest = parse_pattern("P3+P3").components() if seed % 2 else []
    col = solve_aux(aux, forest, stats)
    assert (col is not None) == (_direct(aux) is not None)
    if col is not None:
        assert aux.satisfied_by(col)
    assert stats.measure_violations() == 0


def test_hypergraph_incidence_yes_instance():
    # hyperedges {0,1,2}, {1,2,3}, {0,3,4}: 2-colorable, so the incidence graph maps onto P3
    hyper = [(0, 1, 2), (1, 2, 3), (0, 3, 4)]
    n = 5 + len(hyper)
    edges = [(v, 5 + i) for i, e in enumerate(hyper) for v in e]
    g = Graph(n, edges)
    lists = [frozenset({0, 2})] * 5 + [frozenset({1})] * len(hyper)
    inst = Instance(P3, g, tuple(lists))
    res = solve_p3(inst)
    assert res.yes and verify_solution(inst, res.witness)
    assert solve_bruteforce(inst).yes


def test_no_y_vertices_is_no():
    inst = Instance(P3, Graph(2), (frozenset({0, 2}), frozenset({0, 2})))
    assert solve_p3(inst).status is Status.NO


@pytest.mark.parametrize("seed", range(150))
def test_p3_matches_bruteforce(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 11)
    if seed % 2:
        got = planted_map(rng, P3, n, 0.3)
        if got is None:
            return
        g, hv = got
        lists = tuple(frozenset({a}) | {b for b in range(3) if rng.random() < 0.5} for a in hv)
    else:
        g = random_connected_bipartite(rng, n, 0.35)
        lists = random_consistent_lists(rng, g, {0, 2}, {1}, 0.8)
    inst = Instance(P3, g, lists)
    forbidden = parse_pattern("P3+P3") if seed % 3 == 0 else None
    res = solve_p3(inst, forbidden)
    assert res.status is solve_bruteforce(inst).status
    if res.yes:
        assert verify_solution(inst, res.witness)


def test_p3_relabelled_target():
    # the middle vertex is 0 here
    target = Graph(3, [(0, 1), (0, 2)])
    g = path_graph(3)
    inst = Instance.full_lists(target, g)
    res = solve_p3(inst)
    assert res.yes and verify_solution(inst, res.witness)


def test_p3_rejects_other_targets():
    with pytest.raises(ValueError):
        solve_p3(Instance.full_lists(C4, path_graph(2)))


def test_stats_branch_free_when_degrees_small():
    g = path_graph(5)
    inst = Instance(P3, g, (frozenset({0, 2}), frozenset({1})) * 2 + (frozenset({0, 2}),))
    res = solve_p3(inst)
    assert res.stats["branches"] == 0


def test_c4_examples():
    k22 = complete_bipartite(2, 2)
    inst = Instance.full_lists(C4, k22)
    res = solve_c4(inst)
    assert res.yes and verify_solution(inst, res.witness)
    pendant = Instance.full_lists(C4, star_graph(1))
    assert solve_c4(pendant).status is Status.NO


@pytest.mark.parametrize("seed", range(100))
def test_c4_matches_bruteforce(seed):
    rng = random.Random(500 + seed)
    g = random_connected_bipartite(rng, rng.randint(1, 9), 0.4)
    inst = Instance(C4, g, random_consistent_lists(rng, g, {0, 2}, {1, 3}, 0.8))
    res = solve_c4(inst)
    assert res.status is solve_bruteforce(inst).status
    if res.yes:
        assert verify_solution(inst, res.witness)


def test_threads_give_same_answer():
    rng = random.Random(3)
    g = Graph(0)
    parts = []
    for _ in range(3):
        part = random_connected_bipartite(rng, 6, 0.5)
        parts.append(part)
        g = g.disjoint_union(part)
    inst = Instance.full_lists(P3, g)
    one = solve_p3(inst, threads=1)
    two = solve_p3(inst, threads=2)
    assert one.status is two.status
    if one.yes:
        assert one.witness == two.witness


def test_claw_parameter():
    from llshom.subexp import claw_parameter

    assert claw_parameter([]) is None
    assert claw_parameter([parse_pattern("P5")]) == 2
    assert claw_parameter([parse_pattern("P6")]) == 3
    assert claw_parameter(parse_pattern("S(1,4,2)+P3").components()) == 4


def test_width_diagnostic_reported():
    g = path_graph(7)
    inst = Instance(P3, g, (frozenset({0, 2}), frozenset({1})) * 3 + (frozenset({0, 2}),))
    res = solve_p3(inst, parse_pattern("P9"))
    assert res.stats["width_bound"] >= 0 and res.stats["over_bound"] == 0
