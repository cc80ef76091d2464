import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import definitional_answer
from llshom.acceptance import random_connected_bipartite, random_consistent_lists
from llshom.exact import solve_bruteforce
from llshom.graph import C4, K2_ONE_LOOP, K2_TWO_LOOPS, K3, P3, Graph, associated_bipartite, complete_bipartite, cycle_graph
from llshom.instance import (
    AuxInstance,
    Instance,
    is_consistent,
    lift_to_base,
    lift_witness,
    reduce_c4_to_p3,
    split_components,
    split_consistent,
)
from llshom.verify import verify_solution


def test_lists_must_name_target_vertices():
    with pytest.raises(ValueError):
        Instance(P3, Graph(1), (frozenset({5}),))
    with pytest.raises(ValueError):
        Instance(P3, Graph(2), (frozenset({0}),))


def test_split_consistent_single_edge():
    inst = Instance.full_lists(P3, Graph(2, [(0, 1)]))
    parts = split_consistent(inst)
    got = {p.instance.lists for p in parts}
    assert got == {
        (frozenset({0, 2}), frozenset({1})),
        (frozenset({1}), frozenset({0, 2})),
    }
    for p in parts:
        assert is_consistent(p.instance)


def test_split_consistent_non_bipartite_is_empty():
    assert split_consistent(Instance.full_lists(P3, cycle_graph(5))) == []


def test_split_consistent_rejects_disconnected():
    with pytest.raises(ValueError):
        split_consistent(Instance.full_lists(P3, Graph(3, [(0, 1)])))


@pytest.mark.parametrize("seed", range(40))
def test_split_consistent_preserves_answer_c4(seed):
    rng = random.Random(seed)
    g = random_connected_bipartite(rng, rng.randint(2, 7), 0.4)
    inst = Instance.full_lists(C4, g)
    direct = solve_bruteforce(inst).yes
    assert direct == any(solve_bruteforce(p.instance).yes for p in split_consistent(inst))


def test_split_components_order():
    g = Graph(5, [(3, 4), (0, 2)])
    inst = Instance.full_lists(P3, g)
    orders = [order for _, order in split_components(inst)]
    assert orders == [[0, 2], [1], [3, 4]]


def test_lift_examples():
    base = K3
    a = associated_bipartite(base)
    x = 1
    g = Graph(2, [(0, 1)])
    inst = Instance(a.graph, g, (frozenset({a.prime[x]}), frozenset()))
    lifted = lift_to_base(inst, base)
    assert lifted.lists == (frozenset({x}), frozenset())
    assert lifted.target == base


def test_lift_rejects_inconsistent():
    base = K3
    a = associated_bipartite(base)
    g = Graph(2, [(0, 1)])
    inst = Instance(a.graph, g, (frozenset({a.prime[0]}), frozenset({a.prime[1]})))
    with pytest.raises(ValueError):
        lift_to_base(inst, base)


@pytest.mark.parametrize("base", [K3, K2_ONE_LOOP, K2_TWO_LOOPS])
@pytest.mark.parametrize("seed", range(25))
def test_lift_preserves_answer(base, seed):
    rng = random.Random(seed)
    a = associated_bipartite(base)
    primes = set(a.prime)
    doubles = set(a.dprime)
    g = random_connected_bipartite(rng, rng.randint(1, 6), 0.4)
    inst = Instance(a.graph, g, random_consistent_lists(rng, g, primes, doubles, 0.7))
    lifted = lift_to_base(inst, base)
    res = solve_bruteforce(lifted)
    assert res.yes == definitional_answer(inst)
    if res.yes:
        assert verify_solution(inst, lift_witness(inst, base, res.witness))


def test_c4_reduction_single_edge():
    # C4 labelled 0-1-2-3, so positions 1..4 are target vertices 0..3
    inst = Instance(C4, Graph(2, [(0, 1)]), (frozenset({0, 2}), frozenset({1, 3})))
    red = reduce_c4_to_p3(inst)
    assert red.labels == (0, 1, 2, 3)
    first = [frozenset(red.first_map[a] for a in l) for l in red.first.lists]
    second = [frozenset(red.second_map[a] for a in l) for l in red.second.lists]
    assert first == [frozenset({0, 2}), frozenset({1})]
    assert second == [frozenset({0}), frozenset({1, 3})]


def test_c4_reduction_rejects_inconsistent():
    inst = Instance(C4, Graph(2, [(0, 1)]), (frozenset({0, 1}), frozenset({1, 3})))
    with pytest.raises(ValueError):
        reduce_c4_to_p3(inst)


@pytest.mark.parametrize("seed", range(60))
def test_c4_reduction_conjunction(seed):
    rng = random.Random(1000 + seed)
    g = random_connected_bipartite(rng, rng.randint(1, 7), 0.4)
    inst = Instance(C4, g, random_consistent_lists(rng, g, {0, 2}, {1, 3}, 0.8))
    red = reduce_c4_to_p3(inst)
    r1, r2 = solve_bruteforce(red.first), solve_bruteforce(red.second)
    assert (r1.yes and r2.yes) == definitional_answer(inst)
    if r1.yes and r2.yes:
        assert verify_solution(inst, red.combine(r1.witness, r2.witness))


def test_c4_reduction_k22_full():
    g = complete_bipartite(2, 2)
    inst = Instance(C4, g, (frozenset({0, 2}), frozenset({0, 2}), frozenset({1, 3}), frozenset({1, 3})))
    red = reduce_c4_to_p3(inst)
    r1, r2 = solve_bruteforce(red.first), solve_bruteforce(red.second)
    assert (r1.yes and r2.yes) == solve_bruteforce(inst).yes


def test_aux_measure_and_pinning():
    aux = AuxInstance.create([(0, 2), (1, 2)], {0: (1, 3), 1: (1,)}, {2: (1, 3)})
    assert aux.n == 3 and aux.edge_count() == 2
    assert aux.measure() == 2 + 1 + 2
    assert aux.pinned({0: 1}).x_lists[0] == 1
    assert aux.x_lists[0] == 3
    assert aux.satisfied_by({0: 2, 1: 1})
    assert not aux.satisfied_by({0: 1, 1: 1})


def test_aux_rejects_edge_inside_a_side():
    with pytest.raises(ValueError):
        AuxInstance.create([(0, 1)], {0: (1,), 1: (3,)}, {})


@given(st.integers(0, 10**6))
@settings(max_examples=30)
def test_aux_components_partition(seed):
    rng = random.Random(seed)
    xs = range(4)
    ys = range(4, 8)
    edges = [(x, y) for x in xs for y in ys if rng.random() < 0.3]
    aux = AuxInstance.create(edges, {x: (1, 3) for x in xs}, {y: (1, 3) for y in ys})
    comps = aux.components()
    assert sorted(v for c in comps for v in c) == list(range(8))
    for c in comps:
        cs = set(c)
        for v in c:
            assert aux.adj[v] <= cs
