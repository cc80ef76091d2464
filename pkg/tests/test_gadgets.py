import itertools

import pytest

from llshom.acceptance import ZOO, brute_truth, p3_subgraphs
from llshom.exact import solve_bruteforce
from llshom.formats import CnfFormula, read_instance, write_instance
from llshom.gadgets import (
    GadgetTooLarge,
    cross_gadget,
    default_p3,
    degree3_spacing,
    find_base_pattern,
    funny_gadget,
    gen_general_h_girth,
    gen_general_h_pathfree,
    gen_k13,
    gen_k2loops,
    gen_nae_p3,
    gen_p4,
    is_trivial,
    pad_formula,
    path_length_bound,
    variable_gadget,
)
from llshom.graph import (
    K2,
    K13,
    P3,
    P4,
    Graph,
    associated_bipartite,
    bipartition,
    find_induced,
    girth,
    max_degree,
    path_graph,
)
from llshom.verify import happy_vertices, is_list_homomorphism, verify_solution

F = CnfFormula

SMALL = [
    F(3, ((1, 2, 3),)),
    F(1, ((1, 1, 1), (-1, -1, -1))),
    F(3, ((1, 2, -3), (-1, -2, 3))),
    F(2, ((1, 1, 2), (-1, -1, -2))),
    F(3, ((1, 2, 3), (-1, -2, -3))),
    F(2, ((1, 2, 2), (-2, -2, -2))),
]


def _answer(inst):
    res = solve_bruteforce(inst)
    assert res.decided
    if res.yes:
        assert verify_solution(inst, res.witness)
    return res.yes


def test_padding():
    f = pad_formula(F(2, ((1, 2, 1),)))
    assert f.clauses == ((1, 2, 1), (1, -1, 1), (2, -2, 2))
    for bits in itertools.product((False, True), repeat=2):
        assert f.nae_satisfied(bits) == F(2, ((1, 2, 1),)).nae_satisfied(bits)


@pytest.mark.parametrize("gen", [gen_k13, gen_p4, gen_k2loops])
@pytest.mark.parametrize("f", SMALL)
def test_sat_generators(gen, f):
    assert _answer(gen(f).instance) == brute_truth(f)[0]


@pytest.mark.parametrize("f", SMALL)
def test_nae_generator(f):
    assert _answer(gen_nae_p3(f, 1).instance) == brute_truth(f)[1]


def test_k13_lists_and_roles():
    out = gen_k13(F(3, ((1, 2, 3),)))
    inst = out.instance
    assert inst.target == K13
    for v in out.annotations["var_x"] + out.annotations["var_xneg"]:
        assert inst.lists[v] == {1, 2}
    for v in out.annotations["clause_s3"]:
        assert inst.lists[v] == {2, 3}
    y = out.annotations["clause_center"][0]
    assert set(out.annotations["var_x"]) <= inst.source.adj[y]


@pytest.mark.parametrize(
    "kind, expected",
    [
        ("k13", {(0, 1, 2, 3), (0, 2, 1, 3)}),
        ("p4", {(0, 1, 2, 3, 2), (2, 3, 2, 1, 0)}),
        ("k2loops", {(0, 0, 1), (1, 0, 0)}),
    ],
)
def test_variable_gadget_claims(kind, expected):
    inst, must = variable_gadget(kind)
    found = set()
    for h in itertools.product(*[sorted(l) for l in inst.lists]):
        if is_list_homomorphism(inst, h) and set(must) <= happy_vertices(inst, h):
            found.add(tuple(h[v] for v in must))
    assert found == expected


@pytest.mark.parametrize("gen, k", [(gen_k13, 10), (gen_p4, 14), (gen_k2loops, 12)])
def test_path_freeness(gen, k):
    g = gen(F(3, ((1, 2, 3), (-1, -2, 3)))).instance.source
    assert find_induced(g, path_graph(k)) is None


def test_p4_leaves_used_once():
    out = gen_p4(F(3, ((1, 2, 3), (-1, -2, -3))))
    g = out.instance.source
    ends = set(out.annotations["clause_s2"])
    for leaf in out.annotations["leaf_pos"] + out.annotations["leaf_neg"]:
        assert len(g.adj[leaf] & ends) == 1


@pytest.mark.parametrize("p", [1, 2, 3, 5])
def test_nae_structure(p):
    out = gen_nae_p3(F(3, ((1, 2, -3), (-1, 2, 3))), p)
    g = out.instance.source
    assert max_degree(g) == 3
    assert girth(g) >= p
    assert degree3_spacing(g) >= p
    bp = bipartition(g)
    assert bp is not None
    for u, v in g.edge_list():
        assert {out.instance.lists[u], out.instance.lists[v]} == {frozenset({0, 2}), frozenset({1})}


def test_nae_rejects_bad_p():
    with pytest.raises(ValueError):
        gen_nae_p3(F(1, ((1, 1, 1),)), 0)


def test_cross_gadget_examples():
    z = cross_gadget(K2, 0, 1)
    assert z.instance.source.n == 4 and z.instance.source.m == 2
    z = cross_gadget(P3, 0, 2)
    assert verify_solution(z.instance, z.maps["h_u"]) and verify_solution(z.instance, z.maps["h_v"])
    with pytest.raises(ValueError):
        cross_gadget(Graph(3, [(0, 1)]), 0, 1)


def test_funny_trivial_middle_rejected():
    with pytest.raises(ValueError):
        funny_gadget(P3, "2", 9, (0, 1, 2))


def test_funny_p_too_small():
    paw = ZOO["paw"]
    with pytest.raises(ValueError):
        funny_gadget(paw, "2", 3, (0, 2, 1))


def test_funny_k13_center():
    with pytest.raises(ValueError):
        funny_gadget(K13, "13", 16, (1, 0, 2))
    out = funny_gadget(K13, "2", 16, (1, 0, 2))
    inst = out.instance
    h2 = out.maps["h2"]
    assert is_list_homomorphism(inst, h2)
    assert {h2[u] for u in inst.source.adj[0]} == {3}


def test_funny_one_three_on_p4():
    out = funny_gadget(P4, "13", 16, (0, 1, 2))
    inst = out.instance
    assert inst.lists[0] == {0, 2}
    assert verify_solution(inst, out.maps["h1"]) and verify_solution(inst, out.maps["h3"])
    assert out.maps["h1"][0] == 0 and out.maps["h3"][0] == 2


def test_funny_paw_two():
    paw = ZOO["paw"]
    p3 = (0, 2, 3)  # middle is the degree-3 vertex
    out = funny_gadget(paw, "2", 2, p3, check_p=False)
    inst = out.instance
    h2 = out.maps["h2"]
    assert is_list_homomorphism(inst, h2)
    assert set(range(inst.source.n)) - happy_vertices(inst, h2) <= {0}
    assert {h2[u] for u in inst.source.adj[0]} == set(paw.adj[2]) - {0, 3}


def test_funny_size_cap():
    with pytest.raises(GadgetTooLarge):
        funny_gadget(ZOO["K3"], "13", 9, (0, 1, 2), max_vertices=1000)


def test_trivial_vertices():
    assert is_trivial(P3, (0, 1, 2), 1)
    assert is_trivial(P3, (0, 1, 2), 0)
    paw = ZOO["paw"]
    assert is_trivial(paw, default_p3(paw), default_p3(paw)[1])
    assert not is_trivial(paw, (0, 2, 3), 2)
    assert is_trivial(paw, (0, 2, 3), 3)


def test_zoo_p3_lists_are_paths():
    for h in ZOO.values():
        for one, two, three in p3_subgraphs(h):
            assert h.has_edge(one, two) and h.has_edge(two, three) and one < three


def test_base_pattern_priority():
    assert find_base_pattern(K13)[0] == "k13"
    assert find_base_pattern(P4)[0] == "p4"
    two_loops_and_more = Graph(3, [(0, 0), (1, 1), (0, 1), (1, 2)])
    assert find_base_pattern(two_loops_and_more)[0] == "k2loops"


def test_pathfree_k13_equals_base():
    f = F(3, ((1, 2, 3),))
    assert gen_general_h_pathfree(f, K13).instance == gen_k13(f).instance


@pytest.mark.parametrize(
    "f",
    [F(3, ((1, 2, 3), (-1, -2, -3))), F(1, ((1, 1, 1), (-1, -1, -1))), F(2, ((1, 2, 2), (-1, -1, -2)))],
)
def test_pathfree_p5(f):
    out = gen_general_h_pathfree(f, path_graph(5))
    assert _answer(out.instance) == brute_truth(f)[0]


def test_pathfree_paw_via_star():
    paw = ZOO["paw"]
    with pytest.raises(ValueError):
        gen_general_h_pathfree(F(1, ((1, 1, 1),)), paw)
    for f in (F(3, ((1, 2, 3),)), F(1, ((1, 1, 1),))):
        out = gen_general_h_pathfree(f, paw, via_star=True)
        assert out.instance.target == associated_bipartite(paw).graph
        assert _answer(out.instance) == brute_truth(f)[0]


def test_pathfree_rejects_easy_targets():
    for h in (P3, K2):
        with pytest.raises(ValueError):
            gen_general_h_pathfree(F(1, ((1, 1, 1),)), h)


def test_girth_generator_on_p3_adds_nothing():
    f = F(3, ((1, 2, -3),))
    assert gen_general_h_girth(f, P3).instance == gen_nae_p3(f, 9).instance


@pytest.mark.parametrize("f", [F(3, ((1, 2, 3),)), F(1, ((1, 1, 1),))])
def test_girth_generator_k13(f):
    out = gen_general_h_girth(f, K13, p3=(1, 0, 2))
    assert out.info["p"] == 16
    assert _answer(out.instance) == brute_truth(f)[1]


def test_generated_instances_roundtrip():
    f = F(3, ((1, 2, 3), (-1, 2, -3)))
    for out in (gen_k13(f), gen_p4(f), gen_k2loops(f), gen_nae_p3(f, 2)):
        text = write_instance(out.instance)
        assert read_instance(text) == out.instance
        assert write_instance(read_instance(text)) == text


def test_path_length_bound_small_targets():
    # K2 x K2 is a perfect matching: longest induced path has two vertices
    assert path_length_bound(K2) == 18


@pytest.mark.parametrize("h", [K13, P4, path_graph(5)])
def test_pathfree_outputs_within_bound(h):
    out = gen_general_h_pathfree(F(3, ((1, 2, 3), (-1, -2, 3))), h)
    t = path_length_bound(h)
    assert find_induced(out.instance.source, path_graph(t)) is None
