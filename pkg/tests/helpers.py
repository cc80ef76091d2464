"""Shared hypothesis strategies and small oracles for the test-suite."""

import itertools

import networkx as nx
from hypothesis import strategies as st

from llshom.graph import Graph
from llshom.instance import Instance


@st.composite
def graphs(draw, min_n=0, max_n=8, loops=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u if loops else u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph(n, chosen)


@st.composite
def instances(draw, target, min_n=1, max_n=7):
    g = draw(graphs(min_n, max_n))
    lists = draw(
        st.lists(
            st.frozensets(st.integers(0, target.n - 1)),
            min_size=g.n,
            max_size=g.n,
        )
    )
    return Instance(target, g, tuple(lists))


def to_nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edge_list())
    return out


def all_maps(inst: Instance):
    """Every list-respecting map, by plain enumeration."""
    return itertools.product(*[sorted(l) for l in inst.lists])


def definitional_answer(inst: Instance) -> bool:
    """Exists a list homomorphism under which every vertex is happy, checked
    straight from the definition without the verifier module."""
    g, h = inst.source, inst.target
    for m in all_maps(inst):
        if any(not h.has_edge(m[u], m[v]) for u, v in g.edge_list()):
            continue
        if all({m[u] for u in g.adj[v]} == set(h.adj[m[v]]) for v in range(g.n)):
            return True
    return False
