"""Independent reference implementations used only by the test-suite.

Everything here is deliberately written on top of networkx with its own
data structures, so it shares no code with the package under test. The
atlas helpers feed the exhaustive small-graph sweeps.
"""

from __future__ import annotations

import random
from functools import lru_cache

import networkx as nx

from latticeforge.graphs import GraphState


def to_nx(g: GraphState) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(g.vertices)
    out.add_edges_from(g.edges)
    return out


def from_nx(G: nx.Graph) -> GraphState:
    return GraphState(G.nodes, G.edges)


def nx_tau(G: nx.Graph, a) -> nx.Graph:
    """Local complementation: complement the subgraph induced by N(a)."""
    out = G.copy()
    nb = list(G.neighbors(a))
    sub = G.subgraph(nb)
    comp = nx.complement(sub)
    out.remove_edges_from(sub.edges)
    out.add_edges_from(comp.edges)
    return out


def nx_measure(G: nx.Graph, a, axis: str, b0=None) -> nx.Graph:
    """Pauli measurement graph rules, +1 branch, on networkx graphs."""
    if axis == "z":
        out = G.copy()
        out.remove_node(a)
        return out
    if axis == "y":
        out = nx_tau(G, a)
        out.remove_node(a)
        return out
    if axis == "x":
        nb = sorted(G.neighbors(a))
        if not nb:
            out = G.copy()
            out.remove_node(a)
            return out
        special = nb[0] if b0 is None else b0
        out = nx_tau(G, special)
        out = nx_tau(out, a)
        out.remove_node(a)
        return nx_tau(out, special)
    raise ValueError(axis)


def edge_key(G: nx.Graph) -> frozenset:
    return frozenset(frozenset(e) for e in G.edges)


def nx_orbit(G: nx.Graph) -> set[frozenset]:
    """All edge-sets reachable from G by local complementations."""
    start = edge_key(G)
    seen = {start}
    frontier = [G]
    while frontier:
        nxt = []
        for H in frontier:
            for a in H.nodes:
                child = nx_tau(H, a)
                key = edge_key(child)
                if key not in seen:
                    seen.add(key)
                    nxt.append(child)
        frontier = nxt
    return seen


def nx_lc_equivalent(G1: nx.Graph, G2: nx.Graph) -> bool:
    if set(G1.nodes) != set(G2.nodes):
        return False
    return edge_key(G2) in nx_orbit(G1)


@lru_cache(maxsize=None)
def connected_atlas(max_n: int = 7) -> tuple[nx.Graph, ...]:
    """All connected graphs with 1..max_n nodes from the networkx atlas."""
    out = []
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if 1 <= n <= max_n and nx.is_connected(G):
            out.append(G)
    return tuple(out)


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> GraphState:
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < p:
                edges.append((a, b))
    return GraphState(range(n), edges)


def random_connected_graph(rng: random.Random, n: int,
                           p: float = 0.5) -> GraphState:
    """Random graph with a random spanning tree forced in."""
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        a = order[rng.randrange(i)]
        b = order[i]
        edges.add((min(a, b), max(a, b)))
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < p:
                edges.add((a, b))
    return GraphState(range(n), edges)
