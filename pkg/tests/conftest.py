import random

import pytest

from decept.graph import Graph
from decept.graphio import dataset_path, load_graph_file
from decept.partition import build_partition

# F1 "bridged triangles": two triangles joined by the bridge (2,3)
F1_EDGES = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]
# F2 "disjoint triangles": F1 without the bridge
F2_EDGES = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]


@pytest.fixture
def f1():
    return Graph(6, F1_EDGES)


@pytest.fixture
def f2():
    return Graph(6, F2_EDGES)


@pytest.fixture
def p1(f1):
    return build_partition(f1, [{0, 1, 2}, {3, 4, 5}])


@pytest.fixture(scope="session")
def karate():
    graph, table = load_graph_file(dataset_path("karate"), "gml")
    return graph, table


# ---------------------------------------------------------------------------
# independent oracles: recompute everything from the raw graph, bypassing all
# cached aggregates and closed-form rules


def direct_modularity(graph, communities):
    m = graph.m
    eta = 0
    delta = 0
    edges = list(graph.edges())
    for comm in communities:
        cs = set(comm)
        eta += sum(1 for u, v in edges if u in cs and v in cs)
        degsum = sum(graph.degree(u) for u in cs)
        delta += degsum * degsum
    return eta / m - delta / (4 * m * m)


def direct_safeness(graph, members):
    members = set(members)
    total = 0.0
    for u in sorted(members):
        comp = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in graph.neighbors(x):
                if y in members and y not in comp:
                    comp.add(y)
                    stack.append(y)
        inner = sum(1 for w in graph.neighbors(u) if w in members)
        ext = graph.degree(u) - inner
        value = 0.5 * (len(comp) - 1 - inner) / (len(members) - 1)
        if graph.degree(u):
            value += 0.5 * ext / graph.degree(u)
        total += value
    return total / len(members)


def random_graph(rng, n, p):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def random_partition_sets(rng, n, k):
    """Random assignment into k non-empty communities."""
    k = min(k, n)
    assignment = list(range(k)) + [rng.randrange(k) for _ in range(n - k)]
    rng.shuffle(assignment)
    sets = [set() for _ in range(k)]
    for u, c in enumerate(assignment):
        sets[c].add(u)
    return sets
