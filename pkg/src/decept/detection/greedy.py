"""Greedy agglomerative modularity maximization (CNM-style)."""

import heapq

from ..errors import EmptyGraph
from ..graph import Graph
from ..partition import Partition, build_partition


def detect_greedy_agglomerative(graph: Graph) -> Partition:
    """Merge the community pair with the largest modularity gain until
    no merge improves modularity.

    Merging communities a and b changes modularity by
    e_ab / m - deg_a * deg_b / (2 m^2); scaling by the common positive
    denominator 2 m^2 gives the integer score 2 m e_ab - deg_a deg_b, so
    gains are compared exactly. Ties go to the smallest community index
    pair, and a merged community keeps the smaller index, which makes the
    procedure fully deterministic.
    """
    if graph.n == 0:
        raise EmptyGraph("cannot detect communities of an empty graph")
    n, m = graph.n, graph.m
    if m == 0:
        return build_partition(graph, [{u} for u in range(n)])

    deg = [graph.degree(u) for u in range(n)]
    between = [{} for _ in range(n)]
    for u, v in graph.edges():
        between[u][v] = 1
        between[v][u] = 1
    alive = [True] * n
    members = [[u] for u in range(n)]

    heap = []
    for a in range(n):
        for b, e_ab in between[a].items():
            if b > a:
                score = 2 * m * e_ab - deg[a] * deg[b]
                heap.append((-score, a, b, e_ab, deg[a], deg[b]))
    heapq.heapify(heap)

    while heap:
        neg_score, a, b, e_ab, da, db = heapq.heappop(heap)
        if not (alive[a] and alive[b]):
            continue
        if between[a].get(b) != e_ab or deg[a] != da or deg[b] != db:
            continue  # stale entry; a fresher one is in the heap
        if -neg_score <= 0:
            break
        # merge b into a (a < b by construction)
        members[a].extend(members[b])
        alive[b] = False
        deg[a] += deg[b]
        nbrs_a = between[a]
        del nbrs_a[b]
        for x, cnt in between[b].items():
            if x == a:
                continue
            nbrs_a[x] = nbrs_a.get(x, 0) + cnt
            del between[x][b]
        between[b] = {}
        for x, cnt in nbrs_a.items():
            between[x][a] = cnt
            lo, hi = (a, x) if a < x else (x, a)
            score = 2 * m * cnt - deg[a] * deg[x]
            heapq.heappush(heap, (-score, lo, hi, cnt, deg[lo], deg[hi]))

    communities = sorted(
        (frozenset(members[a]) for a in range(n) if alive[a]), key=min
    )
    return build_partition(graph, communities)
