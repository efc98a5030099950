"""Louvain community detection (two-phase local moves + aggregation)."""

import random

from ..errors import EmptyGraph
from ..graph import Graph
from ..partition import Partition, build_partition
from . import backend

# A full aggregation pass must improve modularity by at least this much,
# otherwise detection stops at the current assignment.
LEVEL_GAIN_TOLERANCE = 1e-9


def _csr(graph: Graph):
    indptr = [0]
    indices = []
    for u in range(graph.n):
        indices.extend(graph.neighbors(u))
        indptr.append(len(indices))
    return indptr, indices


def _q_from_labels(indptr, indices, weights, self_w, labels, two_w) -> float:
    """Modularity of a labeling of the (possibly aggregated) weighted graph.

    in_w[c] accumulates twice the internal weight of community c (each
    intra edge is visited from both endpoints, self weights already carry
    the factor two), so in_w[c] / two_w is the intra-edge fraction.
    """
    n = len(labels)
    in_w = [0] * n
    tot = [0] * n
    for u in range(n):
        cu = labels[u]
        in_w[cu] += self_w[u]
        s = self_w[u]
        for idx in range(indptr[u], indptr[u + 1]):
            w = weights[idx]
            s += w
            if labels[indices[idx]] == cu:
                in_w[cu] += w
        tot[cu] += s
    q = 0.0
    for c in range(n):
        if tot[c]:
            frac = tot[c] / two_w
            q += in_w[c] / two_w - frac * frac
    return q


def _aggregate(indptr, indices, weights, self_w, labels, remap, k):
    """Collapse communities into super nodes, keeping integer weights."""
    n = len(labels)
    self_new = [0] * k
    nbr = [{} for _ in range(k)]
    for u in range(n):
        cu = remap[labels[u]]
        self_new[cu] += self_w[u]
        for idx in range(indptr[u], indptr[u + 1]):
            cv = remap[labels[indices[idx]]]
            w = weights[idx]
            if cv == cu:
                self_new[cu] += w
            else:
                nbr[cu][cv] = nbr[cu].get(cv, 0) + w
    indptr_new = [0]
    indices_new = []
    weights_new = []
    for cu in range(k):
        for cv in sorted(nbr[cu]):
            indices_new.append(cv)
            weights_new.append(nbr[cu][cv])
        indptr_new.append(len(indices_new))
    return indptr_new, indices_new, weights_new, self_new


def _singletons(graph: Graph) -> Partition:
    return build_partition(graph, [{u} for u in range(graph.n)])


def detect_louvain(graph: Graph, seed: int = 0) -> Partition:
    """Seeded Louvain; the seed shuffles the node sweep order per level."""
    if graph.n == 0:
        raise EmptyGraph("cannot detect communities of an empty graph")
    if graph.m == 0:
        return _singletons(graph)

    rng = random.Random(seed)
    groups = [[u] for u in range(graph.n)]
    indptr, indices = _csr(graph)
    weights = [1] * len(indices)
    self_w = [0] * graph.n
    two_w = 2 * graph.m
    q_current = _q_from_labels(indptr, indices, weights, self_w, list(range(graph.n)), two_w)

    while True:
        n_super = len(groups)
        order = list(range(n_super))
        rng.shuffle(order)
        kernel = backend.LouvainSweeper(indptr, indices, weights, self_w)
        while kernel.sweep(order) > 0:
            pass
        labels = kernel.labels()
        q_new = _q_from_labels(indptr, indices, weights, self_w, labels, two_w)

        remap = {}
        for u in range(n_super):
            if labels[u] not in remap:
                remap[labels[u]] = len(remap)
        k = len(remap)
        merged = [[] for _ in range(k)]
        for u in range(n_super):
            merged[remap[labels[u]]].extend(groups[u])
        groups = merged

        if q_new - q_current < LEVEL_GAIN_TOLERANCE or k == n_super:
            break
        q_current = q_new
        indptr, indices, weights, self_w = _aggregate(
            indptr, indices, weights, self_w, labels, remap, k
        )

    communities = sorted((frozenset(g) for g in groups), key=min)
    return build_partition(graph, communities)
