"""Asynchronous label propagation clustering."""

import random

from ..errors import EmptyGraph
from ..graph import Graph
from ..partition import Partition, build_partition
from .louvain import _csr
from . import backend

MAX_SWEEPS = 100


def detect_label_propagation(graph: Graph, seed: int = 0) -> Partition:
    """Propagate labels until no node changes, capped at MAX_SWEEPS sweeps.

    Every node starts with its own label and repeatedly adopts the most
    frequent label among its neighbors (keeping its current label when that
    is already maximal). The seed drives both the per-sweep node order and
    the priority permutation used to break ties between equally frequent
    labels. Isolated nodes keep their own label.
    """
    if graph.n == 0:
        raise EmptyGraph("cannot detect communities of an empty graph")
    rng = random.Random(seed)
    priority = list(range(graph.n))
    rng.shuffle(priority)
    indptr, indices = _csr(graph)
    kernel = backend.LabelSweeper(indptr, indices, priority)
    order = list(range(graph.n))
    for _ in range(MAX_SWEEPS):
        rng.shuffle(order)
        if kernel.sweep(order) == 0:
            break
    labels = kernel.labels()
    by_label = {}
    for u, lab in enumerate(labels):
        by_label.setdefault(lab, []).append(u)
    communities = sorted((frozenset(c) for c in by_label.values()), key=min)
    return build_partition(graph, communities)
