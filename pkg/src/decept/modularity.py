"""Modularity, closed-form loss rules for single edge updates, and the
modularity-minimizing deception greedy.

With eta = total intra-community edges, delta = sum of squared community
degrees and m = |E|, modularity is Q = eta/m - delta/(4 m^2). Because a
single edge update moves eta, delta and m by known integer amounts while
membership stays fixed, the loss M_L = Q(G) - Q(G') of every update type
has a closed form that never touches the graph.
"""

import random
from dataclasses import dataclass

from .errors import (
    DegenerateEdgeCount,
    EmptyEdgeSet,
    Exhausted,
    UnknownCommunity,
)
from .graph import EdgeUpdate, Graph, apply_update
from .partition import Partition, TargetCommunity, refresh_after_update

INTER_ADD = "inter_add"
INTRA_ADD = "intra_add"
INTER_DEL = "inter_del"
INTRA_DEL = "intra_del"


@dataclass(frozen=True)
class LossKind:
    """Which update type a loss rule should price, and on which communities."""

    kind: str
    i: int
    j: int | None = None

    def __post_init__(self):
        if self.kind in (INTER_ADD, INTER_DEL):
            if self.j is None or self.j == self.i:
                raise ValueError("inter-community kinds need two distinct communities")
        elif self.kind in (INTRA_ADD, INTRA_DEL):
            if self.j is not None:
                raise ValueError("intra-community kinds take a single community")
        else:
            raise ValueError(f"unknown loss kind {self.kind!r}")

    @staticmethod
    def inter_add(i, j):
        return LossKind(INTER_ADD, i, j)

    @staticmethod
    def intra_add(i):
        return LossKind(INTRA_ADD, i)

    @staticmethod
    def inter_del(i, j):
        return LossKind(INTER_DEL, i, j)

    @staticmethod
    def intra_del(i):
        return LossKind(INTRA_DEL, i)


def modularity(partition: Partition) -> float:
    """Q = eta/m - delta/(4 m^2); undefined when the graph has no edges."""
    m = partition.m
    if m == 0:
        raise EmptyEdgeSet("modularity needs at least one edge")
    return partition.eta / m - partition.delta / (4 * m * m)


def modularity_loss(partition: Partition, kind: LossKind) -> float:
    """Predicted loss M_L = Q(G) - Q(G') for one update of the given kind.

    The aggregates move as follows (communities of the endpoints named i,
    and j when distinct; D = deg(C)):

      inter add: eta' = eta,     delta' = delta + 2 D_i + 2 D_j + 2, m' = m + 1
      intra add: eta' = eta + 1, delta' = delta + 4 D_i + 4,         m' = m + 1
      inter del: eta' = eta,     delta' = delta - 2 D_i - 2 D_j + 2, m' = m - 1
      intra del: eta' = eta - 1, delta' = delta - 4 D_i + 4,         m' = m - 1

    Substituting into Q - Q' and clearing denominators gives:

      inter add: eta/(m(m+1)) + (2 m^2 (D_i + D_j + 1) - delta (2m+1)) / (4 m^2 (m+1)^2)
      intra add: (eta-m)/(m(m+1)) + (4 m^2 (D_i + 1) - delta (2m+1)) / (4 m^2 (m+1)^2)
      inter del: (delta (2m-1) - 2 m^2 (D_i + D_j - 1)) / (4 m^2 (m-1)^2) - eta/(m(m-1))
      intra del: (m-eta)/(m(m-1)) + (delta (2m-1) - 4 m^2 (D_i - 1)) / (4 m^2 (m-1)^2)

    For fixed communities the value does not depend on which endpoints are
    picked, only on the community degrees, which is what makes the greedy
    cheap. Deletion rules divide by (m-1) and need m >= 2.
    """
    m = partition.m
    eta = partition.eta
    delta = partition.delta
    if not (0 <= kind.i < partition.k) or (
        kind.j is not None and not (0 <= kind.j < partition.k)
    ):
        raise UnknownCommunity(f"communities {kind.i}, {kind.j} out of range")
    d_i = partition.community_degree[kind.i]
    d_j = partition.community_degree[kind.j] if kind.j is not None else 0

    if kind.kind in (INTER_DEL, INTRA_DEL):
        if m <= 1:
            raise DegenerateEdgeCount("deletion rules need m >= 2")
    elif m == 0:
        raise EmptyEdgeSet("loss rules need at least one edge")

    if kind.kind == INTER_ADD:
        return eta / (m * (m + 1)) + (
            2 * m * m * (d_i + d_j + 1) - delta * (2 * m + 1)
        ) / (4 * m * m * (m + 1) ** 2)
    if kind.kind == INTRA_ADD:
        return (eta - m) / (m * (m + 1)) + (
            4 * m * m * (d_i + 1) - delta * (2 * m + 1)
        ) / (4 * m * m * (m + 1) ** 2)
    if kind.kind == INTER_DEL:
        return (delta * (2 * m - 1) - 2 * m * m * (d_i + d_j - 1)) / (
            4 * m * m * (m - 1) ** 2
        ) - eta / (m * (m - 1))
    return (m - eta) / (m * (m - 1)) + (
        delta * (2 * m - 1) - 4 * m * m * (d_i - 1)
    ) / (4 * m * m * (m - 1) ** 2)


def _ranked(indices, degrees, reverse):
    """Community indices ordered by degree; ties by smaller index."""
    return sorted(indices, key=lambda c: (-degrees[c], c) if reverse else (degrees[c], c))


def _deletion_candidate(graph, partition, target):
    """(candidate edges, community index) for the best intra deletion.

    With the target inside one detected community, any of its internal
    edges qualifies. Otherwise the deletion goes to the lowest-degree
    community holding an intra-community edge with an endpoint in the
    target (every update must touch the target).
    """
    h = target.members
    h_index = partition.index_of_set(h)
    if h_index is not None:
        edges = [
            (u, v)
            for u in sorted(h)
            for v in graph.neighbors(u)
            if v > u and v in h
        ]
        return (edges, h_index) if edges else None
    by_comm = {}
    for u in sorted(h):
        cu = partition.community_of(u)
        for v in graph.neighbors(u):
            if partition.membership[v] == cu:
                by_comm.setdefault(cu, set()).add((min(u, v), max(u, v)))
    for c in _ranked(by_comm, partition.community_degree, reverse=False):
        edges = sorted(by_comm[c])
        if edges:
            return edges, c
    return None


def _addition_candidate(graph, partition, target, rng):
    """Uniformly pick a missing edge between the designated community pair.

    The source side is the highest-degree community intersecting the
    target (which is the target's own community when it was detected
    as-is); the far side is the highest-degree remaining community.
    """
    h = target.members
    h_index = partition.index_of_set(h)
    degrees = partition.community_degree
    if h_index is not None:
        ci = h_index
    else:
        touching = {partition.community_of(u) for u in h}
        ci = _ranked(touching, degrees, reverse=True)[0]
    others = [c for c in range(partition.k) if c != ci]
    if not others:
        return None
    cj = _ranked(others, degrees, reverse=True)[0]

    sources = sorted(set(h) & partition.communities[ci])
    far = sorted(partition.communities[cj])
    far_set = partition.communities[cj]
    counts = []
    total = 0
    for u in sources:
        free = len(far) - sum(1 for w in graph.neighbors(u) if w in far_set)
        counts.append(free)
        total += free
    if total == 0:
        return None
    r = rng.randrange(total)
    for u, free in zip(sources, counts):
        if r >= free:
            r -= free
            continue
        for w in far:
            if graph.has_edge(u, w):
                continue
            if r == 0:
                return (u, w), ci, cj
            r -= 1
    raise AssertionError("uniform pair selection walked past its total")


def best_update_modularity(
    graph: Graph, partition: Partition, target: TargetCommunity, rng: random.Random
) -> EdgeUpdate:
    """One greedy step: the edge update with the larger predicted loss.

    Compares the best deletion (intra-community, lowest degree) against
    the best addition (inter-community, highest degree pair) and returns
    the winner, preferring the deletion on ties. Endpoints are drawn
    uniformly among qualifying pairs since the loss does not depend on
    them.
    """
    deletion = _deletion_candidate(graph, partition, target)
    if deletion is not None and partition.m <= 1:
        deletion = None  # deletion loss rules are undefined at m <= 1
    addition = _addition_candidate(graph, partition, target, rng)
    if deletion is None and addition is None:
        raise Exhausted("no legal edge update touches the target community")

    loss_del = loss_add = None
    if deletion is not None:
        loss_del = modularity_loss(partition, LossKind.intra_del(deletion[1]))
    if addition is not None:
        loss_add = modularity_loss(
            partition, LossKind.inter_add(addition[1], addition[2])
        )

    if addition is None or (deletion is not None and loss_del >= loss_add):
        edges, _ = deletion
        u, v = edges[rng.randrange(len(edges))]
        return EdgeUpdate.delete(u, v)
    (u, w), _, _ = addition
    return EdgeUpdate.add(u, w)


@dataclass(frozen=True)
class DeceptionRun:
    """Outcome of a budgeted greedy run."""

    graph: Graph
    updates: tuple
    truncated: bool
    partition: Partition | None = None


def run_modmin(
    graph: Graph,
    partition: Partition,
    target: TargetCommunity,
    budget: int,
    rng: random.Random,
) -> DeceptionRun:
    """Apply up to `budget` best updates, keeping membership frozen.

    Partition aggregates and target counters refresh incrementally after
    each applied update; communities are never recomputed here. Stops
    early (truncated=True) when no candidate update remains.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    updates = []
    truncated = False
    for _ in range(budget):
        try:
            update = best_update_modularity(graph, partition, target, rng)
        except Exhausted:
            truncated = True
            break
        graph = apply_update(graph, update)
        partition = refresh_after_update(partition, graph, update)
        target = target.refresh_after_update(graph, update)
        updates.append(update)
    return DeceptionRun(graph, tuple(updates), truncated, partition)
