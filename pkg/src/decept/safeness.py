"""Node and community safeness, safeness-gain rules, and the
safeness-maximizing deception greedy.

For a member u of the hidden set H, safeness blends how well u reaches the
rest of H against how many edges that costs, with how diversified u's
connections are outside H:

    sigma(u) = 1/2 (|R(u,H)| - |E(u,H)|) / (|H| - 1) + 1/2 |Eext(u)| / deg(u)

R(u,H) is the set of other members reachable from u inside H, E(u,H) the
edges from u to members, Eext(u) the edges from u leaving H. Community
safeness sigma(H) is the mean over members. An edge update only moves the
terms of the affected nodes, so its gain sigma'(H) - sigma(H) is predicted
exactly from a handful of counters.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateDegree,
    EdgeAbsent,
    EdgeAlreadyPresent,
    Exhausted,
    IllegalUpdate,
    NotAMember,
)
from .graph import EdgeUpdate, Graph, apply_update, induced_bridges
from .partition import TargetCommunity


def node_safeness(graph: Graph, target: TargetCommunity, u: int) -> float:
    """sigma(u); the external-ratio term counts as 0 for isolated nodes."""
    if u not in target.members:
        raise NotAMember(f"node {u} is not a target member")
    reach = len(target.component_of(u)) - 1
    value = 0.5 * (reach - target.internal[u]) / (target.size - 1)
    degree = graph.degree(u)
    if degree > 0:
        value += 0.5 * target.external[u] / degree
    return value


def community_safeness(graph: Graph, target: TargetCommunity) -> float:
    """Mean member safeness."""
    total = 0.0
    for u in sorted(target.members):
        total += node_safeness(graph, target, u)
    return total / target.size


@dataclass(frozen=True)
class MemberSafeness:
    node: int
    reach: int      # |R(u,H)|, other members reachable inside H
    internal: int   # edges to members
    external: int   # edges leaving H
    degree: int
    sigma: float


@dataclass(frozen=True)
class SafenessBreakdown:
    """Per-member safeness terms plus the community mean."""

    members: tuple
    community: float


def safeness_breakdown(graph: Graph, target: TargetCommunity) -> SafenessBreakdown:
    rows = tuple(
        MemberSafeness(
            node=u,
            reach=len(target.component_of(u)) - 1,
            internal=target.internal[u],
            external=target.external[u],
            degree=graph.degree(u),
            sigma=node_safeness(graph, target, u),
        )
        for u in sorted(target.members)
    )
    return SafenessBreakdown(rows, community_safeness(graph, target))


def _ext_term_delta(ext: int, deg: int, deg_change: int, ext_change: int) -> float:
    """Change of 1/2 |Eext(u)|/deg(u) when u's counters move as given."""
    before = 0.5 * ext / deg if deg > 0 else 0.0
    new_deg = deg + deg_change
    new_ext = ext + ext_change
    after = 0.5 * new_ext / new_deg if new_deg > 0 else 0.0
    return after - before


def safeness_gain(graph: Graph, target: TargetCommunity, update: EdgeUpdate) -> float:
    """Predicted sigma'(H) - sigma(H) for one legal update touching H.

    Derived per update type by summing the per-member term changes:

    * inter-H addition at u: only u's external ratio moves, by
      ((e+1)/(d+1) - e/d)/2; never negative, and 0 only when e = d >= 1
      (an isolated member jumps from the 0 convention to a full ratio).
    * inter-H deletion at u: mirrored ratio change, always <= 0.
    * intra-H deletion keeping u-w connected inside H: each endpoint gains
      1/(2(|H|-1)) from dropping an internal edge plus e/(2d(d-1)) from
      the ratio, i.e. the whole community gains
      (1/(|H|-1) + e_u/(2 d_u (d_u-1)) + e_w/(2 d_w (d_w-1))) / |H|.
    * intra-H updates that merge or split components H_u, H_w additionally
      move the reach term of every member of both components by
      +-|other|/(2(|H|-1)), and the endpoints by +-(|other|-1)/(2(|H|-1)).

    Deletions touching a member of degree 1 have no defined ratio change
    (the rules divide by d(d-1)) and raise DegenerateDegree.
    """
    u, v = update.u, update.v
    in_u = u in target.members
    in_v = v in target.members
    if not (in_u or in_v):
        raise IllegalUpdate(f"update {update} touches no target member")
    h_size = target.size
    reach_den = 2.0 * (h_size - 1)
    present = graph.has_edge(u, v)

    if update.is_add:
        if present:
            raise EdgeAlreadyPresent(f"edge ({u}, {v}) already present")
        if in_u != in_v:
            x = u if in_u else v
            return _ext_term_delta(
                target.external[x], graph.degree(x), +1, +1
            ) / h_size
        comp_u = target.component_of(u)
        ext_parts = _ext_term_delta(
            target.external[u], graph.degree(u), +1, 0
        ) + _ext_term_delta(target.external[v], graph.degree(v), +1, 0)
        if v in comp_u:
            # no new reachability; each endpoint pays one internal edge
            return (-2 * (0.5 / (h_size - 1)) + ext_parts) / h_size
        comp_v = target.component_of(v)
        a, b = len(comp_u), len(comp_v)
        reach = (
            (a - 1) * b / reach_den
            + (b - 1) * a / reach_den
            + (b - 1) / reach_den
            + (a - 1) / reach_den
        )
        return (reach + ext_parts) / h_size

    if not present:
        raise EdgeAbsent(f"edge ({u}, {v}) not present")
    if in_u != in_v:
        x = u if in_u else v
        if graph.degree(x) < 2:
            raise DegenerateDegree(f"deleting the only edge of node {x}")
        return _ext_term_delta(target.external[x], graph.degree(x), -1, -1) / h_size
    if graph.degree(u) < 2 or graph.degree(v) < 2:
        raise DegenerateDegree(f"deletion at a degree-1 member of ({u}, {v})")
    ext_parts = _ext_term_delta(
        target.external[u], graph.degree(u), -1, 0
    ) + _ext_term_delta(target.external[v], graph.degree(v), -1, 0)
    side_u = _component_without_edge(graph, target.members, u, v)
    if v in side_u:
        return (2 * (0.5 / (h_size - 1)) + ext_parts) / h_size
    side_v = target.component_of(u) - side_u
    a, b = len(side_u), len(side_v)
    reach = (
        -(a - 1) * b / reach_den
        - (b - 1) * a / reach_den
        - (b - 1) / reach_den
        - (a - 1) / reach_den
    )
    return (reach + ext_parts) / h_size


def _component_without_edge(graph: Graph, members, u: int, v: int) -> frozenset:
    """Members reachable from u inside `members` ignoring the edge (u, v)."""
    seen = {u}
    frontier = [u]
    while frontier:
        x = frontier.pop()
        for y in graph.neighbors(x):
            if y not in members or y in seen:
                continue
            if (x == u and y == v) or (x == v and y == u):
                continue
            seen.add(y)
            frontier.append(y)
    return frozenset(seen)


def _deletion_gain_value(target: TargetCommunity, graph: Graph, u: int, v: int) -> float:
    """Ranking value of a reachability-preserving intra-H deletion."""
    du, dv = graph.degree(u), graph.degree(v)
    return (
        1.0 / (target.size - 1)
        + target.external[u] / (2.0 * du * (du - 1))
        + target.external[v] / (2.0 * dv * (dv - 1))
    )


def _best_deletion(graph, target, rng):
    """Highest-value intra-H edge whose removal keeps H's components intact."""
    h = target.members
    intra = [
        (u, v) for u in sorted(h) for v in graph.neighbors(u) if v > u and v in h
    ]
    if not intra:
        return None
    bridges = induced_bridges(graph, h)
    best = None
    ties = []
    for u, v in intra:
        if (u, v) in bridges:
            continue
        value = _deletion_gain_value(target, graph, u, v)
        if best is None or value > best:
            best = value
            ties = [(u, v)]
        elif value == best:
            ties.append((u, v))
    if best is None:
        return None
    u, v = ties[rng.randrange(len(ties))]
    return (u, v), best / target.size


def _best_addition(graph, target, rng):
    """Inter-H edge from the member with the lowest external-edge ratio.

    Members are tried in ascending ratio order (exact fraction compare,
    equal ratios shuffled by rng); the far endpoint is uniform among
    non-adjacent outsiders. Skips to the next member when one is already
    adjacent to every outsider.
    """
    h = target.members
    outside_total = graph.n - target.size
    if outside_total == 0:
        return None
    groups = {}
    for u in h:
        deg = graph.degree(u)
        ratio = Fraction(target.external[u], deg) if deg else Fraction(0)
        groups.setdefault(ratio, []).append(u)
    ordered = []
    for ratio in sorted(groups):
        block = sorted(groups[ratio])
        rng.shuffle(block)
        ordered.extend(block)
    for u in ordered:
        free = outside_total - sum(1 for w in graph.neighbors(u) if w not in h)
        if free == 0:
            continue
        r = rng.randrange(free)
        for w in range(graph.n):
            if w in h or graph.has_edge(u, w):
                continue
            if r == 0:
                gain = _ext_term_delta(
                    target.external[u], graph.degree(u), +1, +1
                ) / target.size
                return (u, w), gain
            r -= 1
    return None


def best_update_safeness(
    graph: Graph, target: TargetCommunity, rng: random.Random
) -> EdgeUpdate:
    """One greedy step: the update with the larger predicted safeness gain.

    The deletion candidate is the best non-bridge internal edge (so the
    hidden set never falls apart); the addition candidate is an outward
    edge from the least outward-connected member. Ties go to the deletion.
    """
    deletion = _best_deletion(graph, target, rng)
    addition = _best_addition(graph, target, rng)
    if deletion is None and addition is None:
        raise Exhausted("no legal safeness update touches the target community")
    if addition is None or (deletion is not None and deletion[1] >= addition[1]):
        (u, v), _ = deletion
        return EdgeUpdate.delete(u, v)
    (u, w), _ = addition
    return EdgeUpdate.add(u, w)


@dataclass(frozen=True)
class SafenessRun:
    graph: Graph
    updates: tuple
    truncated: bool
    target: TargetCommunity | None = None


def run_safgain(
    graph: Graph, target: TargetCommunity, budget: int, rng: random.Random
) -> SafenessRun:
    """Apply up to `budget` best safeness updates.

    Deletions are bridge-filtered, so the number of connected components
    of the subgraph induced by the target never changes.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    updates = []
    truncated = False
    for _ in range(budget):
        try:
            update = best_update_safeness(graph, target, rng)
        except Exhausted:
            truncated = True
            break
        graph = apply_update(graph, update)
        target = target.refresh_after_update(graph, update)
        updates.append(update)
    return SafenessRun(graph, tuple(updates), truncated, target)
