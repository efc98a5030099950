"""Community assignments and the cached aggregates modularity consumes.

A Partition stores, besides the node -> community map, the quantities the
closed-form update rules need: per-community degree, per-community intra
edge counts, their totals eta (sum of intra edges) and delta (sum of
squared community degrees), and the edge count m of the graph it was built
against. All of them refresh in O(1) per edge update.
"""

from dataclasses import dataclass, field

from .errors import NotAMember, NotAPartition, TargetTooSmall, UnknownNode
from .graph import EdgeUpdate, Graph, connected_components


@dataclass(frozen=True)
class Partition:
    membership: tuple          # node -> community index
    communities: tuple         # tuple of frozensets
    community_degree: tuple    # deg(C_i) = sum of member degrees
    intra_edges: tuple         # |E(C_i)| edges with both ends in C_i
    eta: int                   # sum_i |E(C_i)|
    delta: int                 # sum_i deg(C_i)^2
    m: int                     # edge count of the underlying graph

    @property
    def k(self) -> int:
        return len(self.communities)

    def community_of(self, u: int) -> int:
        if not (0 <= u < len(self.membership)):
            raise UnknownNode(f"node {u} outside 0..{len(self.membership) - 1}")
        return self.membership[u]

    def index_of_set(self, members) -> int | None:
        """Community index whose node set equals `members`, else None."""
        members = frozenset(members)
        for i, c in enumerate(self.communities):
            if c == members:
                return i
        return None


def build_partition(graph: Graph, communities) -> Partition:
    """Materialize a Partition with all aggregates computed from scratch."""
    comms = [frozenset(c) for c in communities]
    membership = [-1] * graph.n
    for i, comm in enumerate(comms):
        if not comm:
            raise NotAPartition(f"community {i} is empty")
        for u in comm:
            if not (0 <= u < graph.n):
                raise UnknownNode(f"node {u} outside 0..{graph.n - 1}")
            if membership[u] != -1:
                raise NotAPartition(f"node {u} assigned twice")
            membership[u] = i
    if any(c == -1 for c in membership):
        missing = [u for u, c in enumerate(membership) if c == -1]
        raise NotAPartition(f"nodes not covered: {missing[:10]}")

    degree = [0] * len(comms)
    intra = [0] * len(comms)
    for u in range(graph.n):
        degree[membership[u]] += graph.degree(u)
    for u, v in graph.edges():
        if membership[u] == membership[v]:
            intra[membership[u]] += 1
    return Partition(
        membership=tuple(membership),
        communities=tuple(comms),
        community_degree=tuple(degree),
        intra_edges=tuple(intra),
        eta=sum(intra),
        delta=sum(d * d for d in degree),
        m=graph.m,
    )


def refresh_after_update(partition: Partition, graph_after: Graph, update: EdgeUpdate) -> Partition:
    """Incrementally update the aggregates after one edge change.

    Membership never changes during a deception run; only the cached
    counters move. The result equals build_partition(graph_after, same
    communities).
    """
    ci = partition.community_of(update.u)
    cj = partition.community_of(update.v)
    step = 1 if update.is_add else -1

    degree = list(partition.community_degree)
    intra = list(partition.intra_edges)
    delta = partition.delta
    eta = partition.eta

    if ci == cj:
        delta -= degree[ci] * degree[ci]
        degree[ci] += 2 * step
        delta += degree[ci] * degree[ci]
        intra[ci] += step
        eta += step
    else:
        for c in (ci, cj):
            delta -= degree[c] * degree[c]
            degree[c] += step
            delta += degree[c] * degree[c]

    return Partition(
        membership=partition.membership,
        communities=partition.communities,
        community_degree=tuple(degree),
        intra_edges=tuple(intra),
        eta=eta,
        delta=delta,
        m=partition.m + step,
    )


@dataclass(frozen=True)
class TargetCommunity:
    """The node set to hide, with the counters the safeness rules read.

    internal[u] = |E(u, H)|, edges from u to other members;
    external[u] = number of u's edges leaving H;
    components  = connected components of the subgraph induced by H.
    """

    members: frozenset
    internal: dict = field(compare=False)
    external: dict = field(compare=False)
    components: tuple = field(compare=False)

    @staticmethod
    def from_graph(graph: Graph, members) -> "TargetCommunity":
        mset = frozenset(members)
        if len(mset) < 2:
            raise TargetTooSmall(f"target has {len(mset)} member(s); need >= 2")
        for u in mset:
            graph.check_node(u)
        internal = {}
        external = {}
        for u in mset:
            inside = sum(1 for w in graph.neighbors(u) if w in mset)
            internal[u] = inside
            external[u] = graph.degree(u) - inside
        comps = tuple(frozenset(c) for c in connected_components(graph, mset))
        return TargetCommunity(mset, internal, external, comps)

    @property
    def size(self) -> int:
        return len(self.members)

    def component_of(self, u: int) -> frozenset:
        for comp in self.components:
            if u in comp:
                return comp
        raise NotAMember(f"node {u} not in the target set")

    def refresh_after_update(self, graph_after: Graph, update: EdgeUpdate) -> "TargetCommunity":
        """Recompute the member counters touched by one applied update."""
        u, v = update.u, update.v
        in_u, in_v = u in self.members, v in self.members
        if not (in_u or in_v):
            return self
        step = 1 if update.is_add else -1
        internal = dict(self.internal)
        external = dict(self.external)
        if in_u and in_v:
            internal[u] += step
            internal[v] += step
            comps = tuple(
                frozenset(c) for c in connected_components(graph_after, self.members)
            )
        else:
            inside = u if in_u else v
            external[inside] += step
            comps = self.components
        return TargetCommunity(self.members, internal, external, comps)
