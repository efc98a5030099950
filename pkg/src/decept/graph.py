"""Undirected simple-graph storage and edge-update primitives.

Nodes are dense integers 0..n-1. Graph values are immutable snapshots:
applying an update returns a new Graph that shares untouched adjacency
rows with the original, so snapshots are cheap and safe to share across
threads.
"""

from bisect import bisect_left, insort
from dataclasses import dataclass
from enum import Enum

from .errors import (
    EdgeAbsent,
    EdgeAlreadyPresent,
    NotAMember,
    SelfLoop,
    UnknownNode,
)

class UpdateKind(str, Enum):
    ADD = "add"
    DEL = "del"


@dataclass(frozen=True)
class EdgeUpdate:
    """A single tagged edge change; endpoints are an unordered pair."""

    kind: UpdateKind
    u: int
    v: int

    def __post_init__(self):
        if self.u == self.v:
            raise SelfLoop(f"update endpoints coincide: {self.u}")
        if self.u > self.v:
            lo, hi = self.v, self.u
            object.__setattr__(self, "u", lo)
            object.__setattr__(self, "v", hi)

    @staticmethod
    def add(u: int, v: int) -> "EdgeUpdate":
        return EdgeUpdate(UpdateKind.ADD, u, v)

    @staticmethod
    def delete(u: int, v: int) -> "EdgeUpdate":
        return EdgeUpdate(UpdateKind.DEL, u, v)

    @property
    def is_add(self) -> bool:
        return self.kind is UpdateKind.ADD

    def inverse(self) -> "EdgeUpdate":
        kind = UpdateKind.DEL if self.is_add else UpdateKind.ADD
        return EdgeUpdate(kind, self.u, self.v)

    def __str__(self):
        return f"{self.kind.value}:{self.u}-{self.v}"


class Graph:
    """Immutable undirected simple graph with sorted neighbor lists."""

    __slots__ = ("_nbrs", "_m")

    def __init__(self, n: int, edges=()):
        nbrs = [[] for _ in range(n)]
        m = 0
        for u, v in edges:
            self._check_pair(n, u, v)
            pos = bisect_left(nbrs[u], v)
            if pos < len(nbrs[u]) and nbrs[u][pos] == v:
                raise EdgeAlreadyPresent(f"duplicate edge ({u}, {v})")
            nbrs[u].insert(pos, v)
            insort(nbrs[v], u)
            m += 1
        self._nbrs = [tuple(row) for row in nbrs]
        self._m = m

    @staticmethod
    def _check_pair(n, u, v):
        if not (0 <= u < n) or not (0 <= v < n):
            raise UnknownNode(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")

    @classmethod
    def _from_rows(cls, rows, m):
        g = object.__new__(cls)
        g._nbrs = rows
        g._m = m
        return g

    @property
    def n(self) -> int:
        return len(self._nbrs)

    @property
    def m(self) -> int:
        return self._m

    def check_node(self, u: int):
        if not (0 <= u < len(self._nbrs)):
            raise UnknownNode(f"node {u} outside 0..{len(self._nbrs) - 1}")

    def degree(self, u: int) -> int:
        self.check_node(u)
        return len(self._nbrs[u])

    def neighbors(self, u: int) -> tuple:
        self.check_node(u)
        return self._nbrs[u]

    def has_edge(self, u: int, v: int) -> bool:
        self.check_node(u)
        self.check_node(v)
        row = self._nbrs[u]
        pos = bisect_left(row, v)
        return pos < len(row) and row[pos] == v

    def edges(self):
        """Iterate edges as (u, v) with u < v, in ascending order."""
        for u, row in enumerate(self._nbrs):
            for v in row:
                if v > u:
                    yield (u, v)

    def __eq__(self, other):
        return isinstance(other, Graph) and self._nbrs == other._nbrs

    def __hash__(self):
        return hash(tuple(self._nbrs))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def apply_update(graph: Graph, update: EdgeUpdate) -> Graph:
    """Return a new graph with one edge added or deleted.

    The input graph is never modified; untouched adjacency rows are shared
    between the two snapshots.
    """
    u, v = update.u, update.v
    graph.check_node(u)
    graph.check_node(v)
    present = graph.has_edge(u, v)
    if update.is_add and present:
        raise EdgeAlreadyPresent(f"edge ({u}, {v}) already present")
    if not update.is_add and not present:
        raise EdgeAbsent(f"edge ({u}, {v}) not present")

    rows = list(graph._nbrs)
    for a, b in ((u, v), (v, u)):
        row = list(rows[a])
        pos = bisect_left(row, b)
        if update.is_add:
            row.insert(pos, b)
        else:
            del row[pos]
        rows[a] = tuple(row)
    delta = 1 if update.is_add else -1
    return Graph._from_rows(rows, graph.m + delta)


def connected_components(graph: Graph, subset) -> list:
    """Split `subset` into maximal groups mutually reachable inside it.

    Only edges with both endpoints in `subset` count. Components are
    returned ordered by their smallest member.
    """
    members = set(subset)
    for u in members:
        graph.check_node(u)
    seen = set()
    components = []
    for start in sorted(members):
        if start in seen:
            continue
        comp = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for y in graph.neighbors(x):
                if y in members and y not in comp:
                    comp.add(y)
                    frontier.append(y)
        seen |= comp
        components.append(comp)
    return components


def reachable_within(graph: Graph, members, u: int) -> set:
    """Nodes of `members` reachable from `u` via members only, excluding u."""
    members = set(members)
    graph.check_node(u)
    if u not in members:
        raise NotAMember(f"node {u} not in the target set")
    comp = {u}
    frontier = [u]
    while frontier:
        x = frontier.pop()
        for y in graph.neighbors(x):
            if y in members and y not in comp:
                comp.add(y)
                frontier.append(y)
    comp.discard(u)
    return comp


def induced_bridges(graph: Graph, members) -> set:
    """Edges of the subgraph induced by `members` whose removal splits it.

    Returns edges as (u, v) pairs with u < v. Classic lowpoint search,
    iterative to survive deep paths.
    """
    members = set(members)
    for u in members:
        graph.check_node(u)
    order = {}
    low = {}
    bridges = set()
    counter = 0
    for root in sorted(members):
        if root in order:
            continue
        stack = [(root, None, iter(graph.neighbors(root)))]
        order[root] = low[root] = counter
        counter += 1
        while stack:
            x, parent, it = stack[-1]
            advanced = False
            for y in it:
                if y not in members:
                    continue
                if y not in order:
                    order[y] = low[y] = counter
                    counter += 1
                    stack.append((y, x, iter(graph.neighbors(y))))
                    advanced = True
                    break
                elif y != parent:
                    low[x] = min(low[x], order[y])
            if not advanced:
                stack.pop()
                if parent is not None:
                    low[parent] = min(low[parent], low[x])
                    if low[x] > order[parent]:
                        bridges.add((min(x, parent), max(x, parent)))
    return bridges
