"""Simple undirected graphs: parsing, standard families and vertex connectivity.

Nodes are labelled ``1..n`` everywhere; edges are stored as sorted pairs.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field

from .errors import GraphError, GraphParseError


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]
    _adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError(f"node count must be positive, got {self.n}")
        norm = set()
        for i, j in self.edges:
            if i == j:
                raise GraphError(f"self-loop at node {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise GraphError(f"edge ({i}, {j}) out of range 1..{self.n}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))
        adj = [set() for _ in range(self.n + 1)]
        for i, j in norm:
            adj[i].add(j)
            adj[j].add(i)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_edges(cls, n, edges):
        edges = list(edges)
        seen = set()
        for i, j in edges:
            key = (min(i, j), max(i, j))
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, frozenset(edges))

    @property
    def nodes(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, i: int) -> frozenset[int]:
        return self._adj[i]

    def degree(self, i: int) -> int:
        return len(self._adj[i])

    def has_edge(self, i: int, j: int) -> bool:
        return j in self._adj[i]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def non_edges(self) -> list[tuple[int, int]]:
        """Pairs ``(i, j)``, ``i < j``, that are not edges (the complement's edge set)."""
        return [
            (i, j)
            for i in range(1, self.n + 1)
            for j in range(i + 1, self.n + 1)
            if j not in self._adj[i]
        ]

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def is_connected(self, removed=()) -> bool:
        return len(components(self, removed)) <= 1

    def to_text(self) -> str:
        lines = [f"{self.n} {len(self.edges)}"]
        lines += [f"{i} {j}" for i, j in self.sorted_edges()]
        return "\n".join(lines) + "\n"


def components(g: Graph, removed=()) -> list[list[int]]:
    """Connected components of ``g`` minus the ``removed`` nodes, in order of smallest member."""
    removed = set(removed)
    seen = set(removed)
    comps = []
    for start in g.nodes:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in sorted(g.neighbors(u)):
                if v not in seen:
                    seen.add(v)
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


# -- parsing ---------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: header ``n m`` then ``m`` lines ``i j``.

    Lines starting with ``#`` and blank lines are skipped.
    """
    rows = []
    for lineno, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line))
    if not rows:
        raise GraphParseError("malformed", 0, "missing header line 'n m'")

    lineno, header = rows[0]
    n, m = _two_ints(lineno, header)
    if n < 1 or m < 0:
        raise GraphParseError("malformed", lineno, f"invalid header {header!r}")
    body = rows[1:]
    if len(body) != m:
        raise GraphParseError(
            "edge_count", lineno, f"header announces {m} edges, found {len(body)}"
        )

    seen = set()
    for lineno, line in body:
        i, j = _two_ints(lineno, line)
        if i == j:
            raise GraphParseError("self_loop", lineno, f"self-loop at node {i}")
        if not (1 <= i <= n and 1 <= j <= n):
            raise GraphParseError(
                "out_of_range", lineno, f"node index out of range 1..{n} in {line!r}"
            )
        key = (min(i, j), max(i, j))
        if key in seen:
            raise GraphParseError("duplicate_edge", lineno, f"duplicate edge {i} {j}")
        seen.add(key)
    return Graph(n, frozenset(seen))


def _two_ints(lineno, line):
    parts = line.split()
    if len(parts) != 2:
        raise GraphParseError("malformed", lineno, f"expected two integers, got {line!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphParseError(
            "malformed", lineno, f"expected two integers, got {line!r}"
        ) from None


# -- families --------------------------------------------------------------

FAMILIES = ("cycle", "path", "complete", "complete_bipartite", "circulant")


def generate(kind: str, params) -> Graph:
    """Build a graph from a named family.

    ``cycle n`` (n >= 3), ``path n`` (n >= 2), ``complete n`` (n >= 2),
    ``complete_bipartite a b`` (a, b >= 1) and ``circulant n k`` (1 <= k < n/2),
    where node ``i`` of the circulant is joined to ``i±1, ..., i±k`` mod n.
    """
    params = [int(p) for p in params]

    def need(count):
        if len(params) != count:
            raise GraphError(f"{kind} takes {count} parameter(s), got {len(params)}")

    if kind == "cycle":
        need(1)
        (n,) = params
        if n < 3:
            raise GraphError("cycle needs n >= 3")
        return Graph(n, frozenset((i, i % n + 1) for i in range(1, n + 1)))
    if kind == "path":
        need(1)
        (n,) = params
        if n < 2:
            raise GraphError("path needs n >= 2")
        return Graph(n, frozenset((i, i + 1) for i in range(1, n)))
    if kind == "complete":
        need(1)
        (n,) = params
        if n < 2:
            raise GraphError("complete needs n >= 2")
        return Graph(n, frozenset(itertools.combinations(range(1, n + 1), 2)))
    if kind == "complete_bipartite":
        need(2)
        a, b = params
        if a < 1 or b < 1:
            raise GraphError("complete_bipartite needs a, b >= 1")
        return Graph(
            a + b,
            frozenset((i, j) for i in range(1, a + 1) for j in range(a + 1, a + b + 1)),
        )
    if kind == "circulant":
        need(2)
        n, k = params
        if not (1 <= k and 2 * k < n):
            raise GraphError("circulant(n, k) needs 1 <= k < n/2")
        edges = set()
        for i in range(n):
            for d in range(1, k + 1):
                j = (i + d) % n
                edges.add((min(i, j) + 1, max(i, j) + 1))
        return Graph(n, frozenset(edges))
    raise GraphError(f"unknown family {kind!r}; choose from {', '.join(FAMILIES)}")


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdős–Rényi G(n, p) from a seeded ``random.Random``."""
    rng = random.Random(seed)
    return Graph(
        n,
        frozenset(e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < p),
    )


# -- vertex connectivity ---------------------------------------------------


class _SplitNetwork:
    """Node-split flow network: node v becomes v_in=2v -> v_out=2v+1 with capacity 1."""

    def __init__(self, g: Graph, s: int, t: int):
        big = g.n + 1
        self.cap: dict[int, dict[int, int]] = {u: {} for u in range(2, 2 * g.n + 2)}
        for v in g.nodes:
            self._arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
        for i, j in g.edges:
            self._arc(2 * i + 1, 2 * j, big)
            self._arc(2 * j + 1, 2 * i, big)
        self.order = {u: sorted(nbrs) for u, nbrs in self.cap.items()}
        self.source = 2 * s + 1
        self.sink = 2 * t

    def _arc(self, u, v, c):
        self.cap[u][v] = self.cap[u].get(v, 0) + c
        self.cap[v].setdefault(u, 0)

    def _augmenting_path(self):
        parent = {self.source: None}
        queue = deque([self.source])
        while queue:
            u = queue.popleft()
            for v in self.order[u]:
                if v not in parent and self.cap[u][v] > 0:
                    parent[v] = u
                    if v == self.sink:
                        return parent
                    queue.append(v)
        return None

    def max_flow(self, limit=None) -> int:
        """Edmonds–Karp with unit augmentations; stops early once ``limit`` is reached."""
        flow = 0
        while limit is None or flow < limit:
            parent = self._augmenting_path()
            if parent is None:
                break
            v = self.sink
            while parent[v] is not None:
                u = parent[v]
                self.cap[u][v] -= 1
                self.cap[v][u] += 1
                v = u
            flow += 1
        return flow

    def source_side(self) -> set[int]:
        seen = {self.source}
        queue = deque([self.source])
        while queue:
            u = queue.popleft()
            for v in self.order[u]:
                if v not in seen and self.cap[u][v] > 0:
                    seen.add(v)
                    queue.append(v)
        return seen


def _candidate_pairs(g: Graph):
    # Any minimum separator either misses node 1 (so node 1 and some non-neighbour
    # lie on opposite sides) or contains it (so two of its neighbours do).
    s = 1
    for t in g.nodes:
        if t != s and not g.has_edge(s, t):
            yield s, t
    nbrs = sorted(g.neighbors(s))
    for a, b in itertools.combinations(nbrs, 2):
        if not g.has_edge(a, b):
            yield a, b


def local_connectivity(g: Graph, s: int, t: int, limit=None) -> int:
    """Maximum number of internally node-disjoint s-t paths, for non-adjacent s, t."""
    if g.has_edge(s, t):
        raise GraphError(f"nodes {s} and {t} are adjacent")
    return _SplitNetwork(g, s, t).max_flow(limit)


def _min_pair(g: Graph):
    best, best_pair = g.n - 1, None
    for s, t in _candidate_pairs(g):
        k = local_connectivity(g, s, t, limit=best)
        if k < best:
            best, best_pair = k, (s, t)
            if best == 0:
                break
    return best, best_pair


def vertex_connectivity(g: Graph) -> int:
    """Vertex connectivity: ``n - 1`` for complete graphs, else the minimum separator size."""
    if g.n < 2:
        raise GraphError("vertex connectivity needs n >= 2")
    if g.is_complete():
        return g.n - 1
    return _min_pair(g)[0]


def brute_force_connectivity(g: Graph) -> int:
    """Exhaustive oracle for :func:`vertex_connectivity` (n <= 12)."""
    if g.n < 2:
        raise GraphError("vertex connectivity needs n >= 2")
    if g.n > 12:
        raise GraphError(f"brute force limited to n <= 12, got n = {g.n}")
    if g.is_complete():
        return g.n - 1
    for size in range(0, g.n - 1):
        for removed in itertools.combinations(g.nodes, size):
            if len(components(g, removed)) >= 2:
                return size
    raise AssertionError("unreachable: incomplete graphs have a separator of size n - 2")


@dataclass(frozen=True)
class Separator:
    nodes: tuple[int, ...]
    part1: tuple[int, ...]
    part2: tuple[int, ...]


def min_separator(g: Graph) -> Separator:
    """A minimum vertex separator and a split of the remaining nodes into two sides
    with no edge between them."""
    if g.n < 3:
        raise GraphError("min_separator needs n >= 3")
    if g.is_complete():
        raise GraphError("complete graphs have no vertex separator")
    k, (s, t) = _min_pair(g)
    net = _SplitNetwork(g, s, t)
    net.max_flow()
    reach = net.source_side()
    sep = sorted(v for v in g.nodes if 2 * v in reach and 2 * v + 1 not in reach)
    assert len(sep) == k, (sep, k)
    comps = components(g, sep)
    first = next(c for c in comps if s in c)
    part1 = tuple(first)
    part2 = tuple(v for c in comps if c is not first for v in c)
    return Separator(tuple(sep), part1, tuple(sorted(part2)))
