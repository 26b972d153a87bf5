"""Immutable simple graphs, standard families, graph operations and graph6 I/O."""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised on invalid graph construction or operation parameters."""


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Instances are immutable; every operation returns a new graph.
    """

    __slots__ = ("_n", "_nbrs", "_edges", "_degrees", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be >= 0, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        canon = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            canon.add((u, v))
            nbrs[u].add(v)
            nbrs[v].add(u)
        object.__setattr__(self, "_n", n)
        object.__setattr__(self, "_nbrs", tuple(frozenset(s) for s in nbrs))
        object.__setattr__(self, "_edges", tuple(sorted(canon)))
        object.__setattr__(self, "_degrees", tuple(len(s) for s in nbrs))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        return (Graph, (self._n, self._edges))

    @classmethod
    def from_adjacency(cls, adj) -> Graph:
        a = np.asarray(adj)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphError("adjacency matrix must be square")
        if not np.array_equal(a, a.T):
            raise GraphError("adjacency matrix must be symmetric")
        if np.any(np.diag(a) != 0):
            raise GraphError("adjacency matrix must have an empty diagonal")
        n = a.shape[0]
        return cls(n, [(u, v) for u in range(n) for v in range(u + 1, n) if a[u, v]])

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as ``(u, v)`` with ``u < v``, sorted lexicographically."""
        return self._edges

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def neighbors(self, v: int) -> frozenset[int]:
        return self._nbrs[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbrs[u]

    @property
    def max_degree(self) -> int:
        return max(self._degrees, default=0)

    @property
    def min_degree(self) -> int:
        return min(self._degrees, default=0)

    def degree_sequence(self) -> tuple[int, ...]:
        """Degrees sorted non-increasingly (d_1 >= ... >= d_n)."""
        return tuple(sorted(self._degrees, reverse=True))

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        a = np.zeros((self._n, self._n), dtype=dtype)
        for u, v in self._edges:
            a[u, v] = a[v, u] = 1
        return a

    def components(self) -> list[list[int]]:
        seen = [False] * self._n
        comps = []
        for s in range(self._n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._nbrs[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self._n >= 1 and len(self.components()) == 1

    def is_tree(self) -> bool:
        return self._n >= 1 and self.m == self._n - 1 and self.is_connected()

    def is_regular(self) -> bool:
        return len(set(self._degrees)) <= 1

    def is_path(self) -> bool:
        """True iff the graph is isomorphic to P_n."""
        return self.is_tree() and self.max_degree <= 2

    def bfs_distances(self, source: int) -> list[int]:
        """Distances from ``source``; -1 marks unreachable vertices."""
        dist = [-1] * self._n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self._nbrs[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def induced_subgraph(self, vertices: Sequence[int]) -> Graph:
        index = {v: i for i, v in enumerate(vertices)}
        return Graph(
            len(vertices),
            [(index[u], index[v]) for u, v in self._edges if u in index and v in index],
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self._n, self._edges)))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


# ----------------------------------------------------------------------
# Families
# ----------------------------------------------------------------------

FAMILIES = (
    "path", "cycle", "complete", "star", "complete_bipartite", "empty", "star_plus_edge",
)


def path_graph(n: int) -> Graph:
    _require(n >= 1, f"path needs n >= 1, got {n}")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    _require(n >= 3, f"cycle needs n >= 3, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    _require(n >= 1, f"complete graph needs n >= 1, got {n}")
    return Graph(n, combinations(range(n), 2))


def star_graph(n: int) -> Graph:
    """K_{1,n-1} with center 0."""
    _require(n >= 1, f"star needs n >= 1, got {n}")
    return Graph(n, [(0, i) for i in range(1, n)])


def complete_bipartite_graph(s: int, t: int) -> Graph:
    """K_{s,t} with parts ``0..s-1`` and ``s..s+t-1``."""
    _require(s >= 1 and t >= 1, f"complete bipartite needs s, t >= 1, got {s}, {t}")
    return Graph(s + t, [(i, s + j) for i in range(s) for j in range(t)])


def empty_graph(n: int) -> Graph:
    _require(n >= 1, f"empty graph needs n >= 1, got {n}")
    return Graph(n)


def star_plus_edge(n: int) -> Graph:
    """K^+_{1,n-1}: the star with center 0 plus the edge 12."""
    _require(n >= 3, f"star_plus_edge needs n >= 3, got {n}")
    return Graph(n, [(0, i) for i in range(1, n)] + [(1, 2)])


_BUILDERS = {
    "path": (path_graph, 1),
    "cycle": (cycle_graph, 1),
    "complete": (complete_graph, 1),
    "star": (star_graph, 1),
    "complete_bipartite": (complete_bipartite_graph, 2),
    "empty": (empty_graph, 1),
    "star_plus_edge": (star_plus_edge, 1),
}


def make_family(family: str, *params: int) -> Graph:
    try:
        builder, arity = _BUILDERS[family]
    except KeyError:
        raise GraphError(f"unknown family {family!r}; expected one of {FAMILIES}") from None
    if len(params) != arity:
        raise GraphError(f"family {family!r} takes {arity} parameter(s), got {len(params)}")
    return builder(*(int(p) for p in params))


def parse_family(text: str) -> Graph:
    """Parse ``name:p1[,p2]``, e.g. ``path:12`` or ``complete_bipartite:2,3``."""
    name, _, args = text.partition(":")
    if not args:
        raise GraphError(f"family spec {text!r} needs parameters, e.g. path:5")
    try:
        params = [int(a) for a in args.split(",")]
    except ValueError:
        raise GraphError(f"non-integer parameter in family spec {text!r}") from None
    return make_family(name.strip(), *params)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


# ----------------------------------------------------------------------
# Operations
# ----------------------------------------------------------------------

def complement(g: Graph) -> Graph:
    return Graph(g.n, [(u, v) for u, v in combinations(range(g.n), 2) if not g.has_edge(u, v)])


def line_graph(g: Graph) -> Graph:
    """Line graph; vertex i corresponds to ``g.edges[i]``."""
    if g.m == 0:
        raise GraphError("line graph of an edgeless graph is undefined")
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        incident[u].append(i)
        incident[v].append(i)
    edges = set()
    for inc in incident:
        edges.update(combinations(inc, 2))
    lg = Graph(g.m, edges)
    deg = g.degrees
    for i, (u, v) in enumerate(g.edges):
        if lg.degrees[i] != deg[u] + deg[v] - 2:
            raise AssertionError(f"line graph degree identity failed at edge {(u, v)}")
    return lg


def graph_power(g: Graph, k: int) -> Graph:
    """k-th power: u ~ v iff 1 <= dist(u, v) <= k."""
    _require(k >= 1, f"power needs k >= 1, got {k}")
    edges = []
    for u in range(g.n):
        dist = g.bfs_distances(u)
        edges.extend((u, v) for v in range(u + 1, g.n) if 1 <= dist[v] <= k)
    return Graph(g.n, edges)


def double_graph(g: Graph) -> Graph:
    """Double graph D(G); vertex v has twin v + n."""
    n = g.n
    edges = []
    for u, v in g.edges:
        edges += [(u, v), (u, v + n), (u + n, v), (u + n, v + n)]
    return Graph(2 * n, edges)


def p3_join_hnk(n: int, k: int) -> Graph:
    """H_{n,k} = P_3[(n-k-1)K_1, K_{k-1}, K_2].

    Vertices ``0..n-k-2`` form the independent part, the next ``k-1`` the
    middle clique, the final two the K_2.
    """
    _require(3 <= k <= n - 2, f"H_(n,k) needs 3 <= k <= n-2, got n={n}, k={k}")
    a = list(range(n - k - 1))
    b = list(range(n - k - 1, n - 2))
    c = [n - 2, n - 1]
    edges = list(combinations(b, 2)) + [(c[0], c[1])]
    edges += [(x, y) for x in a for y in b]
    edges += [(y, z) for y in b for z in c]
    return Graph(n, edges)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    return Graph(g.n + h.n, list(g.edges) + [(u + g.n, v + g.n) for u, v in h.edges])


def spanning_tree(g: Graph) -> Graph:
    """BFS spanning tree rooted at vertex 0."""
    if not g.is_connected():
        raise GraphError("spanning tree requires a connected graph")
    parent = [-1] * g.n
    parent[0] = 0
    queue = deque([0])
    edges = []
    while queue:
        u = queue.popleft()
        for w in sorted(g.neighbors(u)):
            if parent[w] < 0:
                parent[w] = u
                edges.append((u, w))
                queue.append(w)
    return Graph(g.n, edges)


def edge_boundary(g: Graph, subset: Iterable[int]) -> int:
    """Number of edges with exactly one endpoint in ``subset``."""
    members = set(subset)
    for v in members:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} not in graph of order {g.n}")
    return sum((u in members) != (v in members) for u, v in g.edges)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise GraphError(msg)


# ----------------------------------------------------------------------
# graph6 and adjacency-list text formats
# ----------------------------------------------------------------------

class Graph6Error(GraphError):
    pass


def graph6_encode(g: Graph) -> str:
    n = g.n
    if n >= 63:
        raise Graph6Error(f"graph6 encoding supports n < 63, got n={n}")
    bits = [1 if g.has_edge(u, v) else 0 for v in range(1, n) for u in range(v)]
    bits += [0] * (-len(bits) % 6)
    chars = [chr(n + 63)]
    for i in range(0, len(bits), 6):
        value = 0
        for b in bits[i:i + 6]:
            value = (value << 1) | b
        chars.append(chr(value + 63))
    return "".join(chars)


def graph6_decode(text: str) -> Graph:
    s = text.strip("\r\n")
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string")
    codes = [ord(c) - 63 for c in s]
    for c, value in zip(s, codes):
        if not 0 <= value <= 63:
            raise Graph6Error(f"character {c!r} outside graph6 range 63..126")
    n = codes[0]
    if n == 63:
        raise Graph6Error("multi-byte graph6 size field (n >= 63) is not supported")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    payload = codes[1:]
    if len(payload) < need:
        raise Graph6Error(f"truncated graph6 payload: need {need} bytes, got {len(payload)}")
    if len(payload) > need:
        raise Graph6Error(f"trailing data after graph6 payload: {s[1 + need:]!r}")
    edges = []
    pos = 0
    for v in range(1, n):
        for u in range(v):
            if (payload[pos // 6] >> (5 - pos % 6)) & 1:
                edges.append((u, v))
            pos += 1
    if nbits % 6 and payload[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise Graph6Error("non-zero padding bits in graph6 payload")
    return Graph(n, edges)


def read_graph6(path) -> Iterator[Graph]:
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                yield graph6_decode(line)
            except Graph6Error as exc:
                raise Graph6Error(f"{path}:{lineno}: {exc}") from None


def write_graph6(path, graphs: Iterable[Graph]) -> int:
    count = 0
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for g in graphs:
            fh.write(graph6_encode(g) + "\n")
            count += 1
    return count


def parse_adjacency_text(text: str) -> Graph:
    """Parse ``n`` on the first line followed by one ``u v`` edge per line."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty adjacency file")
    ln = lines[0]
    try:
        n = int(ln)
        edges = []
        for ln in lines[1:]:
            u, v = ln.split()
            edges.append((int(u), int(v)))
    except ValueError:
        raise GraphError(f"malformed adjacency line near {ln!r}") from None
    return Graph(n, edges)


def format_adjacency_text(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges]) + "\n"
