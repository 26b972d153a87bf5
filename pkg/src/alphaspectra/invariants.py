"""Exact combinatorial invariants: Zagreb index, matching number, nullity,
independence and chromatic numbers, bipartition, packings."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graph import Graph

EXPONENTIAL_GUARD = 24


class SizeGuardError(ValueError):
    pass


def zagreb_index(g: Graph) -> int:
    return sum(d * d for d in g.degrees)


def zagreb_sandwich(g: Graph) -> tuple[Fraction, Fraction]:
    """Exact lower and upper Zagreb bounds 4m^2/n + (D-d)^2/2 and 4m^2/n + n(D-d)^2/4."""
    n, m = g.n, g.m
    spread = g.max_degree - g.min_degree
    base = Fraction(4 * m * m, n)
    return base + Fraction(spread * spread, 2), base + Fraction(n * spread * spread, 4)


def bipartition(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two-colouring (X, Y) with the lowest vertex of each component in X, or None."""
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return None
    x = tuple(v for v in range(g.n) if side[v] == 0)
    y = tuple(v for v in range(g.n) if side[v] == 1)
    return x, y


# ----------------------------------------------------------------------
# Matching
# ----------------------------------------------------------------------

def maximum_matching(g: Graph) -> list[tuple[int, int]]:
    """Maximum cardinality matching by Edmonds' blossom algorithm."""
    n = g.n
    adj = [sorted(g.neighbors(v)) for v in range(n)]
    match = [-1] * n

    # greedy warm start
    for u, v in g.edges:
        if match[u] < 0 and match[v] < 0:
            match[u], match[v] = v, u

    def lca(a: int, b: int, base: list[int], parent: list[int]) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] < 0:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int, base, parent, in_blossom) -> None:
        while base[v] != b:
            in_blossom[base[v]] = in_blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_path(root: int) -> tuple[int, list[int]]:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] >= 0 and parent[match[to]] >= 0):
                    cur = lca(v, to, base, parent)
                    in_blossom = [False] * n
                    mark_path(v, cur, to, base, parent, in_blossom)
                    mark_path(to, cur, v, base, parent, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] < 0:
                    parent[to] = v
                    if match[to] < 0:
                        return to, parent
                    used[match[to]] = True
                    queue.append(match[to])
        return -1, parent

    for root in range(n):
        if match[root] >= 0:
            continue
        v, parent = find_path(root)
        # flip the augmenting path found by the search
        while v >= 0:
            pv = parent[v]
            ppv = match[pv]
            match[v], match[pv] = pv, v
            v = ppv
    return [(u, match[u]) for u in range(n) if match[u] > u]


def matching_number(g: Graph) -> int:
    return len(maximum_matching(g))


# ----------------------------------------------------------------------
# Nullity
# ----------------------------------------------------------------------

def integer_rank(a: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    mat = [list(map(int, row)) for row in a]
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    rank = 0
    prev = 1
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if mat[r][c] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        p = mat[rank][c]
        for r in range(rank + 1, rows):
            factor = mat[r][c]
            row_r, row_p = mat[r], mat[rank]
            for j in range(c + 1, cols):
                row_r[j] = (p * row_r[j] - factor * row_p[j]) // prev
            row_r[c] = 0
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def nullity(g: Graph) -> int:
    """Multiplicity of 0 in the adjacency spectrum, n - rank(A), exactly."""
    if g.n == 0:
        return 0
    return g.n - integer_rank(g.adjacency_matrix().tolist())


# ----------------------------------------------------------------------
# Independence and chromatic numbers
# ----------------------------------------------------------------------

def _guard(g: Graph) -> None:
    if g.n > EXPONENTIAL_GUARD:
        raise SizeGuardError(f"exact search limited to n <= {EXPONENTIAL_GUARD}, got n={g.n}")


def _masks(g: Graph) -> list[int]:
    return [sum(1 << w for w in g.neighbors(v)) for v in range(g.n)]


def maximum_independent_set(g: Graph) -> list[int]:
    """A maximum independent set by branch and bound on vertex bitmasks."""
    _guard(g)
    nbr = _masks(g)
    best = [0, 0]  # size, mask

    def popcount(x: int) -> int:
        return bin(x).count("1")

    def search(cand: int, chosen: int, size: int) -> None:
        # forced picks: vertices with at most one neighbour among candidates
        while True:
            forced = 0
            c = cand
            while c:
                v = (c & -c).bit_length() - 1
                c &= c - 1
                if popcount(nbr[v] & cand) <= 1:
                    forced = v + 1
                    break
            if not forced:
                break
            v = forced - 1
            chosen |= 1 << v
            size += 1
            cand &= ~((1 << v) | nbr[v])
        if size + popcount(cand) <= best[0]:
            return
        if not cand:
            best[0], best[1] = size, chosen
            return
        # branch on the candidate of largest residual degree
        v, deg = -1, -1
        c = cand
        while c:
            u = (c & -c).bit_length() - 1
            c &= c - 1
            du = popcount(nbr[u] & cand)
            if du > deg:
                v, deg = u, du
        search(cand & ~((1 << v) | nbr[v]), chosen | (1 << v), size + 1)
        search(cand & ~(1 << v), chosen, size)

    search((1 << g.n) - 1, 0, 0)
    return [v for v in range(g.n) if best[1] >> v & 1]


def independence_number(g: Graph) -> int:
    return len(maximum_independent_set(g))


def _colorable(nbr: list[int], n: int, k: int) -> list[int] | None:
    """Backtracking k-colouring with DSATUR-style vertex choice."""
    colors = [-1] * n
    used = [0] * n  # bitmask of colours seen in the neighbourhood

    def pick() -> int:
        best, key = -1, (-1, -1)
        for v in range(n):
            if colors[v] < 0:
                kv = (bin(used[v]).count("1"), bin(nbr[v]).count("1"))
                if kv > key:
                    best, key = v, kv
        return best

    def solve(remaining: int, top: int) -> bool:
        if remaining == 0:
            return True
        v = pick()
        # symmetry breaking: at most one fresh colour beyond those already used
        for c in range(min(k, top + 1)):
            if used[v] >> c & 1:
                continue
            colors[v] = c
            touched = []
            w_mask = nbr[v]
            while w_mask:
                w = (w_mask & -w_mask).bit_length() - 1
                w_mask &= w_mask - 1
                if colors[w] < 0 and not used[w] >> c & 1:
                    used[w] |= 1 << c
                    touched.append(w)
            if solve(remaining - 1, max(top, c + 1)):
                return True
            for w in touched:
                used[w] &= ~(1 << c)
            colors[v] = -1
        return False

    return colors if solve(n, 0) else None


def greedy_clique(g: Graph, allowed: set[int] | None = None) -> list[int]:
    """A maximal clique grown greedily from the highest-degree allowed vertex."""
    verts = set(range(g.n)) if allowed is None else set(allowed)
    if not verts:
        return []
    start = max(sorted(verts), key=lambda v: len(g.neighbors(v) & verts))
    clique = [start]
    cand = g.neighbors(start) & verts
    while cand:
        v = max(sorted(cand), key=lambda u: len(g.neighbors(u) & cand))
        clique.append(v)
        cand = cand & g.neighbors(v)
    return sorted(clique)


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by iterative deepening on k-colourability."""
    _guard(g)
    if g.n == 0:
        return 0
    if g.m == 0:
        return 1
    nbr = _masks(g)
    k = max(2, len(greedy_clique(g)))
    while _colorable(nbr, g.n, k) is None:
        k += 1
    return k


def coloring(g: Graph, k: int) -> list[int] | None:
    _guard(g)
    return _colorable(_masks(g), g.n, k)


# ----------------------------------------------------------------------
# Forbidden subgraphs
# ----------------------------------------------------------------------

def is_k3_free_and_c4_free(g: Graph) -> bool:
    """No triangle and no 4-cycle, read off the entries of A^2."""
    a = g.adjacency_matrix()
    a2 = a @ a
    np.fill_diagonal(a2, 0)
    if np.any(a2[a == 1] >= 1):
        return False
    return not np.any(a2 >= 2)


# ----------------------------------------------------------------------
# Packings
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CliquePacking:
    cliques: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.cliques)


@dataclass(frozen=True)
class CyclePacking:
    """Vertex-disjoint induced even cycles, stored longest first."""

    cycles: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.cycles)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)


def find_clique_packing(g: Graph, min_size: int = 2) -> CliquePacking:
    remaining = set(range(g.n))
    cliques = []
    while remaining:
        clique = greedy_clique(g, remaining)
        if len(clique) < min_size:
            break
        cliques.append(tuple(clique))
        remaining -= set(clique)
    return CliquePacking(tuple(cliques))


def _induced_even_cycle(g: Graph, allowed: set[int], budget: int = 200_000) -> tuple[int, ...] | None:
    """Some induced even cycle inside ``allowed`` (shortest start vertex first)."""
    steps = 0
    for s in sorted(allowed):
        # paths s = p0, p1, ..., each new vertex adjacent only to its predecessor
        # (and possibly s when closing); vertices below s are skipped to avoid repeats
        stack = [(s, [s])]
        while stack:
            steps += 1
            if steps > budget:
                return None
            v, path = stack.pop()
            on_path = set(path)
            for w in sorted(g.neighbors(v) & allowed):
                if w <= s or w in on_path:
                    continue
                inner = g.neighbors(w) & on_path
                if len(path) >= 3 and inner == {v, s}:
                    cyc = path + [w]
                    if len(cyc) % 2 == 0:
                        return tuple(cyc)
                    continue
                if inner == {v}:
                    stack.append((w, path + [w]))
    return None


def find_even_cycle_packing(g: Graph) -> CyclePacking:
    remaining = set(range(g.n))
    cycles = []
    while True:
        cyc = _induced_even_cycle(g, remaining)
        if cyc is None:
            break
        cycles.append(cyc)
        remaining -= set(cyc)
    cycles.sort(key=len, reverse=True)
    return CyclePacking(tuple(cycles))


def validate_packing(g: Graph, packing: CliquePacking | CyclePacking) -> tuple[bool, str | None]:
    """Exact certificate check; returns (ok, reason) with reason in
    {'overlap', 'not-induced', 'odd-length', 'too-small', 'out-of-range', 'unsorted'}."""
    groups = packing.cliques if isinstance(packing, CliquePacking) else packing.cycles
    seen: set[int] = set()
    for grp in groups:
        if any(not 0 <= v < g.n for v in grp):
            return False, "out-of-range"
        if len(set(grp)) != len(grp) or seen & set(grp):
            return False, "overlap"
        seen |= set(grp)
    if isinstance(packing, CliquePacking):
        for clique in groups:
            if len(clique) < 2:
                return False, "too-small"
            if any(not g.has_edge(u, v) for i, u in enumerate(clique) for v in clique[i + 1:]):
                return False, "not-induced"
        return True, None
    for cyc in groups:
        if len(cyc) < 4:
            return False, "too-small"
        if len(cyc) % 2:
            return False, "odd-length"
        k = len(cyc)
        ring = {frozenset((cyc[i], cyc[(i + 1) % k])) for i in range(k)}
        for i, u in enumerate(cyc):
            for v in cyc[i + 1:]:
                if g.has_edge(u, v) != (frozenset((u, v)) in ring):
                    return False, "not-induced"
    if [len(c) for c in groups] != sorted((len(c) for c in groups), reverse=True):
        return False, "unsorted"
    return True, None


# ----------------------------------------------------------------------
# Bundle
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantBundle:
    n: int
    m: int
    delta_max: int
    delta_min: int
    z1: int
    beta: int
    eta: int
    theta: int | None
    chi: int | None
    bipartition: tuple[tuple[int, ...], tuple[int, ...]] | None
    is_regular: bool
    regular_degree: int | None
    is_connected: bool

    @property
    def is_bipartite(self) -> bool:
        return self.bipartition is not None

    @property
    def part_sizes(self) -> tuple[int, int] | None:
        if self.bipartition is None:
            return None
        return len(self.bipartition[0]), len(self.bipartition[1])

    def as_dict(self) -> dict:
        return {
            "n": self.n, "m": self.m, "Delta": self.delta_max, "delta": self.delta_min,
            "Z1": self.z1, "beta": self.beta, "eta": self.eta,
            "theta": self.theta, "chi": self.chi,
            "bipartition": None if self.bipartition is None else [list(p) for p in self.bipartition],
            "regular_degree": self.regular_degree, "connected": self.is_connected,
        }


def compute_bundle(g: Graph) -> InvariantBundle:
    small = g.n <= EXPONENTIAL_GUARD
    regular = g.is_regular()
    return InvariantBundle(
        n=g.n,
        m=g.m,
        delta_max=g.max_degree,
        delta_min=g.min_degree,
        z1=zagreb_index(g),
        beta=matching_number(g),
        eta=nullity(g),
        theta=independence_number(g) if small else None,
        chi=chromatic_number(g) if small else None,
        bipartition=bipartition(g),
        is_regular=regular,
        regular_degree=g.max_degree if regular and g.n else None,
        is_connected=g.is_connected(),
    )
