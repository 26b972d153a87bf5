"""Exhaustive searches over trees and externally supplied graph streams."""

from __future__ import annotations

import json
import math
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice
from typing import Callable, Iterable, Iterator, Sequence

from .graph import (
    Graph,
    GraphError,
    graph6_decode,
    graph6_encode,
    p3_join_hnk,
    path_graph,
    star_graph,
)
from .invariants import SizeGuardError
from .linalg import s_k
from .spectra import alpha_spectrum, check_alpha, spectrum

MAX_TREE_ORDER = 16
TIE_TOL = 1e-9
CHUNK_SIZE = 256


class SearchError(ValueError):
    pass


class OrderGuardError(SearchError, SizeGuardError):
    pass


# ----------------------------------------------------------------------
# Free trees from canonical level sequences
# ----------------------------------------------------------------------

def _successor(levels: list[int], p: int | None = None) -> list[int] | None:
    """Next rooted-tree level sequence in reverse lexicographic order."""
    if p is None:
        p = len(levels) - 1
        while levels[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while levels[q] != levels[p] - 1:
        q -= 1
    out = levels[:p]
    period = p - q
    for i in range(p, len(levels)):
        out.append(out[i - period])
    return out


def _split_first_subtree(levels: list[int]) -> tuple[list[int], list[int]]:
    """(first subtree of the root, rest of the tree) as level sequences."""
    end = len(levels)
    for i in range(2, len(levels)):
        if levels[i] == 1:
            end = i
            break
    first = [x - 1 for x in levels[1:end]]
    rest = [0] + levels[end:]
    return first, rest


def _is_centered(levels: list[int]) -> bool:
    first, rest = _split_first_subtree(levels)
    h1, h2 = max(first), max(rest)
    if h1 != h2:
        return h1 < h2
    if len(first) != len(rest):
        return len(first) < len(rest)
    return first <= rest


def _next_free(levels: list[int]) -> list[int] | None:
    """Advance to the next sequence that is canonical for a free tree."""
    while levels is not None:
        if _is_centered(levels):
            return levels
        first, _ = _split_first_subtree(levels)
        p = len(first)
        nxt = _successor(levels, p)
        if nxt is not None and levels[p] > 2:
            first2, _ = _split_first_subtree(nxt)
            tail = list(range(1, max(first2) + 2))
            nxt[len(nxt) - len(tail):] = tail
        levels = nxt
    return None


def _levels_to_graph(levels: Sequence[int]) -> Graph:
    edges = []
    last_at = {}
    for v, lev in enumerate(levels):
        if lev:
            edges.append((last_at[lev - 1], v))
        last_at[lev] = v
    return Graph(len(levels), edges)


def generate_trees(n: int) -> Iterator[Graph]:
    """Every free tree on n vertices exactly once up to isomorphism."""
    if not isinstance(n, int) or not 1 <= n <= MAX_TREE_ORDER:
        raise OrderGuardError(f"tree order must lie in 1..{MAX_TREE_ORDER}, got {n!r}")
    if n <= 2:
        yield path_graph(n)
        return
    # start from the path rooted at its centre
    levels = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while True:
        levels = _next_free(levels)
        if levels is None:
            return
        yield _levels_to_graph(levels)
        levels = _successor(levels)
        if levels is None:
            return


# ----------------------------------------------------------------------
# Degree multisets
# ----------------------------------------------------------------------

def _multiset(ms: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted((int(d) for d in ms), reverse=True))


def multiset_feasible_for_tree(ms: Sequence[int]) -> bool:
    ms = _multiset(ms)
    n = len(ms)
    return n >= 1 and all(d >= (0 if n == 1 else 1) for d in ms) and sum(ms) == 2 * (n - 1)


def filter_degree_sequence(stream: Iterable[Graph], multiset: Sequence[int], trees: bool = True) -> Iterator[Graph]:
    """Graphs whose sorted degree multiset equals ``multiset``.

    The sum check runs before the stream is touched, so an impossible
    multiset gives an empty iterator without enumerating anything.
    """
    target = _multiset(multiset)
    if trees:
        feasible = multiset_feasible_for_tree(target)
    else:
        feasible = sum(target) % 2 == 0
    return _filtered(stream, target) if feasible else iter(())


def _filtered(stream, target):
    for g in stream:
        if g.degree_sequence() == target:
            yield g


def _ms(*parts: tuple[int, int]) -> tuple[int, ...]:
    return tuple(d for d, count in parts for _ in range(count))


# Degree classes of the order-12 tree case analysis with their reference
# minima of S_2(Q). The 3,3 class has two candidate first members; both are
# kept and the degree-sum check decides which is a tree degree sequence.
CLASS_DELTA4 = (_ms((4, 1), (2, 7), (1, 4)),)
CLASS_DELTA3_3 = (
    _ms((3, 2), (2, 6), (1, 4)),
    _ms((3, 2), (2, 2), (1, 8)),
    _ms((3, 3), (2, 4), (1, 5)),
    _ms((3, 4), (2, 2), (1, 6)),
    _ms((3, 5), (1, 7)),
)
CLASS_DELTA3_2 = (_ms((3, 1), (2, 8), (1, 3)),)
CLASS_STAR = (_ms((11, 1), (1, 11)),)

T55_CLASSES = {
    "delta4_delta2_2": (CLASS_DELTA4, 8.57037),
    "delta3_delta2_3": (CLASS_DELTA3_3, 8.31903),
    "delta3_delta2_2": (CLASS_DELTA3_2, 8.02294),
    "star": (CLASS_STAR, 13.0),
}


def feasible_multisets(family: Sequence[Sequence[int]]) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    ok, bad = [], []
    for ms in family:
        (ok if multiset_feasible_for_tree(ms) else bad).append(_multiset(ms))
    return ok, bad


# ----------------------------------------------------------------------
# Objectives
# ----------------------------------------------------------------------

OBJECTIVES = ("s2_q", "s2_alpha", "f_problem_1_2", "sk_alpha")


@dataclass(frozen=True)
class Objective:
    kind: str
    alpha: float | None = None
    k: int = 2

    def __post_init__(self):
        if self.kind not in OBJECTIVES:
            raise SearchError(f"unknown objective {self.kind!r}; expected one of {OBJECTIVES}")
        if self.kind != "s2_q":
            if self.alpha is None:
                raise SearchError(f"objective {self.kind} needs alpha")
            object.__setattr__(self, "alpha", check_alpha(self.alpha))
        if self.kind == "f_problem_1_2" and not 0.5 <= self.alpha < 1:
            raise SearchError("f(G) is defined for 1/2 <= alpha < 1")
        if self.k < 1:
            raise SearchError("k must be >= 1")

    def __call__(self, g: Graph) -> float:
        if self.kind == "s2_q":
            return s_k(spectrum(g, "signless_laplacian"), 2)
        if self.kind == "s2_alpha":
            return s_k(alpha_spectrum(g, self.alpha), 2)
        if self.kind == "sk_alpha":
            return s_k(alpha_spectrum(g, self.alpha), self.k)
        a = self.alpha
        return a * g.m + a + 1 - s_k(alpha_spectrum(g, a), 2)

    def describe(self) -> dict:
        out = {"objective": self.kind}
        if self.alpha is not None:
            out["alpha"] = self.alpha
        if self.kind == "sk_alpha":
            out["k"] = self.k
        return out


# ----------------------------------------------------------------------
# Associative aggregation
# ----------------------------------------------------------------------

@dataclass
class Extremum:
    """Running minimum with every certificate within ``tol`` of it."""

    value: float = math.inf
    certs: dict = field(default_factory=dict)
    count: int = 0
    tol: float = TIE_TOL

    def add(self, value: float, cert: str) -> None:
        self.count += 1
        if value > self.value + self.tol:
            return
        if value < self.value:
            self.value = value
            self.certs = {c: v for c, v in self.certs.items() if v <= value + self.tol}
        self.certs[cert] = min(value, self.certs.get(cert, math.inf))

    def merge(self, other: Extremum) -> Extremum:
        out = Extremum(min(self.value, other.value), {}, self.count + other.count, self.tol)
        for src in (self.certs, other.certs):
            for c, v in src.items():
                if v <= out.value + out.tol:
                    out.certs[c] = min(v, out.certs.get(c, math.inf))
        return out

    def certificates(self) -> list[str]:
        return sorted(self.certs)


def _chunks(items: Iterable, size: int) -> Iterator[list]:
    it = iter(items)
    while True:
        block = list(islice(it, size))
        if not block:
            return
        yield block


def default_workers() -> int:
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:
        return max(1, os.cpu_count() or 1)


def map_reduce(fn: Callable, items: Iterable, combine: Callable, initial, workers: int = 1, chunk: int = CHUNK_SIZE):
    """Apply ``fn`` to chunks of ``items`` and fold the results with an associative ``combine``.

    Results are combined in chunk order, so the outcome does not depend on
    which worker finishes first.
    """
    if workers < 1:
        raise SearchError("worker count must be >= 1")
    acc = initial
    if workers == 1:
        for block in _chunks(items, chunk):
            acc = combine(acc, fn(block))
        return acc
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(fn, _chunks(items, chunk)):
            acc = combine(acc, part)
    return acc


# ----------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------

@dataclass
class SearchReport:
    task: str
    universe: dict
    count: int = 0
    extremal: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    min_slack: float | None = None
    runtime_s: float = 0.0
    details: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "task": self.task,
            "universe": self.universe,
            "count": self.count,
            "extremal": self.extremal,
            "violations": self.violations,
            "min_slack": self.min_slack,
            "runtime_s": self.runtime_s,
            "details": self.details,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())

    @classmethod
    def from_json(cls, text: str) -> SearchReport:
        data = json.loads(text)
        return cls(**data)


def _graph6_stream(stream: Iterable) -> Iterator[str]:
    for g in stream:
        yield g if isinstance(g, str) else graph6_encode(g)


def _decode(code: str) -> Graph:
    return graph6_decode(code)


# ----------------------------------------------------------------------
# Minimisation
# ----------------------------------------------------------------------

def _minimize_chunk(args) -> Extremum:
    objective, codes = args
    ext = Extremum()
    for code in codes:
        ext.add(objective(_decode(code)), code)
    return ext


class _Bound:
    """Picklable partial of a chunk worker."""

    def __init__(self, fn, *head):
        self.fn = fn
        self.head = head

    def __call__(self, block):
        return self.fn((*self.head, block))


def minimize_over(
    stream: Iterable,
    objective: Objective,
    workers: int = 1,
    task: str = "minimize",
    universe: dict | None = None,
    dump: list | None = None,
) -> SearchReport:
    """Global minimum of ``objective`` over ``stream`` with all tied certificates.

    ``stream`` may hold Graph objects or graph6 strings. When ``dump`` is a
    list it receives (graph6, value) pairs for every graph examined.
    """
    start = time.perf_counter()
    codes = _graph6_stream(stream)
    if dump is not None:
        codes = list(codes)
        dump.extend((c, objective(_decode(c))) for c in codes)
    ext = map_reduce(_Bound(_minimize_chunk, objective), codes, Extremum.merge, Extremum(), workers)
    if ext.count == 0:
        raise SearchError("cannot minimise over an empty stream")
    report = SearchReport(task, dict(universe or {}, **objective.describe()), ext.count)
    report.extremal = [{"graph6": c, "value": ext.certs[c]} for c in ext.certificates()]
    report.details["minimum"] = ext.value
    report.runtime_s = time.perf_counter() - start
    return report


def minimum_over_class(trees: Sequence[Graph], multisets: Iterable[Sequence[int]], objective: Objective) -> Extremum:
    ext = Extremum()
    for ms in multisets:
        for g in filter_degree_sequence(trees, ms):
            ext.add(objective(g), graph6_encode(g))
    return ext


# ----------------------------------------------------------------------
# S_k(A_alpha) <= alpha e(G) + alpha binom(k+1, 2)
# ----------------------------------------------------------------------

def conjecture_1_3_bound(m: int, alpha: float, k: int) -> float:
    return alpha * m + alpha * k * (k + 1) / 2


def _c13_chunk(args):
    alphas, ks, eps, codes = args
    low = Extremum()
    bad = []
    count = 0
    for code in codes:
        g = _decode(code)
        count += 1
        for a in alphas:
            spec = alpha_spectrum(g, a)
            for k in (ks or range(1, g.n + 1)):
                if k > g.n:
                    continue
                lhs = s_k(spec, k)
                rhs = conjecture_1_3_bound(g.m, a, k)
                slack = rhs - lhs
                low.add(slack, json.dumps([code, a, k]))
                if slack < -(eps + eps * abs(rhs)):
                    bad.append({"graph6": code, "alpha": a, "k": k, "lhs": lhs, "rhs": rhs})
    return count, low, bad


def _c13_combine(acc, part):
    return acc[0] + part[0], acc[1].merge(part[1]), acc[2] + part[2]


def _eps(eps):
    if eps is not None:
        return eps
    from .bounds import verification_eps
    return verification_eps()


def check_conjecture_1_3(
    universe: Iterable,
    alphas: Sequence[float],
    ks: Sequence[int] | None = None,
    eps: float | None = None,
    workers: int = 1,
    universe_name: str = "stream",
) -> SearchReport:
    """Every violation of the conjectured bound, plus the global minimum slack."""
    start = time.perf_counter()
    alphas = [check_alpha(a) for a in alphas]
    for a in alphas:
        if not 0.5 <= a < 1:
            raise SearchError(f"alpha grid must lie in [1/2, 1), got {a}")
    if not alphas:
        raise SearchError("alpha grid is empty")
    eps = _eps(eps)
    ks = tuple(ks) if ks else None
    fn = _Bound(_c13_chunk, tuple(alphas), ks, eps)
    count, low, bad = map_reduce(fn, _graph6_stream(universe), _c13_combine, (0, Extremum(), []), workers)
    report = SearchReport(
        "c13",
        {"family": universe_name, "alpha_grid": alphas, "k": list(ks) if ks else "all"},
        count,
    )
    report.violations = sorted(bad, key=lambda v: (v["graph6"], v["alpha"], v["k"]))
    if count:
        report.min_slack = low.value
        for cert in low.certificates():
            code, a, k = json.loads(cert)
            report.extremal.append({"graph6": code, "alpha": a, "k": k, "slack": low.certs[cert]})
    report.details["eps"] = eps
    report.runtime_s = time.perf_counter() - start
    return report


def reverify_violation(v: dict, eps: float | None = None) -> bool:
    """Re-evaluate a c13 violation entry from its certificate alone."""
    g = graph6_decode(v["graph6"])
    lhs = s_k(alpha_spectrum(g, v["alpha"]), v["k"])
    rhs = conjecture_1_3_bound(g.m, v["alpha"], v["k"])
    eps = _eps(eps)
    return rhs - lhs < -(eps + eps * abs(rhs))


# ----------------------------------------------------------------------
# H_{n,k} and S_k(Q) - e(G)
# ----------------------------------------------------------------------

def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Backtracking isomorphism test for small graphs."""
    if g.n != h.n or g.m != h.m or g.degree_sequence() != h.degree_sequence():
        return False
    order = sorted(range(g.n), key=lambda v: -g.degrees[v])
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in range(h.n):
            if w in used or h.degrees[w] != g.degrees[v]:
                continue
            if all(g.has_edge(v, u) == h.has_edge(w, image[u]) for u in image):
                image[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del image[v]
                used.discard(w)
        return False

    return extend(0)


def _c12_chunk(args):
    k, codes = args
    shifted, plain = Extremum(), Extremum()
    for code in codes:
        g = _decode(code)
        sq = s_k(spectrum(g, "signless_laplacian"), k)
        # maxima via minima of negated values
        shifted.add(-(sq - g.m), code)
        plain.add(-sq, code)
    return shifted, plain


def _pair_merge(a, b):
    return a[0].merge(b[0]), a[1].merge(b[1])


def check_conjecture_1_2(
    n: int,
    k: int,
    universe: Iterable | None = None,
    eps: float | None = None,
    workers: int = 1,
    universe_name: str | None = None,
) -> SearchReport:
    """Is H_{n,k} the unique maximiser of S_k(Q(G)) - e(G) over the universe?

    ``universe`` defaults to the packaged connected graphs on n vertices.
    Any graph not isomorphic to H_{n,k} reaching the maximum is a violation,
    as is H_{n,k} failing S_k(Q(H)) - e(H) < binom(k+1, 2). The plain
    maximum of S_k(Q(G)) is reported alongside for comparison.
    """
    if n < 5 or not 3 <= k <= n - 2:
        raise SearchError(f"need n >= 5 and 3 <= k <= n-2, got n={n}, k={k}")
    if n > 9:
        raise OrderGuardError(f"exhaustive universes stop at n = 9, got n={n}")
    start = time.perf_counter()
    eps = _eps(eps)
    if universe is None:
        universe = connected_graphs(n)
        universe_name = universe_name or f"connected:{n}"
    h = p3_join_hnk(n, k)
    h_val = s_k(spectrum(h, "signless_laplacian"), k) - h.m
    fn = _Bound(_c12_chunk, k)
    shifted, plain = map_reduce(fn, _graph6_stream(universe), _pair_merge, (Extremum(), Extremum()), workers)
    if shifted.count == 0:
        raise SearchError("empty universe")
    report = SearchReport("c12", {"family": universe_name or "stream", "n": n, "k": k}, shifted.count)
    best = -shifted.value
    margin = eps + eps * abs(best)
    h_seen = False
    for code in shifted.certificates():
        g = graph6_decode(code)
        is_h = g.n == n and are_isomorphic(g, h)
        h_seen |= is_h
        value = -shifted.certs[code]
        report.extremal.append({"graph6": code, "value": value, "is_h_nk": is_h})
        if not is_h:
            kind = "exceeds" if value > h_val + margin else "tie"
            report.violations.append({"graph6": code, "alpha": None, "k": k, "lhs": value, "rhs": h_val, "kind": kind})
    binom = k * (k + 1) / 2
    if not h_val < binom:
        report.violations.append({"graph6": graph6_encode(h), "alpha": None, "k": k, "lhs": h_val, "rhs": binom, "kind": "strict-upper"})
    report.min_slack = h_val - best
    report.details = {
        "objective": "S_k(Q(G)) - e(G)",
        "h_nk_graph6": graph6_encode(h),
        "h_nk_value": h_val,
        "h_nk_attains_max": h_seen,
        "binom_k_plus_1_2": binom,
        "plain_max_sk_q": -plain.value,
        "plain_argmax": plain.certificates(),
    }
    report.runtime_s = time.perf_counter() - start
    return report


# ----------------------------------------------------------------------
# Order-12 trees: S_2 minimisation
# ----------------------------------------------------------------------

T55_ORDER = 12
T55_ALPHAS = tuple(round(0.5 + 0.05 * i, 2) for i in range(10))


def reproduce_theorem_5_5(alphas: Sequence[float] = T55_ALPHAS, n: int = T55_ORDER) -> SearchReport:
    """Check that P_n uniquely minimises S_2(A_alpha) over all trees of order n.

    Also checks the reduction used for larger orders: S_2(A_{1/2}(T)) of
    every non-path tree exceeds S_2(A_alpha(P_n)) for each grid alpha. For
    n = 12 the per-degree-class minima of S_2(Q) are reported as well.
    """
    start = time.perf_counter()
    alphas = [check_alpha(a) for a in alphas]
    for a in alphas:
        if not 0.5 <= a < 1:
            raise SearchError(f"alpha grid must lie in [1/2, 1), got {a}")
    trees = list(generate_trees(n))
    path = path_graph(n)
    path_code = graph6_encode(path)
    report = SearchReport("t55", {"family": "trees", "n": n, "alpha_grid": alphas, "k": [2]}, len(trees))

    per_alpha = []
    slack = math.inf
    for a in alphas:
        ext = Extremum()
        for t in trees:
            ext.add(s_k(alpha_spectrum(t, a), 2), graph6_encode(t))
        argmin = [graph6_decode(c) for c in ext.certificates()]
        unique_path = len(argmin) == 1 and argmin[0].is_path()
        p_val = s_k(alpha_spectrum(path, a), 2)
        runner_up = min(s_k(alpha_spectrum(t, a), 2) for t in trees if not t.is_path()) if n > 3 else math.inf
        slack = min(slack, runner_up - p_val)
        per_alpha.append({
            "alpha": a,
            "min": ext.value,
            "argmin": ext.certificates(),
            "unique_path": unique_path,
            "path_s2": p_val,
            "path_below_4": p_val < 4,
        })
        if not unique_path:
            for c in ext.certificates():
                if c != path_code:
                    report.violations.append({"graph6": c, "alpha": a, "k": 2, "lhs": ext.certs[c], "rhs": p_val, "kind": "argmin"})
        if not p_val < 4:
            report.violations.append({"graph6": path_code, "alpha": a, "k": 2, "lhs": p_val, "rhs": 4.0, "kind": "path-bound"})
    report.extremal = [{"graph6": path_code, "alpha": r["alpha"], "value": r["path_s2"]} for r in per_alpha]
    report.min_slack = slack

    half = [s_k(alpha_spectrum(t, 0.5), 2) for t in trees if not t.is_path()]
    worst_path = max(r["path_s2"] for r in per_alpha)
    chain = {"min_non_path_s2_half": min(half) if half else None, "max_path_s2": worst_path}
    chain["holds"] = bool(half) and min(half) > worst_path
    if half and not chain["holds"]:
        report.violations.append({"graph6": path_code, "alpha": 0.5, "k": 2, "lhs": min(half), "rhs": worst_path, "kind": "reduction"})

    report.details = {"per_alpha": per_alpha, "reduction": chain}
    if n == T55_ORDER:
        report.details["degree_classes"] = degree_class_minima(trees)
        report.notes.append(
            "multiset (3,3,2,2,1,1,1,1,1,1,1,1) has degree sum 18, not 22; it is not a tree degree sequence and is skipped"
        )
    report.runtime_s = time.perf_counter() - start
    return report


def degree_class_minima(trees: Sequence[Graph]) -> dict:
    """Minimum S_2(Q) over each degree class of the order-12 case analysis."""
    obj = Objective("s2_q")
    out = {}
    for name, (family, reference) in T55_CLASSES.items():
        ok, bad = feasible_multisets(family)
        ext = minimum_over_class(trees, ok, obj)
        out[name] = {
            "multisets": [list(m) for m in ok],
            "infeasible": [list(m) for m in bad],
            "count": ext.count,
            "min_s2_q": ext.value if ext.count else None,
            "argmin": ext.certificates(),
            "reference": reference,
        }
    return out


def star_s2_half(n: int = T55_ORDER) -> float:
    return s_k(alpha_spectrum(star_graph(n), 0.5), 2)


# ----------------------------------------------------------------------
# Extremal tables
# ----------------------------------------------------------------------

def minimize_f_problem_1_2(universe: Iterable, alphas: Sequence[float], workers: int = 1, universe_name: str = "stream") -> SearchReport:
    """Minimise f(G) = alpha e(G) + alpha + 1 - S_2(A_alpha(G)) for each alpha."""
    start = time.perf_counter()
    codes = list(_graph6_stream(universe))
    report = SearchReport("p12min", {"family": universe_name, "alpha_grid": list(alphas), "k": [2]}, len(codes))
    slack = math.inf
    for a in alphas:
        sub = minimize_over(codes, Objective("f_problem_1_2", a), workers)
        slack = min(slack, sub.details["minimum"])
        report.extremal.extend({"alpha": sub.universe["alpha"], **e} for e in sub.extremal)
    report.min_slack = slack if codes else None
    report.runtime_s = time.perf_counter() - start
    return report


def _table_chunk(args):
    alphas, codes = args
    rows: dict = {}
    for code in codes:
        g = _decode(code)
        for a in alphas:
            spec = alpha_spectrum(g, a)
            for k in range(1, g.n + 1):
                v = s_k(spec, k)
                key = (g.n, a, k)
                lo, hi = rows.setdefault(key, (Extremum(), Extremum()))
                lo.add(v, code)
                hi.add(-v, code)
    return rows


def _table_merge(acc, part):
    out = dict(acc)
    for key, (lo, hi) in part.items():
        if key in out:
            a, b = out[key]
            out[key] = (a.merge(lo), b.merge(hi))
        else:
            out[key] = (lo, hi)
    return out


def extremal_table(universe: Iterable, alphas: Sequence[float], workers: int = 1, universe_name: str = "stream") -> SearchReport:
    """Min and max of S_k(A_alpha) per (n, alpha, k) over the universe."""
    start = time.perf_counter()
    alphas = tuple(check_alpha(a) for a in alphas)
    rows = map_reduce(_Bound(_table_chunk, alphas), _graph6_stream(universe), _table_merge, {}, workers)
    count = sum(lo.count for (n, a, k), (lo, _) in rows.items() if a == alphas[0] and k == 1) if alphas else 0
    report = SearchReport("extremal-table", {"family": universe_name, "alpha_grid": list(alphas), "k": "all"}, count)
    for (n, a, k) in sorted(rows):
        lo, hi = rows[(n, a, k)]
        report.extremal.append({
            "n": n, "alpha": a, "k": k,
            "min": lo.value, "argmin": lo.certificates(),
            "max": -hi.value, "argmax": hi.certificates(),
        })
    report.runtime_s = time.perf_counter() - start
    return report


# ----------------------------------------------------------------------
# Packaged corpora
# ----------------------------------------------------------------------

def data_dir() -> str:
    return os.environ.get("ALPHASPECTRA_DATA") or os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


def connected_graphs(n: int) -> list[str]:
    """graph6 codes of all connected graphs on n vertices (1 <= n <= 8)."""
    if not 1 <= n <= 8:
        raise OrderGuardError(f"packaged corpus covers 1 <= n <= 8, got {n}")
    return read_graph6_codes(os.path.join(data_dir(), f"conn{n}.g6"))


def read_graph6_codes(path) -> list[str]:
    out = []
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith(">>graph6<<"):
                line = line[len(">>graph6<<"):]
            try:
                graph6_decode(line)
            except GraphError as exc:
                raise GraphError(f"{path}:{lineno}: {exc}") from None
            out.append(line)
    return out


def degree_multiset_counts(trees: Iterable[Graph]) -> Counter:
    return Counter(t.degree_sequence() for t in trees)
