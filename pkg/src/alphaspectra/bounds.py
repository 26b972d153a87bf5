"""Catalog of bounds on sums of the largest A_alpha eigenvalues.

Every entry checks its hypotheses against a graph, evaluates its right-hand
side and compares with the true eigenvalue sum it bounds. Hypothesis
failures are reported as inapplicable records naming the failed condition.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import asdict, dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

from . import invariants as inv
from .graph import (
    Graph,
    complement,
    double_graph,
    edge_boundary,
    graph_power,
    line_graph,
    spanning_tree,
)
from .linalg import determinant, inertia, s_k, default_inertia_tol
from .spectra import (
    algebraic_connectivity,
    alpha0,
    alpha_spectrum,
    check_alpha,
    path_sk_closed_form,
    path_sk_lower_closed_form,
    sk_alpha,
    spectrum,
)

DEFAULT_EPS = 1e-9
NEAR_EQUALITY = 1e-6
TOL_ENV = "ALPHASPECTRA_TOL"


def verification_eps() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None or raw == "":
        return DEFAULT_EPS
    value = float(raw)
    if not value >= 0:
        raise ValueError(f"{TOL_ENV} must be a non-negative number, got {raw!r}")
    return value


def tolerance(scale: float, eps: float | None = None) -> float:
    """Absolute plus relative comparison margin."""
    eps = verification_eps() if eps is None else eps
    return eps + eps * abs(scale)


class CatalogError(KeyError):
    pass


class CertificateError(ValueError):
    pass


class NotApplicable(Exception):
    """Raised inside a catalog formula when a hypothesis fails."""


@dataclass
class BoundRecord:
    id: str
    direction: str
    n: int
    m: int
    alpha: float
    k: int
    applicable: bool
    reason: str | None = None
    target: str = ""
    value: float | tuple[float, float] | None = None
    true_sk: float | None = None
    slack: float | None = None
    certificates: tuple[str, ...] = ()
    flags: tuple[str, ...] = ()

    @property
    def conditional(self) -> bool:
        return "conjecture-conditional" in self.flags

    def is_violation(self, eps: float | None = None) -> bool:
        if not self.applicable or self.slack is None:
            return False
        if self.direction not in ("upper", "lower", "pair", "conjecture"):
            return False
        scale = max(abs(self.true_sk or 0.0), _abs_max(self.value))
        return self.slack < -tolerance(scale, eps)

    def as_row(self) -> dict:
        value = self.value
        if isinstance(value, tuple):
            value = f"{value[0]!r};{value[1]!r}"
        return {
            "id": self.id, "n": self.n, "m": self.m, "alpha": self.alpha, "k": self.k,
            "applicable": self.applicable, "value": value, "true_sk": self.true_sk,
            "slack": self.slack, "flags": "|".join(self.flags),
        }

    def as_dict(self) -> dict:
        d = asdict(self)
        if isinstance(self.value, tuple):
            d["value"] = list(self.value)
        d["certificates"] = list(self.certificates)
        d["flags"] = list(self.flags)
        return d


def _abs_max(value) -> float:
    if value is None:
        return 0.0
    if isinstance(value, tuple):
        return max(abs(v) for v in value)
    return abs(value)


# ----------------------------------------------------------------------
# Per-graph context with lazily cached invariants
# ----------------------------------------------------------------------

class BoundContext:
    """Everything the catalog needs about one graph, computed on demand."""

    def __init__(self, g: Graph):
        self.g = g

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def m(self) -> int:
        return self.g.m

    @cached_property
    def z1(self) -> int:
        return inv.zagreb_index(self.g)

    @cached_property
    def connected(self) -> bool:
        return self.g.is_connected()

    @cached_property
    def is_tree(self) -> bool:
        return self.g.is_tree()

    @cached_property
    def bipartition(self):
        return inv.bipartition(self.g)

    @cached_property
    def beta(self) -> int:
        return inv.matching_number(self.g)

    @cached_property
    def eta(self) -> int:
        return inv.nullity(self.g)

    @cached_property
    def theta(self) -> int:
        return inv.independence_number(self.g)

    @cached_property
    def max_independent_set(self) -> list[int]:
        return inv.maximum_independent_set(self.g)

    @cached_property
    def chi(self) -> int:
        return inv.chromatic_number(self.g)

    @cached_property
    def k3_c4_free(self) -> bool:
        return inv.is_k3_free_and_c4_free(self.g)

    @cached_property
    def spanning_tree_beta(self) -> int:
        return inv.matching_number(spanning_tree(self.g))

    @cached_property
    def clique_packing(self) -> inv.CliquePacking:
        return inv.find_clique_packing(self.g)

    @cached_property
    def cycle_packing(self) -> inv.CyclePacking:
        return inv.find_even_cycle_packing(self.g)

    @cached_property
    def alpha0(self) -> float:
        return alpha0(self.g)

    @cached_property
    def line(self) -> Graph:
        return line_graph(self.g)

    @cached_property
    def square(self) -> Graph:
        return graph_power(self.g, 2)

    @cached_property
    def double(self) -> Graph:
        return double_graph(self.g)

    @cached_property
    def comp(self) -> Graph:
        return complement(self.g)

    def sk(self, alpha: float, k: int) -> float:
        return sk_alpha(self.g, alpha, k)

    def sk_q(self, k: int) -> float:
        return s_k(spectrum(self.g, "signless_laplacian"), k)

    def sk_a(self, k: int) -> float:
        return s_k(spectrum(self.g, "adjacency"), k)

    def positive_inertia(self, alpha: float) -> tuple[int, float]:
        spec = alpha_spectrum(self.g, alpha)
        tol = default_inertia_tol(spec)
        return inertia(spec, tol)[0], tol


# ----------------------------------------------------------------------
# Catalog machinery
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Evaluation:
    value: float | tuple[float, float]
    true: float
    k: int | None = None
    certificates: tuple[str, ...] = ()
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    direction: str
    basis: str
    target: str
    formula: Callable[..., Evaluation]
    needs_certificate: str | None = None


CATALOG: dict[str, CatalogEntry] = {}


def _entry(id: str, direction: str, basis: str, target: str, needs: str | None = None):
    def register(fn):
        CATALOG[id] = CatalogEntry(id, direction, basis, target, fn, needs)
        return fn
    return register


def _require(cond: bool, reason: str) -> None:
    if not cond:
        raise NotApplicable(reason)


def _k_range(k: int, lo: int, hi: int) -> None:
    _require(lo <= k <= hi, f"k outside [{lo}, {hi}]")


def _branch_sqrt(k: int, n: int, beta: int) -> float:
    """Three-branch sqrt term shared by the tree bounds."""
    if k <= beta:
        return math.sqrt(k * (n - 1))
    if k <= n - beta:
        return math.sqrt(beta * (n - 1))
    return math.sqrt((n - k) * (n - 1))


# --- upper bounds in terms of degrees ---------------------------------

@_entry("U-3.1a", "upper", "max degree, alpha < 1/(D+1)", "S_k(A_alpha(G))")
def _u31a(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n, delta = c.n, c.g.max_degree
    _require(c.m < n * (n - 1) // 2, "G is complete")
    _require(a < 1.0 / (delta + 1), "alpha >= 1/(Delta+1)")
    _k_range(k, 2, n)
    return Evaluation((1 - a) * n * (1 + math.sqrt(k)) / 2, c.sk(a, k))


@_entry("U-3.1b", "upper", "max degree, alpha >= 1/(D+1)", "S_k(A_alpha(G))")
def _u31b(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n, delta = c.n, c.g.max_degree
    _require(c.m < n * (n - 1) // 2, "G is complete")
    _require(1.0 / (delta + 1) <= a < 1, "alpha outside [1/(Delta+1), 1)")
    _k_range(k, 2, n)
    return Evaluation(a * delta * n * (1 + math.sqrt(k)) / 2, c.sk(a, k))


def _trace_bound(n: int, m: int, a: float, k: int, spread_term: float) -> float:
    inside = max(0.0, spread_term)
    return 2 * a * k * m / n + math.sqrt(k * (n - k) / n * inside)


@_entry("U-3.2", "upper", "trace and Frobenius norm", "S_k(A_alpha(G))")
def _u32(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n, m = c.n, c.m
    _require(0.5 <= a < 1, "alpha outside [1/2, 1)")
    _k_range(k, 1, n - 1)
    f = a * a * c.z1 + 2 * m * (1 - a) ** 2 - 4 * a * a * m * m / n
    return Evaluation(_trace_bound(n, m, a, k, f), c.sk(a, k))


@_entry("U-C3.1", "upper", "trace bound with Zagreb upper estimate", "S_k(A_alpha(G))")
def _uc31(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n, m = c.n, c.m
    _require(0.5 <= a < 1, "alpha outside [1/2, 1)")
    _k_range(k, 1, n - 1)
    spread = c.g.max_degree - c.g.min_degree
    f = 2 * m * (1 - a) ** 2 + a * a * n * spread * spread / 4
    return Evaluation(_trace_bound(n, m, a, k, f), c.sk(a, k))


def _amgm(c: BoundContext, a: float, k: int, denominator: float, det: float, total: float) -> float:
    n = c.n
    ratio = det / denominator
    return total - (n - k) * ratio ** (1.0 / (n - k))


@_entry("U-3.3", "upper", "AM-GM on the trailing eigenvalues", "S_k(A_alpha(G))")
def _u33(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n = c.n
    _require(0.5 < a < 1, "alpha outside (1/2, 1)")
    _require(n >= 2 and c.g.min_degree >= 1, "G has isolated vertices")
    _k_range(k, 1, n - 1)
    spec = alpha_spectrum(c.g, a)
    lam = spec.eigenvalues
    value = _amgm(c, a, k, lam[0] * lam[1] ** (k - 1), determinant(spec), 2 * a * c.m)
    return Evaluation(value, s_k(spec, k))


@_entry("U-C3.2", "upper", "AM-GM with complement component estimate", "S_k(A_alpha(G))")
def _uc32(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n = c.n
    _require(0.5 < a < 1, "alpha outside (1/2, 1)")
    _require(n >= 2 and c.g.min_degree >= 1, "G has isolated vertices")
    _require(c.g.max_degree < n - 1, "Delta = n-1")
    _k_range(k, 1, n - 1)
    spec = alpha_spectrum(c.g, a)
    denom = a ** (k - 1) * c.g.max_degree * (n - 2) ** (k - 1)
    value = _amgm(c, a, k, denom, determinant(spec), 2 * a * c.m)
    return Evaluation(value, s_k(spec, k))


@_entry("U-C3.3", "upper", "signless Laplacian, non-bipartite", "S_k(A_alpha(G)) at alpha=1/2")
def _uc33(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n = c.n
    _require(a == 0.5, "alpha != 1/2")
    _require(c.connected, "G is disconnected")
    _require(c.bipartition is None, "G is bipartite")
    _k_range(k, 1, n - 1)
    q = spectrum(c.g, "signless_laplacian")
    lam = q.eigenvalues
    value = _amgm(c, 1.0, k, lam[0] * lam[1] ** (k - 1), determinant(q), 2 * c.m)
    return Evaluation(value / 2, c.sk(0.5, k))


def _inertia_bound(c: BoundContext, a: float, z1: float, p: int) -> float:
    n, m = c.n, c.m
    return 2 * a * m + 0.5 * (2 * m * (1 - a) ** 2 + a * a * z1) * math.sqrt(n * (n - p) / z1)


def _forced_p(c: BoundContext, a: float, k: int) -> tuple[int, tuple[str, ...], tuple[str, ...]]:
    _require(c.m >= 1, "G is edgeless")
    _require(a < c.alpha0, "alpha >= alpha0(G)")
    p, tol = c.positive_inertia(a)
    _require(p >= 1, "no positive eigenvalue")
    flags = ("k-forced-to-p",) if k != p else ()
    return p, flags, (f"p={p}", f"inertia_tol={tol:.3g}", f"alpha0={c.alpha0:.12g}")


@_entry("U-3.4", "upper", "positive inertia index", "S_p(A_alpha(G))")
def _u34(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    p, flags, certs = _forced_p(c, a, k)
    return Evaluation(_inertia_bound(c, a, c.z1, p), c.sk(a, p), k=p, certificates=certs, flags=flags)


@_entry("U-C3.4", "upper", "positive inertia with Zagreb lower estimate", "S_p(A_alpha(G))")
def _uc34(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    p, flags, certs = _forced_p(c, a, k)
    n, m = c.n, c.m
    spread = c.g.max_degree - c.g.min_degree
    value = 2 * a * m + (
        m * n * (1 - a) ** 2 + 2 * a * a * m * m + a * a * n * n * spread * spread / 8
    ) * math.sqrt(2 * (n - p) / (8 * m * m + n * spread * spread))
    return Evaluation(value, c.sk(a, p), k=p, certificates=certs, flags=flags)


# --- trees --------------------------------------------------------------

@_entry("U-4.1", "upper", "bipartite nullity", "S_k(A(G))")
def _u41(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n, m = c.n, c.m
    _require(a == 0.0, "alpha != 0")
    _require(c.bipartition is not None, "G is not bipartite")
    _k_range(k, 1, n)
    eta = c.eta
    low, high = (n - eta) // 2, (n + eta) // 2
    if k <= low:
        value = math.sqrt(k * m)
    elif k <= high:
        value = math.sqrt(low * m)
    else:
        value = math.sqrt((n - k) * m)
    return Evaluation(value, c.sk_a(k), certificates=(f"eta={eta}",))


@_entry("U-C4.1", "upper", "tree matching number", "S_k(A(T))")
def _uc41(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    _require(a == 0.0, "alpha != 0")
    _require(c.is_tree, "G is not a tree")
    _k_range(k, 1, c.n)
    return Evaluation(_branch_sqrt(k, c.n, c.beta), c.sk_a(k), certificates=(f"beta={c.beta}",))


@_entry("U-4.2i", "upper", "tree, alpha < 1/2", "S_k(A_alpha(T))")
def _u42i(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n = c.n
    _require(c.is_tree, "G is not a tree")
    _require(a < 0.5, "alpha >= 1/2")
    _k_range(k, 1, n)
    value = a * (n + 2 * k - 2) + (1 - 2 * a) * _branch_sqrt(k, n, c.beta)
    return Evaluation(value, c.sk(a, k), certificates=(f"beta={c.beta}",))


@_entry("U-4.2ii", "upper", "tree, alpha >= 1/2", "S_k(A_alpha(T))")
def _u42ii(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n = c.n
    _require(c.is_tree, "G is not a tree")
    _require(0.5 <= a < 1, "alpha outside [1/2, 1)")
    _k_range(k, 1, n)
    return Evaluation(a * (n + 2 * k - 2), c.sk(a, k))


@_entry("U-4.3i", "upper", "spanning tree matching, alpha < 1/2", "S_k(A_alpha(G))")
def _u43i(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n, m = c.n, c.m
    _require(c.connected, "G is disconnected")
    _require(a < 0.5, "alpha >= 1/2")
    _k_range(k, 1, n)
    b = c.spanning_tree_beta
    value = a * (n + 2 * k - 2) + (1 - 2 * a) * _branch_sqrt(k, n, b) + m - n + 1
    return Evaluation(value, c.sk(a, k), certificates=(f"spanning_tree_beta={b}",))


@_entry("U-4.3ii", "upper", "spanning tree matching, alpha >= 1/2", "S_k(A_alpha(G))")
def _u43ii(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n, m = c.n, c.m
    _require(c.connected, "G is disconnected")
    _require(0.5 <= a < 1, "alpha outside [1/2, 1)")
    _k_range(k, 2, n)
    return Evaluation(a * (2 * k + 2 * m - n), c.sk(a, k))


@_entry("U-4.4i", "upper", "path cosine sums, alpha < 1/2", "S_k(A_alpha(P_n))")
def _u44i(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    _require(c.g.is_path(), "G is not a path")
    _require(a < 0.5, "alpha >= 1/2")
    _k_range(k, 1, c.n)
    return Evaluation(path_sk_closed_form(c.n, k, a, "i"), c.sk(a, k))


@_entry("U-4.4ii", "upper", "path cosine sums, alpha >= 1/2", "S_k(A_alpha(P_n))")
def _u44ii(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    _require(c.g.is_path(), "G is not a path")
    _require(a >= 0.5, "alpha < 1/2")
    _k_range(k, 1, c.n)
    return Evaluation(path_sk_closed_form(c.n, k, a, "ii"), c.sk(a, k))


# --- lower bounds -------------------------------------------------------

@_entry("L-5.1i", "lower", "regular graph, alpha <= 1/2", "S_k(A_alpha(G))")
def _l51i(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    _require(a <= 0.5, "alpha > 1/2")
    _k_range(k, 1, c.n)
    value = (1 - a) * c.sk_q(k) + (2 * a - 1) * k * c.g.max_degree
    return Evaluation(value, c.sk(a, k))


@_entry("L-5.1ii", "lower", "regular graph, alpha >= 1/2", "S_k(A_alpha(G))")
def _l51ii(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    _require(a >= 0.5, "alpha < 1/2")
    _k_range(k, 1, c.n)
    value = a * c.sk_q(k) + (1 - 2 * a) * c.sk_a(k)
    return Evaluation(value, c.sk(a, k))


@_entry("L-C5.1i", "lower", "path lower form, alpha <= 1/2", "S_k(A_alpha(P_n))")
def _lc51i(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    _require(c.g.is_path(), "G is not a path")
    _require(a <= 0.5, "alpha > 1/2")
    _k_range(k, 1, c.n)
    return Evaluation(path_sk_lower_closed_form(c.n, k, a, "i"), c.sk(a, k))


@_entry("L-C5.1ii", "lower", "path lower form, alpha >= 1/2", "S_k(A_alpha(P_n))")
def _lc51ii(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    _require(c.g.is_path(), "G is not a path")
    _require(a >= 0.5, "alpha < 1/2")
    _k_range(k, 1, c.n)
    return Evaluation(path_sk_lower_closed_form(c.n, k, a, "ii"), c.sk(a, k))


def _checked_packing(c: BoundContext, cert, kind: type):
    if cert is None:
        packing = c.clique_packing if kind is inv.CliquePacking else c.cycle_packing
        tag = "greedy"
    else:
        if not isinstance(cert, kind):
            raise CertificateError(f"expected a {kind.__name__}, got {type(cert).__name__}")
        packing = cert
        tag = "supplied"
    ok, reason = inv.validate_packing(c.g, packing)
    if not ok:
        raise CertificateError(f"invalid {kind.__name__}: {reason}")
    return packing, tag


@_entry("L-5.2i", "lower", "disjoint cliques in a regular graph", "S_k(A_alpha(G))", needs="clique_packing")
def _l52i(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    _require(c.n >= 1 and c.g.is_regular(), "G is not regular")
    packing, tag = _checked_packing(c, cert, inv.CliquePacking)
    t = packing.count
    _k_range(k, 1, min(t + 1, c.n))
    r = c.g.max_degree
    value = a * k * r + (1 - a) * (r - k + 1)
    return Evaluation(value, c.sk(a, k), certificates=(f"cliques[{tag}]={list(packing.cliques)}",))


@_entry("L-5.2ii", "lower", "disjoint induced even cycles in a regular graph", "S_k(A_alpha(G))", needs="cycle_packing")
def _l52ii(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    _require(c.n >= 1 and c.g.is_regular(), "G is not regular")
    packing, tag = _checked_packing(c, cert, inv.CyclePacking)
    _k_range(k, 1, min(packing.count + 1, c.n))
    r = c.g.max_degree
    lengths = packing.lengths
    value = (a * k + 1 - a) * r + 2 * (1 - a) * math.fsum(1 - 4 / lengths[i] for i in range(k - 1))
    return Evaluation(value, c.sk(a, k), certificates=(f"cycles[{tag}]={list(packing.cycles)}",))


@_entry("L-5.3", "lower", "bipartite part sizes", "S_k(A_alpha(G))")
def _l53(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    _require(c.connected and c.n >= 2, "G is not a connected graph on >= 2 vertices")
    _require(c.bipartition is not None, "G is not bipartite")
    s, t = (len(p) for p in c.bipartition)
    m = c.m
    _k_range(k, 1, min(c.beta + 1, c.n))
    value = (
        a * m / 2 * (1 / s + 1 / t)
        + (1 - a) * m / math.sqrt(s * t)
        + (k - 1) * (a - 2 * (1 - a) * math.sqrt(s * t) / (s + t))
    )
    return Evaluation(value, c.sk(a, k), certificates=(f"s={s}", f"t={t}", f"beta={c.beta}"))


@_entry("L-C5.3", "lower", "chromatic and independence numbers", "S_chi(A_alpha(G))")
def _lc53(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    _require(c.connected, "G is disconnected")
    _require(a < 1, "alpha = 1")
    _require(c.n <= inv.EXPONENTIAL_GUARD, "n above exact chi/theta guard")
    chi, theta = c.chi, c.theta
    flags = ("k-forced-to-chi",) if k != chi else ()
    return Evaluation(
        2 * a * c.m / theta, c.sk(a, chi), k=chi,
        certificates=(f"chi={chi}", f"theta={theta}"), flags=flags,
    )


def default_boundary_subset(g: Graph, size: int) -> tuple[int, ...]:
    """The ``size`` highest-degree vertices, ties broken by index."""
    order = sorted(range(g.n), key=lambda v: (-g.degrees[v], v))
    return tuple(sorted(order[:size]))


@_entry("L-5.4", "lower", "vertex subset and edge boundary", "S_k(A_alpha(G))", needs="vertex_subset")
def _l54(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n, m = c.n, c.m
    _require(c.connected, "G is disconnected")
    _require(a < 1, "alpha = 1")
    _k_range(k, 1, n)
    if cert is None:
        subset, tag = default_boundary_subset(c.g, k - 1), "default"
    else:
        subset, tag = tuple(sorted(set(int(v) for v in cert))), "supplied"
        if len(subset) != len(tuple(cert)) or any(not 0 <= v < n for v in subset):
            raise CertificateError(f"malformed vertex subset {cert!r}")
        _require(len(subset) == k - 1, "|U| != k-1")
    deg_sum = sum(c.g.degrees[v] for v in subset)
    boundary = edge_boundary(c.g, subset)
    w = n - k + 1
    value = (a - 1 / w) * deg_sum + (2 * m - (1 - a) * boundary) / w
    return Evaluation(value, c.sk(a, k), certificates=(f"U[{tag}]={list(subset)}",))


@_entry("L-C5.4", "lower", "independent subset, min degree", "S_k(A_alpha(G))")
def _lc54(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n, m = c.n, c.m
    _require(c.connected, "G is disconnected")
    _require(a < 1, "alpha = 1")
    _require(n <= inv.EXPONENTIAL_GUARD, "n above exact theta guard")
    _k_range(k, 1, min(c.theta + 1, n))
    d = c.g.min_degree
    value = a * (k - 1) * d + (2 * m - (2 - a) * (k - 1) * d) / (n - k + 1)
    return Evaluation(value, c.sk(a, k), certificates=(f"theta={c.theta}",))


# --- graph operations ---------------------------------------------------

@_entry("B-6.1", "pair", "graph plus complement", "S_k(A_alpha(G)) + S_k(A_alpha(complement))")
def _b61(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n = c.n
    _k_range(k, 1, n)
    spread = c.g.max_degree - c.g.min_degree
    lower = (1 - a) * n + (a * n - 1) * k
    upper = k * ((2 - a) * n + a * (spread - 1) - (1 - a) * (k + 1))
    true = c.sk(a, k) + sk_alpha(c.comp, a, k)
    return Evaluation((lower, upper), true)


@_entry("U-6.2a", "upper", "line graph via signless Laplacian", "S_k(A_alpha(L(G)))")
def _u62a(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    _require(c.m >= 1, "G is edgeless")
    _k_range(k, 1, min(c.n, c.m))
    value = 2 * k * (a * c.g.max_degree - 1) + (1 - a) * c.sk_q(k)
    return Evaluation(value, sk_alpha(c.line, a, k))


@_entry("U-6.2b", "upper", "line graph, k above n", "S_k(A_alpha(L(G)))")
def _u62b(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n, m = c.n, c.m
    _require(m > n, "m <= n")
    _k_range(k, n + 1, m)
    value = 2 * a * k * (c.g.max_degree - 1) + 2 * (1 - a) * (m - k)
    return Evaluation(value, sk_alpha(c.line, a, k))


@_entry("U-C6.1", "upper", "line graph of sparse graphs", "S_k(A_alpha(L(G)))")
def _uc61(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n, m = c.n, c.m
    _require(c.connected and m >= 1, "G is not a connected graph with an edge")
    delta = c.g.max_degree
    if m == n - 1:
        _k_range(k, 1, n - 1)
        value = 2 * k * a * (delta - 1) + (1 - a) * (n - 2)
        return Evaluation(value, sk_alpha(c.line, a, k), certificates=("tree",))
    conditional = ("conjecture-conditional",)
    if m == n:
        _k_range(k, 1, n)
        value = 2 * k * (a * delta - 1) + (1 - a) * (n + (k * k + k) / 2)
        return Evaluation(value, sk_alpha(c.line, a, k), certificates=("unicyclic",), flags=conditional)
    if m == n + 1:
        _k_range(k, 1, n)
        value = 2 * k * (a * delta - 1) + (1 - a) * (n + 1 + (k * k + k) / 2)
        return Evaluation(value, sk_alpha(c.line, a, k), certificates=("bicyclic",), flags=conditional)
    raise NotApplicable("G is not a tree, unicyclic or bicyclic graph")


@_entry("U-6.3", "upper", "square of a K3, C4-free graph", "S_k(A_alpha(G^2))")
def _u63(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n, m = c.n, c.m
    _require(n >= 2, "n < 2")
    _require(c.k3_c4_free, "G contains K3 or C4")
    _k_range(k, 1, n - 1)
    d = c.g.min_degree
    value = a * (c.z1 - (n - k) * d * d) + (1 - a) * (
        2 * m - c.sk_a(k) ** 2 / (n - k) - (k - 1) * algebraic_connectivity(c.g)
    )
    return Evaluation(value, sk_alpha(c.square, a, k))


@_entry("U-6.4", "upper", "bipartite double", "S_k(A_alpha(D(G)))")
def _u64(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    n = c.n
    _k_range(k, 1, 2 * n)
    d = c.g.degree_sequence()
    if k % 2 == 0:
        value = 4 * sum(d[: k // 2])
    else:
        value = 4 * sum(d[: (k - 1) // 2]) + 2 * d[(k - 1) // 2]
    if k < n:
        value += 2 * (1 - a) * c.sk_a(k)
    return Evaluation(float(value), sk_alpha(c.double, a, k))


# --- conjecture and objective -----------------------------------------

@_entry("C-1.3", "conjecture", "edge count plus binomial term", "S_k(A_alpha(G))")
def _c13(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    _require(0.5 <= a < 1, "alpha outside [1/2, 1)")
    _k_range(k, 1, c.n)
    value = a * c.m + a * k * (k + 1) / 2
    return Evaluation(value, c.sk(a, k), flags=("conjecture-conditional",))


@_entry("F-1.2", "objective", "second-sum objective", "alpha e(G) + alpha + 1 - S_2(A_alpha(G))")
def _f12(c: BoundContext, a: float, k: int, cert) -> Evaluation:
    _require(0.5 <= a < 1, "alpha outside [1/2, 1)")
    _require(c.n >= 2, "n < 2")
    s2 = c.sk(a, 2)
    return Evaluation(a * c.m + a + 1 - s2, s2, k=2, flags=("k-forced-to-2",) if k != 2 else ())


CONDITIONAL_IDS = frozenset({"C-1.3"})
NON_BOUND_IDS = frozenset({"F-1.2"})
SOUNDNESS_IDS = tuple(i for i in CATALOG if i not in CONDITIONAL_IDS | NON_BOUND_IDS)


# ----------------------------------------------------------------------
# Evaluation
# ----------------------------------------------------------------------

def _slack(direction: str, value, true: float) -> float | None:
    if direction in ("upper", "conjecture"):
        return value - true
    if direction == "lower":
        return true - value
    if direction == "pair":
        lower, upper = value
        return min(true - lower, upper - true)
    return None


def evaluate_bound(
    id: str,
    g: Graph | BoundContext,
    alpha: float,
    k: int,
    cert=None,
    eps: float | None = None,
) -> BoundRecord:
    """Evaluate one catalog entry on ``g``."""
    try:
        entry = CATALOG[id]
    except KeyError:
        raise CatalogError(f"unknown catalog id {id!r}") from None
    ctx = g if isinstance(g, BoundContext) else BoundContext(g)
    a = check_alpha(alpha)
    base = dict(id=id, direction=entry.direction, n=ctx.n, m=ctx.m, alpha=a, target=entry.target)
    if ctx.n < 1:
        return BoundRecord(k=k, applicable=False, reason="empty vertex set", **base)
    try:
        ev = entry.formula(ctx, a, k, cert)
    except NotApplicable as exc:
        return BoundRecord(k=k, applicable=False, reason=str(exc), **base)
    slack = _slack(entry.direction, ev.value, ev.true)
    flags = list(ev.flags)
    if slack is not None:
        margin = tolerance(max(abs(ev.true), _abs_max(ev.value)), eps)
        if slack > margin:
            flags.append("strict")
        elif abs(slack) < NEAR_EQUALITY:
            flags.append("near-equality")
    return BoundRecord(
        k=ev.k if ev.k is not None else k,
        applicable=True,
        value=ev.value,
        true_sk=ev.true,
        slack=slack,
        certificates=ev.certificates,
        flags=tuple(flags),
        **base,
    )


def resolve_subset(subset: Iterable[str] | str | None) -> tuple[str, ...]:
    """Catalog ids from a list, 'all', 'sound', or None (= 'sound')."""
    if subset is None or subset == "sound":
        return SOUNDNESS_IDS
    if subset == "all":
        return tuple(CATALOG)
    ids = tuple(subset)
    for i in ids:
        if i not in CATALOG:
            raise CatalogError(f"unknown catalog id {i!r}")
    return ids


def target_order(id: str, g: Graph) -> int:
    """Number of eigenvalues of the matrix the entry bounds (range of k)."""
    target = CATALOG[id].target
    if "L(G)" in target:
        return g.m
    if "D(G)" in target:
        return 2 * g.n
    return g.n


def verify_sandwich(
    g: Graph | BoundContext,
    alpha: float,
    k: int,
    catalog_subset: Iterable[str] | str | None = None,
    certificates: dict | None = None,
    eps: float | None = None,
) -> list[BoundRecord]:
    """Evaluate a set of catalog entries; every record is returned, violations included."""
    ctx = g if isinstance(g, BoundContext) else BoundContext(g)
    certificates = certificates or {}
    return [
        evaluate_bound(id, ctx, alpha, k, certificates.get(id), eps)
        for id in resolve_subset(catalog_subset)
    ]


def sweep_graph(
    g: Graph,
    alphas: Sequence[float],
    catalog_subset: Iterable[str] | str | None = None,
    ks: Sequence[int] | None = None,
    eps: float | None = None,
) -> list[BoundRecord]:
    """All catalog records for one graph over an alpha grid and every k of each target."""
    ctx = BoundContext(g)
    ids = resolve_subset(catalog_subset)
    records = []
    for a in alphas:
        seen = set()
        for id in ids:
            top = max(target_order(id, g), g.n)
            for k in (ks if ks is not None else range(1, top + 1)):
                rec = evaluate_bound(id, ctx, a, k, None, eps)
                if rec.applicable and any(f.startswith("k-forced") for f in rec.flags):
                    continue
                key = (rec.id, rec.k)
                if rec.applicable and key in seen:
                    continue
                seen.add(key)
                records.append(rec)
    return records


def violations(records: Iterable[BoundRecord], eps: float | None = None, include_conditional: bool = False) -> list[BoundRecord]:
    return [
        r for r in records
        if r.is_violation(eps) and (include_conditional or not r.conditional)
    ]


# ----------------------------------------------------------------------
# Serialisation
# ----------------------------------------------------------------------

CSV_COLUMNS = ("id", "n", "m", "alpha", "k", "applicable", "value", "true_sk", "slack", "flags")


def records_to_csv(records: Iterable[BoundRecord]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\r\n")
    writer.writeheader()
    for r in records:
        writer.writerow(r.as_row())
    return buf.getvalue()


def records_to_json(records: Iterable[BoundRecord]) -> str:
    return json.dumps([r.as_dict() for r in records], indent=2, sort_keys=True)
