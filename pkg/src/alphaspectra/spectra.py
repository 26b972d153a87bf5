"""The A_alpha family of graph matrices and the quantities built from it."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .graph import Graph
from .linalg import Spectrum, SymMatrix, eigenvalues, s_k

MATRIX_KINDS = ("adjacency", "degree", "laplacian", "signless_laplacian", "a_alpha")


def check_alpha(alpha: float) -> float:
    """Validate alpha in [0, 1] and return it as a float."""
    a = float(alpha)
    if not 0.0 <= a <= 1.0 or math.isnan(a):
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    return a


def build_matrix(g: Graph, kind: str, alpha: float | None = None) -> SymMatrix:
    a = g.adjacency_matrix(dtype=float)
    d = np.diag(np.array(g.degrees, dtype=float)) if g.n else np.zeros((0, 0))
    if kind == "adjacency":
        out = a
    elif kind == "degree":
        out = d
    elif kind == "laplacian":
        out = d - a
    elif kind == "signless_laplacian":
        out = d + a
    elif kind == "a_alpha":
        if alpha is None:
            raise ValueError("a_alpha matrix needs alpha")
        alpha = check_alpha(alpha)
        out = alpha * d + (1.0 - alpha) * a
    else:
        raise ValueError(f"unknown matrix kind {kind!r}; expected one of {MATRIX_KINDS}")
    return SymMatrix(out, check=False)


def a_alpha_matrix(g: Graph, alpha: float) -> SymMatrix:
    return build_matrix(g, "a_alpha", alpha)


def spectrum(g: Graph, kind: str = "a_alpha", alpha: float | None = None) -> Spectrum:
    """Cached spectrum of one of the graph matrices."""
    return _spectrum(g, kind, None if kind != "a_alpha" else alpha)


@lru_cache(maxsize=8192)
def _spectrum(g: Graph, kind: str, alpha: float | None) -> Spectrum:
    return eigenvalues(build_matrix(g, kind, alpha))


def alpha_spectrum(g: Graph, alpha: float) -> Spectrum:
    return spectrum(g, "a_alpha", check_alpha(alpha))


def sk_alpha(g: Graph, alpha: float, k: int) -> float:
    """S_k(A_alpha(G))."""
    return s_k(alpha_spectrum(g, alpha), k)


def sk_kind(g: Graph, kind: str, k: int) -> float:
    return s_k(spectrum(g, kind), k)


def algebraic_connectivity(g: Graph) -> float:
    """Second-smallest Laplacian eigenvalue a(G)."""
    if g.n < 2:
        raise ValueError("algebraic connectivity needs n >= 2")
    return spectrum(g, "laplacian").eigenvalues[-2]


def alpha_energy_forms(g: Graph, alpha: float) -> tuple[float, float, float]:
    """The three expressions of the alpha-energy: deviation sum, sigma form, max form."""
    spec = alpha_spectrum(g, alpha)
    n, m = g.n, g.m
    if n == 0:
        return 0.0, 0.0, 0.0
    mean = 2.0 * alpha * m / n
    direct = math.fsum(abs(x - mean) for x in spec)
    # ties at the mean are counted in sigma
    sigma = sum(1 for x in spec if x >= mean)
    sigma_form = 2.0 * (s_k(spec, sigma) if sigma else 0.0) - 4.0 * alpha * sigma * m / n
    max_form = max(2.0 * s_k(spec, k) - 4.0 * alpha * k * m / n for k in range(1, n + 1))
    return direct, sigma_form, max_form


def alpha_energy(g: Graph, alpha: float, check: bool = True) -> float:
    direct, sigma_form, max_form = alpha_energy_forms(g, check_alpha(alpha))
    if check:
        scale = 1e-8 * max(1.0, direct)
        if abs(direct - sigma_form) > scale or abs(direct - max_form) > scale:
            raise ArithmeticError(
                f"alpha-energy forms disagree: {direct!r}, {sigma_form!r}, {max_form!r}"
            )
    return direct


def lambda_min(g: Graph, alpha: float) -> float:
    return alpha_spectrum(g, alpha).min


def alpha0(g: Graph, tol: float = 1e-10, max_iter: int = 60) -> float:
    """Smallest alpha with A_alpha(G) positive semidefinite, by bisection on [0, 1/2]."""
    if g.n < 1:
        raise ValueError("alpha0 needs n >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    psd_tol = 1e-10 * max(1.0, g.max_degree)
    if lambda_min(g, 0.0) >= -psd_tol:
        return 0.0
    lo, hi = 0.0, 0.5
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        # bypass the spectrum cache: bisection points are never revisited
        if eigenvalues(a_alpha_matrix(g, mid)).min >= -psd_tol:
            hi = mid
        else:
            lo = mid
    return hi


def cosine_sum(n: int, k: int) -> float:
    """Closed form of sum_{i=1..k} cos(i*pi/n)."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    return 0.5 * _cs(n, k) - 0.5


def _cs(n: int, k: int) -> float:
    """csc(pi/2n) * sin((2k+1)pi/2n)."""
    return math.sin((2 * k + 1) * math.pi / (2 * n)) / math.sin(math.pi / (2 * n))


def _path_expr_low_alpha(n: int, k: int, alpha: float) -> float:
    return (
        2 * alpha * k + alpha - 1
        + alpha * _cs(n, k)
        + (1 - 2 * alpha) * _cs(n + 1, k)
    )


def _path_expr_high_alpha(n: int, k: int, alpha: float) -> float:
    return 2 * alpha * k + (1 - alpha) * (_cs(n, k) - 1)


def path_sk_closed_form(n: int, k: int, alpha: float, part: str) -> float:
    """Upper closed forms for S_k(A_alpha(P_n)).

    Part ``"i"`` covers 0 <= alpha < 1/2 and is exact at alpha = 0; part
    ``"ii"`` covers 1/2 <= alpha <= 1 and is exact at alpha = 1/2.
    """
    alpha = check_alpha(alpha)
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if part == "i":
        if not alpha < 0.5:
            raise ValueError("part i requires 0 <= alpha < 1/2")
        return _path_expr_low_alpha(n, k, alpha)
    if part == "ii":
        if not alpha >= 0.5:
            raise ValueError("part ii requires 1/2 <= alpha <= 1")
        return _path_expr_high_alpha(n, k, alpha)
    raise ValueError(f"part must be 'i' or 'ii', got {part!r}")


def path_sk_lower_closed_form(n: int, k: int, alpha: float, part: str) -> float:
    """Lower closed forms for S_k(A_alpha(P_n)); part i for alpha <= 1/2, ii for alpha >= 1/2."""
    alpha = check_alpha(alpha)
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if part == "i":
        if not alpha <= 0.5:
            raise ValueError("part i requires 0 <= alpha <= 1/2")
        return _path_expr_high_alpha(n, k, alpha)
    if part == "ii":
        if not alpha >= 0.5:
            raise ValueError("part ii requires 1/2 <= alpha <= 1")
        return _path_expr_low_alpha(n, k, alpha)
    raise ValueError(f"part must be 'i' or 'ii', got {part!r}")


def complete_graph_sk(n: int, alpha: float, k: int) -> float:
    """S_k(A_alpha(K_n)) = (1 - alpha) n + (alpha n - 1) k."""
    return (1 - alpha) * n + (alpha * n - 1) * k
