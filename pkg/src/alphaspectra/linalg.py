"""Dense symmetric eigenvalue kernel and matrix functionals.

Eigenvalues come from Householder reduction to tridiagonal form followed by
the implicit-shift QL iteration. Matrices here are small (order <= ~100), so
the loops operate on plain Python floats.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MAX_QL_ITERATIONS = 60
_EPS = np.finfo(float).eps
_SAFE_MIN = np.finfo(float).tiny


class ConvergenceError(ArithmeticError):
    pass


class SymMatrix:
    """Read-only dense real symmetric matrix."""

    __slots__ = ("data",)

    def __init__(self, data, check: bool = True):
        a = np.array(data, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if check:
            if not np.all(np.isfinite(a)):
                raise ValueError("matrix has non-finite entries")
            if not np.array_equal(a, a.T):
                raise ValueError("matrix is not symmetric")
        a.setflags(write=False)
        object.__setattr__(self, "data", a)

    def __setattr__(self, name, value):
        raise AttributeError("SymMatrix is immutable")

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def norm_inf(self) -> float:
        if self.n == 0:
            return 0.0
        return float(np.abs(self.data).sum(axis=1).max())

    def digest(self) -> str:
        return hashlib.sha1(self.data.tobytes()).hexdigest()[:16]

    def __add__(self, other: SymMatrix) -> SymMatrix:
        return SymMatrix(self.data + other.data, check=False)

    def __sub__(self, other: SymMatrix) -> SymMatrix:
        return SymMatrix(self.data - other.data, check=False)

    def __rmul__(self, scalar: float) -> SymMatrix:
        return SymMatrix(scalar * self.data, check=False)

    def __repr__(self) -> str:
        return f"SymMatrix(n={self.n})"


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in non-increasing order together with source metadata."""

    eigenvalues: tuple[float, ...]
    trace: float
    norm_inf: float = 0.0

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def __getitem__(self, i: int) -> float:
        return self.eigenvalues[i]

    def __iter__(self):
        return iter(self.eigenvalues)

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def lam(self, i: int) -> float:
        """1-based access, lam(1) is the largest eigenvalue."""
        return self.eigenvalues[i - 1]

    @property
    def min(self) -> float:
        return self.eigenvalues[-1]


def _tridiagonalize(a: list[list[float]]) -> tuple[list[float], list[float]]:
    """Householder reduction; returns diagonal d and subdiagonal e (e[0] = 0)."""
    n = len(a)
    d = [0.0] * n
    e = [0.0] * n
    for i in range(n - 1, 0, -1):
        l = i - 1
        h = 0.0
        ai = a[i]
        if l > 0:
            scale = sum(abs(ai[k]) for k in range(l + 1))
            if scale == 0.0:
                e[i] = ai[l]
            else:
                for k in range(l + 1):
                    ai[k] /= scale
                    h += ai[k] * ai[k]
                f = ai[l]
                g = -math.sqrt(h) if f >= 0.0 else math.sqrt(h)
                e[i] = scale * g
                h -= f * g
                ai[l] = f - g
                f = 0.0
                for j in range(l + 1):
                    aj = a[j]
                    g = 0.0
                    for k in range(j + 1):
                        g += aj[k] * ai[k]
                    for k in range(j + 1, l + 1):
                        g += a[k][j] * ai[k]
                    e[j] = g / h
                    f += e[j] * ai[j]
                hh = f / (h + h)
                for j in range(l + 1):
                    f = ai[j]
                    g = e[j] - hh * f
                    e[j] = g
                    aj = a[j]
                    for k in range(j + 1):
                        aj[k] -= f * e[k] + g * ai[k]
        else:
            e[i] = ai[l]
        d[i] = h
    for i in range(n):
        d[i] = a[i][i]
    if n:
        e[0] = 0.0
    return d, e


def _tridiagonal_ql(d: list[float], e: list[float], digest: str) -> list[float]:
    """Implicit-shift QL on a symmetric tridiagonal matrix, in place on d."""
    n = len(d)
    for i in range(1, n):
        e[i - 1] = e[i]
    if n:
        e[n - 1] = 0.0
    # off-diagonals below eps^2 * ||T|| are dropped even when the adjacent
    # diagonal entries vanish, so tiny couplings cannot stall the iteration
    floor = _EPS * _EPS * max((abs(x) + abs(y) for x, y in zip(d, e)), default=0.0) + _SAFE_MIN
    for l in range(n):
        iterations = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd + floor:
                    break
                m += 1
            if m == l:
                break
            if iterations == MAX_QL_ITERATIONS:
                raise ConvergenceError(
                    f"QL iteration did not converge for eigenvalue {l} (matrix {digest})"
                )
            iterations += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            deflated = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d


def eigenvalues(m: SymMatrix) -> Spectrum:
    """All eigenvalues of ``m`` in non-increasing order."""
    if not isinstance(m, SymMatrix):
        m = SymMatrix(m)
    rows = m.data.tolist()
    d, e = _tridiagonalize(rows)
    d = _tridiagonal_ql(d, e, m.digest())
    d.sort(reverse=True)
    return Spectrum(tuple(d), float(np.trace(m.data)), m.norm_inf())


def s_k(spec: Spectrum | Sequence[float], k: int) -> float:
    """Sum of the k largest eigenvalues."""
    values = spec.eigenvalues if isinstance(spec, Spectrum) else sorted(spec, reverse=True)
    if not 1 <= k <= len(values):
        raise ValueError(f"k must satisfy 1 <= k <= {len(values)}, got {k}")
    return math.fsum(values[:k])


def trace(m: SymMatrix) -> float:
    return float(np.trace(m.data))


def sum_squares(m: SymMatrix) -> float:
    """sum_i sum_k m_ik m_ki, i.e. tr(M^2) for symmetric M."""
    return float(np.sum(m.data * m.data.T))


def determinant(m: SymMatrix | Spectrum) -> float:
    """Product of the eigenvalues."""
    spec = m if isinstance(m, Spectrum) else eigenvalues(m)
    return math.prod(spec.eigenvalues)


def default_inertia_tol(spec: Spectrum) -> float:
    return 1e-8 * max(spec.norm_inf, 1.0)


def inertia(spec: Spectrum, tol: float | None = None) -> tuple[int, int, int]:
    """Counts (positive, zero, negative) with |lambda| <= tol treated as zero."""
    if tol is None:
        tol = default_inertia_tol(spec)
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    p = sum(1 for x in spec if x > tol)
    q = sum(1 for x in spec if x < -tol)
    return p, spec.n - p - q, q


def near_zero_band(spec: Spectrum, tol: float, width: float = 100.0) -> list[float]:
    """Eigenvalues within ``width * tol`` of zero, for auditing inertia counts."""
    return [x for x in spec if abs(x) <= width * tol]


@dataclass(frozen=True)
class QuotientMatrix:
    matrix: np.ndarray
    parts: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.parts)

    def eigenvalues(self) -> Spectrum:
        """Eigenvalues via the symmetric similarity S_ij / sqrt(n_i n_j)."""
        sizes = np.array([len(p) for p in self.parts], dtype=float)
        root = np.sqrt(sizes)
        sym = self.matrix * root[:, None] / root[None, :]
        sym = (sym + sym.T) / 2.0
        return eigenvalues(SymMatrix(sym, check=False))


def validate_partition(parts: Iterable[Iterable[int]], n: int) -> tuple[tuple[int, ...], ...]:
    out = tuple(tuple(sorted(set(p))) for p in parts)
    seen: list[int] = []
    for p in out:
        if not p:
            raise ValueError("partition contains an empty part")
        seen.extend(p)
    if sorted(seen) != list(range(n)):
        raise ValueError(f"parts do not cover 0..{n - 1} exactly once")
    return out


def quotient_matrix(m: SymMatrix, partition: Iterable[Iterable[int]]) -> QuotientMatrix:
    """Matrix of average block row sums b_ij = sum(M_ij) / |part i|."""
    parts = validate_partition(partition, m.n)
    r = len(parts)
    b = np.empty((r, r))
    for i, pi in enumerate(parts):
        rows = m.data[list(pi)]
        for j, pj in enumerate(parts):
            b[i, j] = rows[:, list(pj)].sum() / len(pi)
    return QuotientMatrix(b, parts)
