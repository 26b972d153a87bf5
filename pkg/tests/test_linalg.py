import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from alphaspectra import linalg
from alphaspectra.graph import complete_graph, path_graph, star_graph
from alphaspectra.linalg import (
    ConvergenceError,
    SymMatrix,
    determinant,
    eigenvalues,
    inertia,
    near_zero_band,
    quotient_matrix,
    s_k,
    sum_squares,
    trace,
)
from alphaspectra.spectra import a_alpha_matrix, build_matrix

from conftest import graphs

finite = st.floats(-50, 50, allow_nan=False, allow_infinity=False)


@st.composite
def symmetric(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    a = draw(arrays(float, (n, n), elements=finite))
    return (a + a.T) / 2


def test_known_spectra():
    ev = eigenvalues(build_matrix(path_graph(3), "adjacency"))
    assert np.allclose(ev.eigenvalues, [math.sqrt(2), 0, -math.sqrt(2)], atol=1e-12)
    assert eigenvalues(SymMatrix(np.diag([3.0, 1.0, 2.0]))).eigenvalues == (3.0, 2.0, 1.0)
    q = eigenvalues(build_matrix(star_graph(4), "signless_laplacian"))
    assert np.allclose(q.eigenvalues, [4, 1, 1, 0], atol=1e-12)


def test_empty_and_scalar():
    assert eigenvalues(SymMatrix(np.zeros((0, 0)))).eigenvalues == ()
    assert eigenvalues(SymMatrix([[2.5]])).eigenvalues == (2.5,)


def test_s_k_examples():
    assert s_k([2, 0.5, 0.5], 2) == 2.5
    for a in (0, 0.3, 0.5, 1):
        assert s_k(eigenvalues(a_alpha_matrix(complete_graph(2), a)), 1) == pytest.approx(1, abs=1e-12)
    with pytest.raises(ValueError):
        s_k([1, 2], 3)
    with pytest.raises(ValueError):
        s_k([1, 2], 0)


def test_inertia_example():
    spec = eigenvalues(build_matrix(path_graph(3), "adjacency"))
    assert inertia(spec, 1e-9) == (1, 1, 1)
    assert near_zero_band(spec, 1e-9) == [spec[1]]
    with pytest.raises(ValueError):
        inertia(spec, -1)


def test_rejects_bad_matrices():
    with pytest.raises(ValueError):
        SymMatrix([[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        SymMatrix([[0, 1, 2]])
    with pytest.raises(ValueError):
        SymMatrix([[np.nan]])
    m = SymMatrix([[1.0]])
    with pytest.raises(AttributeError):
        m.data = None
    with pytest.raises(ValueError):
        m.data[0, 0] = 2


def test_convergence_error_carries_digest(monkeypatch):
    monkeypatch.setattr(linalg, "MAX_QL_ITERATIONS", 0)
    m = SymMatrix([[2.0, 1.0], [1.0, 2.0]])
    with pytest.raises(ConvergenceError, match=m.digest()):
        eigenvalues(m)


def test_functionals():
    m = SymMatrix([[2.0, 1.0], [1.0, 3.0]])
    assert trace(m) == 5.0
    assert sum_squares(m) == 4 + 1 + 1 + 9
    assert determinant(m) == pytest.approx(5.0, abs=1e-12)


def test_quotient_examples():
    s, t, a = 2, 3, 0.3
    from alphaspectra.graph import complete_bipartite_graph
    g = complete_bipartite_graph(s, t)
    q = quotient_matrix(a_alpha_matrix(g, a), [range(s), range(s, s + t)])
    assert np.allclose(q.matrix, [[a * t, (1 - a) * t], [(1 - a) * s, a * s]])
    m = a_alpha_matrix(path_graph(4), 0.4)
    assert np.array_equal(quotient_matrix(m, [[i] for i in range(4)]).matrix, m.data)
    q3 = quotient_matrix(a_alpha_matrix(complete_graph(3), 0.5), [[0], [1, 2]])
    assert np.allclose(q3.matrix, [[1, 1], [0.5, 1.5]])
    with pytest.raises(ValueError):
        quotient_matrix(m, [[0, 1], [1, 2, 3]])
    with pytest.raises(ValueError):
        quotient_matrix(m, [[0, 1], []])


@given(symmetric())
@settings(max_examples=300)
def test_matches_numpy(a):
    ours = np.array(eigenvalues(SymMatrix(a)).eigenvalues)
    ref = np.linalg.eigvalsh(a)[::-1]
    scale = max(1.0, np.abs(a).sum(axis=1).max())
    assert np.max(np.abs(ours - ref)) <= 1e-10 * scale


@given(symmetric())
def test_trace_and_square_sums(a):
    m = SymMatrix(a)
    spec = eigenvalues(m)
    scale = max(1.0, m.norm_inf())
    assert math.fsum(spec) == pytest.approx(trace(m), abs=1e-8 * scale * m.n)
    assert math.fsum(x * x for x in spec) == pytest.approx(sum_squares(m), rel=1e-8, abs=1e-8 * scale)
    assert list(spec) == sorted(spec, reverse=True)


@st.composite
def graph_and_partition(draw):
    g = draw(graphs(min_n=2, max_n=9))
    labels = draw(st.lists(st.integers(0, g.n - 1), min_size=g.n, max_size=g.n))
    parts = {}
    for v, lab in enumerate(labels):
        parts.setdefault(lab, []).append(v)
    alpha = draw(st.sampled_from([0.0, 0.25, 0.5, 0.8, 1.0]))
    return g, list(parts.values()), alpha


@given(graph_and_partition())
@settings(max_examples=200)
def test_interlacing_and_sk(case):
    g, parts, a = case
    m = a_alpha_matrix(g, a)
    xi = eigenvalues(m).eigenvalues
    eta = quotient_matrix(m, parts).eigenvalues().eigenvalues
    n, r = len(xi), len(eta)
    for i in range(r):
        assert xi[i] >= eta[i] - 1e-8
        assert eta[i] >= xi[n - r + i] - 1e-8
    for k in range(1, r + 1):
        assert s_k(eta, k) <= s_k(xi, k) + 1e-8
