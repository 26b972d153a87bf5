"""The twelve acceptance criteria, one test each, each printing a PASS/FAIL line."""

import json
import math
import random
import time
from fractions import Fraction

import numpy as np

from alphaspectra import search as sr
from alphaspectra.bounds import SOUNDNESS_IDS, sweep_graph, violations
from alphaspectra.cli import main
from alphaspectra.graph import (
    complement,
    complete_graph,
    cycle_graph,
    graph6_decode,
    graph6_encode,
    graph_power,
    line_graph,
    path_graph,
    petersen_graph,
)
from alphaspectra.bounds import evaluate_bound
from alphaspectra.invariants import is_k3_free_and_c4_free, matching_number, nullity
from alphaspectra.spectra import (
    a_alpha_matrix,
    complete_graph_sk,
    cosine_sum,
    path_sk_closed_form,
    sk_alpha,
    spectrum,
)

from conftest import ACCEPTANCE_LINES, DATA, random_graph

EPS = 1e-9
T55_GRID = [0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95]


def verdict(num, title, ok, detail):
    line = f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE_LINES[num] = line
    print(line)
    assert ok, line


def class_min(multisets):
    trees = list(sr.generate_trees(12))
    ok, _ = sr.feasible_multisets(multisets)
    return sr.minimum_over_class(trees, ok, sr.Objective("s2_q"))


def _class_minimum(num, multisets, expected):
    start = time.perf_counter()
    ext = class_min(multisets)
    took = time.perf_counter() - start
    err = abs(ext.value - expected)
    verdict(num, f"min S_2(Q) = {expected}", err <= 1e-4 and took < 5,
            f"got {ext.value:.6f} over {ext.count} trees, |err| {err:.2e}, {took:.2f}s")


def test_01_value_8_57037():
    _class_minimum(1, sr.CLASS_DELTA4, 8.57037)


def test_02_value_8_31903():
    _class_minimum(2, sr.CLASS_DELTA3_3, 8.31903)


def test_03_value_8_02294():
    _class_minimum(3, sr.CLASS_DELTA3_2, 8.02294)


def test_04_path_minimises_s2_over_trees():
    start = time.perf_counter()
    rep = sr.reproduce_theorem_5_5(T55_GRID)
    took = time.perf_counter() - start
    rows = rep.details["per_alpha"]
    unique = all(r["unique_path"] for r in rows)
    below = all(r["path_below_4"] for r in rows)
    ok = rep.count == 551 and unique and below and took < 60
    worst = max(r["path_s2"] for r in rows)
    verdict(4, "P_12 unique S_2 minimiser over 551 trees", ok,
            f"{rep.count} trees, unique argmin at {sum(r['unique_path'] for r in rows)}/{len(rows)} alphas, "
            f"max S_2(P_12) {worst:.6f} < 4, {took:.2f}s")


def test_05_path_closed_forms():
    worst_path = 0.0
    for n in range(1, 31):
        g = path_graph(n)
        for k in range(1, n + 1):
            worst_path = max(
                worst_path,
                abs(sk_alpha(g, 0, k) - path_sk_closed_form(n, k, 0, "i")),
                abs(sk_alpha(g, 0.5, k) - path_sk_closed_form(n, k, 0.5, "ii")),
            )
    worst_cos = 0.0
    for n in range(1, 201):
        for k in range(1, n + 1):
            direct = math.fsum(math.cos(i * math.pi / n) for i in range(1, k + 1))
            worst_cos = max(worst_cos, abs(cosine_sum(n, k) - direct))
    verdict(5, "path closed forms", worst_path <= 1e-9 and worst_cos <= 1e-12,
            f"max path error {worst_path:.2e} (n<=30), max cosine-sum error {worst_cos:.2e} (n<=200)")


def test_06_complete_graph_formula():
    worst = 0.0
    for n in range(1, 13):
        for a in (0, 0.25, 0.5, 0.75, 1):
            for k in range(1, n + 1):
                worst = max(worst, abs(sk_alpha(complete_graph(n), a, k) - complete_graph_sk(n, a, k)))
    verdict(6, "S_k(A_alpha(K_n)) formula", worst <= 1e-9, f"max error {worst:.2e}")


def test_07_soundness_sweep(conn_upto7):
    start = time.perf_counter()
    grid = [i / 10 for i in range(11)]
    records = 0
    applicable = 0
    bad = []
    for code in conn_upto7:
        recs = sweep_graph(graph6_decode(code), grid, SOUNDNESS_IDS, None, EPS)
        records += len(recs)
        applicable += sum(r.applicable for r in recs)
        bad += [(code, r) for r in violations(recs, EPS)]
    took = time.perf_counter() - start
    by_id = {}
    for _, r in bad:
        by_id[r.id] = by_id.get(r.id, 0) + 1
    detail = (f"{len(conn_upto7)} graphs, {applicable} applicable records, {len(bad)} violations "
              f"{dict(sorted(by_id.items()))}, {took:.0f}s")
    if bad:
        code, r = bad[0]
        detail += f"; first: {r.id} on {code} alpha={r.alpha} k={r.k} bound {r.value:.6g} > S_k {r.true_sk:.6g}"
    verdict(7, "catalog soundness sweep n<=7", len(conn_upto7) == 996 and not bad and took < 600, detail)


def test_08_equality_witnesses():
    worst51 = 0.0
    for g in (cycle_graph(5), complete_graph(4), petersen_graph()):
        for k in range(1, g.n + 1):
            for a in (0, 0.25, 0.5):
                worst51 = max(worst51, abs(evaluate_bound("L-5.1i", g, a, k).slack))
            for a in (0.5, 0.75, 1.0):
                worst51 = max(worst51, abs(evaluate_bound("L-5.1ii", g, a, k).slack))
    worst33 = 0.0
    checked = 0
    for n in range(2, 11):
        for a in (0.55, 0.75, 0.95):
            for k in range(1, n):
                r = evaluate_bound("U-3.3", complete_graph(n), a, k)
                assert r.applicable
                checked += 1
                worst33 = max(worst33, abs(r.slack))
    verdict(8, "equality witnesses", worst51 <= 1e-8 and worst33 <= 1e-8,
            f"regular-graph slack {worst51:.2e}, K_n slack {worst33:.2e} over {checked} cases")


def exact_a_alpha(g, a):
    adj = g.adjacency_matrix()
    return [[a * g.degrees[i] * (i == j) + (1 - a) * int(adj[i, j]) for j in range(g.n)] for i in range(g.n)]


def test_09_identities():
    rng = random.Random(2024)
    worst_line = 0.0
    done = 0
    while done < 100:
        g = random_graph(rng, rng.randint(2, 14), rng.uniform(0.1, 0.9))
        if g.m == 0:
            continue
        done += 1
        q = spectrum(g, "signless_laplacian")
        la = spectrum(line_graph(g), "adjacency")
        for i in range(min(g.n, g.m)):
            worst_line = max(worst_line, abs(q[i] - la[i] - 2))
    square_ok = 0
    while square_ok < 100:
        g = random_graph(rng, rng.randint(2, 16), rng.uniform(0.05, 0.3))
        if not is_k3_free_and_c4_free(g):
            continue
        a = g.adjacency_matrix().astype(np.int64)
        lap = np.diag(np.array(g.degrees, dtype=np.int64)) - a
        if not np.array_equal(graph_power(g, 2).adjacency_matrix(), a @ a - lap):
            break
        square_ok += 1
    comp_ok = 0
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 10), rng.random())
        h, kn = complement(g), complete_graph(g.n)
        for a in (0.0, 0.25, 0.5, 0.75, 1.0):
            assert np.array_equal(a_alpha_matrix(g, a).data + a_alpha_matrix(h, a).data, a_alpha_matrix(kn, a).data)
        a = Fraction(rng.randint(0, 100), 100)
        lhs = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(exact_a_alpha(g, a), exact_a_alpha(h, a))]
        comp_ok += lhs == exact_a_alpha(kn, a)
    ok = worst_line <= 1e-8 and square_ok == 100 and comp_ok == 100
    verdict(9, "identity suite", ok,
            f"line-graph shift error {worst_line:.2e}; A(G^2)=A^2-L exact on {square_ok}/100; "
            f"complement sum exact on {comp_ok}/100")


def test_10_monotone_in_alpha(conn_upto7):
    grid = [i / 10 for i in range(11)]
    worst = 0.0
    checks = 0
    for code in conn_upto7:
        g = graph6_decode(code)
        for k in range(1, g.n + 1):
            vals = [sk_alpha(g, a, k) for a in grid]
            for x, y in zip(vals, vals[1:]):
                worst = max(worst, x - y)
                checks += 1
    verdict(10, "S_k non-decreasing in alpha", worst <= 1e-9,
            f"{checks} consecutive-alpha checks, largest decrease {max(worst, 0):.2e}")


def brute_matching(g, free):
    if not free:
        return 0
    v = min(free)
    rest = free - {v}
    best = brute_matching(g, rest)
    for w in g.neighbors(v) & rest:
        best = max(best, 1 + brute_matching(g, rest - {w}))
    return best


def test_11_exact_invariants():
    rng = random.Random(99)
    match_ok = sum(
        matching_number(g) == brute_matching(g, frozenset(range(g.n)))
        for g in (random_graph(rng, rng.randint(1, 8), rng.random()) for _ in range(500))
    )
    trees = 0
    eta_ok = 0
    for n in range(1, 11):
        for t in sr.generate_trees(n):
            trees += 1
            eta_ok += nullity(t) == n - 2 * matching_number(t)
    rt_ok = 0
    for _ in range(10000):
        g = random_graph(rng, rng.randint(0, 62), rng.random())
        rt_ok += graph6_decode(graph6_encode(g)) == g
    ok = match_ok == 500 and eta_ok == trees and rt_ok == 10000
    verdict(11, "exact invariant oracles", ok,
            f"matching {match_ok}/500, eta=n-2beta {eta_ok}/{trees} trees, graph6 round-trip {rt_ok}/10000")


def test_12_conjecture_harness(tmp_path, capsys):
    out = tmp_path / "c13.json"
    start = time.perf_counter()
    code = main(["search", "c13", "--g6", str(DATA / "conn_upto8.g6"), "--alpha-grid", "0.5:1:0.1", "--json", str(out)])
    took = time.perf_counter() - start
    capsys.readouterr()
    rep = json.loads(out.read_text())
    keys = {"task", "universe", "count", "extremal", "violations", "min_slack", "runtime_s"}
    well_formed = keys <= rep.keys() and rep["count"] == 12113 and isinstance(rep["min_slack"], float)
    reverified = all(sr.reverify_violation(v) for v in rep["violations"])
    exit_ok = code == (1 if rep["violations"] else 0)
    certs_ok = all(graph6_decode(e["graph6"]).n <= 8 for e in rep["extremal"])
    # a second run with a different pool size must give the same report
    again = sr.check_conjecture_1_3(sr.read_graph6_codes(DATA / "conn_upto8.g6"), rep["universe"]["alpha_grid"], workers=2,
                                    universe_name=rep["universe"]["family"])
    same = {**again.as_dict(), "runtime_s": 0} == {**rep, "runtime_s": 0}
    ok = well_formed and reverified and exit_ok and certs_ok and same
    verdict(12, "conjecture harness over connected n<=8", ok,
            f"{rep['count']} graphs, {len(rep['violations'])} violations (all re-verified: {reverified}), "
            f"min slack {rep['min_slack']:.3e}, deterministic {same}, {took:.1f}s")
