"""Build the exhaustive connected-graph corpora used by the sweeps.

n <= 7 comes from the networkx graph atlas; n = 8 is obtained by attaching a
new vertex to every connected 7-vertex graph in all possible ways (every
connected graph has a non-cut vertex) and removing isomorphic duplicates.

    python tools/make_corpus.py src/alphaspectra/data
"""

from __future__ import annotations

import sys
from collections import defaultdict
from pathlib import Path

import networkx as nx

from alphaspectra.graph import Graph, write_graph6

EXPECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


def atlas_connected(n: int) -> list[nx.Graph]:
    return [g for g in nx.graph_atlas_g() if g.number_of_nodes() == n and nx.is_connected(g)]


def _key(g: nx.Graph):
    degs = tuple(sorted(d for _, d in g.degree()))
    return degs, nx.weisfeiler_lehman_graph_hash(g, iterations=3)


def extend_by_one(graphs: list[nx.Graph]) -> list[nx.Graph]:
    buckets: dict = defaultdict(list)
    for base in graphs:
        n = base.number_of_nodes()
        for mask in range(1, 1 << n):
            h = base.copy()
            h.add_node(n)
            h.add_edges_from((v, n) for v in range(n) if mask >> v & 1)
            bucket = buckets[_key(h)]
            if not any(nx.is_isomorphic(h, other) for other in bucket):
                bucket.append(h)
    return [g for bucket in buckets.values() for g in bucket]


def to_graph(g: nx.Graph) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(g.nodes()))}
    return Graph(len(mapping), [(mapping[u], mapping[v]) for u, v in g.edges()])


def main(out: str) -> None:
    outdir = Path(out)
    outdir.mkdir(parents=True, exist_ok=True)
    by_n = {n: atlas_connected(n) for n in range(1, 8)}
    by_n[8] = extend_by_one(by_n[7])
    for n, graphs in by_n.items():
        if len(graphs) != EXPECTED[n]:
            raise SystemExit(f"n={n}: got {len(graphs)} graphs, expected {EXPECTED[n]}")
        encoded = [to_graph(g) for g in graphs]
        count = write_graph6(outdir / f"conn{n}.g6", encoded)
        print(f"conn{n}.g6: {count} graphs")
    for top in (7, 8):
        lines = []
        for n in range(1, top + 1):
            lines += (outdir / f"conn{n}.g6").read_text().splitlines()
        (outdir / f"conn_upto{top}.g6").write_text("\n".join(lines) + "\n")
        print(f"conn_upto{top}.g6: {len(lines)} graphs")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/alphaspectra/data")
