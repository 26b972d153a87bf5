"""Command-line front end: ``alphaspectra compute | bounds | search``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from pathlib import Path

from . import bounds as bd
from . import search as sr
from .graph import Graph, GraphError, graph6_encode, parse_adjacency_text, parse_family
from .invariants import SizeGuardError, compute_bundle
from .linalg import ConvergenceError, s_k
from .spectra import alpha0, alpha_energy, alpha_spectrum, check_alpha

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_PARSE = 2
EXIT_SIZE = 3
EXIT_FAILURE = 4

COMPUTE_MAX_ORDER = 400


class UsageError(ValueError):
    pass


def parse_alpha_grid(text: str) -> list[float]:
    """``start:end:step`` with ``end`` excluded; decimal arithmetic so 0:1:0.1 has ten points."""
    try:
        start, end, step = (Decimal(x) for x in text.split(":"))
    except (ValueError, InvalidOperation):
        raise UsageError(f"alpha grid must be start:end:step, got {text!r}") from None
    if step <= 0:
        raise UsageError("alpha grid step must be positive")
    out = []
    x = start
    while x < end:
        out.append(check_alpha(float(x)))
        x += step
    if not out:
        raise UsageError(f"alpha grid {text!r} is empty")
    return out


@dataclass
class RunConfig:
    command: str
    task: str | None = None
    family: str | None = None
    g6: list = field(default_factory=list)
    adj: str | None = None
    alphas: list = field(default_factory=list)
    ks: list = field(default_factory=list)
    all_k: bool = False
    catalog: str | None = None
    json_out: str | None = None
    out: str | None = None
    workers: int = 1
    dump_all: bool = False
    tol: float | None = None
    n: int | None = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        alphas = [check_alpha(a) for a in (ns.alpha or [])]
        if ns.alpha_grid:
            alphas += parse_alpha_grid(ns.alpha_grid)
        ks = list(ns.k or [])
        if any(k < 1 for k in ks):
            raise UsageError("k must be >= 1")
        workers = ns.workers if ns.workers is not None else sr.default_workers()
        if workers < 1:
            raise UsageError("--workers must be >= 1")
        if ns.tol is not None and not ns.tol >= 0:
            raise UsageError("--tol must be non-negative")
        for path in (ns.json, ns.out):
            if path and not Path(path).resolve().parent.is_dir():
                raise UsageError(f"output directory for {path} does not exist")
        return cls(
            command=ns.command,
            task=getattr(ns, "task", None),
            family=ns.family,
            g6=list(ns.g6 or []),
            adj=ns.adj,
            alphas=alphas,
            ks=ks,
            all_k=ns.all_k,
            catalog=ns.catalog,
            json_out=ns.json,
            out=ns.out,
            workers=workers,
            dump_all=ns.dump_all,
            tol=ns.tol,
            n=getattr(ns, "n", None),
        )

    def eps(self) -> float:
        return self.tol if self.tol is not None else bd.verification_eps()

    def catalog_subset(self):
        if self.catalog in (None, "", "sound", "all"):
            return self.catalog or None
        return [c.strip() for c in self.catalog.split(",") if c.strip()]


# ----------------------------------------------------------------------
# Input
# ----------------------------------------------------------------------

def load_graphs(cfg: RunConfig) -> list[Graph]:
    sources = sum(bool(x) for x in (cfg.family, cfg.g6, cfg.adj))
    if sources != 1:
        raise UsageError("give exactly one of --family, --g6, --adj")
    if cfg.family:
        return [parse_family(cfg.family)]
    if cfg.adj:
        return [parse_adjacency_text(Path(cfg.adj).read_text(encoding="utf-8"))]
    return [sr.graph6_decode(c) for c in load_codes(cfg)]


def load_codes(cfg: RunConfig) -> list[str]:
    codes = []
    for path in cfg.g6:
        codes += sr.read_graph6_codes(path)
    return codes


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------------
# compute
# ----------------------------------------------------------------------

def cmd_compute(cfg: RunConfig) -> int:
    graphs = load_graphs(cfg)
    if len(graphs) != 1:
        raise UsageError(f"compute needs exactly one graph, input holds {len(graphs)}")
    g = graphs[0]
    if g.n > COMPUTE_MAX_ORDER:
        raise SizeGuardError(f"compute is limited to n <= {COMPUTE_MAX_ORDER}, got n={g.n}")
    if g.n == 0:
        raise UsageError("graph has no vertices")
    bundle = compute_bundle(g)
    info = bundle.as_dict()
    info["graph6"] = graph6_encode(g)
    info["alpha0"] = alpha0(g)
    rows = []
    for a in cfg.alphas or [0.5]:
        spec = alpha_spectrum(g, a)
        ks = range(1, g.n + 1) if cfg.all_k else (cfg.ks or [1])
        for k in ks:
            if k > g.n:
                raise UsageError(f"k={k} exceeds n={g.n}")
        rows.append({
            "alpha": a,
            "spectrum": list(spec.eigenvalues),
            "energy": alpha_energy(g, a),
            "sk": {str(k): s_k(spec, k) for k in ks},
        })
    info["alpha_results"] = rows
    if cfg.json_out:
        _emit(json.dumps(info, indent=2, sort_keys=True) + "\n", None if cfg.json_out == "-" else cfg.json_out)
    else:
        _emit(_compute_text(info), cfg.out)
    return EXIT_OK


def _fmt(x) -> str:
    return f"{x:.10g}" if isinstance(x, float) else str(x)


def _compute_text(info: dict) -> str:
    lines = [f"graph6 {info['graph6']}"]
    for key in ("n", "m", "Delta", "delta", "Z1", "beta", "eta", "theta", "chi",
                "connected", "regular_degree", "bipartition", "alpha0"):
        if key in info:
            lines.append(f"{key} {_fmt(info[key])}")
    for row in info["alpha_results"]:
        lines.append(f"alpha {_fmt(row['alpha'])}")
        lines.append("  spectrum " + " ".join(_fmt(x) for x in row["spectrum"]))
        lines.append(f"  energy {_fmt(row['energy'])}")
        for k, v in row["sk"].items():
            lines.append(f"  S_{k} {_fmt(v)}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# bounds
# ----------------------------------------------------------------------

def cmd_bounds(cfg: RunConfig) -> int:
    graphs = load_graphs(cfg)
    alphas = cfg.alphas or [0.5]
    eps = cfg.eps()
    subset = cfg.catalog_subset()
    # None means every k of each entry's target matrix
    ks = None if cfg.all_k else (cfg.ks or [1])
    records = []
    for g in graphs:
        records += bd.sweep_graph(g, alphas, subset, ks, eps)
    bad = bd.violations(records, eps)
    applicable = [r for r in records if r.applicable]
    if cfg.out:
        chosen = records if cfg.dump_all else bad
        Path(cfg.out).write_text(bd.records_to_csv(chosen), encoding="utf-8", newline="")
    if cfg.json_out:
        summary = {
            "graphs": len(graphs),
            "alpha_grid": alphas,
            "records": len(records),
            "applicable": len(applicable),
            "violations": [r.as_dict() for r in bad],
            "eps": eps,
        }
        _emit(json.dumps(summary, indent=2, sort_keys=True) + "\n", None if cfg.json_out == "-" else cfg.json_out)
    by_id: dict[str, int] = {}
    for r in bad:
        by_id[r.id] = by_id.get(r.id, 0) + 1
    print(f"graphs {len(graphs)}  records {len(records)}  applicable {len(applicable)}  violations {len(bad)}")
    for id, count in sorted(by_id.items()):
        print(f"  {id}: {count} violations")
    return EXIT_VIOLATIONS if bad else EXIT_OK


# ----------------------------------------------------------------------
# search
# ----------------------------------------------------------------------

def _universe(cfg: RunConfig) -> tuple[list[str], str]:
    if cfg.g6:
        return load_codes(cfg), ",".join(Path(p).name for p in cfg.g6)
    if cfg.family:
        g = parse_family(cfg.family)
        return [graph6_encode(g)], cfg.family
    raise UsageError("this search task needs --g6 input")


def cmd_search(cfg: RunConfig) -> int:
    task = cfg.task
    if task == "t55":
        report = sr.reproduce_theorem_5_5(cfg.alphas or sr.T55_ALPHAS, cfg.n or sr.T55_ORDER)
    elif task == "c13":
        if cfg.g6 or cfg.family:
            codes, name = _universe(cfg)
        else:
            codes, name = sr.read_graph6_codes(Path(sr.data_dir()) / "conn_upto8.g6"), "connected n<=8"
        alphas = cfg.alphas or [0.5, 0.6, 0.7, 0.8, 0.9]
        report = sr.check_conjecture_1_3(codes, alphas, cfg.ks or None, cfg.eps(), cfg.workers, name)
        if cfg.dump_all and cfg.out:
            _dump_c13(cfg.out, codes, report.universe["alpha_grid"], cfg.ks or None)
    elif task == "c12":
        if cfg.n is None or len(cfg.ks) != 1:
            raise UsageError("c12 needs --n and a single --k")
        universe, name = (_universe(cfg) if cfg.g6 else (None, None))
        report = sr.check_conjecture_1_2(cfg.n, cfg.ks[0], universe, cfg.eps(), cfg.workers, name)
    elif task == "p12min":
        codes, name = _universe(cfg)
        report = sr.minimize_f_problem_1_2(codes, cfg.alphas or [0.5], cfg.workers, name)
        if cfg.dump_all and cfg.out:
            rows = []
            for a in report.universe["alpha_grid"]:
                obj = sr.Objective("f_problem_1_2", a)
                rows += [(c, a, obj(sr.graph6_decode(c))) for c in codes]
            _write_csv(cfg.out, ("graph6", "alpha", "f"), rows)
    elif task == "extremal-table":
        codes, name = _universe(cfg)
        report = sr.extremal_table(codes, cfg.alphas or [0.5], cfg.workers, name)
    else:
        raise UsageError(f"unknown search task {task!r}")
    text = report.to_json()
    if cfg.json_out and cfg.json_out != "-":
        Path(cfg.json_out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(f"{report.task}: examined {report.count}, violations {len(report.violations)}, "
          f"min slack {report.min_slack}", file=sys.stderr)
    return EXIT_VIOLATIONS if report.violations else EXIT_OK


def _write_csv(path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\r\n")
        w.writerow(header)
        w.writerows(rows)


def _dump_c13(path, codes, alphas, ks) -> None:
    rows = []
    for code in codes:
        g = sr.graph6_decode(code)
        for a in alphas:
            spec = alpha_spectrum(g, a)
            for k in ks or range(1, g.n + 1):
                if k <= g.n:
                    lhs = s_k(spec, k)
                    rhs = sr.conjecture_1_3_bound(g.m, a, k)
                    rows.append((code, a, k, lhs, rhs, rhs - lhs))
    _write_csv(path, ("graph6", "alpha", "k", "lhs", "rhs", "slack"), rows)


# ----------------------------------------------------------------------
# Entry point
# ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", help="named family, e.g. path:12, complete_bipartite:3,4")
    p.add_argument("--g6", action="append", help="graph6 file (repeatable)")
    p.add_argument("--adj", help="edge-list file: first line n, then 'u v' per edge")
    p.add_argument("--alpha", type=float, action="append", help="alpha value (repeatable)")
    p.add_argument("--alpha-grid", help="start:end:step, end excluded")
    p.add_argument("--k", type=int, action="append", help="k value (repeatable)")
    p.add_argument("--all-k", action="store_true")
    p.add_argument("--catalog", help="comma-separated ids, 'sound' (default) or 'all'")
    p.add_argument("--json", nargs="?", const="-", help="JSON output (path, or stdout)")
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--workers", type=int, help="worker processes (default: available CPUs)")
    p.add_argument("--dump-all", action="store_true", help="write every per-graph row to --out")
    p.add_argument("--tol", type=float, help="verification epsilon (overrides ALPHASPECTRA_TOL)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="alphaspectra", description="A_alpha spectra, bound catalog and searches")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _common(sub.add_parser("compute", help="spectra and invariants of one graph"))
    _common(sub.add_parser("bounds", help="evaluate the bound catalog"))
    p = sub.add_parser("search", help="run a named search task")
    p.add_argument("task", choices=["t55", "c13", "c12", "p12min", "extremal-table"])
    p.add_argument("--n", type=int, help="order for t55 / c12")
    _common(p)
    return parser


COMMANDS = {"compute": cmd_compute, "bounds": cmd_bounds, "search": cmd_search}


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    try:
        cfg = RunConfig.from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (UsageError, GraphError, bd.CatalogError, bd.CertificateError, sr.SearchError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
