"""Command-line entry point: ``rcc-kit <subcommand> ...``.

Tables go out as CSV with a header row; structured results as JSON with
sorted keys.  With ``--out`` the payload is written to a file and a run
manifest is written next to it as ``<out>.manifest.json``.

Exit status: 0 on success, 1 on usage errors, 2 on data errors.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from rcckit import __version__
from rcckit._parallel import THREADS_ENV
from rcckit.centrality import METRICS, centrality, jaccard_overlap, top_k
from rcckit.community import core_community_distribution, detect_communities, supervertex_reduction
from rcckit.cores import core_numbers
from rcckit.diffusion import STRATEGIES, spread_experiment
from rcckit.generators import FAMILIES, GeneratorSpec
from rcckit.graph import format_edge_list, graph_stats, read_edge_list
from rcckit.modifier import modify_rcc
from rcckit.rcc import RccCriteria, detect_rcc, lemma_condition, reference_core, shell_to_core_distance
from rcckit.robustness import parse_fractions, robustness_sweep
from rcckit.spectral import eigengap, shell_eigengap_profile

logger = logging.getLogger("rcckit")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunManifest:
    command: str
    params: dict
    seed: int | None
    input_digest: str | None
    version: str
    timestamp: str

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------- formatting

def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, np.integer):
        return str(int(x))
    return str(x)


def to_csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        values = [row[h] for h in header] if isinstance(row, dict) else row
        w.writerow([_cell(v) for v in values])
    return buf.getvalue()


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def to_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _label(g, v):
    return g.labels[int(v)]


# ---------------------------------------------------------------- subcommands

def cmd_stats(args, g):
    row = graph_stats(g, k_min=args.k_min, with_betweenness=not args.no_betweenness).as_row()
    row = {"network": Path(args.input).stem, **row}
    return to_csv(list(row), [row])


def cmd_cores(args, g):
    core = core_numbers(g).core_number
    return to_csv(["vertex", "core"], [(_label(g, v), int(c)) for v, c in enumerate(core)])


def cmd_centrality(args, g):
    vals = centrality(g, args.metric, args.threads).values
    return to_csv(["vertex", args.metric], [(_label(g, v), float(x)) for v, x in enumerate(vals)])


def cmd_overlap(args, g):
    d = core_numbers(g)
    core = d.shell(d.max_core)
    row = {"network": Path(args.input).stem, "core_size": len(core)}
    for m in args.metrics:
        members = top_k(centrality(g, m, args.threads), len(core)).members
        row[m] = jaccard_overlap(core.tolist(), members)
    return to_csv(list(row), [row])


def cmd_eigengap(args, g):
    if args.per_shell or args.buckets:
        prof = shell_eigengap_profile(g, core_numbers(g), args.min_size, threads=args.threads)
        if args.buckets:
            rows = [(name, *prof.buckets[name]) for name in ("inner", "mid", "outer")
                    if name in prof.buckets]
            return to_csv(["bucket", "mean", "sd", "count"], rows)
        return to_csv(["shell", "n_k", "d_k", "lambda2"], [r.as_row() for r in prof.shells])
    res = eigengap(g)
    row = {"lambda2": res.lambda2, "cheeger_lower": res.cheeger_lower,
           "cheeger_upper": res.cheeger_upper, "component_count": res.component_count}
    return to_csv(list(row), [row])


def cmd_rcc_detect(args, g):
    crit = RccCriteria(args.alpha, args.beta, args.density, args.strict)
    out = detect_rcc(g, crit, args.threads).to_dict()
    out["rcc_members"] = [_label(g, v) for v in out["rcc_members"]]
    return to_json(out)


def cmd_distance(args, g):
    d = core_numbers(g)
    x = args.core if args.core is not None else reference_core(g, d, args.density)
    dist = shell_to_core_distance(g, d, x)
    rows = [(k, r, unreach) for k, (r, unreach) in sorted(dist.items(), reverse=True)]
    return to_csv(["shell", "r", "unreachable"], rows)


def cmd_spread(args, g):
    rows = spread_experiment(g, args.strategies, args.seed_size, args.trials, args.seed, args.threads)
    return to_csv(["strategy", "trial", "fraction", "steps"], rows)


def cmd_robustness(args, g):
    res = robustness_sweep(g, args.metric, args.fractions, args.k, args.trials, args.seed,
                           giant_component=not args.full_graph, threads=args.threads)
    header = ["metric", "fraction", "trials", "k", "tau_mean", "tau_sd", "fragmented"]
    return to_csv(header, [r.as_row() for r in res])


def cmd_modify(args, g):
    new, plan = modify_rcc(g, args.h, args.gamma, args.mode, args.seed)
    extra = {}
    if args.out:
        doc = plan.to_dict()
        doc["top_vertices"] = [_label(g, v) for v in plan.top_vertices]
        doc["chosen_edges"] = [[_label(g, u), _label(g, v)] for u, v in plan.chosen_edges]
        extra[args.out + ".plan.json"] = to_json(doc)
    return format_edge_list(new), extra


def cmd_communities(args, g):
    p = detect_communities(g, args.seed)
    return to_csv(["vertex", "community"], [(_label(g, v), int(c)) for v, c in enumerate(p.labels)])


def cmd_supergraph(args, g):
    d = core_numbers(g)
    p = detect_communities(g, args.seed)
    doc = supervertex_reduction(g, p, d, args.threads).to_node_link()
    doc["graph"]["core_distribution"] = core_community_distribution(g, p, d)
    return to_json(doc)


def cmd_generate(args, g):
    spec = GeneratorSpec(args.family, dict(args.param), args.seed)
    extra = {}
    if args.out:
        extra[args.out + ".spec.json"] = to_json(json.loads(spec.to_json()))
    return format_edge_list(spec.build()), extra


def cmd_lemma(args, g):
    res = lemma_condition(g, edges=args.edges)
    closeness = centrality(g, "closeness", args.threads).values
    best = int(np.lexsort((np.arange(len(closeness)), -closeness))[0])
    d = core_numbers(g)
    doc = {
        "core": res.core,
        "estimates": {str(k): v for k, v in res.estimates.items()},
        "excluded": list(res.excluded),
        "witnesses": {str(k): v for k, v in res.witnesses.items()},
        "max_closeness_vertex": _label(g, best),
        "max_closeness_in_core": res.core is not None and int(d.core_number[best]) >= res.core,
    }
    return to_json(doc)


# ---------------------------------------------------------------- parser

def _param(text: str):
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key, json.loads(value)
    except json.JSONDecodeError:
        return key, value


def _csv_list(choices):
    def parse(text):
        items = [t.strip() for t in text.split(",") if t.strip()]
        bad = [t for t in items if t not in choices]
        if bad or not items:
            raise argparse.ArgumentTypeError(f"choose from {', '.join(choices)}")
        return items
    return parse


def _fractions(text):
    try:
        out = parse_fractions(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if not out:
        raise argparse.ArgumentTypeError("empty fraction list")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rcc-kit", description="Core/periphery and centrality analysis of edge lists.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--out", help="write the payload here (plus a manifest) instead of stdout")
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default: ${THREADS_ENV} or 1)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    def add(name, func, help_, takes_input=True):
        p = sub.add_parser(name, parents=[common], help=help_)
        if takes_input:
            p.add_argument("input", help="edge list file")
        p.set_defaults(func=func, takes_input=takes_input)
        return p

    p = add("stats", cmd_stats, "whole-graph statistics row")
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--no-betweenness", action="store_true")

    add("cores", cmd_cores, "core number per vertex")

    p = add("centrality", cmd_centrality, "centrality per vertex")
    p.add_argument("--metric", choices=METRICS, default="closeness")

    p = add("overlap", cmd_overlap, "Jaccard overlap of the innermost shell with top-k sets")
    p.add_argument("--metrics", type=_csv_list(METRICS), default=list(METRICS))

    p = add("eigengap", cmd_eigengap, "normalized-Laplacian eigengap")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--per-shell", action="store_true")
    grp.add_argument("--buckets", action="store_true")
    p.add_argument("--min-size", type=int, default=3)

    p = add("rcc-detect", cmd_rcc_detect, "rich centrality club verdict (JSON)")
    p.add_argument("--alpha", type=float, default=0.5, help="eigengap threshold")
    p.add_argument("--beta", type=float, default=4.0, help="distance threshold")
    p.add_argument("--density", type=float, default=0.8, help="reference core density")
    p.add_argument("--strict", action="store_true", help="apply the eigengap test to every shell")

    p = add("distance", cmd_distance, "mean hop distance from each shell to a core")
    p.add_argument("--core", type=int, default=None)
    p.add_argument("--density", type=float, default=0.8)

    p = add("spread", cmd_spread, "flood-broadcast steps per seed strategy")
    p.add_argument("--strategies", type=_csv_list(STRATEGIES), default=list(STRATEGIES))
    p.add_argument("--seed-size", type=int, default=10)
    p.add_argument("--trials", type=int, default=10)

    p = add("robustness", cmd_robustness, "top-k Kendall tau under random edge deletion")
    p.add_argument("--metric", choices=METRICS, default="closeness")
    p.add_argument("--fractions", type=_fractions, default=_fractions("0.01:0.08:0.01"))
    p.add_argument("--k", type=int, default=50)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--full-graph", action="store_true",
                   help="rank over all components instead of the largest one")

    p = add("modify", cmd_modify, "insert or remove a club among top-degree vertices")
    p.add_argument("--h", type=int, default=30)
    p.add_argument("--gamma", type=float, default=0.2)
    p.add_argument("--mode", choices=("insert", "remove"), default="insert")

    add("communities", cmd_communities, "label-propagation community per vertex")
    add("supergraph", cmd_supergraph, "community/core supervertex graph (JSON)")

    p = add("generate", cmd_generate, "synthetic edge list", takes_input=False)
    p.add_argument("--family", choices=sorted(FAMILIES), required=True)
    p.add_argument("--param", type=_param, action="append", default=[],
                   help="generator parameter as key=value (value parsed as JSON)")

    p = add("lemma", cmd_lemma, "core predicted to hold the most central vertices (JSON)")
    p.add_argument("--edges", choices=("incident", "induced"), default="incident")
    return parser


def _digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def run(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv:
        parser.print_usage(sys.stderr)
        return 1
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(str(exc), file=sys.stderr)
        return 1
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        g = read_edge_list(args.input) if args.takes_input else None
        result = args.func(args, g)
        payload, extra = result if isinstance(result, tuple) else (result, {})
        if args.out:
            Path(args.out).write_text(payload)
            for path, text in extra.items():
                Path(path).write_text(text)
            params = {k: v for k, v in vars(args).items()
                      if k not in ("func", "takes_input", "verbose")}
            manifest = RunManifest(
                command=args.command,
                params=_jsonable(params),
                seed=args.seed,
                input_digest=_digest(args.input) if args.takes_input else None,
                version=__version__,
                timestamp=datetime.now(timezone.utc).isoformat(),
            )
            Path(args.out + ".manifest.json").write_text(manifest.to_json())
        else:
            sys.stdout.write(payload)
    except (OSError, ValueError, TypeError, KeyError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc), "command": args.command}
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
