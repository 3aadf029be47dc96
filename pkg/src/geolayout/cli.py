"""Batch entry point: generate / layout / metrics / bench / serve.

Exit codes: 0 success, 2 usage error, 3 input validation error, 4 runtime
failure. stdout carries only machine-readable results; logs go to stderr.

Layout parameters resolve with precedence: command-line flag, then
parameter file (--params, JSON with the layout-document params schema),
then environment variable (GEOLAYOUT_<FLAG>, e.g. GEOLAYOUT_GEO_WEIGHT),
then built-in default.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .bench import run_benchmark, to_csv
from .engine.params import LayoutParams
from .engine.simulation import simulate
from .errors import FormatError, GeoLayoutError, InvalidInputError
from .formats import (
    load_graph,
    load_layout,
    params_from_dict,
    save_graph,
    save_layout,
    state_for_graph,
)
from .generators import (
    TYPE_I,
    TYPE_II,
    ClusterSpec,
    DensityGraphSpec,
    gen_clustered,
    gen_density_graph,
    gen_expert_fixture,
)
from .graph import ProjectionConfig
from .metrics import compute_metrics

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_RUNTIME = 4

ENV_PREFIX = "GEOLAYOUT_"

_DEFAULTS = LayoutParams()

# (flag dest, params field, converter)
_PARAM_FIELDS = [
    ("k", "k", float),
    ("geo_weight", "geo_weight", float),
    ("temperature", "initial_temperature", float),
    ("alpha", "cooling_alpha", float),
    ("iterations", "n_iterations", int),
    ("seed", "seed", int),
    ("weighted_attraction", "weighted_attraction", bool),
    ("init_at_anchors", "init_at_anchors", bool),
    ("map_width", "map_width", float),
    ("map_height", "map_height", float),
    ("anchor_height", "anchor_height", float),
]


def _log(message: str) -> None:
    print(message, file=sys.stderr)


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    proj = _DEFAULTS.projection
    parser.add_argument("--params", type=Path, default=None,
                        help="JSON parameter file (layout-document params schema)")
    parser.add_argument("--k", type=float, default=None,
                        help="attraction/repulsion balance (default: derived, "
                             "((map_height/2)^3 / n)^(1/3))")
    parser.add_argument("--geo-weight", type=float, default=None,
                        help=f"geo-force weight K (default {_DEFAULTS.geo_weight})")
    parser.add_argument("--temperature", type=float, default=None,
                        help="initial temperature (default map_height/10)")
    parser.add_argument("--alpha", type=float, default=None,
                        help=f"cooling factor per iteration (default {_DEFAULTS.cooling_alpha})")
    parser.add_argument("--iterations", type=int, default=None,
                        help=f"iteration count (default {_DEFAULTS.n_iterations})")
    parser.add_argument("--seed", type=int, default=None,
                        help=f"64-bit layout seed (default {_DEFAULTS.seed})")
    parser.add_argument("--weighted-attraction", action=argparse.BooleanOptionalAction,
                        default=None, help="scale edge attraction by edge weight (default off)")
    parser.add_argument("--init-at-anchors", action=argparse.BooleanOptionalAction,
                        default=None, help="start anchored nodes on their anchors (default off)")
    parser.add_argument("--map-width", type=float, default=None,
                        help=f"viewport width of the map (default {proj.map_width})")
    parser.add_argument("--map-height", type=float, default=None,
                        help=f"viewport height of the map (default {proj.map_height})")
    parser.add_argument("--anchor-height", type=float, default=None,
                        help=f"z of geo anchors above the map (default {proj.anchor_height})")


def _env_value(dest: str, convert):
    raw = os.environ.get(ENV_PREFIX + dest.upper())
    if raw is None:
        return None
    if convert is bool:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    return convert(raw)


def resolve_params(args: argparse.Namespace) -> LayoutParams:
    """Merge flags > parameter file > environment > defaults."""
    file_params: dict = {}
    if args.params is not None:
        file_params = json.loads(Path(args.params).read_text(encoding="utf-8"))
        if not isinstance(file_params, dict):
            raise FormatError(f"{args.params}: parameter file must hold a JSON object")

    base = params_from_dict(file_params, where=str(args.params or "params"))
    merged = {
        "k": base.k,
        "geo_weight": base.geo_weight,
        "initial_temperature": base.initial_temperature,
        "cooling_alpha": base.cooling_alpha,
        "n_iterations": base.n_iterations,
        "seed": base.seed,
        "weighted_attraction": base.weighted_attraction,
        "init_at_anchors": base.init_at_anchors,
        "map_width": base.projection.map_width,
        "map_height": base.projection.map_height,
        "anchor_height": base.projection.anchor_height,
    }
    for dest, field_name, convert in _PARAM_FIELDS:
        flag_value = getattr(args, dest, None)
        if flag_value is None and (args.params is None or field_name not in _file_keys(file_params)):
            env = _env_value(dest, convert)
            if env is not None:
                merged[field_name] = env
        if flag_value is not None:
            merged[field_name] = flag_value

    projection = ProjectionConfig(
        map_width=merged.pop("map_width"),
        map_height=merged.pop("map_height"),
        anchor_height=merged.pop("anchor_height"),
    )
    return LayoutParams(projection=projection, **merged)


def _file_keys(file_params: dict) -> set:
    keys = set(file_params)
    for proj_key in file_params.get("projection", {}) if isinstance(file_params.get("projection"), dict) else ():
        keys.add(proj_key)
    return keys


def _read_file(path: Path) -> bytes:
    if not path.exists():
        raise FileNotFoundError(f"input file not found: {path}")
    return path.read_bytes()


# -- subcommands ---------------------------------------------------------

def cmd_generate(args: argparse.Namespace) -> int:
    if args.family == "clustered":
        spec = ClusterSpec(
            cluster_count=args.clusters,
            nodes_per_cluster=args.nodes_per_cluster,
            intra_edge_probability=args.intra_p,
            inter_edge_probability=args.inter_p,
            outlier_count=args.outliers,
            seed=args.gen_seed,
        )
        graph = gen_clustered(spec)
    elif args.family == "expert":
        graph = gen_expert_fixture(seed=args.gen_seed, n_experts=args.n_experts)
    else:
        spec = DensityGraphSpec(
            n=args.n,
            family=args.family,
            p=args.p if args.family == TYPE_I else None,
            c=args.c if args.family == TYPE_II else None,
            seed=args.gen_seed,
        )
        graph = gen_density_graph(spec)
    args.out.write_bytes(save_graph(graph))
    _log(f"wrote {len(graph)} nodes, {len(graph.edges)} edges to {args.out}")
    return EXIT_OK


def cmd_layout(args: argparse.Namespace) -> int:
    graph = load_graph(_read_file(args.input))
    params = resolve_params(args)
    state = simulate(graph, params)
    try:
        metrics = compute_metrics(graph, state, params.projection)
    except GeoLayoutError as exc:
        _log(f"metrics not embedded: {exc}")
        metrics = None
    args.out.write_bytes(save_layout(state, params, metrics))
    _log(f"wrote layout for {len(graph)} nodes to {args.out}")
    return EXIT_OK


def cmd_metrics(args: argparse.Namespace) -> int:
    graph = load_graph(_read_file(args.graph))
    state, params, _ = load_layout(_read_file(args.layout))
    cfg = ProjectionConfig(
        map_width=args.map_width if args.map_width is not None else params.projection.map_width,
        map_height=args.map_height if args.map_height is not None else params.projection.map_height,
        anchor_height=args.anchor_height if args.anchor_height is not None else params.projection.anchor_height,
    )
    bound = state_for_graph(state, graph, cfg)
    report = compute_metrics(graph, bound, cfg)
    print(json.dumps(report.to_dict(), indent=2))
    return EXIT_OK


def _parse_families(raw: str, placeholder_n: int) -> list[DensityGraphSpec]:
    # placeholder_n is only used to satisfy spec validation (c <= n-1);
    # run_benchmark substitutes each benchmark size.
    families = []
    for part in raw.split(";"):
        part = part.strip()
        if not part:
            continue
        try:
            family, param = part.split(":", 1)
            key, value = param.split("=", 1)
        except ValueError:
            raise InvalidInputError(
                f"bad family spec {part!r}; expected e.g. type1:p=0.5 or type2:c=50"
            ) from None
        families.append(DensityGraphSpec(
            n=placeholder_n,
            family=family.strip(),
            p=float(value) if key.strip() == "p" else None,
            c=float(value) if key.strip() == "c" else None,
        ))
    if not families:
        raise InvalidInputError("no benchmark families given")
    return families


def cmd_bench(args: argparse.Namespace) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    if not sizes:
        raise InvalidInputError("no benchmark sizes given")
    families = _parse_families(args.families, placeholder_n=max(sizes))
    params = resolve_params(args)
    _log(f"benchmarking sizes {sizes} x {len(families)} families, "
         f"{args.repetitions} repetitions each")
    runs = run_benchmark(sizes, families, params, repetitions=args.repetitions)
    csv_text = to_csv(runs)
    if args.out is not None:
        args.out.write_text(csv_text, encoding="utf-8")
        _log(f"wrote {len(runs)} rows to {args.out}")
    else:
        print(csv_text, end="")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import SessionManager, create_app

    manager = SessionManager(idle_timeout_seconds=args.idle_timeout)
    app = create_app(manager)
    if args.graph is not None:
        graph = load_graph(_read_file(args.graph))
        params = resolve_params(args)
        session = manager.create(graph, params)
        print(json.dumps({"preloaded_session_id": session.id}))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geolayout",
        description="Geographically constrained 3D force-directed graph layout",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="generate a synthetic graph file")
    gen_sub = p_gen.add_subparsers(dest="family", required=True)
    p_clustered = gen_sub.add_parser("clustered", help="three-region clustered semantic graph")
    p_clustered.add_argument("--clusters", type=int, default=3)
    p_clustered.add_argument("--nodes-per-cluster", type=int, default=70)
    p_clustered.add_argument("--intra-p", type=float, default=ClusterSpec().intra_edge_probability)
    p_clustered.add_argument("--inter-p", type=float, default=ClusterSpec().inter_edge_probability)
    p_clustered.add_argument("--outliers", type=int, default=ClusterSpec().outlier_count)
    p_expert = gen_sub.add_parser("expert", help="synthetic worldwide expert network")
    p_expert.add_argument("--n-experts", type=int, default=41)
    p_type1 = gen_sub.add_parser(TYPE_I, help="edge count = round(p n(n-1)/2)")
    p_type1.add_argument("--n", type=int, required=True)
    p_type1.add_argument("--p", type=float, required=True)
    p_type2 = gen_sub.add_parser(TYPE_II, help="edge count = round(c n / 2)")
    p_type2.add_argument("--n", type=int, required=True)
    p_type2.add_argument("--c", type=float, required=True)
    for sp in (p_clustered, p_expert, p_type1, p_type2):
        sp.add_argument("--gen-seed", type=int, default=0, help="generator seed (default 0)")
        sp.add_argument("--out", type=Path, required=True)
        sp.set_defaults(func=cmd_generate)

    p_layout = sub.add_parser("layout", help="run a layout on a graph file")
    p_layout.add_argument("input", type=Path, help="graph document")
    p_layout.add_argument("--out", type=Path, required=True)
    _add_param_flags(p_layout)
    p_layout.set_defaults(func=cmd_layout)

    p_metrics = sub.add_parser("metrics", help="compute metrics for a graph + layout")
    p_metrics.add_argument("--graph", type=Path, required=True)
    p_metrics.add_argument("--layout", type=Path, required=True)
    p_metrics.add_argument("--map-width", type=float, default=None)
    p_metrics.add_argument("--map-height", type=float, default=None)
    p_metrics.add_argument("--anchor-height", type=float, default=None)
    p_metrics.set_defaults(func=cmd_metrics)

    p_bench = sub.add_parser("bench", help="run the size-vs-time benchmark grid")
    p_bench.add_argument("--sizes", default="100,200,400,800,1600",
                         help="comma-separated node counts")
    p_bench.add_argument("--families", default="type1:p=0.05;type1:p=0.5;type2:c=50",
                         help="semicolon-separated family specs, e.g. type1:p=0.5")
    p_bench.add_argument("--repetitions", type=int, default=3)
    p_bench.add_argument("--out", type=Path, default=None, help="CSV path (default stdout)")
    _add_param_flags(p_bench)
    p_bench.set_defaults(func=cmd_bench)

    p_serve = sub.add_parser("serve", help="run the streaming layout server")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--graph", type=Path, default=None,
                         help="optionally preload a graph into a session")
    p_serve.add_argument("--idle-timeout", type=float, default=3600.0)
    _add_param_flags(p_serve)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, FormatError, InvalidInputError) as exc:
        _log(f"error: {exc}")
        return EXIT_INPUT
    except GeoLayoutError as exc:
        _log(f"runtime failure: {exc}")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
