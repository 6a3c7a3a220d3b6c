"""Command line interface.

Exit codes: 0 success, 2 invalid datum, 3 bad arguments, 4 capacity or
numeric failure, 5 not an infinite dihedral pair, 6 dominance disagreement.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from limitroots.config import get_settings
from limitroots.core.errors import (
    BadArguments,
    EmptySelection,
    LimitRootsError,
    NoHyperbolicPairs,
)
from limitroots.models.datum import CoxeterDatum
from limitroots.models.enums import Layer, Projection
from limitroots.models.limits import LimitCloud
from limitroots.schemas.limits import LimitsSummary
from limitroots.schemas.render import RenderSpec
from limitroots.schemas.roots import RootsResponse
from limitroots.services.datum_service import DatumService
from limitroots.services.dihedral_service import DihedralService
from limitroots.services.dominance_service import DominanceService
from limitroots.services.export_service import ExportService
from limitroots.services.limits_service import LimitsService
from limitroots.services.render_service import RenderService
from limitroots.services.rootgen_service import RootgenService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID_DATUM = 2
EXIT_BAD_ARGUMENTS = 3
EXIT_DISAGREEMENT = 6


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 3."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_ARGUMENTS, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def _load_datum(args: argparse.Namespace) -> CoxeterDatum:
    path = args.datum
    text = Path(path).read_text(encoding="utf-8")
    fmt = args.datum_format
    if fmt == "auto":
        fmt = DatumService.detect_format(path)
    overrides: list[tuple[int, int, float]] = []
    if args.overrides:
        overrides = DatumService.parse_overrides(Path(args.overrides).read_text(encoding="utf-8"))
    datum = DatumService.load(text, fmt, args.infinity_bond, overrides)
    logger.info(f"Loaded rank-{datum.rank} datum from {path} ({fmt})")
    return datum


def _positive(name: str, value: int, minimum: int = 1) -> None:
    if value < minimum:
        raise BadArguments(f"--{name} must be >= {minimum}, got {value}")


def cmd_roots(args: argparse.Namespace) -> int:
    _positive("depth", args.depth, 0)
    datum = _load_datum(args)
    table = RootgenService.generate_positive_roots(datum, args.depth)
    if args.format == "json":
        response = RootsResponse(
            rank=datum.rank,
            max_depth=table.max_depth,
            count=len(table),
            roots=ExportService.root_records(datum, table),
        )
        _emit(ExportService.to_json(response), args.out)
    else:
        _emit(ExportService.roots_csv(datum, table), args.out)
    return EXIT_OK


def cmd_dihedral(args: argparse.Namespace) -> int:
    _positive("iters", args.iters, 0)
    datum = _load_datum(args)
    a = RootgenService.parse_root_spec(datum, args.a)
    b = RootgenService.parse_root_spec(datum, args.b)
    pair = DihedralService.make_dihedral_pair(datum, a, b)
    report = DihedralService.dihedral_report(datum, pair, args.iters)
    _emit(ExportService.to_json(report), args.out)
    return EXIT_OK


def _empty_cloud(tol: float, min_depth: int | None = None) -> LimitCloud:
    return LimitCloud(points=(), residuals=(), provenance=(), cluster_tol=tol, min_depth=min_depth)


def cmd_limits(args: argparse.Namespace) -> int:
    _positive("depth", args.depth, 0)
    _positive("pairs", args.pairs)
    if args.min_depth > args.depth:
        raise BadArguments(f"--min-depth {args.min_depth} exceeds --depth {args.depth}")
    datum = _load_datum(args)
    table = RootgenService.generate_positive_roots(datum, args.depth)

    try:
        deep = LimitsService.estimate_limit_cloud(datum, table, args.min_depth, args.cluster_tol)
    except EmptySelection as e:
        logger.warning(f"Empty deep-root cloud: {e}")
        deep = _empty_cloud(args.cluster_tol, args.min_depth)
    try:
        e2 = LimitsService.sample_e2(datum, table, args.pairs, args.words)
    except NoHyperbolicPairs as e:
        logger.warning(f"Empty E2 sample: {e}")
        e2 = _empty_cloud(get_settings().E2_CLUSTER_TOL)

    summary = LimitsSummary(
        depth=args.depth,
        min_depth=args.min_depth,
        cluster_tol=args.cluster_tol,
        deep_points=len(deep),
        deep_max_residual=deep.max_residual,
        e2_points=len(e2),
        e2_max_residual=e2.max_residual,
        cross_validation_max_distance=(
            LimitsService.cross_validate(deep, e2) if len(deep) and len(e2) else None
        ),
    )
    _emit(ExportService.limits_csv(datum.rank, [deep, e2]), args.out)
    summary_path = args.summary or (
        str(Path(args.out).with_suffix(".summary.json")) if args.out else None
    )
    if summary_path:
        Path(summary_path).write_text(ExportService.to_json(summary), encoding="utf-8")
    logger.info(
        f"Limits: {summary.deep_points} deep clusters, {summary.e2_points} E2 points, "
        f"cross-validation {summary.cross_validation_max_distance}"
    )
    return EXIT_OK


def cmd_dominance(args: argparse.Namespace) -> int:
    _positive("depth", args.depth)
    _positive("max-pairs", args.max_pairs)
    _positive("oracle-len", args.oracle_len)
    datum = _load_datum(args)
    table = RootgenService.generate_positive_roots(datum, args.depth)
    sweep = DominanceService.dominance_sweep(
        datum, table, args.max_pairs, args.oracle_len, args.seed
    )
    _emit(ExportService.dominance_csv(sweep), args.out)
    if sweep.disagreements:
        logger.error(f"{sweep.disagreements} pairs disagree with the oracle")
        return EXIT_DISAGREEMENT
    return EXIT_OK


def _parse_layers(text: str) -> list[Layer]:
    try:
        return [Layer(name.strip()) for name in text.split(",") if name.strip()]
    except ValueError as e:
        raise BadArguments(f"unknown layer in {text!r}") from e


def cmd_render(args: argparse.Namespace) -> int:
    _positive("depth", args.depth, 0)
    spec = RenderSpec(
        width=args.width,
        height=args.height,
        projection=Projection(args.projection) if args.projection else None,
        layers=_parse_layers(args.layers),
    )
    datum = _load_datum(args)
    RenderService.resolve_projection(datum, spec)
    table = RootgenService.generate_positive_roots(datum, args.depth)
    _emit(RenderService.render_svg(datum, table, spec), args.out)
    return EXIT_OK


def cmd_neighborhood(args: argparse.Namespace) -> int:
    _positive("i", args.i, 0)
    datum = _load_datum(args)
    pair = DihedralService.make_dihedral_pair(
        datum,
        RootgenService.parse_root_spec(datum, args.a),
        RootgenService.parse_root_spec(datum, args.b),
    )
    etas = [pair.a_inf, pair.b_inf]
    table = None
    if args.depth is not None:
        table = RootgenService.generate_positive_roots(datum, args.depth)
        if args.samples:
            try:
                cloud = LimitsService.sample_e2(datum, table, args.samples, 1)
                etas.extend(cloud.points[: args.samples])
            except NoHyperbolicPairs as e:
                logger.warning(f"No extra probes: {e}")
    report = LimitsService.neighborhood_report(
        datum,
        pair,
        args.i,
        etas,
        i_max=args.i_max,
        table=table,
        eps=args.eps if table is not None else None,
    )
    _emit(ExportService.to_json(report), args.out)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("limitroots.main:app", host=args.host, port=args.port, reload=False)
    return EXIT_OK


def _add_datum_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("datum", help="Gram (.gram) or Coxeter (.cox) matrix file")
    parser.add_argument(
        "--datum-format",
        choices=["auto", "gram", "coxeter"],
        default="auto",
        help="file format; auto picks coxeter for .cox/.coxeter files",
    )
    parser.add_argument(
        "--infinity-bond",
        type=float,
        default=None,
        help="B(a, b) <= -1 used for infinite Coxeter bonds",
    )
    parser.add_argument("--overrides", help="file of 'i j value' lines for infinite bonds")
    parser.add_argument("--out", help="output file (default: standard output)")


def build_parser() -> ArgumentParser:
    settings = get_settings()
    parser = ArgumentParser(
        prog="limitroots",
        description="Normalized roots, limit roots and dominance of infinite Coxeter groups.",
    )
    parser.add_argument(
        "--log-level",
        default=settings.LOG_LEVEL,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
    )
    commands = parser.add_subparsers(dest="command", required=True)

    roots = commands.add_parser("roots", help="positive roots up to a depth")
    _add_datum_arguments(roots)
    roots.add_argument("--depth", type=int, required=True)
    roots.add_argument("--format", choices=["csv", "json"], default="csv")
    roots.set_defaults(handler=cmd_roots)

    dihedral = commands.add_parser("dihedral", help="closed forms of W_(a,b)")
    _add_datum_arguments(dihedral)
    dihedral.add_argument("--a", default="@1", help="root spec WORD@k")
    dihedral.add_argument("--b", default="@2", help="root spec WORD@k")
    dihedral.add_argument("--iters", type=int, default=20)
    dihedral.set_defaults(handler=cmd_dihedral)

    limits = commands.add_parser("limits", help="limit root estimates")
    _add_datum_arguments(limits)
    limits.add_argument("--depth", type=int, required=True)
    limits.add_argument("--min-depth", type=int, required=True)
    limits.add_argument("--cluster-tol", type=float, default=1e-4)
    limits.add_argument("--pairs", type=int, default=200)
    limits.add_argument("--words", type=int, default=2, help="orbit word length budget")
    limits.add_argument("--summary", help="summary JSON file (default: next to --out)")
    limits.set_defaults(handler=cmd_limits)

    dominance = commands.add_parser("dominance", help="dominance verdicts with oracle referee")
    _add_datum_arguments(dominance)
    dominance.add_argument("--depth", type=int, required=True)
    dominance.add_argument("--max-pairs", type=int, default=settings.DEFAULT_MAX_PAIRS)
    dominance.add_argument("--oracle-len", type=int, default=settings.DEFAULT_ORACLE_LEN)
    dominance.add_argument("--seed", type=int, default=0)
    dominance.set_defaults(handler=cmd_dominance)

    render = commands.add_parser("render", help="SVG picture")
    _add_datum_arguments(render)
    render.add_argument("--depth", type=int, required=True)
    render.add_argument("--layers", default="roots", help="comma list of roots,conic,limits,labels")
    render.add_argument("--width", type=int, default=settings.SVG_WIDTH)
    render.add_argument("--height", type=int, default=settings.SVG_HEIGHT)
    render.add_argument("--projection", choices=[p.value for p in Projection])
    render.set_defaults(handler=cmd_render)

    neighborhood = commands.add_parser("neighborhood", help="N_i certificates around a_inf")
    _add_datum_arguments(neighborhood)
    neighborhood.add_argument("--a", default="@1")
    neighborhood.add_argument("--b", default="@2")
    neighborhood.add_argument("--i", type=int, default=1)
    neighborhood.add_argument("--i-max", type=int, default=50)
    neighborhood.add_argument("--depth", type=int)
    neighborhood.add_argument("--eps", type=float, default=1e-6)
    neighborhood.add_argument("--samples", type=int, default=0)
    neighborhood.set_defaults(handler=cmd_neighborhood)

    serve = commands.add_parser("serve", help="run the HTTP API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(handler=cmd_serve)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except LimitRootsError as e:
        print(f"limitroots: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"limitroots: cannot read input: {e}", file=sys.stderr)
        return EXIT_INVALID_DATUM
    except ValueError as e:
        print(f"limitroots: {e}", file=sys.stderr)
        return EXIT_BAD_ARGUMENTS


if __name__ == "__main__":
    sys.exit(main())
