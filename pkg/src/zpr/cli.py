"""Command-line front end: ``python3 -m zpr <command> ...``.

Exit codes: 0 success, 1 violations found, 2 bad or unsupported input,
3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .augment import UnsupportedGraphError
from .export import EXPORTERS
from .generate import fixtures, gen
from .graph_model import InternalError, InvalidGraphError, OnePlaneGraph, validate
from .lift import ZprScene
from .pipeline import STAGES, draw
from .verify import verify_one_visible, verify_zpr

EXIT_OK, EXIT_VIOLATIONS, EXIT_BAD_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class BadInput(Exception):
    pass


def _load_json(path: str) -> object:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise BadInput(f"cannot read {path}: {exc}") from exc


def _load_graph(path: str) -> OnePlaneGraph:
    try:
        return OnePlaneGraph.from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise BadInput(f"malformed graph {path}: {exc}") from exc


def _load_scene(path: str) -> ZprScene:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise BadInput(f"malformed scene {path}: not an object")
    try:
        return ZprScene.from_json(data)
    except ValueError as exc:
        raise BadInput(str(exc)) from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _dumps(data: object) -> str:
    return json.dumps(data, indent=1, sort_keys=False) + "\n"


def _report_lines(rep) -> str:
    return "".join(json.dumps(v) + "\n" for v in rep.to_json())


def _ids(text: str | None) -> list[int] | None:
    return None if text is None else [int(x) for x in text.split(",") if x.strip()]


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> int:
    rep = validate(_load_graph(args.graph))
    sys.stdout.write(_report_lines(rep))
    return EXIT_OK if rep.ok else EXIT_VIOLATIONS


def cmd_draw(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    try:
        res = draw(g, _ids(args.sigma1), _ids(args.sigma2))
    except InvalidGraphError as exc:
        sys.stdout.write(_report_lines(exc.report))
        return EXIT_BAD_INPUT
    except UnsupportedGraphError as exc:
        print(f"unsupported input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:  # injected orders that do not extend the orientations
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    _write(args.output, _dumps(res.scene.to_json()))
    stages = [s for spec in args.dump_stage for s in spec.split(",") if s]
    if stages:
        base = Path(args.output) if args.output not in (None, "-") else Path(args.graph)
        for stage in stages:
            Path(f"{base.with_suffix('')}.{stage}.json").write_text(_dumps(res.stage_json(stage)))
    if args.verify:
        rep = verify_zpr(res.scene, g)
        rep.violations.extend(verify_one_visible(res.scene, g, res.gamma1))
        if not rep.ok:
            sys.stderr.write(_report_lines(rep))
            return EXIT_VIOLATIONS
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    scene = _load_scene(args.scene)
    g = _load_graph(args.graph)
    rep = verify_zpr(scene, g)
    if rep.ok:
        rep = verify_one_visible(scene, g)
    sys.stdout.write(_report_lines(rep))
    return EXIT_OK if rep.ok else EXIT_VIOLATIONS


def cmd_gen(args: argparse.Namespace) -> int:
    if args.fixture is not None:
        corpus = fixtures()
        if args.fixture not in corpus:
            raise BadInput(f"unknown fixture {args.fixture!r}; choose from {', '.join(corpus)}")
        g = corpus[args.fixture]
    else:
        seed = int(os.environ["ZPR_SEED"]) if os.environ.get("ZPR_SEED") else args.seed
        try:
            g = gen(seed, args.n, args.density, args.sparsity)
        except ValueError as exc:
            raise BadInput(str(exc)) from exc
    _write(args.output, _dumps(g.to_json()))
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    scene = _load_scene(args.scene)
    if not scene.rects:
        raise BadInput("malformed scene: no rectangles")
    _write(args.output, EXPORTERS[args.format](scene))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zpr", description="1-visible z-parallel representations of 1-plane graphs")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a graph file")
    s.add_argument("graph")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("draw", help="compute a scene for a graph")
    s.add_argument("graph")
    s.add_argument("-o", "--output", help="scene file (default: stdout)")
    s.add_argument(
        "--dump-stage",
        action="append",
        default=[],
        metavar="STAGE",
        help=f"also write an intermediate stage: {', '.join(STAGES)} (repeatable, comma-separated)",
    )
    s.add_argument("--verify", action="store_true", help="run the geometric oracle on the result")
    s.add_argument("--sigma1", help="comma-separated vertex ids overriding the first total order")
    s.add_argument("--sigma2", help="comma-separated vertex ids overriding the second total order")
    s.set_defaults(func=cmd_draw)

    s = sub.add_parser("verify", help="check a scene against a graph")
    s.add_argument("scene")
    s.add_argument("graph")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", help="emit a random instance or a fixture (ZPR_SEED overrides --seed)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-n", type=int, default=20)
    s.add_argument("--density", type=float, default=0.5)
    s.add_argument("--sparsity", type=float, default=0.0)
    s.add_argument("--fixture", help="emit a named fixture instead")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("export", help="render a scene")
    s.add_argument("scene")
    s.add_argument("--format", choices=sorted(EXPORTERS), required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_export)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "dump_stage", None):
        bad = [s for spec in args.dump_stage for s in spec.split(",") if s and s not in STAGES]
        if bad:
            print(f"unknown stage(s): {', '.join(bad)}", file=sys.stderr)
            return EXIT_BAD_INPUT
    try:
        return args.func(args)
    except BadInput as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
