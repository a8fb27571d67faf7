"""Command line front end; compute subcommands call the library in process.

Exit codes: 0 success, 1 validation failure, 2 malformed input or usage.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import diophantine as dio
from .atbd import MutationError, corner_determinants, mutate, validate
from .dimer import DimerError, build_dimer
from .lattice import Vec
from .quiver import RECIPES, RecipeConfig, maslov_sequence, recipe_run
from .render import RenderSpec, render_base, render_graph, render_staircase_chart
from .serialize import (
    FormatError,
    base_dumps,
    base_loads,
    base_to_dict,
    graph_dumps,
    graph_loads,
    graph_to_dict,
    rational_to_json,
)
from .staircase import PRESETS, StaircaseError, staircase_table, staircase_sequence
from .tropical import TropicalError, build_edge_tripod, validate_stc, verify_chain

OK, INVALID, MALFORMED = 0, 1, 2


def _parse_config(text: str) -> dio.MarkovConfig:
    parts = [int(x) for x in text.split(",")]
    if len(parts) != 4:
        raise ValueError("config must be C0,C1,C2,m")
    return dio.MarkovConfig(*parts)


def _parse_triple(text: str) -> tuple[int, int, int]:
    parts = [int(x) for x in text.split(",")]
    if len(parts) != 3:
        raise ValueError("triple must be p,q,r")
    return tuple(parts)


def _emit(out, text: str):
    out.write(text if text.endswith("\n") else text + "\n")


def cmd_presets(args, out) -> int:
    rows = []
    for name, preset in PRESETS.items():
        surd, acc = preset.accumulation()
        rows.append(
            {
                "name": name,
                "label": preset.label,
                "seed": list(preset.seed),
                "coefficients": list(preset.markov.coefficients),
                "factor": preset.markov.m,
                "accumulation": acc,
            }
        )
    if args.format == "json":
        _emit(out, json.dumps(rows, indent=2))
    else:
        for r in rows:
            _emit(
                out,
                f"{r['name']:>9}  {r['label']:<28} seed {tuple(r['seed'])} "
                f"eq {tuple(r['coefficients'])};{r['factor']}  acc {r['accumulation']:.6f}",
            )
    return OK


def cmd_validate(args, out) -> int:
    base = base_loads(open(args.file).read())
    report = validate(base)
    if args.format == "json":
        _emit(out, json.dumps({
            "valid": report.valid,
            "issues": [
                {"vertex": i.vertex, "condition": i.condition, "message": i.message}
                for i in report.issues
            ],
        }, indent=2))
    else:
        _emit(out, "valid" if report.valid else "invalid")
        for i in report.issues:
            _emit(out, f"  vertex {i.vertex}: [{i.condition}] {i.message}")
    return OK if report.valid else INVALID


def cmd_mutate(args, out) -> int:
    base = base_loads(open(args.file).read())
    report = validate(base)
    if not report.valid:
        _emit(out, "input base is invalid:")
        for i in report.issues:
            _emit(out, f"  vertex {i.vertex}: [{i.condition}] {i.message}")
        return INVALID
    new_base, record = mutate(base, args.vertex, args.order)
    if args.format == "svg":
        _emit(out, render_base(new_base, RenderSpec()))
    else:
        _emit(out, base_dumps(new_base))
    return OK


def cmd_staircase(args, out) -> int:
    preset = PRESETS[args.preset]
    table = staircase_table(preset, args.steps)
    if args.format == "svg":
        _emit(out, render_staircase_chart(table))
        return OK
    if args.format == "json":
        doc = {
            "preset": table.preset,
            "seed": list(table.seed),
            "seed_weights": list(table.seed_weights),
            "accumulation": table.accumulation_float,
            "sharp_points": [rational_to_json(table.seed_sharp)]
            + [rational_to_json(r.sharp_point) for r in table.rows],
            "steps": [
                {
                    "n": r.n,
                    "triple": list(r.triple),
                    "weights": list(r.weights),
                    "ellipsoid": [rational_to_json(r.ellipsoid[0]), rational_to_json(r.ellipsoid[1])],
                    "sharp": rational_to_json(r.sharp_point),
                    "bound": r.volume_bound,
                    "gap": r.accumulation_gap,
                }
                for r in table.rows
            ],
        }
        _emit(out, json.dumps(doc, indent=2))
        return OK
    _emit(out, table.to_text())
    return OK


def cmd_dioph(args, out) -> int:
    cfg = _parse_config(args.config)
    if args.brute:
        solutions = dio.brute_force_solutions(cfg, args.bound)
    else:
        seed = _parse_triple(args.seed) if args.seed else dio.DEFAULT_SEEDS.get(cfg)
        if seed is None:
            _emit(out, "no default seed for this configuration; pass --seed p,q,r")
            return MALFORMED
        solutions = dio.solution_tree(cfg, seed, args.bound)
    rows = sorted(solutions)
    if args.format == "json":
        surd, acc = dio.accumulation_point(cfg)
        _emit(out, json.dumps({
            "solutions": [list(t) for t in rows],
            "accumulation": acc,
        }, indent=2))
    else:
        for t in rows:
            _emit(out, f"{t[0]},{t[1]},{t[2]}")
    return OK


def cmd_stc(args, out) -> int:
    if args.stc_cmd == "validate":
        graph = graph_loads(open(args.file).read())
        report = validate_stc(graph)
        if args.format == "json":
            _emit(out, json.dumps({
                "valid": report.valid,
                "issues": [
                    {"vertex": i.vertex, "condition": i.condition, "message": i.message}
                    for i in report.issues
                ],
            }, indent=2))
        else:
            _emit(out, "valid" if report.valid else "invalid")
            for i in report.issues:
                _emit(out, f"  [{i.condition}] {i.message}")
        return OK if report.valid else INVALID

    if args.stc_cmd == "tripod":
        preset = PRESETS[args.preset]
        triple = _parse_triple(args.triple)
        steps = staircase_sequence(preset, args.search_depth)
        step = next((s for s in steps if s.triple == triple), None)
        if step is None:
            _emit(out, f"triple {triple} is not on the first {args.search_depth} steps")
            return MALFORMED
        tripod = build_edge_tripod(
            preset.markov, step.triple, step.base, step.frozen, step.q_corner, step.r_corner
        )
        if args.format == "svg":
            _emit(out, render_graph(tripod.graph))
        else:
            _emit(out, graph_dumps(tripod.graph))
        return OK

    if args.stc_cmd == "dimer":
        groups = []
        for part in args.classes.split(";"):
            m, x, y = (int(v) for v in part.split(","))
            groups.append((m, Vec(x, y)))
        if len(groups) != 3:
            _emit(out, "three classes required: m,x,y;m,x,y;m,x,y")
            return MALFORMED
        model = build_dimer(
            groups[0][0], groups[0][1], groups[1][0], groups[1][1], groups[2][0], groups[2][1]
        )
        doc = {
            "faces": len(model.faces),
            "edges": len(model.edges),
            "bipartite": model.is_bipartite(),
            "zigzags": sorted([v.x, v.y] for v in model.zigzag_classes()),
        }
        _emit(out, json.dumps(doc, indent=2))
        return OK

    if args.stc_cmd == "chain":
        cert = verify_chain(args.case, args.q, args.r)
        doc = {
            "case": cert.case,
            "q": cert.q,
            "r": cert.r,
            "passed": cert.passed,
            "chain": list(cert.chain),
            "intersections": cert.intersection_count,
            "identities": [
                {"name": i.name, "lhs": str(i.lhs), "rhs": str(i.rhs), "ok": i.ok}
                for i in cert.identities
            ],
        }
        _emit(out, json.dumps(doc, indent=2))
        return OK if cert.passed else INVALID

    return MALFORMED


def cmd_quiver(args, out) -> int:
    if args.fan in RECIPES:
        cfg = RECIPES[args.fan]
    else:
        rays = []
        for part in open(args.fan).read().split():
            x, y = (int(v) for v in part.split(","))
            rays.append(Vec(x, y))
        schedule = tuple(
            tuple(int(v) - 1 for v in group.split(",")) for group in args.cycle.split(";")
        )
        frozen = frozenset(int(v) - 1 for v in args.frozen.split(",")) if args.frozen else frozenset()
        cfg = RecipeConfig(
            rays=tuple(rays),
            schedule=schedule,
            frozen=frozen,
            initial_values=tuple(int(v) for v in args.initial.split(",")),
        )
    run = recipe_run(cfg, args.rounds)
    if args.emit == "sequence":
        _emit(out, json.dumps(list(run.sequence)))
    elif args.emit == "quotients":
        amped, quotients = maslov_sequence(run.sequence, cfg.maslov_weights)
        _emit(out, json.dumps({
            "weighted": [str(a) for a in amped],
            "quotients": [str(q) for q in quotients],
            "quotients_float": [float(q) for q in quotients],
        }, indent=2))
    else:
        for i, seed in enumerate(run.seeds):
            _emit(out, f"round {i + 1}: {[str(x) for x in seed.variables]}")
    return OK


def cmd_render(args, out) -> int:
    text = open(args.file).read()
    doc = json.loads(text)
    if "edges" in doc and "host" in doc:
        svg = render_graph(graph_loads(text))
    else:
        svg = render_base(base_loads(text), RenderSpec())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(svg)
    else:
        _emit(out, svg)
    return OK


def cmd_serve(args, out) -> int:
    import uvicorn

    from .service.app import create_app
    from .service.sessions import SessionStore

    app = create_app(SessionStore(args.session_dir))
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="atbench",
        description="Workbench for almost-toric base diagrams and their staircases",
    )
    sub = parser.add_subparsers(dest="cmd")

    def add_format(p, default="table", choices=("table", "json", "svg")):
        p.add_argument("--format", default=default, choices=choices)

    p = sub.add_parser("presets", help="list the built-in manifold presets")
    add_format(p, choices=("table", "json"))
    p.set_defaults(fn=cmd_presets)

    p = sub.add_parser("validate", help="check a base diagram file")
    p.add_argument("file")
    add_format(p, choices=("table", "json"))
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("mutate", help="mutate a base diagram file")
    p.add_argument("file")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--order", type=int, default=1)
    add_format(p, default="json", choices=("json", "svg"))
    p.set_defaults(fn=cmd_mutate)

    p = sub.add_parser("staircase", help="run a staircase for a preset")
    p.add_argument("--preset", required=True, choices=sorted(PRESETS))
    p.add_argument("--steps", type=int, required=True)
    add_format(p)
    p.set_defaults(fn=cmd_staircase)

    p = sub.add_parser("dioph", help="enumerate solutions of a Markov-type equation")
    p.add_argument("--config", required=True, help="C0,C1,C2,m")
    p.add_argument("--bound", type=int, default=200)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--tree", action="store_true", default=True)
    group.add_argument("--brute", action="store_true")
    p.add_argument("--seed", help="p,q,r solution to grow the tree from")
    add_format(p, choices=("table", "json"))
    p.set_defaults(fn=cmd_dioph)

    p = sub.add_parser("stc", help="tropical diagram tools")
    stc_sub = p.add_subparsers(dest="stc_cmd")

    q = stc_sub.add_parser("validate")
    q.add_argument("file")
    add_format(q, choices=("table", "json"))

    q = stc_sub.add_parser("tripod")
    q.add_argument("--preset", required=True, choices=sorted(PRESETS))
    q.add_argument("--triple", required=True, help="p,q,r")
    q.add_argument("--search-depth", type=int, default=16)
    add_format(q, default="json", choices=("json", "svg"))

    q = stc_sub.add_parser("dimer")
    q.add_argument("--classes", required=True, help="m,x,y;m,x,y;m,x,y")

    q = stc_sub.add_parser("chain")
    q.add_argument("--case", required=True, choices=("pxp", "bl3", "bl4"))
    q.add_argument("--q", type=int, required=True)
    q.add_argument("--r", type=int, required=True)
    p.set_defaults(fn=cmd_stc)

    p = sub.add_parser("quiver", help="run a cluster recipe")
    quiver_sub = p.add_subparsers(dest="quiver_cmd")
    q = quiver_sub.add_parser("run")
    q.add_argument("--fan", default="dp3", help="preset name or ray file")
    q.add_argument("--cycle", help="schedule groups, one-indexed: 1;2;5")
    q.add_argument("--frozen", help="one-indexed frozen vertices: 6")
    q.add_argument("--initial", default="1,1,1")
    q.add_argument("--rounds", type=int, default=16)
    q.add_argument("--emit", default="sequence", choices=("sequence", "seeds", "quotients"))
    p.set_defaults(fn=cmd_quiver)

    p = sub.add_parser("render", help="render a diagram file to SVG")
    p.add_argument("file")
    p.add_argument("-o", "--out")
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=int(os.environ.get("ATBENCH_PORT", "8430")))
    p.add_argument("--session-dir")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "fn", None):
        parser.print_usage(out)
        return MALFORMED
    if args.cmd == "stc" and not getattr(args, "stc_cmd", None):
        parser.print_usage(out)
        return MALFORMED
    if args.cmd == "quiver" and not getattr(args, "quiver_cmd", None):
        parser.print_usage(out)
        return MALFORMED
    try:
        return args.fn(args, out)
    except (FormatError, ValueError, FileNotFoundError) as exc:
        if isinstance(exc, (MutationError, StaircaseError, TropicalError, DimerError)):
            _emit(out, f"error: {exc}")
            return INVALID
        _emit(out, f"error: {exc}")
        return MALFORMED


if __name__ == "__main__":
    sys.exit(main())
