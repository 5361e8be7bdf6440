"""Command line interface.

Every command reads a JSON instance file and reports one JSON object per
line on stdout.  Exit codes: 0 yes/success, 1 no (valid input, negative
verdict), 2 invalid input, 3 inconclusive (search bound or timeout).
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import os
import sys
from pathlib import Path

from .errors import GraphError, NotViable
from .instance_io import Instance, dumps_instance, load_instance, load_walk, save_instance
from .oracle import (
    gen_grid_window,
    gen_near_quadrangulation,
    gen_viable_cycle_coloring,
    oracle_extend_4,
)
from .plane import (
    HuedPatch,
    boundary_of,
    compute_hues,
    coloring_extends,
    is_near_eulerian,
    is_near_quadrangulation,
    is_odd_patch,
    is_proper_coloring,
    validate_patch,
)
from .quad import build_patch_from_cycle, decide_quad, extend_quad
from .single_hexagon import decide_single_hexagon
from .walks import (
    ClosedWalk,
    NecessaryReport,
    necessary_condition_general,
    retract_with_witness,
    topological_retract_closed,
)

EXIT_YES = 0
EXIT_NO = 1
EXIT_INVALID = 2
EXIT_INCONCLUSIVE = 3


def _emit(obj: dict) -> None:
    print(json.dumps(obj, separators=(", ", ": ")))


def _hued_patch(inst: Instance) -> HuedPatch:
    patch = validate_patch(inst.graph)
    hues = inst.hues if inst.hues is not None else compute_hues(patch)
    return HuedPatch(patch, tuple(hues))


def _need_boundary_coloring(inst: Instance) -> dict:
    if inst.boundary_coloring is None:
        raise GraphError("instance has no boundary_coloring")
    return inst.boundary_coloring


def cmd_validate(args) -> int:
    inst = load_instance(args.file)
    report: dict = {"vertices": inst.graph.n, "edges": inst.graph.edge_count}
    try:
        patch = validate_patch(inst.graph)
    except GraphError as exc:
        _emit({"valid": False, "error": str(exc), **report})
        return EXIT_INVALID
    report["patch"] = True
    report["near_eulerian"] = is_near_eulerian(patch)
    report["near_quadrangulation"] = is_near_quadrangulation(inst.graph)
    hued = HuedPatch(patch, tuple(inst.hues or compute_hues(patch)))
    report["odd_patch"] = is_odd_patch(hued)
    _emit({"valid": True, **report})
    return EXIT_YES


def cmd_hues(args) -> int:
    inst = load_instance(args.file)
    patch = validate_patch(inst.graph)
    _emit({"hues": compute_hues(patch)})
    return EXIT_YES


def cmd_viable(args) -> int:
    inst = load_instance(args.file)
    hued = _hued_patch(inst)
    phi = _need_boundary_coloring(inst)
    from .single_hexagon import boundary_viability

    images = boundary_viability(hued, phi)
    if images is None:
        _emit({"viable": False})
        return EXIT_NO
    _emit({"viable": True, "witness": [list(p) for p in images]})
    return EXIT_YES


def cmd_decide(args) -> int:
    inst = load_instance(args.file)
    hued = _hued_patch(inst)
    phi = _need_boundary_coloring(inst)
    verdict = decide_single_hexagon(hued, phi)
    out: dict = {"status": verdict.status}
    if verdict.extends:
        assert verdict.coloring is not None
        assert is_proper_coloring(hued.patch.graph, verdict.coloring)
        assert coloring_extends(verdict.coloring, phi)
        if args.witness:
            out["coloring"] = [list(c) for c in verdict.coloring]
        _emit(out)
        return EXIT_YES
    _emit(out)
    return EXIT_INCONCLUSIVE if verdict.status == "not_single_hexagon" else EXIT_NO


def cmd_quad_decide(args) -> int:
    inst = load_instance(args.file)
    phi = _need_boundary_coloring(inst)
    ok = decide_quad(inst.graph, phi)
    _emit({"extends": ok})
    return EXIT_YES if ok else EXIT_NO


def cmd_quad_extend(args) -> int:
    inst = load_instance(args.file)
    phi = _need_boundary_coloring(inst)
    got = extend_quad(inst.graph, phi)
    if got is None:
        _emit({"extends": False})
        return EXIT_NO
    ext, colors = got
    assert is_proper_coloring(ext.patch.graph, colors)
    assert coloring_extends(colors, phi)
    out: dict = {"extends": True, "extension_vertices": ext.patch.graph.n}
    if args.witness:
        out["coloring"] = [list(c) for c in colors]
    _emit(out)
    return EXIT_YES


def cmd_check_necessary(args) -> int:
    inst = load_instance(args.file)
    hued = _hued_patch(inst)
    phi = _need_boundary_coloring(inst)
    if args.subgraph == "boundary":
        edges = None
    elif args.subgraph == "full":
        edges = inst.graph.edges()
    else:
        edges = [tuple(e) for e in json.loads(Path(args.subgraph).read_text())]
    try:
        report: NecessaryReport = necessary_condition_general(
            hued, phi, subgraph_edges=edges, search_bound=args.bound
        )
    except NotViable:
        _emit({"status": "obstruction_proven", "reason": "not viable"})
        return EXIT_YES
    out = {"status": report.status, "reason": report.reason, "examined": report.examined}
    if report.witness is not None and args.witness:
        out["witness"] = [list(p) for p in report.witness.seq]
    _emit(out)
    return EXIT_YES if report.obstruction_proven else EXIT_INCONCLUSIVE


def cmd_oracle(args) -> int:
    inst = load_instance(args.file)
    phi = _need_boundary_coloring(inst)
    if args.timeout:
        import signal

        def _alarm(signum, frame):
            raise TimeoutError

        signal.signal(signal.SIGALRM, _alarm)
        signal.alarm(args.timeout)
    try:
        witness = oracle_extend_4(inst.graph, phi)
    except TimeoutError:
        _emit({"status": "timeout"})
        return EXIT_INCONCLUSIVE
    finally:
        if args.timeout:
            import signal

            signal.alarm(0)
    if witness is None:
        _emit({"extends": False})
        return EXIT_NO
    assert is_proper_coloring(inst.graph, witness)
    assert coloring_extends(witness, phi)
    out: dict = {"extends": True}
    if args.witness:
        out["coloring"] = [list(c) for c in witness]
    _emit(out)
    return EXIT_YES


def cmd_generate(args) -> int:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("PATCHCOLOR_SEED", "0"))
    if args.kind == "window":
        window = gen_grid_window(seed, triangles=args.triangles)
        d = window.dappled
        inst = Instance(
            d.hued.patch.graph,
            hues=list(d.hued.hue),
            colors=list(d.color),
            boundary_coloring={v: d.color[v] for v in d.hued.patch.boundary},
        )
    elif args.kind == "quad":
        g = gen_near_quadrangulation(seed, quads=args.quads)
        from .plane import bipartition

        hues = bipartition(g)
        boundary = boundary_of(g)
        colors = gen_viable_cycle_coloring(seed, [hues[v] for v in boundary])
        bc = (
            {v: c for v, c in zip(boundary, colors)} if colors is not None else None
        )
        inst = Instance(g, hues=hues, boundary_coloring=bc)
    elif args.kind == "cycle":
        rng_hues = _random_cycle_hues(seed, args.length)
        colors = gen_viable_cycle_coloring(seed, rng_hues)
        if colors is None:
            _emit({"error": "no viable coloring found for the sampled hue cycle"})
            return EXIT_INCONCLUSIVE
        m = args.length
        rotations = [[(i - 1) % m, (i + 1) % m] for i in range(m)]
        g = _cycle_graph(m)
        inst = Instance(
            g,
            hues=rng_hues,
            boundary_coloring={i: colors[i] for i in range(m)},
        )
    else:
        raise ValueError(args.kind)
    text = dumps_instance(inst)
    if args.out:
        save_instance(args.out, inst)
    else:
        print(text)
    return EXIT_YES


def _cycle_graph(m: int):
    from .plane import PlaneGraph

    rotations = [[(i - 1) % m, (i + 1) % m] for i in range(m)]
    return PlaneGraph(rotations, (0, 1))


def _random_cycle_hues(seed: int, length: int) -> list[int]:
    import random as _random

    rng = _random.Random(seed ^ 0x9E3779B9)
    while True:
        hues = [rng.randrange(3) for _ in range(length)]
        if all(hues[i] != hues[(i + 1) % length] for i in range(length)):
            return hues


def cmd_retract_walk(args) -> int:
    walk, closed = load_walk(args.file)
    if closed:
        z = topological_retract_closed(ClosedWalk(walk))
        out: dict = {
            "retract": [list(p) if isinstance(p, tuple) else p for p in z.seq],
            "null_homotopic": len(z) == 0,
        }
        _emit(out)
        return EXIT_YES
    retract, steps = retract_with_witness(walk)
    out = {"retract": [list(p) if isinstance(p, tuple) else p for p in retract]}
    if args.witness:
        out["steps"] = steps
    _emit(out)
    return EXIT_YES


_COMMANDS = {
    "validate": cmd_validate,
    "hues": cmd_hues,
    "viable": cmd_viable,
    "decide": cmd_decide,
    "quad-decide": cmd_quad_decide,
    "quad-extend": cmd_quad_extend,
    "check-necessary": cmd_check_necessary,
    "oracle": cmd_oracle,
    "generate": cmd_generate,
    "retract-walk": cmd_retract_walk,
}


def _run_one(item: tuple[str, list[str]]) -> tuple[str, int]:
    path, argv = item
    code, lines = _capture(argv + [path])
    out_path = Path(path).with_suffix(".result.json")
    out_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path, code


def _capture(argv: list[str]) -> tuple[int, list[str]]:
    import io
    from contextlib import redirect_stdout

    buf = io.StringIO()
    with redirect_stdout(buf):
        code = run(argv)
    return code, buf.getvalue().splitlines()


def run(argv: list[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "batch", None):
        files = sorted(str(p) for p in Path(args.batch).glob("*.json")
                       if not p.name.endswith(".result.json"))
        base_argv = [args.command] + (["--witness"] if getattr(args, "witness", False) else [])
        items = [(f, base_argv) for f in files]
        if args.workers > 1:
            with multiprocessing.Pool(args.workers) as pool:
                results = pool.map(_run_one, items)
        else:
            results = [_run_one(it) for it in items]
        for path, code in results:
            _emit({"file": path, "exit": code})
        return EXIT_YES
    try:
        return _COMMANDS[args.command](args)
    except GraphError as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return EXIT_INVALID
    except FileNotFoundError as exc:
        _emit({"error": "FileNotFound", "detail": str(exc)})
        return EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patchcolor",
        description="Precoloring extension for planar near-Eulerian triangulations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        if name not in ("generate",):
            p.add_argument("file", nargs="?", help="instance file")
            p.add_argument("--batch", help="process every *.json in a directory")
            p.add_argument("--workers", type=int, default=1)
        p.add_argument("--witness", action="store_true", help="emit witness data")
        return p

    add("validate", help="patch / near-Eulerian / near-quadrangulation report")
    add("hues", help="compute the canonical hue 3-coloring")
    add("viable", help="boundary viability and grid homomorphism witness")
    add("decide", help="single-hexagon decision pipeline")
    add("quad-decide", help="near-quadrangulation extension decision")
    add("quad-extend", help="near-quadrangulation extension witness")
    p = add("check-necessary", help="topological necessary condition")
    p.add_argument("--subgraph", default="boundary",
                   help="'boundary', 'full', or a JSON edge list file")
    p.add_argument("--bound", type=int, default=24, help="total combined length bound")
    p = add("oracle", help="ground-truth brute-force verdict")
    p.add_argument("--timeout", type=int, default=0, help="seconds before giving up")
    p = add("generate", help="emit a generated instance")
    p.add_argument("--kind", choices=("window", "quad", "cycle"), required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--triangles", type=int, default=6)
    p.add_argument("--quads", type=int, default=4)
    p.add_argument("--length", type=int, default=6)
    p.add_argument("--out", help="write the instance here instead of stdout")
    p = add("retract-walk", help="topological retract of a walk file")
    return parser


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
