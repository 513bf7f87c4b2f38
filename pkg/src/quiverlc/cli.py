"""Command line interface.

Exit codes: 0 on success, 1 when a verdict command (classify,
verify-section) reports failure, 2 on usage or input errors.  All output
is deterministic for a given invocation.  Vertices of the translation
quiver are written slice:base, e.g. 0:x or -1:2; pass `--` before
positional vertices that start with a minus sign.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import LazyQuiver, induced_subquiver, load_quiver, vertex_token
from .distances import (
    DEFAULT_BUDGET,
    left_lightcone_distance_q,
    left_lightcone_distance_zq,
    left_lightcone_zq,
    left_sphere,
    lightcone_distance_q,
    lightcone_distance_zq,
    lightcone_distance_zq_oracle,
    right_lightcone_zq,
    right_sphere,
    roundtrip_distance_q,
    roundtrip_distance_zq,
    roundtrip_sphere,
)
from .families import FAMILY_NAMES, family
from .paths import (
    PathCount,
    count_paths_zq,
    count_sectional_paths_zq,
    enumerate_paths_zq,
)
from .render import FORMATS, MODES, RenderSpec, render
from .sections import Section, build_section, classify, lightcone_section, verify_section
from .zq import Window, ZVertex, format_zvertex, parse_zvertex

DEFAULT_FAMILY_WINDOW = 8


def _add_input_options(sub: argparse.ArgumentParser) -> None:
    src = sub.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", help="quiver file to load")
    src.add_argument("--family", choices=FAMILY_NAMES, help="built-in lazy family")
    sub.add_argument("--strict", action="store_true", help="reject undeclared arrow endpoints")
    sub.add_argument(
        "--window",
        type=int,
        default=None,
        help=f"window radius (slices and bases; default {DEFAULT_FAMILY_WINDOW} for families)",
    )
    sub.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search expansion cap")
    sub.add_argument("--json", action="store_true", help="emit JSON instead of text")


def _load(args):
    if args.file is not None:
        return load_quiver(args.file, strict=args.strict)
    return family(args.family)


def _window(args, q) -> Window | None:
    if args.window is not None:
        return Window.radius(args.window)
    if isinstance(q, LazyQuiver):
        return Window.radius(DEFAULT_FAMILY_WINDOW)
    return None


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _auto_oracle_window(q, a: ZVertex, b: ZVertex) -> Window:
    # enough slices for the reachable sets to hit the target or stabilize
    hi = a.slice + len(q.vertices) + 2
    return Window(min(a.slice, b.slice), hi)


def _cmd_dist(args) -> int:
    q = _load(args)
    w = _window(args, q)
    zq_mode = (":" in args.x, ":" in args.y)
    if zq_mode[0] != zq_mode[1]:
        raise ValueError("mix of base and slice:base endpoints")
    if all(zq_mode):
        a = parse_zvertex(args.x)
        b = parse_zvertex(args.y)
        if args.oracle:
            if isinstance(q, LazyQuiver):
                ow = w
            else:
                ow = Window.radius(args.window) if args.window is not None else None
                ow = ow or _auto_oracle_window(q, a, b)
            d = lightcone_distance_zq_oracle(q, a, b, ow)
        elif args.left:
            d = left_lightcone_distance_zq(q, a, b, budget=args.budget, window=w)
        else:
            d = lightcone_distance_zq(q, a, b, budget=args.budget, window=w)
    else:
        if args.oracle:
            raise ValueError("--oracle needs slice:base endpoints")
        x = vertex_token(args.x)
        y = vertex_token(args.y)
        if args.left:
            d = left_lightcone_distance_q(q, x, y, budget=args.budget, window=w)
        else:
            d = lightcone_distance_q(q, x, y, budget=args.budget, window=w)
    _emit(args, d.to_json(), str(d))
    return 0


def _cmd_rtdist(args) -> int:
    q = _load(args)
    w = _window(args, q)
    zq_mode = (":" in args.x, ":" in args.y)
    if zq_mode[0] != zq_mode[1]:
        raise ValueError("mix of base and slice:base endpoints")
    if all(zq_mode):
        d = roundtrip_distance_zq(
            q, parse_zvertex(args.x), parse_zvertex(args.y),
            budget=args.budget, window=w,
        )
    else:
        d = roundtrip_distance_q(
            q, vertex_token(args.x), vertex_token(args.y),
            budget=args.budget, window=w,
        )
    _emit(args, d.to_json(), str(d))
    return 0


_SPHERES = {"roundtrip": roundtrip_sphere, "right": right_sphere, "left": left_sphere}


def _cmd_sphere(args) -> int:
    q = _load(args)
    w = _window(args, q)
    center = vertex_token(args.center)
    rep = _SPHERES[args.kind](q, center, args.radius, window=w)
    text = (
        f"kind={rep.kind} center={rep.center} radius={rep.radius} "
        f"complete={'yes' if rep.complete else 'no'} size={rep.size}\n"
        f"members: {' '.join(str(m) for m in rep.members)}"
    )
    _emit(args, rep.to_json(), text)
    return 0


def _cmd_lightcone(args) -> int:
    q = _load(args)
    w = _window(args, q) or Window.radius(DEFAULT_FAMILY_WINDOW)
    a = parse_zvertex(args.center)
    cone = (right_lightcone_zq if args.side == "right" else left_lightcone_zq)(q, a, w)
    names = [format_zvertex(v) for v in cone]
    _emit(args, {"side": args.side, "members": names}, "\n".join(names))
    return 0


def _cmd_classify(args) -> int:
    q = _load(args)
    w = _window(args, q)
    base = vertex_token(args.base) if args.base is not None else None
    rep = classify(q, base=base, window=w)
    if args.json:
        print(json.dumps(rep.to_json(), sort_keys=True))
    else:
        lines = [
            f"verdict: {rep.verdict}",
            f"exact: {'yes' if rep.exact else 'no'}",
            f"acyclic: {'yes' if rep.acyclic else 'no'}",
        ]
        if rep.cycle_witness:
            lines.append("cycle: " + "->".join(str(v) for v in rep.cycle_witness))
        for p in rep.sphere_probes:
            lines.append(
                f"sphere n={p.radius}: size={p.size} "
                f"{'complete' if p.complete else 'truncated'}"
            )
        for note in rep.counter_evidence:
            lines.append(f"counter-evidence: {note}")
        print("\n".join(lines))
    return 0 if rep.ok() else 1


def _cmd_section(args) -> int:
    q = _load(args)
    w = _window(args, q)
    center = parse_zvertex(args.center)
    if args.side == "balanced":
        s = build_section(q, center, scope=w, budget=args.budget)
    else:
        s = lightcone_section(q, center, scope=w, side=args.side, budget=args.budget)
    if args.json:
        print(json.dumps(s.to_json(), sort_keys=True))
    else:
        print("\n".join(f"{b} {s.selection[b]}" for b in s.bases()))
    return 0


def _cmd_verify_section(args) -> int:
    q = _load(args)
    w = _window(args, q)
    with open(args.section, "r", encoding="utf-8") as fh:
        sec = Section.from_json(json.load(fh))
    rep = verify_section(q, sec, scope=w, pair_budget=args.pair_budget, seed=args.seed)
    if args.json:
        print(json.dumps(rep.to_json(), sort_keys=True))
    else:
        lines = [
            f"valid: {'yes' if rep.valid else 'no'}",
            f"checked pairs: {rep.checked_pairs}{' (sampled)' if rep.sampled else ''}",
        ]
        for a, b, d in rep.negative_pairs[:10]:
            lines.append(
                f"negative pair: d({format_zvertex(a)}, {format_zvertex(b)}) = {d}"
            )
        for a, z, side in rep.arrow_violations[:10]:
            lines.append(
                f"arrow violation ({side}): {format_zvertex(a)} ~ {format_zvertex(z)}"
            )
        if rep.coverage_gaps:
            gaps = " ".join(str(g) for g in rep.coverage_gaps[:10])
            lines.append(f"uncovered orbits: {gaps}")
        print("\n".join(lines))
    return 0 if rep.valid else 1


def _cmd_count_paths(args) -> int:
    q = _load(args)
    window_relative = isinstance(q, LazyQuiver)
    if window_relative:
        w = _window(args, q)
        qf = induced_subquiver(q, w.base_scope(q))
    else:
        qf = q
    a = parse_zvertex(args.a)
    b = parse_zvertex(args.b)
    include_trivial = not args.no_trivial
    if args.enumerate:
        paths, truncated = enumerate_paths_zq(
            qf, a, b, limit=args.limit, include_trivial=include_trivial
        )
        if args.json:
            payload = {
                "paths": [
                    {
                        "vertices": [format_zvertex(v) for v in seq],
                        "choices": list(choice),
                    }
                    for seq, choice in paths
                ],
                "truncated": truncated,
            }
            print(json.dumps(payload, sort_keys=True))
        else:
            lines = []
            for seq, choice in paths:
                route = " -> ".join(format_zvertex(v) for v in seq)
                if choice:
                    route += " [" + ",".join(str(c) for c in choice) + "]"
                lines.append(route)
            lines.append(f"total: {len(paths)}{' (truncated)' if truncated else ''}")
            print("\n".join(lines))
        return 0
    counter = count_sectional_paths_zq if args.sectional else count_paths_zq
    pc = counter(qf, a, b, include_trivial=include_trivial)
    if window_relative and pc.status == "finite":
        pc = PathCount.lower_bound(pc.count)
    text = str(pc)
    if pc.witness_cycle:
        text += "\ncycle: " + "->".join(format_zvertex(v) for v in pc.witness_cycle)
    _emit(args, pc.to_json(), text)
    return 0


def _cmd_emit_dot(args) -> int:
    q = _load(args)
    w = _window(args, q) or Window.radius(2)
    center = parse_zvertex(args.center) if args.center else None
    section = None
    if args.section:
        with open(args.section, "r", encoding="utf-8") as fh:
            section = Section.from_json(json.load(fh))
    spec = RenderSpec(window=w, mode=args.mode, center=center, section=section, fmt=args.format)
    sys.stdout.write(render(q, spec))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quiverlc",
        description="light cone and round trip distances on quivers and their translation quivers",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("dist", help="right light cone distance between two vertices")
    _add_input_options(p)
    p.add_argument("--left", action="store_true", help="left light cone distance instead")
    p.add_argument("--oracle", action="store_true", help="per-slice reachability cross-check")
    p.add_argument("x", help="source (base or slice:base)")
    p.add_argument("y", help="target (base or slice:base)")
    p.set_defaults(handler=_cmd_dist)

    p = subs.add_parser("rtdist", help="round trip distance between two vertices")
    _add_input_options(p)
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(handler=_cmd_rtdist)

    p = subs.add_parser("sphere", help="sphere around a base vertex")
    _add_input_options(p)
    p.add_argument("--kind", choices=sorted(_SPHERES), default="roundtrip")
    p.add_argument("center", help="base vertex")
    p.add_argument("radius", type=int)
    p.set_defaults(handler=_cmd_sphere)

    p = subs.add_parser("lightcone", help="light cone of a vertex within a window")
    _add_input_options(p)
    p.add_argument("--side", choices=("right", "left"), default="right")
    p.add_argument("center", help="slice:base vertex")
    p.set_defaults(handler=_cmd_lightcone)

    p = subs.add_parser("classify", help="test the equivalent finiteness conditions")
    _add_input_options(p)
    p.add_argument("--base", default=None, help="probe base vertex")
    p.set_defaults(handler=_cmd_classify)

    p = subs.add_parser("section", help="construct a section through a center")
    _add_input_options(p)
    p.add_argument("--center", required=True, help="slice:base center vertex")
    p.add_argument("--side", choices=("balanced", "right", "left"), default="balanced")
    p.set_defaults(handler=_cmd_section)

    p = subs.add_parser("verify-section", help="check a selection against the section criteria")
    _add_input_options(p)
    p.add_argument("--section", required=True, help="section JSON file")
    p.add_argument("--pair-budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_verify_section)

    p = subs.add_parser("count-paths", help="count or list oriented paths in the translation quiver")
    _add_input_options(p)
    p.add_argument("--sectional", action="store_true")
    p.add_argument("--enumerate", action="store_true", dest="enumerate")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--no-trivial", action="store_true", help="exclude the empty path when endpoints match")
    p.add_argument("a", help="source slice:base")
    p.add_argument("b", help="target slice:base")
    p.set_defaults(handler=_cmd_count_paths)

    p = subs.add_parser("emit-dot", help="render a windowed slab of the translation quiver")
    _add_input_options(p)
    p.add_argument("--mode", choices=MODES, default="plain")
    p.add_argument("--center", default=None, help="slice:base center for annotation modes")
    p.add_argument("--section", default=None, help="section JSON file for section mode")
    p.add_argument("--format", choices=FORMATS, default="dot")
    p.set_defaults(handler=_cmd_emit_dot)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except (ValueError, TypeError, KeyError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
