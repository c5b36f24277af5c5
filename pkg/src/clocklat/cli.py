"""Command-line front end.

Commands: validate, states, spine, lattice-planar, lattice-genus, check,
export.  Exit status 0 on success, 1 on a domain error (invalid multiverse,
cycle detected, failed check), 2 on usage errors.  All output is
deterministic for fixed input and flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import dual as dual_mod
from . import lattice as lattice_mod
from . import planar as planar_mod
from . import spine as spine_mod
from .errors import ClockLatError, CycleDetected, HypothesisViolated
from .files import load_multiverse
from .multiverse import (
    detect_dead_components,
    enumerate_states,
    euler_check,
    validate_multiverse,
)

DEFAULT_SEED = 20240801


def _load(path):
    mv, framing = load_multiverse(path)
    issues = validate_multiverse(mv)
    if issues:
        for i in issues:
            print(f"invalid: [{i.code}] {i.message}")
        raise SystemExit(1)
    return mv, framing


def _state_label(spine, key):
    state = spine_mod.matching_to_state(spine, frozenset(key))
    return ",".join(f"{v}:{d}" for v, d in state.choice)


def cmd_validate(args):
    mv, _ = load_multiverse(args.file)
    issues = validate_multiverse(mv)
    for i in issues:
        print(f"violation: [{i.code}] {i.message}")
    if issues:
        return 1
    st = mv.stats()
    print(f"valid multiverse: V_int={st.V_int} V_bd={st.V_bd} N={st.N} "
          f"F={st.F} stars={st.star_count} genus={mv.genus()}")
    try:
        ok, lhs, rhs = euler_check(mv)
        print(f"euler: F - V_int = {lhs}, N + chi + b = {rhs} "
              f"[{'ok' if ok else 'FAIL'}]")
    except HypothesisViolated as exc:
        print(f"euler: skipped ({exc})")
    dead = detect_dead_components(mv)
    if dead:
        print(f"dead components (force an empty state set): {dead}")
    print("faces:")
    for gf in mv.arrangement.faces:
        walks = [mv.map.faces[lf].darts for lf in gf.local_faces]
        star = "*" if gf.id in mv.starred else " "
        extra = f" circles={list(gf.circles)}" if gf.circles else ""
        print(f"  {star}{gf.id}: walks={walks}{extra}")
    return 0


def cmd_states(args):
    mv, _ = _load(args.file)
    states = enumerate_states(mv)
    print(f"states: {len(states)}")
    if not args.count_only:
        for s in states:
            print("  " + ",".join(f"{v}:{d}" for v, d in s.choice))
    return 0


def cmd_spine(args):
    mv, framing = _load(args.file)
    g = spine_mod.build_spine(mv, framing)
    cls = spine_mod.classify_edges(g.graph)
    target = g
    if args.reduced:
        target = spine_mod.reduce_spine(g).spine
    print(f"spine: {len(g.graph.whites)} white, {len(g.graph.blacks)} black, "
          f"{len(target.edges)} edges"
          + (" (reduced)" if args.reduced else ""))
    for e in target.edges:
        print(f"  edge {e.corner}: vertex {e.white} -- face {e.black} "
              f"[{cls.tag(e.corner)}]")
    if args.export == "dot":
        lines = ["graph spine {"]
        for _, w in target.graph.whites:
            lines.append(f'  w{w} [shape=circle, fillcolor=white, '
                         f'style=filled, label="v{w}"];')
        for _, b in target.graph.blacks:
            lines.append(f'  b{b} [shape=circle, fillcolor=black, '
                         f'style=filled, fontcolor=white, label="f{b}"];')
        style = {"forced": " [style=bold]", "forbidden": " [style=dotted]",
                 "free": ""}
        for e in target.edges:
            lines.append(f"  w{e.white} -- b{e.black}"
                         f"{style[cls.tag(e.corner)]};")
        lines.append("}")
        _write_out(args.out, "\n".join(lines) + "\n")
    return 0


def _write_out(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_lattice_planar(args):
    mv, framing = _load(args.file)
    if args.no_framing:
        try:
            lat = planar_mod.build_unframed_order(mv)
        except CycleDetected as exc:
            print("CycleDetected: the unframed moves are not antisymmetric")
            print("witness: " + " -> ".join(str(list(k)) for k in exc.witness))
            return 1
        print(f"unframed moves happen to form a poset here "
              f"({len(lat)} states)")
        return 0
    clock = planar_mod.build_planar_clock_lattice(mv, framing)
    lat = clock.lattice
    print(f"states: {len(lat)}  covers: {len(lat.covers)}")
    if args.verify:
        ok = lattice_mod.is_lattice(lat)
        distr, wit = (lattice_mod.is_distributive(lat) if ok
                      else (False, None))
        covers_are_moves = set(lat.cover_pairs()) == set(lat.move_pairs())
        print(f"lattice: {ok}  distributive: {distr}  "
              f"covers = ccw transpositions: {covers_are_moves}")
        if not (ok and distr and covers_are_moves):
            return 1
    label = lambda key: _state_label(clock.spine, key)
    if args.dot:
        _write_out(args.dot, lattice_mod.export_dot(lat, label))
    if args.json:
        _write_out(args.json, lattice_mod.export_json(lat, label))
    return 0


def cmd_lattice_genus(args):
    mv, framing = _load(args.file)
    g = spine_mod.build_spine(mv, framing)
    d = dual_mod.DualGraph(g)
    lats = dual_mod.build_circulation_lattice(mv, spine=g, dual=d)
    keys = sorted(lats)
    if args.cls is not None:
        if not 0 <= args.cls < len(keys):
            print(f"no circulation class {args.cls}; there are {len(keys)}")
            return 1
        keys = [keys[args.cls]]
    print(f"viable circulations: {len(lats)}")
    bad = False
    docs = {}
    for i, key in enumerate(sorted(lats)):
        if key not in keys:
            continue
        lat = lats[key]
        line = f"class {i}: {len(lat)} states, {len(lat.covers)} covers"
        if args.verify:
            ok = lattice_mod.is_lattice(lat)
            distr, _ = (lattice_mod.is_distributive(lat) if ok
                        else (False, None))
            moves_ok = set(lat.cover_pairs()) == set(lat.move_pairs())
            line += (f"  lattice: {ok}  distributive: {distr}  "
                     f"covers = ccw surface transpositions: {moves_ok}")
            bad = bad or not (ok and distr and moves_ok)
        print(line)
        label = lambda key2: _state_label(g, key2)
        if args.dot:
            os.makedirs(args.dot, exist_ok=True)
            _write_out(os.path.join(args.dot, f"class{i}.dot"),
                       lattice_mod.export_dot(lat, label, name=f"class{i}"))
        if args.json:
            docs[f"class{i}"] = {
                "circulation": [list(t) for t in key],
                "lattice": json.loads(lattice_mod.export_json(lat, label)),
            }
    if args.json:
        docs["spanning_tree"] = sorted(d.tree_edges)
        _write_out(args.json, json.dumps(docs, indent=2, sort_keys=True)
                   + "\n")
    return 1 if bad else 0


def cmd_export(args):
    args.verify = False
    if args.format == "dot":
        args.dot, args.json = args.out or "-", None
    else:
        args.json, args.dot = args.out or "-", None
    args.no_framing = False
    return cmd_lattice_planar(args)


def cmd_check(args):
    from . import checks
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("CLOCKLAT_SEED", DEFAULT_SEED))
    files = args.files or None
    return checks.run_all(files, seed=seed, count=args.count,
                          out=sys.stdout)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="clocklat",
        description="states, matchings and clock lattices of multiverses")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a multiverse file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("states", help="enumerate states")
    p.add_argument("file")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(fn=cmd_states)

    p = sub.add_parser("spine", help="print the spine and edge classes")
    p.add_argument("file")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--export", choices=["dot"])
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_spine)

    p = sub.add_parser("lattice-planar",
                       help="the lattice of plane transpositions")
    p.add_argument("file")
    p.add_argument("--dot")
    p.add_argument("--json")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--no-framing", action="store_true",
                   help="use unaudited contour claims instead of a framing")
    p.set_defaults(fn=cmd_lattice_planar)

    p = sub.add_parser("lattice-genus",
                       help="per-circulation-class lattices")
    p.add_argument("file")
    p.add_argument("--class", dest="cls", type=int, default=None)
    p.add_argument("--all", action="store_true")
    p.add_argument("--dot", help="directory for one DOT file per class")
    p.add_argument("--json")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(fn=cmd_lattice_genus)

    p = sub.add_parser("export", help="export the planar lattice")
    p.add_argument("file")
    p.add_argument("--format", choices=["dot", "json"], default="json")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_export)

    p = sub.add_parser("check", help="run the full property suite")
    p.add_argument("files", nargs="*")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--count", type=int, default=25,
                   help="random instances per family")
    p.set_defaults(fn=cmd_check)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as exc:
        return exc.code
    except ClockLatError as exc:
        print(f"{type(exc).__name__}: {exc}")
        return 1


run = main


if __name__ == "__main__":
    sys.exit(main())
