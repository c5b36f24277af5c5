"""The property suite behind ``clocklat check`` and the acceptance tests.

Each check returns (ok, detail).  ``run_all`` prints one line per check and
returns a process exit code.  The randomized checks draw seeded instances
from the sampler, so identical seeds give identical reports.
"""

from __future__ import annotations

import random
from importlib import resources

from . import dual as dual_mod
from . import lattice as lattice_mod
from . import planar as planar_mod
from . import sampler
from . import spine as spine_mod
from .errors import CycleDetected, HypothesisViolated
from .files import load_multiverse
from .multiverse import enumerate_states, euler_check

CORPUS = [
    "trefoil",
    "four_string_weave",
    "split_weave",
    "annulus_pair",
    "universe_two_lattices",
    "torus_universe",
    "framing_trap",
]


def corpus_path(name):
    return resources.files("clocklat.data").joinpath(name + ".json")


def load_corpus(names=None):
    out = []
    for name in names or CORPUS:
        with resources.as_file(corpus_path(name)) as path:
            out.append((name, *load_multiverse(path)))
    return out


def _planar_corpus(entries):
    return [(n, mv, fr) for n, mv, fr in entries if mv.genus() == 0]


# --- criterion 1: Euler identity -------------------------------------------


def check_euler(entries, rng=None, count=None):
    for name, mv, _ in entries:
        try:
            ok, lhs, rhs = euler_check(mv)
        except HypothesisViolated:
            continue
        if not ok:
            return False, f"{name}: F - V_int = {lhs} != {rhs}"
        if planar_mod.is_string_universe(mv):
            if lhs != 2:
                return False, f"{name}: universe on a disc with F-V_int={lhs}"
    weave = [e for e in entries if e[0] == "four_string_weave"]
    if weave:
        st = weave[0][1].stats()
        if (st.F, st.V_int, st.N) != (16, 11, 4) or st.F - st.V_int != 5:
            return False, f"weave figure numbers off: {st}"
    return True, f"{len(entries)} instances"


# --- criterion 2: triple bijections -----------------------------------------


def check_bijections(entries, rng, count=100, max_vertices=8):
    instances = [(n, mv, fr) for n, mv, fr in entries]
    instances += _random_instances(rng, count, max_vertices)
    for name, mv, fr in instances:
        g = spine_mod.build_spine(mv, fr)
        matchings = spine_mod.enumerate_matchings(g.graph)
        states = enumerate_states(mv)
        d = dual_mod.DualGraph(g)
        orientations = [dual_mod.prescribed_orientation(d, m)
                        for m in matchings]
        if not (len(states) == len(matchings) == len(set(orientations))):
            return False, f"{name}: cardinalities differ"
        for s in states:
            m = spine_mod.state_to_matching(g, s)
            if spine_mod.matching_to_state(g, m) != s:
                return False, f"{name}: state round trip broke"
        for m in matchings:
            r = dual_mod.prescribed_orientation(d, m)
            if dual_mod.orientation_to_matching(d, r) != frozenset(m):
                return False, f"{name}: orientation round trip broke"
    return True, f"{len(instances)} instances"


def _random_instances(rng, count, max_vertices, genus_mix=(0, 0, 0, 1)):
    out = []
    i = 0
    while len(out) < count:
        genus = genus_mix[i % len(genus_mix)]
        i += 1
        n = rng.randint(2, max_vertices)
        mv = sampler.random_multiverse(rng, n, genus=genus, max_states=64)
        if mv is not None:
            out.append((f"random{i}(g{genus},n{n})", mv, None))
    return out


# --- criterion 3: planar clock theorem --------------------------------------


def check_planar_clock(entries, rng, count=100, max_vertices=8):
    instances = _planar_corpus(entries)
    instances += _random_instances(rng, count, max_vertices, genus_mix=(0,))
    for name, mv, fr in instances:
        clock = planar_mod.build_planar_clock_lattice(mv, fr)
        lat = clock.lattice
        if not lattice_mod.is_lattice(lat):
            return False, f"{name}: not a lattice"
        ok, wit = lattice_mod.is_distributive(lat)
        if not ok:
            return False, f"{name}: not distributive at {wit}"
        if set(lat.cover_pairs()) != set(lat.move_pairs()):
            return False, f"{name}: covers differ from ccw transpositions"
    return True, f"{len(instances)} instances"


# --- criterion 4: Kauffman equivalence --------------------------------------


def check_kauffman(entries, rng, count=20, max_vertices=6):
    universes = [(n, mv, fr) for n, mv, fr in entries
                 if planar_mod.is_string_universe(mv)]
    while len(universes) < len(entries) + count:
        n = rng.randint(2, max_vertices)
        mv = sampler.random_multiverse(rng, n, genus=0, max_states=64)
        if mv is not None and planar_mod.is_string_universe(mv):
            universes.append((f"random(n{n})", mv, None))
    for name, mv, fr in universes:
        rep = planar_mod.verify_kauffman_equivalence(mv)
        if not rep.ok:
            return False, f"{name}: {rep}"
    trefoil = [e for e in entries if e[0] == "trefoil"]
    if trefoil:
        mv = trefoil[0][1]
        clock = planar_mod.build_planar_clock_lattice(mv)
        n = len(clock.lattice)
        g = spine_mod.build_spine(mv)
        brute = len(spine_mod.enumerate_matchings(g.graph))
        chain = len(clock.lattice.covers) == n - 1 and \
            lattice_mod.is_lattice(clock.lattice)
        if not (n == 3 and brute == 3 and chain):
            return False, f"trefoil: {n} states (brute {brute}), chain={chain}"
    return True, f"{len(universes)} universes"


# --- criterion 5: escape counts ----------------------------------------------


def check_escape_counts(entries, rng=None, count=None):
    total = 0
    for name, mv, fr in entries:
        if not planar_mod.is_string_universe(mv):
            continue
        g = spine_mod.build_spine(mv, fr)
        for m in spine_mod.enumerate_matchings(g.graph):
            for cyc in spine_mod.alternating_cycles(m, g.graph):
                count, L = planar_mod.escape_count_check(mv, m, cyc, g)
                total += 1
                if count != L + 2:
                    return False, f"{name}: E_bdW={count}, L+2={L + 2}"
    return True, f"{total} cycles"


# --- criteria 6 and 7: circulation laws and viability ------------------------


def check_circulation_laws(entries, rng, count=30, max_vertices=5,
                           enum_limit=14):
    instances = [(n, mv, fr) for n, mv, fr in entries]
    instances += _random_instances(rng, count, max_vertices)
    basic = pushes = 0
    for name, mv, fr in instances:
        g = spine_mod.build_spine(mv, fr)
        d = dual_mod.DualGraph(g)
        matchings = spine_mod.enumerate_matchings(g.graph)
        for m in matchings:
            r = dual_mod.prescribed_orientation(d, m)
            for (kind, v), cyc in d.basic_cycles():
                got = dual_mod.circulation_of_cycle(d, r, cyc)
                want = 2 - len(cyc) if kind == 'b' else len(cyc) - 2
                basic += 1
                if got != want:
                    return False, f"{name}: basic cycle at {kind}{v}: " \
                                  f"{got} != {want}"
            cv = dual_mod.circulation(d, r)
            part = dual_mod.accessibility(d, r)
            for i in part.minimal:
                if i == part.outer_block:
                    continue
                m2, delta = dual_mod.surface_twist_up(g, d, m, part.blocks[i])
                r2 = dual_mod.prescribed_orientation(d, m2)
                pushes += 1
                if dual_mod.circulation(d, r2).key() != cv.key():
                    return False, f"{name}: twisting changed the circulation"
    return True, f"{basic} basic cycles, {pushes} twists"


def check_orientation_enumeration(entries, rng, count=10, max_vertices=4,
                                  enum_limit=14):
    """Full 2^E sweeps: viability = prescribability, accessibility
    invariance, and c-tags against brute force over the matching classes."""
    instances = [(n, mv, fr) for n, mv, fr in entries]
    instances += _random_instances(rng, count, max_vertices)
    swept = 0
    for name, mv, fr in instances:
        g = spine_mod.build_spine(mv, fr)
        if len(g.edges) > enum_limit:
            continue
        d = dual_mod.DualGraph(g)
        matchings = spine_mod.enumerate_matchings(g.graph)
        classes = dual_mod.circulation_classes(d, matchings)
        by_circ = {}
        for r in dual_mod.enumerate_orientations(d):
            by_circ.setdefault(dual_mod.circulation(d, r).key(),
                               []).append(r)
        swept += 1
        for key, rs in by_circ.items():
            parts = {dual_mod.accessibility(d, r).blocks for r in rs}
            if len(parts) != 1:
                return False, f"{name}: accessibility varies in a class"
            if key in classes:
                if len(rs) != len(classes[key]):
                    return False, (f"{name}: {len(rs)} orientations but "
                                   f"{len(classes[key])} matchings share "
                                   "a viable circulation")
                for r in rs:
                    m = dual_mod.orientation_to_matching(d, r)
                    if m not in classes[key]:
                        return False, f"{name}: prescribed inversion broke"
        # c-tags against brute force per class
        for key, ms in classes.items():
            cv = dual_mod.circulation(
                d, dual_mod.prescribed_orientation(d, ms[0]))
            tags = dual_mod.c_forced_forbidden(d, cv)
            for e in d.edges:
                in_all = all(e in m for m in ms)
                in_none = all(e not in m for m in ms)
                want = ('forced' if in_all else
                        'forbidden' if in_none else 'free')
                if tags.tag(e) != want:
                    return False, (f"{name}: edge {e} tagged "
                                   f"{tags.tag(e)}, brute force {want}")
    return True, f"{swept} duals swept exhaustively"


# --- criterion 9: arbitrary-genus clock theorem ------------------------------


def check_genus_lattices(entries, rng, count=15, max_vertices=5):
    instances = [(n, mv, fr) for n, mv, fr in entries]
    instances += _random_instances(rng, count, max_vertices,
                                   genus_mix=(1,))
    classes = 0
    for name, mv, fr in instances:
        g = spine_mod.build_spine(mv, fr)
        d = dual_mod.DualGraph(g)
        lats = dual_mod.build_circulation_lattice(mv, spine=g, dual=d)
        for key, lat in lats.items():
            classes += 1
            if not lattice_mod.is_lattice(lat):
                return False, f"{name}: class not a lattice"
            ok, wit = lattice_mod.is_distributive(lat)
            if not ok:
                return False, f"{name}: class not distributive"
            if set(lat.cover_pairs()) != set(lat.move_pairs()):
                return False, f"{name}: covers differ from surface moves"
        # the three pictures must give identical cover graphs
        matchings = spine_mod.enumerate_matchings(g.graph)
        for m in matchings:
            s = spine_mod.matching_to_state(g, m)
            via_state = {(t.source, t.target)
                         for t in dual_mod.surface_transpositions_from(
                             mv, s, g, d) if t.direction == 'ccw'}
            r = dual_mod.prescribed_orientation(d, m)
            part = dual_mod.accessibility(d, r)
            via_push = set()
            for i in part.minimal:
                if i == part.outer_block:
                    continue
                r2 = dual_mod.push_up(d, r, part.blocks[i])
                m2 = dual_mod.orientation_to_matching(d, r2)
                via_push.add((tuple(sorted(m)), tuple(sorted(m2))))
            if via_state != via_push:
                return False, f"{name}: state and orientation moves differ"
    return True, f"{classes} class lattices"


# --- criterion 10: framing regression ----------------------------------------


def check_framing_regression(entries, rng=None, count=None):
    trap = [e for e in entries if e[0] == "framing_trap"]
    if not trap:
        with resources.as_file(corpus_path("framing_trap")) as path:
            trap = [("framing_trap", *load_multiverse(path))]
    name, mv, fr = trap[0]
    clock = planar_mod.build_planar_clock_lattice(mv, fr)
    if not lattice_mod.is_distributive(clock.lattice)[0]:
        return False, "framed lattice of the trap is broken"
    try:
        planar_mod.build_unframed_order(mv)
    except CycleDetected as exc:
        return True, f"cycle of length {len(exc.witness) - 1} detected"
    return False, "unframed moves unexpectedly form a poset"


CHECKS = [
    ("euler-identity", check_euler),
    ("triple-bijections", check_bijections),
    ("planar-clock-lattice", check_planar_clock),
    ("kauffman-equivalence", check_kauffman),
    ("escape-count-law", check_escape_counts),
    ("circulation-laws", check_circulation_laws),
    ("orientation-enumeration", check_orientation_enumeration),
    ("genus-clock-lattices", check_genus_lattices),
    ("framing-regression", check_framing_regression),
]


def run_all(files=None, seed=20240801, count=25, out=None):
    if files:
        entries = []
        for path in files:
            mv, fr = load_multiverse(path)
            entries.append((path, mv, fr))
    else:
        entries = load_corpus()
    status = 0
    for name, fn in CHECKS:
        rng = random.Random(seed)
        try:
            ok, detail = fn(entries, rng, count)
        except Exception as exc:       # a crash is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        line = f"{'PASS' if ok else 'FAIL'} {name}: {detail}"
        if out:
            out.write(line + "\n")
        if not ok:
            status = 1
            break
    return status
