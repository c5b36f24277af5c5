"""The planar clock theorem: elementary cycles, twisting, transpositions.

On a genus-zero multiverse every face of the reduced spine that does not
contain the outer boundary is encircled by a unique elementary cycle, and
twisting matchings up and down along alternating elementary cycles realizes
the counterclockwise and clockwise plane transpositions of states.  The
lattice of states is generated from twist-up moves and verified directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import lattice as lattice_mod
from . import spine as spine_mod
from .errors import (
    NonPlanarInteriorUndefined,
    NotPlanar,
    NotStringUniverse,
    WrongSign,
)
from .multiverse import Multiverse
from .spine import DirectedCycle, SpineGraph


@dataclass(frozen=True)
class ElementaryCycle:
    """Outer boundary cycle of a bounded spine face, traversed ccw."""

    cycle: DirectedCycle
    encircled_face: int         # region id
    component: int              # spine component owning the cycle

    def key(self):
        return self.cycle.key()


@dataclass(frozen=True)
class PlaneFaceStructure:
    spine: object               # SpineGraph or SubSpine
    unbounded: int              # outer region id
    elementary: tuple           # ElementaryCycle per bounded face

    def by_face(self):
        return {c.encircled_face: c for c in self.elementary}


_steps_from_walk = spine_mod.steps_from_walk


def plane_faces(spine) -> PlaneFaceStructure:
    """Bounded faces of the embedded spine and their elementary cycles.

    Works per connected component: starting from the region holding the
    outer boundary, each component met along the way exposes one face as
    its outer face; all its other faces are bounded and their walks are the
    elementary cycles, already traversed counterclockwise (face on the
    left).
    """
    if spine.mv.arrangement.stats().genus != 0:
        raise NotPlanar("the multiverse surface has positive genus")

    sm = spine.spine_map
    faces_of_region = {}
    for fw in sm.faces:
        faces_of_region.setdefault(
            spine.spine_face_region[fw.id], []).append(fw)

    outer_face_of_comp = {}
    owner_of_region = {}
    assigned = set()
    seen_regions = set()
    queue = [spine.outer_region]
    while queue:
        r = queue.pop()
        if r in seen_regions:
            continue
        seen_regions.add(r)
        for fw in faces_of_region.get(r, ()):
            if fw.id in assigned:
                continue
            comp = fw.component
            assert comp not in outer_face_of_comp, \
                "component exposes two outer faces"
            outer_face_of_comp[comp] = fw.id
            assigned.add(fw.id)
            for fw2 in sm.faces:
                if fw2.component != comp or fw2.id == fw.id:
                    continue
                r2 = spine.spine_face_region[fw2.id]
                assert r2 not in owner_of_region, \
                    "two elementary cycles encircle one face"
                owner_of_region[r2] = fw2
                assigned.add(fw2.id)
                queue.append(r2)

    assert seen_regions >= set(spine.regions()) or not sm.faces, \
        "unreached spine region"

    elementary = []
    for r in sorted(owner_of_region):
        fw = owner_of_region[r]
        elementary.append(ElementaryCycle(
            _steps_from_walk(spine, fw.darts), r, fw.component))
    return PlaneFaceStructure(spine, spine.outer_region, tuple(elementary))


@dataclass(frozen=True)
class SignedAlternatingCycle:
    elementary: ElementaryCycle
    matching: frozenset
    sign: str                   # 'positive' | 'negative'

    def key(self):
        return self.elementary.key()


def signed_cycles(matching, pfs: PlaneFaceStructure):
    """Alternating elementary cycles with their signs relative to a matching.

    A cycle is positive when its matched edges, directed black to white,
    run counterclockwise around the encircled face; the ccw traversal is
    the stored walk, so the sign is read off the step directions.
    """
    out = []
    for ec in pfs.elementary:
        edges = ec.cycle.edges()
        members = [e in matching for e in edges]
        if not all(a != b for a, b in
                   zip(members, members[1:] + members[:1])):
            continue
        dirs = {step[1][0] for step, inm in zip(ec.cycle.steps, members)
                if inm}
        assert len(dirs) == 1, "matched edges disagree around the face"
        sign = 'positive' if dirs.pop() == 'b' else 'negative'
        out.append(SignedAlternatingCycle(ec, frozenset(matching), sign))
    return out


def twist_up(g, matching, signed: SignedAlternatingCycle):
    if signed.sign != 'negative':
        raise WrongSign("twisting up requires a negative cycle")
    return spine_mod.twist(g, matching, signed.elementary.cycle)


def twist_down(g, matching, signed: SignedAlternatingCycle):
    if signed.sign != 'positive':
        raise WrongSign("twisting down requires a positive cycle")
    return spine_mod.twist(g, matching, signed.elementary.cycle)


# ---------------------------------------------------------------------------
# the lattice


def matching_key(matching):
    return tuple(sorted(matching))


@dataclass
class PlanarClockLattice:
    mv: Multiverse
    spine: SpineGraph
    reduced: object             # ReducedSpine
    pfs: PlaneFaceStructure
    lattice: lattice_mod.Lattice

    def states(self):
        return [spine_mod.matching_to_state(self.spine, frozenset(k))
                for k in self.lattice.elements]

    def state_of_key(self, key):
        return spine_mod.matching_to_state(self.spine, frozenset(key))


def build_planar_clock_lattice(mv: Multiverse, framing=None):
    """The distributive lattice of states under ccw plane transpositions."""
    g = spine_mod.build_spine(mv, framing)
    red = spine_mod.reduce_spine(g)
    pfs = plane_faces(red.spine)
    matchings = spine_mod.enumerate_matchings(g.graph)

    def moves(key):
        m = frozenset(key)
        out = []
        for sc in signed_cycles(m, pfs):
            if sc.sign == 'negative':
                out.append(matching_key(twist_up(red.graph, m, sc)))
        return out

    lat = lattice_mod.from_moves([matching_key(m) for m in matchings], moves)
    return PlanarClockLattice(mv, g, red, pfs, lat)


# ---------------------------------------------------------------------------
# transpositions reported in the state picture


@dataclass(frozen=True)
class PlaneTransposition:
    """A plane transposition, reported as marker rotations.

    ``corner_moves`` lists (vertex, corner before, corner after, quarter
    turns) per vertex of the straightened contour, rotating in
    ``direction`` through the contour's interior.
    """

    source: tuple
    target: tuple
    direction: str              # 'ccw' | 'cw'
    n: int
    corner_moves: tuple
    cycle_edges: frozenset


def _corner_moves(mv, matching, cycle, direction):
    at_vertex = {}
    for e, tail, head in cycle.steps:
        for end in (tail, head):
            if end[0] == 'w':
                at_vertex.setdefault(end[1], set()).add(e)
    moves = []
    for v, es in sorted(at_vertex.items()):
        alpha = next(e for e in sorted(es) if e in matching)
        alpha2 = next(e for e in sorted(es) if e not in matching)
        rot = mv.map.rotations[v]
        p, q = rot.index(alpha), rot.index(alpha2)
        turns = (q - p) % 4 if direction == 'ccw' else (p - q) % 4
        moves.append((v, alpha, alpha2, turns))
    return tuple(moves)


def plane_transpositions_from(mv: Multiverse, state, clock=None):
    """All plane transpositions available at a state, in both directions."""
    if clock is None:
        clock = build_planar_clock_lattice(mv)
    m = spine_mod.state_to_matching(clock.spine, state)
    out = []
    for sc in signed_cycles(m, clock.pfs):
        if sc.sign == 'negative':
            m2 = twist_up(clock.reduced.graph, m, sc)
            direction = 'ccw'
        else:
            m2 = twist_down(clock.reduced.graph, m, sc)
            direction = 'cw'
        cyc = sc.elementary.cycle
        out.append(PlaneTransposition(
            matching_key(m), matching_key(m2), direction,
            len(cyc.steps) // 2, _corner_moves(mv, m, cyc, direction),
            cyc.key()))
    return out


# ---------------------------------------------------------------------------
# sides of a cycle on a genus-zero surface


class CycleSides:
    """The two components of the surface minus a vertex-simple spine cycle.

    Region classes are merged across every spine edge not on the cycle;
    crossings of strand edges are already merged inside regions.  The
    interior is the side avoiding the outer boundary.
    """

    def __init__(self, spine, cycle: DirectedCycle):
        self.spine = spine
        self.cycle = cycle
        on_cycle = set(cycle.edges())

        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in spine.corner_set:
            if e in on_cycle:
                continue
            a, b = spine.edge_sides(e)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        self._find = find

        lefts = set()
        rights = set()
        for e, tail, head in cycle.steps:
            sd = spine.white_dart[e] if tail[0] == 'w' \
                else spine.black_dart[e]
            other = spine.black_dart[e] if tail[0] == 'w' \
                else spine.white_dart[e]
            lefts.add(find(spine.region_of_spine_dart(sd)))
            rights.add(find(spine.region_of_spine_dart(other)))
        assert len(lefts) == 1 and len(rights) == 1, \
            "cycle sides are not single classes"
        self.left = lefts.pop()
        self.right = rights.pop()
        self.separates = self.left != self.right
        outer = find(spine.outer_region)
        if not self.separates:
            self.interior = None
        elif outer == self.left:
            self.interior = self.right
        elif outer == self.right:
            self.interior = self.left
        else:
            raise AssertionError("outer region on neither side of the cycle")

    def side_of_edge(self, e):
        """Side class of a spine edge not on the cycle."""
        return self._find(self.spine.edge_sides(e)[0])

    def side_of_corner(self, dart):
        """Side class of a corner sector, named by its strand dart."""
        return self._find(self.spine.region_of_strand_dart(dart))

    def interior_zone_is_ccw(self, vertex, matching):
        """Direction of rotation through the interior at a cycle vertex.

        The zone swept counterclockwise from the matched corner starts on
        the left of the matched edge's white dart; compare that side with
        the interior.
        """
        spine = self.spine
        e_m = next(e for e in self.cycle.edges()
                   if e in matching and spine.edge_by_corner[e].white == vertex)
        zone_ccw = self._find(
            spine.region_of_spine_dart(spine.white_dart[e_m]))
        zone_cw = self._find(
            spine.region_of_spine_dart(spine.black_dart[e_m]))
        assert {zone_ccw, zone_cw} == {self.left, self.right}
        return zone_ccw == self.interior


def kauffman_transpositions_from(mv: Multiverse, state, spine=None):
    """Kauffman transpositions: simultaneous 90-degree rotations of two
    markers, detected as length-4 alternating cycles of the spine with no
    spine edge departing a white vertex into their interior."""
    if mv.arrangement.stats().genus != 0:
        raise NonPlanarInteriorUndefined(
            "cycle interiors need a genus-zero surface")
    if spine is None:
        spine = spine_mod.build_spine(mv)
    m = spine_mod.state_to_matching(spine, state)
    out = []
    for cyc in spine_mod.alternating_cycles(m, spine.graph, max_len=4):
        if len(cyc.steps) != 4:
            continue
        sides = CycleSides(spine, cyc)
        whites = [v for k, v in cyc.vertices() if k == 'w']
        ok = True
        for v in whites:
            for e in spine.white_rotation(v):
                if e in cyc.key():
                    continue
                if sides.side_of_edge(e) == sides.interior:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        m2 = spine_mod.twist(spine.graph, m, cyc)
        ccw = sides.interior_zone_is_ccw(whites[0], m)
        assert ccw == sides.interior_zone_is_ccw(whites[1], m), \
            "markers rotate in different directions"
        direction = 'ccw' if ccw else 'cw'
        moves = _corner_moves(mv, m, cyc, direction)
        assert all(t == 1 for _, _, _, t in moves), \
            "Kauffman rotation is not a quarter turn"
        out.append(PlaneTransposition(
            matching_key(m), matching_key(m2), direction, 2, moves,
            cyc.key()))
    return out


# ---------------------------------------------------------------------------
# string universes: Kauffman equivalence and the escape-count law


def is_string_universe(mv: Multiverse):
    st = mv.arrangement.stats()
    if st.genus != 0 or st.boundary_count != 1 or len(mv.starred) != 2:
        return False
    if len(mv.boundary_vertices) != 2:
        return False
    comps = {mv.map.component_of_vertex[v]
             for v in range(len(mv.map.rotations))}
    return len(comps) == 1


def require_string_universe(mv):
    if not is_string_universe(mv):
        raise NotStringUniverse(
            "need a connected universe on a disc with N = 1")


@dataclass(frozen=True)
class KauffmanEquivalenceReport:
    state_count: int
    all_plane_are_kauffman: bool
    all_kauffman_are_plane: bool
    all_n_equal_2: bool
    covers_match: bool
    isomorphic: bool

    @property
    def ok(self):
        return (self.all_plane_are_kauffman and self.all_kauffman_are_plane
                and self.all_n_equal_2 and self.covers_match
                and self.isomorphic)


def verify_kauffman_equivalence(mv: Multiverse):
    """On a string universe, plane transpositions and Kauffman
    transpositions define the same moves and isomorphic lattices."""
    require_string_universe(mv)
    clock = build_planar_clock_lattice(mv)
    spine = clock.spine

    plane_all = set()
    kauffman_all = set()
    all_n2 = True
    for key in clock.lattice.elements:
        state = clock.state_of_key(key)
        for t in plane_transpositions_from(mv, state, clock):
            plane_all.add((t.source, t.target, t.direction))
            if t.n != 2:
                all_n2 = False
        for t in kauffman_transpositions_from(mv, state, spine):
            kauffman_all.add((t.source, t.target, t.direction))

    kauffman_ccw = [(a, b) for a, b, d in kauffman_all if d == 'ccw']
    klat = lattice_mod.Lattice(clock.lattice.elements, kauffman_ccw)
    iso = lattice_mod.is_isomorphic(clock.lattice, klat)
    return KauffmanEquivalenceReport(
        len(clock.lattice.elements),
        plane_all <= kauffman_all,
        kauffman_all <= plane_all,
        all_n2,
        set(klat.cover_pairs()) == set(clock.lattice.cover_pairs()),
        iso is not None)


def escape_count_check(mv: Multiverse, matching, cycle: DirectedCycle,
                       spine=None):
    """Count Tait edges leaving white vertices of the cycle outward.

    For a vertex-simple alternating cycle of length 2L on a string
    universe's spine, the count must equal L + 2.
    """
    require_string_universe(mv)
    if spine is None:
        spine = spine_mod.build_spine(mv)
    sides = CycleSides(spine, cycle)
    exterior = sides.left if sides.interior == sides.right else sides.right
    whites = [v for k, v in cycle.vertices() if k == 'w']
    on_cycle = cycle.key()
    count = 0
    for v in whites:
        for d in mv.map.rotations[v]:
            if d in on_cycle:
                continue
            if sides.side_of_corner(d) == exterior:
                count += 1
    L = len(cycle.steps) // 2
    return count, L


# ---------------------------------------------------------------------------
# what goes wrong without framings


def _sweep(rotation, a, b, direction):
    """Corners strictly between two corners of a vertex, rotating one way."""
    p, q = rotation.index(a), rotation.index(b)
    out = []
    i = p
    while True:
        i = (i + 1) % 4 if direction == 'ccw' else (i - 1) % 4
        if i == q:
            return out
        out.append(rotation[i])


def unframed_claimed_ccw_moves(mv: Multiverse, spine=None):
    """Moves a contour drawing could pass off as counterclockwise.

    A framed contour pins down which way markers rotate through its
    interior.  Without a framing, the checks that remain are the ones a
    drawing cannot fake: swept corners must be forbidden (the corner
    condition) and must not lie in a starred face (starred faces touch the
    outer boundary, so they are visibly exterior).  A twist at a
    vertex-simple alternating cycle is *claimed* counterclockwise whenever
    every swept corner passes both checks.  When both sweep directions
    pass -- blocked only by corners whose position relative to the contour
    is exactly what a framing would have pinned down -- both claims go
    through, and the resulting relation need not be antisymmetric.
    """
    if spine is None:
        spine = spine_mod.build_spine(mv)
    cls = spine_mod.classify_edges(spine.graph)
    admissible = set(cls.forbidden)     # forbidden corners of unstarred faces

    moves = {}
    for m in spine_mod.enumerate_matchings(spine.graph):
        key = matching_key(m)
        for cyc in spine_mod.alternating_cycles(m, spine.graph):
            at_vertex = {}
            for e, tail, head in cyc.steps:
                for end in (tail, head):
                    if end[0] == 'w':
                        at_vertex.setdefault(end[1], set()).add(e)
            for direction in ('ccw', 'cw'):
                ok = True
                for v, es in at_vertex.items():
                    alpha = next(e for e in sorted(es) if e in m)
                    alpha2 = next(e for e in sorted(es) if e not in m)
                    swept = _sweep(mv.map.rotations[v], alpha, alpha2,
                                   direction)
                    if any(d not in admissible for d in swept):
                        ok = False
                        break
                if not ok:
                    continue
                m2 = frozenset(m) ^ cyc.key()
                try:
                    spine_mod.check_matching(spine.graph, m2)
                except Exception:
                    continue
                if direction == 'ccw':
                    moves.setdefault(key, set()).add(matching_key(m2))
                else:
                    moves.setdefault(matching_key(m2), set()).add(key)
    return moves


def build_unframed_order(mv: Multiverse):
    """Order generated by claimed-ccw moves; raises CycleDetected when the
    claims are not mutually consistent (the reason framings exist)."""
    g = spine_mod.build_spine(mv)
    matchings = spine_mod.enumerate_matchings(g.graph)
    moves = unframed_claimed_ccw_moves(mv, g)
    return lattice_mod.from_moves(
        [matching_key(m) for m in matchings],
        lambda key: sorted(moves.get(key, ())))
