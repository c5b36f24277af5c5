"""Dual of the spine: orientations, circulation, pushing, surface twisting.

The dual graph has one vertex per face of the spine on the surface (a
"region") and one edge crossing each spine edge.  Orienting a dual edge
means choosing which way it crosses: the *standard* direction runs from the
black side of the spine edge to its white side, making basic cycles around
black vertices clockwise.  An orientation is stored as the set of spine
edges whose duals are flipped, so the prescribed orientation of a matching
is the matching itself.

Circulation is recorded on the fundamental cycles of a fixed spanning tree;
accessibility classes are the strongly connected components of the directed
dual, and pushing a minimal class up realizes surface twisting of the
matching along the subsurface spanned by the class's regions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import spine as spine_mod
from .errors import (
    ConflictingBasicCycles,
    CycleNotInGraph,
    NotMaximal,
    NotMinimal,
    NotViable,
    OuterClassUnpushable,
)
from .spine import SpineGraph


@dataclass(frozen=True)
class DualEdge:
    edge: int           # the spine edge (corner id) it crosses
    side_w: int         # region left of the white dart
    side_b: int         # region left of the black dart

    @property
    def is_loop(self):
        return self.side_w == self.side_b


@dataclass(frozen=True)
class DualCycle:
    """Directed cycle in the dual; each step crosses one spine edge.

    A step (edge, 'b') crosses from the black side to the white side (the
    standard direction); (edge, 'w') crosses the other way.
    """

    steps: tuple

    def edges(self):
        return tuple(e for e, _ in self.steps)

    def __len__(self):
        return len(self.steps)


class DualGraph:
    def __init__(self, spine: SpineGraph):
        self.spine = spine
        self.edges = {}
        regions = set(spine.regions())
        for e in sorted(spine.corner_set):
            sw = spine.region_of_spine_dart(spine.white_dart[e])
            sb = spine.region_of_spine_dart(spine.black_dart[e])
            self.edges[e] = DualEdge(e, sw, sb)
        self.vertices = tuple(sorted(regions))
        self.outer_vertex = spine.outer_region
        self._fundamental = {}
        self._spanning_tree()

    def step_ends(self, step):
        e, lbl = step
        de = self.edges[e]
        if lbl == 'b':
            return de.side_b, de.side_w
        return de.side_w, de.side_b

    def check_cycle(self, cycle: DualCycle):
        if not cycle.steps:
            return
        for step in cycle.steps:
            if step[0] not in self.edges or step[1] not in ('b', 'w'):
                raise CycleNotInGraph(f"bad step {step}")
        for s1, s2 in zip(cycle.steps, cycle.steps[1:] + cycle.steps[:1]):
            if self.step_ends(s1)[1] != self.step_ends(s2)[0]:
                raise CycleNotInGraph("steps do not chain")

    def basic_cycle(self, kind, vertex):
        """The ccw basic cycle of the dual around a spine vertex."""
        if kind == 'w':
            rot = self.spine.white_rotation(vertex)
            steps = tuple((e, 'b') for e in rot)
        else:
            rot = self.spine.black_rotation(vertex)
            steps = tuple((e, 'w') for e in rot)
        cyc = DualCycle(steps)
        try:
            self.check_cycle(cyc)
        except CycleNotInGraph as exc:
            raise ConflictingBasicCycles(str(exc))
        return cyc

    def basic_cycles(self):
        out = []
        for t, v in self.spine.graph.whites:
            if self.spine.white_rotation(v):
                out.append((('w', v), self.basic_cycle('w', v)))
        for t, f in self.spine.graph.blacks:
            if self.spine.black_rotation(f):
                out.append((('b', f), self.basic_cycle('b', f)))
        return out

    def _spanning_tree(self):
        """Minimum-edge-id spanning tree by BFS from the smallest vertex."""
        adj = {v: [] for v in self.vertices}
        for e in sorted(self.edges):
            de = self.edges[e]
            adj[de.side_b].append((e, de.side_w, 'b'))
            adj[de.side_w].append((e, de.side_b, 'w'))
        root = self.vertices[0] if self.vertices else None
        tree_step_to = {root: None} if self.vertices else {}
        frontier = [root] if self.vertices else []
        tree_edges = set()
        while frontier:
            nxt = []
            for v in frontier:
                for e, u, lbl in adj[v]:
                    if u not in tree_step_to:
                        tree_step_to[u] = (e, lbl)      # step from v to u
                        tree_edges.add(e)
                        nxt.append(u)
            frontier = sorted(nxt)
        assert len(tree_step_to) == len(self.vertices), \
            "dual of a spine must be connected"
        self.tree_edges = frozenset(tree_edges)
        self._tree_step_to = tree_step_to

    def _tree_path(self, v):
        """Steps from the root to vertex v along the tree."""
        steps = []
        while self._tree_step_to[v] is not None:
            e, lbl = self._tree_step_to[v]
            steps.append((e, lbl))
            v = self.step_ends((e, lbl))[0]
        return list(reversed(steps))

    def fundamental_cycle(self, e):
        """Non-tree edge in its standard direction, closed through the tree."""
        cached = self._fundamental.get(e)
        if cached is not None:
            return cached
        de = self.edges[e]
        up = self._tree_path(de.side_b)
        down = self._tree_path(de.side_w)
        k = 0
        while k < len(up) and k < len(down) and up[k] == down[k]:
            k += 1
        steps = [(e, 'b')]
        steps += [( x, 'b' if l == 'w' else 'w') for x, l in reversed(down[k:])]
        steps += up[k:]
        cyc = DualCycle(tuple(steps))
        self.check_cycle(cyc)
        self._fundamental[e] = cyc
        return cyc


def build_dual(spine: SpineGraph) -> DualGraph:
    """Dual of a spine: a vertex per face, an edge crossing each edge."""
    return DualGraph(spine)


# ---------------------------------------------------------------------------
# orientations


def standard_orientation(dual: DualGraph):
    """Every basic cycle around a black vertex runs clockwise."""
    return frozenset()


def prescribed_orientation(dual: DualGraph, matching):
    """Standard orientation with the duals of matched edges reversed."""
    return frozenset(matching)


def direction(orientation, e):
    return 'w' if e in orientation else 'b'


def is_forward(orientation, step):
    return step[1] == direction(orientation, step[0])


def circulation_of_cycle(dual: DualGraph, orientation, cycle: DualCycle):
    """|forward| - |backward| along the cycle, computed directly."""
    dual.check_cycle(cycle)
    return sum(1 if is_forward(orientation, s) else -1 for s in cycle.steps)


@dataclass(frozen=True)
class CirculationVector:
    """Circulation on the fundamental-cycle basis of the dual's tree.

    Comparable only across orientations of one dual (the tree is fixed by
    the dual's construction).  A representative orientation rides along for
    computations that need one; it is excluded from equality.
    """

    values: tuple           # ((non-tree edge, circulation), ...)
    representative: frozenset = field(compare=False, hash=False)

    def key(self):
        return self.values


def circulation(dual: DualGraph, orientation):
    vals = []
    for e in sorted(dual.edges):
        if e in dual.tree_edges:
            continue
        c = circulation_of_cycle(dual, orientation, dual.fundamental_cycle(e))
        vals.append((e, c))
    return CirculationVector(tuple(vals), frozenset(orientation))


def circulation_on_cycle(dual: DualGraph, cv: CirculationVector,
                         cycle: DualCycle):
    """Expand through the homology decomposition on the tree basis."""
    dual.check_cycle(cycle)
    counts = {}
    for e, lbl in cycle.steps:
        if e not in dual.tree_edges:
            counts[e] = counts.get(e, 0) + (1 if lbl == 'b' else -1)
    vals = dict(cv.values)
    return sum(n * vals[e] for e, n in counts.items())


def enumerate_orientations(dual: DualGraph):
    """All 2^E orientations, as frozensets of flipped edges."""
    edges = sorted(dual.edges)
    n = len(edges)
    for mask in range(1 << n):
        yield frozenset(edges[i] for i in range(n) if mask >> i & 1)


def orientation_to_matching(dual: DualGraph, orientation):
    """Invert the matching -> prescribed orientation bijection.

    The flipped set is the matching whenever there is one; per the basic
    cycle counts, an orientation of viable circulation flips exactly one
    dual around every black vertex and one around every white vertex.
    """
    m = frozenset(orientation)
    try:
        spine_mod.check_matching(dual.spine.graph, m)
    except Exception as exc:
        raise NotViable(f"orientation is not prescribed: {exc}")
    return m


# ---------------------------------------------------------------------------
# accessibility and pushing


@dataclass(frozen=True)
class AccessibilityPartition:
    blocks: tuple           # sorted tuples of regions
    minimal: tuple          # indices into blocks
    maximal: tuple
    outer_block: int

    def block_of(self):
        out = {}
        for i, blk in enumerate(self.blocks):
            for v in blk:
                out[v] = i
        return out


def accessibility(dual: DualGraph, orientation) -> AccessibilityPartition:
    """Mutual-accessibility classes: SCCs of the directed dual."""
    succ = {v: [] for v in dual.vertices}
    for e in sorted(dual.edges):
        tail, head = dual.step_ends((e, direction(orientation, e)))
        succ[tail].append(head)

    index = {}
    low = {}
    on_stack = set()
    stack = []
    counter = [0]
    blocks = []

    def strongconnect(v0):
        work = [(v0, iter(succ[v0]))]
        index[v0] = low[v0] = counter[0]
        counter[0] += 1
        stack.append(v0)
        on_stack.add(v0)
        while work:
            v, it = work[-1]
            advanced = False
            for u in it:
                if u not in index:
                    index[u] = low[u] = counter[0]
                    counter[0] += 1
                    stack.append(u)
                    on_stack.add(u)
                    work.append((u, iter(succ[u])))
                    advanced = True
                    break
                elif u in on_stack:
                    low[v] = min(low[v], index[u])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack.discard(u)
                    comp.append(u)
                    if u == v:
                        break
                blocks.append(tuple(sorted(comp)))

    for v in sorted(dual.vertices):
        if v not in index:
            strongconnect(v)

    blocks = tuple(sorted(blocks))
    block_of = {}
    for i, blk in enumerate(blocks):
        for v in blk:
            block_of[v] = i

    outgoing = {i: set() for i in range(len(blocks))}
    incoming = {i: set() for i in range(len(blocks))}
    for e in dual.edges:
        tail, head = dual.step_ends((e, direction(orientation, e)))
        a, b = block_of[tail], block_of[head]
        if a != b:
            outgoing[a].add(b)
            incoming[b].add(a)

    minimal = tuple(i for i in range(len(blocks)) if not incoming[i])
    maximal = tuple(i for i in range(len(blocks)) if not outgoing[i])
    return AccessibilityPartition(blocks, minimal, maximal,
                                  block_of[dual.outer_vertex])


def _cut_edges(dual, block):
    blk = set(block)
    return frozenset(e for e, de in dual.edges.items()
                     if (de.side_w in blk) != (de.side_b in blk))


def push_up(dual: DualGraph, orientation, block):
    """Reverse the edges between a minimal non-outer class and the rest."""
    part = accessibility(dual, orientation)
    try:
        k = part.blocks.index(tuple(sorted(block)))
    except ValueError:
        raise NotMinimal(f"{block} is not an accessibility class")
    if k == part.outer_block:
        raise OuterClassUnpushable("cannot push the outer class")
    if k not in part.minimal:
        raise NotMinimal(f"class {block} is not minimal")
    return frozenset(orientation) ^ _cut_edges(dual, block)


def push_down(dual: DualGraph, orientation, block):
    part = accessibility(dual, orientation)
    try:
        k = part.blocks.index(tuple(sorted(block)))
    except ValueError:
        raise NotMaximal(f"{block} is not an accessibility class")
    if k == part.outer_block:
        raise OuterClassUnpushable("cannot push the outer class")
    if k not in part.maximal:
        raise NotMaximal(f"class {block} is not maximal")
    return frozenset(orientation) ^ _cut_edges(dual, block)


# ---------------------------------------------------------------------------
# forced and forbidden by a circulation


@dataclass(frozen=True)
class CirculationTags:
    forced: frozenset
    forbidden: frozenset
    free: frozenset

    def tag(self, e):
        if e in self.forced:
            return 'forced'
        if e in self.forbidden:
            return 'forbidden'
        return 'free'


def c_forced_forbidden(dual: DualGraph, cv: CirculationVector):
    """Tags from accessibility: an edge is c-forced or c-forbidden exactly
    when its dual's endpoints share an accessibility class."""
    rep = cv.representative
    part = accessibility(dual, rep)
    block_of = part.block_of()
    forced, forbidden, free = set(), set(), set()
    for e, de in dual.edges.items():
        if block_of[de.side_w] == block_of[de.side_b]:
            if e in rep:
                forced.add(e)
            else:
                forbidden.add(e)
        else:
            free.add(e)
    return CirculationTags(frozenset(forced), frozenset(forbidden),
                           frozenset(free))


def corner_tags(mv, tags: CirculationTags):
    """The same tags read on corners of the multiverse."""
    return {e: tags.tag(e) for e in tags.forced | tags.forbidden | tags.free}


# ---------------------------------------------------------------------------
# circulation classes of matchings


def circulation_classes(dual: DualGraph, matchings):
    """Partition of matchings by their circulation vector."""
    classes = {}
    for m in matchings:
        cv = circulation(dual, prescribed_orientation(dual, m))
        classes.setdefault(cv.key(), []).append(frozenset(m))
    return {k: sorted(v, key=sorted) for k, v in classes.items()}

# ---------------------------------------------------------------------------
# surface twisting


@dataclass(frozen=True)
class TwistingSurface:
    """A face subsurface along which a matching is twisted.

    ``faces`` are the spine faces (regions) spanned, dual to one
    accessibility class.  ``g_boundary`` holds the boundary cycles along
    the spine, each oriented with the surface on its left;
    ``sigma_boundary`` lists boundary circles of the multiverse surface
    inside.  The sign is relative to the matching being twisted.
    """

    faces: tuple
    g_boundary: tuple           # DirectedCycles
    sigma_boundary: tuple       # circle ids
    sign: str                   # 'positive' | 'negative'

    def boundary_edges(self):
        out = set()
        for c in self.g_boundary:
            out |= set(c.edges())
        return frozenset(out)


def _boundary_cycles(spine, region_set):
    """Boundary walks of a union of spine faces, surface on the left."""
    sm = spine.spine_map

    def in_k(sd):
        return spine.region_of_spine_dart(sd) in region_set

    boundary = {sd for sd in sm.vertex_of
                if in_k(sd) and not in_k(sm.involution[sd])}
    cycles = []
    remaining = set(boundary)
    while remaining:
        d0 = min(remaining)
        walk = []
        d = d0
        while True:
            walk.append(d)
            remaining.discard(d)
            # rotate past edges interior to the subsurface; they dangle
            # inside the wedge at this vertex and are never crossed
            x = sm.sigma_inv(sm.involution[d])
            while in_k(x) and in_k(sm.involution[x]):
                x = sm.sigma_inv(x)
            assert in_k(x) and not in_k(sm.involution[x]), \
                "boundary walk left the subsurface"
            d = x
            if d == d0:
                break
        cycles.append(spine_mod.steps_from_walk(spine, walk))

    for cyc in cycles:
        for s1, s2 in zip(cyc.steps, cyc.steps[1:] + cyc.steps[:1]):
            assert s1[2] == s2[1], "boundary cycle does not chain"
    return tuple(cycles)


def twisting_surface(spine, dual: DualGraph, matching, block):
    """The twisting surface spanned by an accessibility class's regions."""
    region_set = frozenset(block)
    cycles = _boundary_cycles(spine, region_set)

    # the boundary cycles of a face subsurface are vertex-simple and
    # pairwise vertex-disjoint
    seen_vertices = set()
    for c in cycles:
        assert c.is_vertex_simple(), "boundary cycle is not vertex-simple"
        vs = set(c.vertices())
        assert not (vs & seen_vertices), "boundary cycles share a vertex"
        seen_vertices |= vs

    signs = set()
    for c in cycles:
        for e, tail, head in c.steps:
            if e in matching:
                signs.add('negative' if tail[0] == 'w' else 'positive')
    assert len(signs) == 1, "boundary cycles disagree in sign"
    sign = signs.pop()

    circles = []
    for r in region_set:
        circles.extend(spine.region_circles.get(r, ()))
    for cid, walk in enumerate(spine.mv.map.boundary):
        if walk and spine.region_of_strand_dart(walk[0]) in region_set:
            circles.append(cid)
    assert spine.mv.outer not in circles, \
        "twisting surface touches the outer boundary"
    return TwistingSurface(tuple(sorted(region_set)), cycles,
                           tuple(sorted(circles)), sign)


def surface_twist_up(spine, dual: DualGraph, matching, block):
    """Twist the matching up along the subsurface dual to a minimal class.

    Returns the new matching and the twisting surface.  The flipped edges
    are computed twice, from the pushing cut and from the boundary walks,
    and must agree.
    """
    r = prescribed_orientation(dual, matching)
    r2 = push_up(dual, r, block)
    delta = twisting_surface(spine, dual, matching, block)
    assert delta.sign == 'negative', "twisting up needs a negative surface"
    flipped = frozenset(r) ^ frozenset(r2)
    assert flipped == delta.boundary_edges(), \
        "pushing cut and surface boundary disagree"
    m2 = frozenset(matching) ^ flipped
    spine_mod.check_matching(spine.graph, m2)
    return m2, delta


def surface_twist_down(spine, dual: DualGraph, matching, block):
    r = prescribed_orientation(dual, matching)
    r2 = push_down(dual, r, block)
    delta = twisting_surface(spine, dual, matching, block)
    assert delta.sign == 'positive', "twisting down needs a positive surface"
    flipped = frozenset(r) ^ frozenset(r2)
    assert flipped == delta.boundary_edges(), \
        "pushing cut and surface boundary disagree"
    m2 = frozenset(matching) ^ flipped
    spine_mod.check_matching(spine.graph, m2)
    return m2, delta


# ---------------------------------------------------------------------------
# surface transpositions


@dataclass(frozen=True)
class SurfaceTransposition:
    """A surface transposition reported as marker rotations per contour."""

    source: tuple
    target: tuple
    direction: str          # 'ccw' | 'cw'
    contours: tuple         # one tuple of (vertex, from, to, turns) each
    surface_faces: tuple
    sigma_boundary: tuple


def _contour_moves(mv, matching, delta: TwistingSurface, direction):
    out = []
    for cyc in delta.g_boundary:
        at_vertex = {}
        for e, tail, head in cyc.steps:
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
        out.append(tuple(moves))
    return tuple(out)


def surface_transpositions_from(mv, state, spine=None, dual=None):
    """All surface transpositions at a state, both directions.

    Counterclockwise moves push up minimal non-outer accessibility classes
    of the state's prescribed orientation; clockwise moves push down
    maximal ones.  The interior condition (every interior corner c-forced
    or c-forbidden) is re-verified on each reported move.
    """
    if spine is None:
        spine = spine_mod.build_spine(mv)
    if dual is None:
        dual = DualGraph(spine)
    m = spine_mod.state_to_matching(spine, state)
    r = prescribed_orientation(dual, m)
    part = accessibility(dual, r)
    cv = circulation(dual, r)
    tags = c_forced_forbidden(dual, cv)

    key = tuple(sorted(m))
    out = []
    for idx, blocks_dir in ((part.minimal, 'ccw'), (part.maximal, 'cw')):
        for i in idx:
            if i == part.outer_block:
                continue
            block = part.blocks[i]
            if blocks_dir == 'ccw':
                m2, delta = surface_twist_up(spine, dual, m, block)
            else:
                m2, delta = surface_twist_down(spine, dual, m, block)
            for e, de in dual.edges.items():
                if de.side_w in set(block) and de.side_b in set(block):
                    assert tags.tag(e) in ('forced', 'forbidden'), \
                        "interior corner is free"
            out.append(SurfaceTransposition(
                key, tuple(sorted(m2)), blocks_dir,
                _contour_moves(mv, m, delta, blocks_dir),
                delta.faces, delta.sigma_boundary))
    return out


# ---------------------------------------------------------------------------
# per-circulation-class lattices


def build_circulation_lattice(mv, cv_key=None, spine=None, dual=None,
                              matchings=None):
    """Distributive lattice of the states with one viable circulation.

    With ``cv_key`` omitted, a dict mapping every circulation key to its
    lattice is returned.
    """
    from . import lattice as lattice_mod

    if spine is None:
        spine = spine_mod.build_spine(mv)
    if dual is None:
        dual = DualGraph(spine)
    if matchings is None:
        matchings = spine_mod.enumerate_matchings(spine.graph)
    classes = circulation_classes(dual, matchings)

    def build(ms):
        keys = {tuple(sorted(m)): frozenset(m) for m in ms}

        def moves(key):
            m = keys[key]
            r = prescribed_orientation(dual, m)
            part = accessibility(dual, r)
            out = []
            for i in part.minimal:
                if i == part.outer_block:
                    continue
                m2, _ = surface_twist_up(spine, dual, m, part.blocks[i])
                k2 = tuple(sorted(m2))
                keys.setdefault(k2, m2)
                out.append(k2)
            return out

        return lattice_mod.from_moves(sorted(keys), moves)

    if cv_key is not None:
        if cv_key not in classes:
            raise NotViable(f"no matching has circulation {cv_key}")
        return build(classes[cv_key])
    return {k: build(ms) for k, ms in sorted(classes.items())}
