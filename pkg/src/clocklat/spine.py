"""Tait graphs, spines, framings, matchings, and the state dictionary.

The Tait graph of a multiverse has a white vertex at every interior vertex,
a black vertex in every face, and one edge per corner.  A spine is the
induced subgraph on white vertices and *unstarred* black vertices; a framing
fixes how the spine is embedded.  Edges are identified by their corner, i.e.
by the dart the corner follows, which keeps edge names stable across
reductions.

The embedding of a spine is realized as an overlay: a combinatorial map
containing the strand graph, the boundary circles and the spine arcs
together.  Tracing the overlay and merging its faces across strand edges
yields the faces of the spine on the surface (its "regions"), from which
both the planar and the dual machinery are derived without ever touching
coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .combmap import CombinatorialMap
from .errors import (
    FramingRequired,
    InvalidFraming,
    InvalidMatching,
    InvalidState,
    NotAlternating,
    NotVertexSimple,
)
from .multiverse import Multiverse, State


@dataclass(frozen=True)
class TaitGraph:
    whites: tuple
    blacks: tuple           # all global face ids
    edges: tuple            # (white, corner dart, black), sorted by corner

    def degree_of_black(self, b):
        return sum(1 for _, _, bb in self.edges if bb == b)


def build_tait(mv: Multiverse) -> TaitGraph:
    """One black vertex per face, one edge per corner of an interior vertex."""
    edges = tuple(sorted((c.vertex, c.after_dart, c.face)
                         for c in mv.corners.values()))
    return TaitGraph(tuple(mv.interior_vertices),
                     tuple(sorted(mv.faces)), edges)


# ---------------------------------------------------------------------------
# framings


@dataclass(frozen=True)
class Framing:
    """Embedding data for the spine.

    ``black_rotation`` maps each unstarred face (with corners) to the ccw
    cyclic order of its corners around the black vertex.  ``homes`` places
    every floating object inside a subdivided face -- a vertex-free circle
    ('circle', id) or a nested component none of whose corners meet the face
    ('component', id) -- into a subdivision polygon, named by any strand
    dart on that polygon's walk.  Objects without an entry use the canonical
    rule (the polygon holding the face's smallest strand dart).
    """

    black_rotation: tuple    # ((face, (corner darts...)), ...)
    homes: tuple = ()        # ((('circle'|'component', id), dart), ...)

    def rotation_map(self):
        return dict(self.black_rotation)

    def homes_map(self):
        return dict(self.homes)


def _face_walks(mv, f):
    """Nonempty boundary walks of a global face, each rotated to start at
    its smallest dart, ordered by that dart."""
    gf = mv.arrangement.face_by_id[f]
    walks = []
    for lf in gf.local_faces:
        darts = mv.map.faces[lf].darts
        if not darts:
            continue
        i = darts.index(min(darts))
        walks.append(darts[i:] + darts[:i])
    return sorted(walks)


def face_corner_walks(mv, f):
    """Corners of face ``f`` grouped by boundary walk, in walk order."""
    out = []
    for walk in _face_walks(mv, f):
        corners = [d for d in walk if d in mv.corners]
        if corners:
            out.append(corners)
    return out


def canonical_framing(mv: Multiverse) -> Framing:
    """Anchor each black vertex on the walk carrying the smallest dart and
    attach corners walk by walk; floating objects take the default home."""
    rot = []
    for f in sorted(mv.faces):
        if f in mv.starred:
            continue
        seqs = face_corner_walks(mv, f)
        if seqs:
            rot.append((f, tuple(itertools.chain.from_iterable(seqs))))
    return Framing(tuple(rot))


def _merge_cyclic(seqs):
    """All cyclic interleavings of cyclic sequences, preserving each one's
    cyclic order.  The smallest element overall is pinned first."""
    seqs = [list(s) for s in seqs]
    anchor = min(min(s) for s in seqs)
    ai = next(i for i, s in enumerate(seqs) if anchor in s)
    a = seqs[ai]
    k = a.index(anchor)
    head = a[k:] + a[:k]
    rest = seqs[:ai] + seqs[ai + 1:]

    results = set()

    def rec(prefix, tails):
        done = True
        for i, t in enumerate(tails):
            if t:
                done = False
                rec(prefix + (t[0],), tails[:i] + [t[1:]] + tails[i + 1:])
        if done:
            results.add(prefix)

    # every rotation of each non-anchor cyclic sequence may be merged in
    rotations = [[s[j:] + s[:j] for j in range(len(s))] for s in rest]
    for combo in itertools.product(*rotations) if rest else [()]:
        rec((head[0],), [head[1:]] + [list(c) for c in combo])
    return sorted(results)


def enumerate_framings(mv: Multiverse):
    """Every framing of the multiverse that embeds in its surface.

    Exponential; intended for the small instances used to study what goes
    wrong without framings.
    """
    faces = []
    for f in sorted(mv.faces):
        if f in mv.starred:
            continue
        seqs = face_corner_walks(mv, f)
        if seqs:
            faces.append((f, _merge_cyclic(seqs)))

    out = []
    for combo in itertools.product(*(opts for _, opts in faces)) \
            if faces else [()]:
        rot = tuple((f, r) for (f, _), r in zip(faces, combo))
        base = Framing(rot)
        try:
            g = SpineGraph(mv, base)
        except InvalidFraming:
            continue
        # expand every floating-object placement of this rotation choice
        floaters = g.floating_objects()
        if not floaters:
            out.append(base)
            continue
        choices = []
        for obj, polys in floaters:
            choices.append([(obj, p) for p in polys])
        for homes in itertools.product(*choices):
            fr = Framing(rot, tuple(homes))
            try:
                SpineGraph(mv, fr)
            except InvalidFraming:
                continue
            out.append(fr)
    return out


# ---------------------------------------------------------------------------
# the embedded spine


@dataclass(frozen=True)
class SpineEdge:
    corner: int     # dart the corner follows; doubles as the edge id
    white: int
    black: int      # global face id


@dataclass(frozen=True)
class BipartiteGraph:
    """Abstract bipartite graph with stable integer edge ids."""

    whites: tuple
    blacks: tuple                # disjoint from whites
    edges: tuple                 # (edge id, white, black)

    def edge_map(self):
        return {e: (w, b) for e, w, b in self.edges}

    def incident(self):
        inc = {v: [] for v in self.whites + self.blacks}
        for e, w, b in self.edges:
            inc[w].append(e)
            inc[b].append(e)
        return inc


class SpineGraph:
    """A framed spine of a multiverse, with its embedding resolved.

    Exposes the abstract bipartite graph (``.graph``), rotations at white
    and black vertices, the overlay map, and the faces of the spine on the
    surface as ``regions``: disjoint dart sets labelled by canonical ids,
    one of which (``outer_region``) contains the outer boundary.
    """

    def __init__(self, mv: Multiverse, framing: Framing | None = None):
        self.mv = mv
        if framing is None:
            framing = canonical_framing(mv)
        self.framing = framing

        corners = [d for d, c in mv.corners.items()
                   if c.face not in mv.starred]
        self.corner_set = frozenset(corners)
        self.edges = tuple(SpineEdge(d, mv.corners[d].vertex,
                                     mv.corners[d].face)
                           for d in sorted(self.corner_set))
        self.edge_by_corner = {e.corner: e for e in self.edges}

        whites = tuple(('w', v) for v in mv.interior_vertices)
        blacks = tuple(('b', f) for f in sorted(mv.faces)
                       if f not in mv.starred)
        self.graph = BipartiteGraph(
            whites, blacks,
            tuple((e.corner, ('w', e.white), ('b', e.black))
                  for e in self.edges))

        self._build_overlay()
        self._trace_spine_faces()

    # -- overlay ------------------------------------------------------------

    def _build_overlay(self):
        mv = self.mv
        cmap = mv.map
        base = max(cmap.vertex_of, default=-1) + 1
        self.white_dart = {}
        self.black_dart = {}
        for i, e in enumerate(self.edges):
            self.white_dart[e.corner] = base + 2 * i
            self.black_dart[e.corner] = base + 2 * i + 1

        rotations = []
        for v, rot in enumerate(cmap.rotations):
            new = []
            for d in rot:
                new.append(d)
                if d in self.corner_set:
                    new.append(self.white_dart[d])
            rotations.append(new)

        rot_map = self.framing.rotation_map()
        self.black_vertex = {}
        for f in sorted(set(e.black for e in self.edges)):
            order = rot_map.get(f)
            if order is None:
                order = tuple(itertools.chain.from_iterable(
                    face_corner_walks(mv, f)))
            if sorted(order) != sorted(
                    e.corner for e in self.edges if e.black == f):
                raise InvalidFraming(
                    f"framing of face {f} does not list its corners")
            self.black_vertex[f] = len(rotations)
            rotations.append([self.black_dart[d] for d in order])

        edges = list(cmap.edges)
        edges += [(self.white_dart[d], self.black_dart[d])
                  for d in sorted(self.corner_set)]
        self.overlay = CombinatorialMap(rotations, edges, cmap.boundary)

        self._merge_regions()
        self._check_genus()

    def _merge_regions(self):
        """Union overlay orbits into faces of the spine on the surface."""
        mv = self.mv
        over = self.overlay
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

        spine_darts = set(self.white_dart.values()) | set(
            self.black_dart.values())
        for d1, d2 in over.edges:
            if d1 in spine_darts or d1 in over.boundary_arc_darts:
                continue
            union(over.face_of_dart[d1], over.face_of_dart[d2])

        # member walks of a global face that the spine did not subdivide
        # still bound one region
        subdivided = set(self.black_vertex)
        for gf in mv.arrangement.faces:
            if gf.id in subdivided:
                continue
            orbits = [over.face_of_dart[mv.map.faces[lf].darts[0]]
                      for lf in gf.local_faces if mv.map.faces[lf].darts]
            for o in orbits[1:]:
                union(orbits[0], o)

        # the overlay re-creates the implicit face of each vertex-free
        # circle; it must be absorbed into the circle's placement target
        circle_face = {}
        for f in over.faces:
            if not f.darts and len(f.touches_boundary) == 1:
                circle_face[f.touches_boundary[0]] = f.id

        # floating objects inside subdivided faces go to their framed home;
        # a floating object is a vertex-free circle or a boundary walk of
        # the face carrying no spine corner (so no arc wove it in)
        self._region_circles = {}
        homes = self.framing.homes_map()
        self._floating = []
        for gf in mv.arrangement.faces:
            if gf.id not in subdivided:
                anchor = self._any_orbit(gf)
                if anchor is None:
                    anchor = circle_face[gf.circles[0]]
                for lf in gf.local_faces:
                    darts = mv.map.faces[lf].darts
                    if darts:
                        union(anchor, over.face_of_dart[darts[0]])
                for cid in gf.circles:
                    union(anchor, circle_face[cid])
                    self._region_circles.setdefault(anchor, []).append(cid)
                continue
            polys = self._subdivision_orbits(gf)
            for cid in gf.circles:
                target = self._place(('circle', cid), gf, polys, homes, union)
                union(target, circle_face[cid])
            for lf in gf.local_faces:
                walk = mv.map.faces[lf].darts
                if not walk:
                    continue
                if any(d in self.corner_set for d in walk):
                    continue    # woven in by its own spine arcs
                comp = mv.map.faces[lf].component
                self._place(('component', comp, lf), gf, polys, homes, union)

        self.region_of_orbit = {o: find(o) for o in range(len(over.faces))}
        circles = {}
        for o, cs in self._region_circles.items():
            circles.setdefault(find(o), []).extend(cs)
        self.region_circles = {r: tuple(sorted(c))
                               for r, c in circles.items()}

        # locate the outer region
        outer_walk = mv.map.boundary[mv.outer]
        if outer_walk:
            self.outer_region = find(over.face_of_dart[outer_walk[0]])
        else:
            self.outer_region = next(r for r, cs in self.region_circles.items()
                                     if mv.outer in cs)

    def _any_orbit(self, gf):
        over = self.overlay
        for lf in gf.local_faces:
            darts = self.mv.map.faces[lf].darts
            if darts:
                return over.face_of_dart[darts[0]]
        return None

    def _subdivision_orbits(self, gf):
        """Orbits of the overlay lying inside global face ``gf``."""
        over = self.overlay
        seeds = []
        for lf in gf.local_faces:
            seeds.extend(self.mv.map.faces[lf].darts)
        for e in self.edges:
            if e.black == gf.id:
                seeds.append(self.white_dart[e.corner])
                seeds.append(self.black_dart[e.corner])
        return sorted({over.face_of_dart[d] for d in seeds})

    def _place(self, obj, gf, polys, homes, union):
        key = obj[:2]
        home = homes.get(key)
        if home is None:
            target = polys[0]
        else:
            target = self.overlay.face_of_dart.get(home)
            if target not in polys:
                raise InvalidFraming(
                    f"home dart {home} for {key} is not on face {gf.id}")
        self._floating.append((key, tuple(polys)))
        if obj[0] == 'circle':
            self._region_circles.setdefault(target, []).append(obj[1])
        else:
            lf = obj[2]
            walk = self.mv.map.faces[lf].darts
            union(target, self.overlay.face_of_dart[walk[0]])
        return target

    def floating_objects(self):
        """(object key, candidate polygons) pairs discovered at build time."""
        return list(self._floating)

    def _check_genus(self):
        """The overlay must close up to the multiverse's own surface.

        Every overlay component still separate after spine insertion merges
        into the rest by one connected sum, so a valid framing satisfies
        sum(chi_i) - 2 (n_components - 1) = chi(surface).  A black rotation
        that forces extra genus breaks the identity.
        """
        over = self.overlay
        chi = sum(s.chi for s in over.component_stats()) \
            - 2 * (over.n_components - 1)
        want = self.mv.arrangement.stats().chi
        if chi != want:
            raise InvalidFraming(
                f"framing changes the surface: chi {chi} != {want}")

    # -- spine-only structure -------------------------------------------------

    def white_rotation(self, v):
        """Spine edges at a white vertex in ccw order (corner ids)."""
        return tuple(d for d in self.mv.map.rotations[v]
                     if d in self.corner_set)

    def black_rotation(self, f):
        rot = self.framing.rotation_map().get(f)
        if rot is None:
            rot = tuple(itertools.chain.from_iterable(
                face_corner_walks(self.mv, f)))
        return tuple(d for d in rot if d in self.corner_set)

    def _trace_spine_faces(self):
        """Trace faces of the spine alone and map each onto a region."""
        over = self.overlay
        rotations = []
        for _, v in self.graph.whites:
            rot = [self.white_dart[d] for d in self.white_rotation(v)]
            if rot:
                rotations.append(rot)
        for _, f in self.graph.blacks:
            rot = [self.black_dart[d] for d in self.black_rotation(f)]
            if rot:
                rotations.append(rot)
        edges = [(self.white_dart[d], self.black_dart[d])
                 for d in sorted(self.corner_set)]
        self.spine_map = CombinatorialMap(rotations, edges)

        self.spine_face_region = {}
        for fw in self.spine_map.faces:
            regions = {self.region_of_orbit[over.face_of_dart[d]]
                       for d in fw.darts}
            assert len(regions) == 1, "spine face spans two regions"
            self.spine_face_region[fw.id] = regions.pop()

    def region_of_spine_dart(self, sd):
        return self.region_of_orbit[self.overlay.face_of_dart[sd]]

    def region_of_strand_dart(self, d):
        return self.region_of_orbit[self.overlay.face_of_dart[d]]

    def regions(self):
        return sorted(set(self.region_of_orbit.values()))

    # convenience: the two sides of a spine edge, as regions
    def edge_sides(self, corner):
        wd = self.white_dart[corner]
        bd = self.black_dart[corner]
        return (self.region_of_spine_dart(wd), self.region_of_spine_dart(bd))


class SubSpine:
    """An edge-subset of a spine, embedded exactly as in the parent.

    Removing a spine edge merges the two regions on its sides; nothing else
    about the embedding may change, so all geometry is derived from the
    parent spine rather than rebuilt.
    """

    def __init__(self, base: SpineGraph, corners):
        self.base = base
        self.mv = base.mv
        self.framing = base.framing
        self.corner_set = frozenset(corners)
        removed = base.corner_set - self.corner_set
        if not self.corner_set <= base.corner_set:
            raise InvalidMatching("subspine keeps unknown edges")

        self.edges = tuple(e for e in base.edges
                           if e.corner in self.corner_set)
        self.edge_by_corner = {e.corner: e for e in self.edges}
        self.graph = BipartiteGraph(
            base.graph.whites, base.graph.blacks,
            tuple((e.corner, ('w', e.white), ('b', e.black))
                  for e in self.edges))
        self.white_dart = base.white_dart
        self.black_dart = base.black_dart

        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in removed:
            a, b = base.edge_sides(c)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        self._find = find

        self.outer_region = find(base.outer_region)
        circles = {}
        for r, cs in base.region_circles.items():
            circles.setdefault(find(r), []).extend(cs)
        self.region_circles = {r: tuple(sorted(c))
                               for r, c in circles.items()}

        self._trace()

    def white_rotation(self, v):
        return tuple(d for d in self.base.white_rotation(v)
                     if d in self.corner_set)

    def black_rotation(self, f):
        return tuple(d for d in self.base.black_rotation(f)
                     if d in self.corner_set)

    def region_of_spine_dart(self, sd):
        return self._find(self.base.region_of_spine_dart(sd))

    def region_of_strand_dart(self, d):
        return self._find(self.base.region_of_strand_dart(d))

    def regions(self):
        return sorted({self._find(r) for r in self.base.regions()})

    def edge_sides(self, corner):
        a, b = self.base.edge_sides(corner)
        return (self._find(a), self._find(b))

    def _trace(self):
        rotations = []
        for _, v in self.graph.whites:
            rot = [self.white_dart[d] for d in self.white_rotation(v)]
            if rot:
                rotations.append(rot)
        for _, f in self.graph.blacks:
            rot = [self.black_dart[d] for d in self.black_rotation(f)]
            if rot:
                rotations.append(rot)
        edges = [(self.white_dart[d], self.black_dart[d])
                 for d in sorted(self.corner_set)]
        self.spine_map = CombinatorialMap(rotations, edges)
        self.spine_face_region = {}
        for fw in self.spine_map.faces:
            regions = {self.region_of_spine_dart(d) for d in fw.darts}
            assert len(regions) == 1, "spine face spans two regions"
            self.spine_face_region[fw.id] = regions.pop()


def build_spine(mv: Multiverse, framing: Framing | None = None,
                canonical=True) -> SpineGraph:
    """Spine of ``mv``; the canonical framing applies when none is given.

    Passing ``canonical=False`` without a framing raises FramingRequired
    whenever some unstarred face actually leaves a choice (it is not a
    disc), for callers that insist on explicit framing data.
    """
    if framing is None and not canonical:
        for f in sorted(mv.faces):
            if f in mv.starred:
                continue
            gf = mv.arrangement.face_by_id[f]
            if not gf.is_disc and face_corner_walks(mv, f):
                raise FramingRequired(
                    f"face {f} is not a disc; supply a framing")
    return SpineGraph(mv, framing)


# ---------------------------------------------------------------------------
# matchings


def enumerate_matchings(g: BipartiteGraph):
    """All perfect matchings as frozensets of edge ids, in canonical order."""
    inc = g.incident()
    if len(g.whites) != len(g.blacks):
        return []
    order = sorted(inc, key=lambda v: len(inc[v]))
    edge_map = g.edge_map()

    out = []
    covered = set()

    def rec(chosen):
        free = [v for v in order if v not in covered]
        if not free:
            out.append(frozenset(chosen))
            return
        v = min(free, key=lambda u: sum(
            1 for e in inc[u]
            if edge_map[e][0] not in covered and edge_map[e][1] not in covered))
        for e in sorted(inc[v]):
            w, b = edge_map[e]
            if w in covered or b in covered:
                continue
            covered.add(w)
            covered.add(b)
            chosen.append(e)
            rec(chosen)
            chosen.pop()
            covered.discard(w)
            covered.discard(b)

    rec([])
    return sorted(out, key=sorted)


def has_perfect_matching(g: BipartiteGraph, without_vertices=(),
                         without_edges=()):
    """Kuhn's augmenting-path test on the filtered graph."""
    skip_v = set(without_vertices)
    skip_e = set(without_edges)
    whites = [w for w in g.whites if w not in skip_v]
    blacks = [b for b in g.blacks if b not in skip_v]
    if len(whites) != len(blacks):
        return False
    adj = {w: [] for w in whites}
    for e, w, b in g.edges:
        if e in skip_e or w in skip_v or b in skip_v:
            continue
        adj[w].append(b)

    match = {}

    def try_augment(w, seen):
        for b in adj[w]:
            if b in seen:
                continue
            seen.add(b)
            if b not in match or try_augment(match[b], seen):
                match[b] = w
                return True
        return False

    for w in whites:
        if not try_augment(w, set()):
            return False
    return True


@dataclass(frozen=True)
class EdgeClassification:
    forced: frozenset
    forbidden: frozenset
    free: frozenset

    def tag(self, e):
        if e in self.forced:
            return 'forced'
        if e in self.forbidden:
            return 'forbidden'
        return 'free'


def classify_edges(g: BipartiteGraph) -> EdgeClassification:
    """Forced/forbidden/free per edge, by matching-existence queries."""
    if not has_perfect_matching(g):
        return EdgeClassification(frozenset(),
                                  frozenset(e for e, _, _ in g.edges),
                                  frozenset())
    forced, forbidden, free = set(), set(), set()
    for e, w, b in g.edges:
        if not has_perfect_matching(g, without_vertices=(w, b)):
            forbidden.add(e)
        elif not has_perfect_matching(g, without_edges=(e,)):
            forced.add(e)
        else:
            free.add(e)
    return EdgeClassification(frozenset(forced), frozenset(forbidden),
                              frozenset(free))


@dataclass(frozen=True)
class ReducedSpine:
    """A spine with its forbidden edges removed.

    ``components`` types every connected piece per the reduction lemma:
    'forced-edge' for a single forced edge, 'free' when every edge is free,
    'isolated' for bare vertices.
    """

    spine: SubSpine             # embedded reduction (same framing)
    classification: EdgeClassification
    components: tuple           # ((kind, vertices, edges), ...)

    @property
    def graph(self):
        return self.spine.graph


def reduce_spine(spine: SpineGraph) -> ReducedSpine:
    cls = classify_edges(spine.graph)
    keep = [e.corner for e in spine.edges if e.corner not in cls.forbidden]
    reduced = SubSpine(spine, keep)

    g = reduced.graph
    inc = g.incident()
    edge_map = g.edge_map()
    seen = set()
    comps = []
    for v in g.whites + g.blacks:
        if v in seen:
            continue
        stack, verts, edges = [v], set(), set()
        seen.add(v)
        while stack:
            u = stack.pop()
            verts.add(u)
            for e in inc[u]:
                edges.add(e)
                for x in edge_map[e]:
                    if x not in seen:
                        seen.add(x)
                        stack.append(x)
        if not edges:
            kind = 'isolated'
        elif len(edges) == 1 and next(iter(edges)) in cls.forced:
            kind = 'forced-edge'
        elif all(e in cls.free for e in edges):
            kind = 'free'
        else:
            kind = 'mixed'      # only on graphs with no matchings
        comps.append((kind, tuple(sorted(verts)), tuple(sorted(edges))))
    return ReducedSpine(reduced, cls, tuple(comps))


# shorter public alias used throughout
reduce = reduce_spine


def steps_from_walk(spine, walk):
    """Turn a walk of spine darts into DirectedCycle steps."""
    corner_of = {}
    for c in spine.corner_set:
        corner_of[spine.white_dart[c]] = (c, 'w')
        corner_of[spine.black_dart[c]] = (c, 'b')
    steps = []
    for sd in walk:
        e, kind = corner_of[sd]
        se = spine.edge_by_corner[e]
        w, b = ('w', se.white), ('b', se.black)
        steps.append((e, w, b) if kind == 'w' else (e, b, w))
    return DirectedCycle(tuple(steps))


# ---------------------------------------------------------------------------
# states <-> matchings


def state_to_matching(spine: SpineGraph, state: State):
    mv = spine.mv
    chosen = dict(state.choice)
    if sorted(chosen) != sorted(mv.interior_vertices):
        raise InvalidState("state does not choose at every interior vertex")
    edges = set()
    seen_faces = set()
    for v, d in chosen.items():
        c = mv.corners.get(d)
        if c is None or c.vertex != v:
            raise InvalidState(f"dart {d} is not a corner of vertex {v}")
        if c.face in mv.starred:
            raise InvalidState(f"state marks starred face {c.face}")
        if c.face in seen_faces:
            raise InvalidState(f"face {c.face} is chosen twice")
        seen_faces.add(c.face)
        edges.add(d)
    if {('b', f) for f in seen_faces} != set(spine.graph.blacks):
        raise InvalidState("some unstarred face is never chosen")
    return frozenset(edges)


def matching_to_state(spine: SpineGraph, matching):
    check_matching(spine.graph, matching)
    return State(tuple(sorted((spine.edge_by_corner[e].white, e)
                              for e in matching)))


def check_matching(g: BipartiteGraph, matching):
    edge_map = g.edge_map()
    touched = []
    for e in matching:
        if e not in edge_map:
            raise InvalidMatching(f"no edge {e}")
        touched.extend(edge_map[e])
    if sorted(touched) != sorted(g.whites + g.blacks):
        raise InvalidMatching("edge set does not cover every vertex once")


# ---------------------------------------------------------------------------
# alternating cycles and twisting


@dataclass(frozen=True)
class DirectedCycle:
    """A closed alternating walk, stored as (edge, tail, head) steps."""

    steps: tuple

    def edges(self):
        return tuple(e for e, _, _ in self.steps)

    def vertices(self):
        return tuple(t for _, t, _ in self.steps)

    def is_vertex_simple(self):
        vs = self.vertices()
        return len(vs) == len(set(vs))

    def is_simple(self):
        es = self.edges()
        return len(es) == len(set(es))

    def key(self):
        return frozenset(self.edges())


def twist(g: BipartiteGraph, matching, cycle: DirectedCycle):
    """Boolean sum of a matching with a vertex-simple alternating cycle."""
    in_m = [e in matching for e in cycle.edges()]
    if not all(a != b for a, b in zip(in_m, in_m[1:] + in_m[:1])):
        raise NotAlternating("cycle edges do not alternate with the matching")
    if not cycle.is_vertex_simple():
        raise NotVertexSimple("twisting here would not yield a matching")
    new = frozenset(matching) ^ frozenset(cycle.edges())
    check_matching(g, new)
    return new


def alternating_cycles(matching, g: BipartiteGraph, max_len=None):
    """All vertex-simple alternating cycles, one representative per class.

    Cycles are returned as DirectedCycles starting at their smallest white
    vertex along its matched edge; as vertex-simple cycles they are
    determined by their edge sets, which serve as canonical keys.
    """
    edge_map = g.edge_map()
    match_edge = {}
    for e in matching:
        w, b = edge_map[e]
        match_edge[w] = e
        match_edge[b] = e
    inc = g.incident()

    found = {}
    whites = sorted(set(g.whites) & set(match_edge))
    for w0 in whites:
        e0 = match_edge[w0]
        _, b0 = edge_map[e0]

        def rec(b, path, used_vertices):
            # arrive at black vertex b along a matched edge; leave unmatched
            for e in sorted(inc[b]):
                if e in matching:
                    continue
                w, bb = edge_map[e]
                assert bb == b
                if w == w0:
                    steps = path + [(e, b, w)]
                    if max_len is None or len(steps) <= max_len:
                        cyc = DirectedCycle(tuple(steps))
                        found.setdefault(cyc.key(), cyc)
                    continue
                if w in used_vertices or w < w0:
                    continue
                em = match_edge[w]
                _, b2 = edge_map[em]
                if b2 in used_vertices:
                    continue
                if max_len is not None and len(path) + 2 > max_len:
                    continue
                rec(b2, path + [(e, b, w), (em, w, b2)],
                    used_vertices | {w, b2})

        if max_len is not None and max_len < 2:
            continue
        rec(b0, [(e0, w0, b0)], {w0, b0})
    return [found[k] for k in sorted(found, key=sorted)]
