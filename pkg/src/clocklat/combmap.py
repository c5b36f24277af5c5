"""Dart-based combinatorial maps on compact oriented surfaces with boundary.

A map is stored as a rotation system: every vertex carries the cyclic,
counterclockwise sequence of darts based at it, and a fixed-point-free
involution pairs the two darts of every edge.  Faces are the orbits of
``d -> rotation_predecessor(involution(d))``, i.e. each face walk keeps its
face on the left.

Boundary circles of the surface are part of the dart structure: a circle is
a closed walk of *boundary arc* darts, listed in the induced orientation
(surface on the left).  Tracing such a structure also produces one orbit per
circle running along its far side; these "cap" orbits are the discs one
would glue in to close the surface and are excluded from the face list.

A single :class:`CombinatorialMap` may be disconnected.  Each connected
component describes a closed-up surface of its own; how components nest
inside each other's faces is extra data, supplied by a
:class:`ContainmentForest` and resolved by :func:`assemble_arrangement`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CyclicContainment,
    DanglingDart,
    NonIntegerGenus,
    OpenBoundaryCircle,
    RotationOverlap,
    UnknownParentFace,
)


@dataclass(frozen=True)
class Dart:
    id: int
    vertex: int
    is_boundary_arc: bool


@dataclass(frozen=True)
class FaceWalk:
    """One traced face orbit of a single component.

    ``darts`` is the walk in face order (face on the left of every dart).
    ``touches_boundary`` lists circle ids whose forward darts occur in the
    walk.  A walk is a disc on the component's own closed-up surface; it
    stops being a disc once extra boundary circles or nested components are
    attached, which is recorded at arrangement level.
    """

    id: int
    component: int
    darts: tuple
    touches_boundary: tuple
    is_disc: bool


@dataclass(frozen=True)
class SurfaceStats:
    V: int
    E: int
    F: int
    chi: int
    genus: int
    boundary_count: int
    outer_boundary: int | None


def _cyclic_pairs(seq):
    n = len(seq)
    for i in range(n):
        yield seq[i], seq[(i + 1) % n]


class CombinatorialMap:
    """A validated rotation system with boundary circles.

    Vertices are ``0..V-1``; darts are arbitrary integers, each occurring in
    exactly one rotation.  Boundary walks may be empty tuples: a vertex-free
    circle is a boundary component of the surface meeting no vertex, and it
    forms a connected component of its own.
    """

    def __init__(self, rotations, edges, boundary=()):
        self.rotations = tuple(tuple(r) for r in rotations)
        self.boundary = tuple(tuple(w) for w in boundary)

        self.vertex_of = {}
        for v, rot in enumerate(self.rotations):
            for d in rot:
                if d in self.vertex_of:
                    raise RotationOverlap(f"dart {d} occurs twice in rotations")
                self.vertex_of[d] = v

        self.involution = {}
        for d1, d2 in edges:
            if d1 == d2:
                raise DanglingDart(f"involution fixes dart {d1}")
            for d in (d1, d2):
                if d in self.involution:
                    raise DanglingDart(f"dart {d} lies on two edges")
                if d not in self.vertex_of:
                    raise DanglingDart(f"dart {d} is not in any rotation")
            self.involution[d1] = d2
            self.involution[d2] = d1
        for d in self.vertex_of:
            if d not in self.involution:
                raise DanglingDart(f"dart {d} has no involution partner")

        self.edges = tuple(sorted(tuple(sorted((d1, d2))) for d1, d2 in edges))

        # position of each dart inside its rotation, for O(1) successors
        self._pos = {}
        for rot in self.rotations:
            for i, d in enumerate(rot):
                self._pos[d] = i

        self._check_boundary_walks()
        self._trace()
        self._split_components()

    # -- rotation system primitives --

    def alpha(self, d):
        return self.involution[d]

    def sigma(self, d):
        rot = self.rotations[self.vertex_of[d]]
        return rot[(self._pos[d] + 1) % len(rot)]

    def sigma_inv(self, d):
        rot = self.rotations[self.vertex_of[d]]
        return rot[(self._pos[d] - 1) % len(rot)]

    def next_in_face(self, d):
        """Successor of ``d`` in its face walk (face stays on the left)."""
        return self.sigma_inv(self.involution[d])

    def dart(self, d):
        return Dart(d, self.vertex_of[d], d in self.boundary_arc_darts)

    def darts(self):
        return sorted(self.vertex_of)

    # -- validation --

    def _check_boundary_walks(self):
        self.boundary_arc_darts = set()
        self.circle_of_dart = {}
        for cid, walk in enumerate(self.boundary):
            for d in walk:
                if d not in self.vertex_of:
                    raise OpenBoundaryCircle(f"boundary dart {d} unknown")
                for x in (d, self.involution[d]):
                    if x in self.boundary_arc_darts:
                        raise OpenBoundaryCircle(
                            f"dart {x} lies on two boundary walks")
                    self.boundary_arc_darts.add(x)
                self.circle_of_dart[d] = cid
                self.circle_of_dart[self.involution[d]] = cid
            for d, dnext in _cyclic_pairs(walk):
                if self.vertex_of[self.involution[d]] != self.vertex_of[dnext]:
                    raise OpenBoundaryCircle(
                        f"boundary walk not closed at dart {d}")
                # the cap side of the circle must be free of other darts
                if self.sigma(self.involution[d]) != dnext:
                    raise OpenBoundaryCircle(
                        f"darts attached on the cap side of circle {cid}")

    def _trace(self):
        """Compute face orbits; identify and validate cap orbits."""
        orbit_of = {}
        orbits = []
        for d0 in sorted(self.vertex_of):
            if d0 in orbit_of:
                continue
            walk = []
            d = d0
            while True:
                orbit_of[d] = len(orbits)
                walk.append(d)
                d = self.next_in_face(d)
                if d == d0:
                    break
            orbits.append(tuple(walk))

        cap_orbits = {}
        for cid, walk in enumerate(self.boundary):
            if not walk:
                continue
            rev = {self.involution[d] for d in walk}
            oid = orbit_of[self.involution[walk[0]]]
            if set(orbits[oid]) != rev:
                raise OpenBoundaryCircle(
                    f"circle {cid} does not close off a cap")
            if oid in cap_orbits:
                raise OpenBoundaryCircle(
                    f"circles {cap_orbits[oid]} and {cid} share a cap")
            cap_orbits[oid] = cid

        self._orbit_of_dart = orbit_of
        self._cap_orbits = cap_orbits

        faces = []
        self.face_of_dart = {}
        for oid, walk in enumerate(orbits):
            if oid in cap_orbits:
                continue
            fid = len(faces)
            touches = sorted({self.circle_of_dart[d] for d in walk
                              if d in self.boundary_arc_darts})
            faces.append([fid, walk, tuple(touches)])
            for d in walk:
                self.face_of_dart[d] = fid
        # vertex-free circles contribute a face with no walk at all
        for cid, walk in enumerate(self.boundary):
            if not walk:
                faces.append([len(faces), (), (cid,)])
        self._raw_faces = faces

    def _split_components(self):
        """Union-find components over vertices, circles and faces."""
        n_v = len(self.rotations)
        parent = list(range(n_v))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

        for d1, d2 in self.edges:
            union(self.vertex_of[d1], self.vertex_of[d2])

        comp_of_root = {}
        self.component_of_vertex = []
        for v in range(n_v):
            r = find(v)
            if r not in comp_of_root:
                comp_of_root[r] = len(comp_of_root)
            self.component_of_vertex.append(comp_of_root[r])
        n_comp = len(comp_of_root)

        self.component_of_circle = []
        for cid, walk in enumerate(self.boundary):
            if walk:
                self.component_of_circle.append(
                    self.component_of_vertex[self.vertex_of[walk[0]]])
            else:
                self.component_of_circle.append(n_comp)
                n_comp += 1
        self.n_components = n_comp

        self.faces = []
        for fid, walk, touches in self._raw_faces:
            if walk:
                comp = self.component_of_vertex[self.vertex_of[walk[0]]]
            else:
                comp = self.component_of_circle[touches[0]]
            self.faces.append(FaceWalk(fid, comp, walk, touches,
                                       is_disc=not touches))

    # -- statistics --

    def component_stats(self):
        """Per-component Euler data: V - E + F = 2 - 2g - b on each piece."""
        stats = []
        for comp in range(self.n_components):
            V = sum(1 for c in self.component_of_vertex if c == comp)
            E = sum(1 for d1, _ in self.edges
                    if self.component_of_vertex[self.vertex_of[d1]] == comp)
            F = sum(1 for f in self.faces if f.component == comp)
            circles = [cid for cid, c in enumerate(self.component_of_circle)
                       if c == comp]
            chi = V - E + F
            two_g = 2 - chi - len(circles)
            if two_g < 0 or two_g % 2:
                raise NonIntegerGenus(
                    f"component {comp}: V-E+F={chi}, b={len(circles)}")
            stats.append(SurfaceStats(V, E, F, chi, two_g // 2, len(circles),
                                      circles[0] if circles else None))
        return stats


def build_map(rotations, edges, boundary=()):
    """Validate and build a combinatorial map; see :class:`CombinatorialMap`."""
    return CombinatorialMap(rotations, edges, boundary)


def trace_faces(cmap: CombinatorialMap):
    """The complete face walks of a map (traced at construction)."""
    return list(cmap.faces)


@dataclass(frozen=True)
class ContainmentEntry:
    child_component: int
    parent_component: int
    parent_face: int
    child_face: int | None = None   # defaults to the child's lowest face id


@dataclass(frozen=True)
class ContainmentForest:
    entries: tuple = ()

    @staticmethod
    def from_lists(entries):
        return ContainmentForest(tuple(
            ContainmentEntry(*e) if not isinstance(e, ContainmentEntry) else e
            for e in entries))


@dataclass(frozen=True)
class GlobalFace:
    """A face of the assembled surface.

    ``local_faces`` lists the per-component face ids merged into this
    region: the face of the owning component plus the outer face of every
    component nested directly inside it.  ``circles`` are the vertex-free
    boundary circles lying in the region; circles met by the walks are in
    ``touches``.  ``chi`` is the Euler characteristic of the open region.
    """

    id: int
    local_faces: tuple
    circles: tuple
    children: tuple
    touches: tuple
    chi: int

    @property
    def is_disc(self):
        return self.chi == 1


class Arrangement:
    """A combinatorial map together with resolved component nesting."""

    def __init__(self, cmap: CombinatorialMap, forest: ContainmentForest,
                 outer: int | None = None):
        self.map = cmap
        self.forest = forest
        self.outer_circle = outer
        self._assemble()

    def _assemble(self):
        cmap = self.map
        faces_by_comp = {}
        for f in cmap.faces:
            faces_by_comp.setdefault(f.component, []).append(f)

        default_outer = {comp: min(fs, key=lambda f: f.id).id
                         for comp, fs in faces_by_comp.items()}
        face_ids = {f.id for f in cmap.faces}

        parent_of = {}
        child_face_of = {}
        for e in self.forest.entries:
            if e.parent_face not in face_ids:
                raise UnknownParentFace(f"no face {e.parent_face}")
            parent = next(f for f in cmap.faces if f.id == e.parent_face)
            if parent.component != e.parent_component:
                raise UnknownParentFace(
                    f"face {e.parent_face} is not in component "
                    f"{e.parent_component}")
            if e.child_component in parent_of:
                raise CyclicContainment(
                    f"component {e.child_component} nested twice")
            if e.child_component not in faces_by_comp:
                raise UnknownParentFace(
                    f"no such component {e.child_component}")
            cf = e.child_face
            if cf is None:
                cf = default_outer[e.child_component]
            elif cf not in face_ids or next(
                    f for f in cmap.faces if f.id == cf
            ).component != e.child_component:
                raise UnknownParentFace(
                    f"face {cf} is not in component {e.child_component}")
            parent_of[e.child_component] = e.parent_component
            child_face_of[e.child_component] = (cf, e.parent_face)

        for start in parent_of:
            seen = set()
            c = start
            while c in parent_of:
                if c in seen:
                    raise CyclicContainment(f"cycle through component {c}")
                seen.add(c)
                c = parent_of[c]

        # merge local faces: child's designated outer face joins the parent
        face_parent = {f.id: f.id for f in cmap.faces}

        def find(x):
            while face_parent[x] != x:
                face_parent[x] = face_parent[face_parent[x]]
                x = face_parent[x]
            return x

        children_at = {}
        for comp, (cf, pf) in child_face_of.items():
            ra, rb = find(cf), find(pf)
            if ra != rb:
                face_parent[max(ra, rb)] = min(ra, rb)
            children_at.setdefault(pf, []).append(comp)

        groups = {}
        for f in cmap.faces:
            groups.setdefault(find(f.id), []).append(f)

        self.faces = []
        self.global_face_of_local = {}
        for root in sorted(groups):
            members = groups[root]
            locs = tuple(sorted(f.id for f in members))
            circles = []
            touches = []
            for f in members:
                for cid in f.touches_boundary:
                    if cmap.boundary[cid]:
                        touches.append(cid)
                    else:
                        circles.append(cid)
            kids = tuple(sorted(c for f in members
                                for c in children_at.get(f.id, ())))
            # each member face is a disc; every nested child performs one
            # connected-sum gluing inside the region
            chi = 1 - len(kids)
            gf = GlobalFace(root, locs, tuple(sorted(circles)), kids,
                            tuple(sorted(touches)), chi)
            self.faces.append(gf)
            for lf in locs:
                self.global_face_of_local[lf] = root

        self.face_of_dart = {d: self.global_face_of_local[f]
                             for d, f in cmap.face_of_dart.items()}
        self.face_by_id = {gf.id: gf for gf in self.faces}

        # components not nested anywhere must all contain boundary circles
        # of the actual surface or be roots; connectivity of the assembled
        # surface is the caller's concern (a multiverse checks it).
        self.roots = sorted(set(range(cmap.n_components)) - set(parent_of))

    def faces_adjacent_to_circle(self, cid):
        out = set()
        walk = self.map.boundary[cid]
        if walk:
            for d in walk:
                out.add(self.face_of_dart[d])
        else:
            for gf in self.faces:
                if cid in gf.circles:
                    out.add(gf.id)
        return sorted(out)

    def stats(self):
        """Global Euler data of the assembled surface."""
        cstats = self.map.component_stats()
        V = sum(s.V for s in cstats)
        E = sum(s.E for s in cstats)
        chi = sum(s.chi for s in cstats) - 2 * len(self.forest.entries)
        b = len(self.map.boundary)
        two_g = 2 - chi - b
        if two_g < 0 or two_g % 2:
            raise NonIntegerGenus(f"assembled: chi={chi}, b={b}")
        return SurfaceStats(V, E, len(self.faces), chi, two_g // 2, b,
                            self.outer_circle)


def surface_stats(obj):
    """Euler data of an assembled arrangement or a connected map."""
    if isinstance(obj, Arrangement):
        return obj.stats()
    if obj.n_components != 1:
        raise ValueError("disconnected map: use component_stats or "
                         "assemble_arrangement")
    return obj.component_stats()[0]


def assemble_arrangement(components, forest=ContainmentForest(), outer=None):
    """Assemble one or more maps into the face structure of a single surface.

    ``components`` is either a (possibly disconnected) CombinatorialMap or a
    list of maps with disjoint dart and vertex name spaces, which are first
    concatenated into one.
    """
    if isinstance(components, CombinatorialMap):
        cmap = components
    else:
        rotations = []
        edges = []
        boundary = []
        for m in components:
            rotations.extend(m.rotations)
            edges.extend(m.edges)
            boundary.extend(m.boundary)
        cmap = CombinatorialMap(rotations, edges, boundary)
    if not isinstance(forest, ContainmentForest):
        forest = ContainmentForest.from_lists(forest)
    return Arrangement(cmap, forest, outer)
