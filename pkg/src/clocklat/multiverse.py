"""Multiverses: 4-valent graphs on surfaces with starred faces and states.

A multiverse wraps an assembled arrangement whose graph is the union of the
strand graph and the boundary circles.  Interior vertices have degree 4,
boundary vertices have degree 1 and sit on a circle, and the starred faces
are ``F - V_int`` distinct faces adjacent to the distinguished outer circle.
A state picks one corner per interior vertex so that every unstarred face is
chosen exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass

from .combmap import Arrangement
from .errors import (
    BadDegree,
    HypothesisViolated,
    MultiverseError,
    NotInteriorVertex,
    StarCountMismatch,
    StarNotOnOuterBoundary,
)


@dataclass(frozen=True)
class Corner:
    """The corner between ``after_dart`` and its rotation successor."""

    vertex: int
    after_dart: int
    face: int


@dataclass(frozen=True)
class State:
    """Assignment of one chosen corner per interior vertex."""

    choice: tuple   # sorted tuple of (vertex, after_dart)

    @staticmethod
    def from_dict(d):
        return State(tuple(sorted(d.items())))

    def as_dict(self):
        return dict(self.choice)

    def key(self):
        return self.choice


@dataclass(frozen=True)
class MultiverseStats:
    V_int: int
    V_bd: int
    N: int
    F: int
    star_count: int
    b: int


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str


class Multiverse:
    def __init__(self, arrangement: Arrangement, starred, outer=None):
        self.arrangement = arrangement
        self.map = arrangement.map
        self.starred = frozenset(starred)
        self.outer = arrangement.outer_circle if outer is None else outer

        cmap = self.map
        self.interior_vertices = []
        self.boundary_vertices = []
        for v, rot in enumerate(cmap.rotations):
            bd = [d for d in rot if d in cmap.boundary_arc_darts]
            if bd:
                self.boundary_vertices.append(v)
            else:
                self.interior_vertices.append(v)

        self.faces = {gf.id: gf for gf in arrangement.faces}
        self.unstarred = sorted(set(self.faces) - self.starred)

        # one corner per dart at an interior vertex
        self.corners = {}
        for v in self.interior_vertices:
            for d in cmap.rotations[v]:
                self.corners[d] = Corner(v, d, arrangement.face_of_dart[d])
        self.corners_of_face = {}
        for c in self.corners.values():
            self.corners_of_face.setdefault(c.face, []).append(c)

    # -- queries --

    def corners_of(self, v):
        """The four corners at an interior vertex, in rotation order."""
        if v not in set(self.interior_vertices):
            raise NotInteriorVertex(f"vertex {v} is not interior")
        return [self.corners[d] for d in self.map.rotations[v]]

    def stats(self):
        arr = self.arrangement.stats()
        n_bd = len(self.boundary_vertices)
        b = sum(1 for gf in self.arrangement.faces if _is_annular(self, gf))
        return MultiverseStats(len(self.interior_vertices), n_bd, n_bd // 2,
                               len(self.faces), len(self.starred), b)

    def genus(self):
        return self.arrangement.stats().genus

    def u_component_of_vertex(self, v):
        return self.map.component_of_vertex[v]

    # -- validation --

    def validate(self):
        issues = []
        cmap = self.map

        if self.outer is None or not (0 <= self.outer < len(cmap.boundary)):
            issues.append(ValidationIssue(
                "NoOuterBoundary", "no outer boundary circle designated"))

        for v, rot in enumerate(cmap.rotations):
            bd = [d for d in rot if d in cmap.boundary_arc_darts]
            deg = len(rot) - len(bd)
            if bd:
                if len(bd) != 2 or deg != 1:
                    issues.append(ValidationIssue(
                        "BadDegree",
                        f"boundary vertex {v} has graph degree {deg}"))
            elif deg != 4:
                issues.append(ValidationIssue(
                    "BadDegree", f"interior vertex {v} has degree {deg}"))

        if len(self.arrangement.roots) != 1:
            issues.append(ValidationIssue(
                "Disconnected",
                f"{len(self.arrangement.roots)} unnested components; the "
                "surface must be connected"))

        unknown = [f for f in self.starred if f not in self.faces]
        if unknown:
            issues.append(ValidationIssue(
                "UnknownFace", f"starred faces {sorted(unknown)} do not exist"))
        want = len(self.faces) - len(self.interior_vertices)
        if len(self.starred) != want:
            issues.append(ValidationIssue(
                "StarCountMismatch",
                f"{len(self.starred)} starred faces, F - V_int = {want}"))
        if self.outer is not None and 0 <= self.outer < len(cmap.boundary):
            on_outer = set(self.arrangement.faces_adjacent_to_circle(self.outer))
            for f in sorted(self.starred):
                if f in self.faces and f not in on_outer:
                    issues.append(ValidationIssue(
                        "StarNotOnOuterBoundary",
                        f"starred face {f} is not adjacent to the outer "
                        "boundary"))

        if len(self.boundary_vertices) % 2:
            issues.append(ValidationIssue(
                "OddBoundaryVertices",
                f"V_bd = {len(self.boundary_vertices)} is odd"))
        return issues

    def require_valid(self):
        issues = self.validate()
        if not issues:
            return self
        by_code = {"BadDegree": BadDegree,
                   "StarCountMismatch": StarCountMismatch,
                   "StarNotOnOuterBoundary": StarNotOnOuterBoundary}
        first = issues[0]
        raise by_code.get(first.code, MultiverseError)(
            "; ".join(i.message for i in issues))


def _is_annular(mv, gf):
    """Annulus with exactly one circle of the surface on its boundary."""
    all_circles = gf.circles + gf.touches
    return gf.chi == 0 and len(all_circles) == 1


def corners_of(mv: Multiverse, v):
    """The four corners at an interior vertex, in rotation order."""
    return mv.corners_of(v)


def validate_multiverse(mv: Multiverse):
    """Full validation report; empty list means the multiverse is valid."""
    return mv.validate()


def euler_check(mv: Multiverse):
    """Both sides of F - V_int = N + chi + b, where b counts annular faces.

    Applies only when every face is a disc or an annulus with one boundary
    circle of the surface; otherwise raises HypothesisViolated (the check is
    skipped, not failed).
    """
    for gf in mv.arrangement.faces:
        if not (gf.is_disc or _is_annular(mv, gf)):
            raise HypothesisViolated(
                f"face {gf.id} is neither a disc nor a qualifying annulus")
    s = mv.stats()
    chi = mv.arrangement.stats().chi
    lhs = s.F - s.V_int
    rhs = s.N + chi + s.b
    return lhs == rhs, lhs, rhs


def enumerate_states(mv: Multiverse):
    """All states, via the bijection with matchings on a spine."""
    from . import spine as _spine
    g = _spine.build_spine(mv)
    return [_spine.matching_to_state(g, m)
            for m in _spine.enumerate_matchings(g.graph)]


def detect_dead_components(mv: Multiverse):
    """Components of the strand graph embedded in an interior disc.

    Such a component forces the state set to be empty: its graph has one
    more bounded face than it has vertices to mark them.  A nested component
    escapes only by having positive genus or by surrounding a boundary
    circle of the surface.
    """
    children = {}
    for e in mv.arrangement.forest.entries:
        children.setdefault(e.parent_component, []).append(e.child_component)

    stats = mv.map.component_stats()
    circle_comps = {mv.map.component_of_circle[c]
                    for c in range(len(mv.map.boundary))}

    def subtree(comp):
        out = {comp}
        stack = [comp]
        while stack:
            for kid in children.get(stack.pop(), ()):
                if kid not in out:
                    out.add(kid)
                    stack.append(kid)
        return out

    nested = {e.child_component for e in mv.arrangement.forest.entries}
    dead = []
    for comp in sorted(nested):
        if comp in circle_comps:
            continue
        sub = subtree(comp)
        if any(stats[c].genus > 0 for c in sub):
            continue
        if any(c in circle_comps for c in sub):
            continue
        dead.append(comp)
    return dead
