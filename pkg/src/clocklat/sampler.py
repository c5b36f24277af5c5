"""Seeded random multiverses for property sweeps.

A random closed 4-valent map is drawn by pairing darts uniformly and
shuffling rotations, filtered to the requested genus and connectivity, and
then cut open into string form: one edge is broken, its loose ends are
attached to a fresh boundary circle, and on genus zero the two faces
flanking the broken edge become the starred faces.
"""

from __future__ import annotations

import random

from .combmap import assemble_arrangement, build_map
from .errors import NonIntegerGenus
from .multiverse import Multiverse


def _random_closed_map(rng, n_vertices):
    darts = list(range(4 * n_vertices))
    rng.shuffle(darts)
    if any(a == b for a, b in zip(darts[0::2], darts[1::2])):
        return None
    edges = list(zip(darts[0::2], darts[1::2]))
    rotations = []
    for v in range(n_vertices):
        rot = list(range(4 * v, 4 * v + 4))
        rng.shuffle(rot)
        rotations.append(rot)
    try:
        return build_map(rotations, edges)
    except NonIntegerGenus:
        return None


def _string_surgery(cmap, rng, genus):
    """Break one edge and hang its ends on a new boundary circle."""
    candidates = []
    for d1, d2 in cmap.edges:
        if genus == 0 and cmap.face_of_dart[d1] == cmap.face_of_dart[d2]:
            continue
        candidates.append((d1, d2))
    if not candidates:
        return None
    d1, d2 = candidates[rng.randrange(len(candidates))]

    base = max(cmap.vertex_of) + 1
    m1, m2, p1, p2, q1, q2 = range(base, base + 6)
    rotations = [list(r) for r in cmap.rotations]
    edges = [list(e) for e in cmap.edges if set(e) != {d1, d2}]
    edges += [[d1, m1], [d2, m2], [p1, p2], [q1, q2]]
    rotations.append([p1, m1, q1])      # s1, carrying the d1 half
    rotations.append([q2, m2, p2])      # s2
    return build_map(rotations, edges, [[p1, q2]])


def random_multiverse(rng: random.Random, n_vertices, genus=0,
                      max_states=None, tries=2000):
    """A random validated string-form multiverse, or None.

    ``max_states`` rejects instances whose spine has more matchings, which
    keeps exhaustive lattice checks affordable.
    """
    from . import spine as spine_mod

    for _ in range(tries):
        cmap = _random_closed_map(rng, n_vertices)
        if cmap is None or cmap.n_components != 1:
            continue
        if cmap.component_stats()[0].genus != genus:
            continue
        cut = _string_surgery(cmap, rng, genus)
        if cut is None:
            continue
        arr = assemble_arrangement(cut, [], outer=0)
        stars = arr.faces_adjacent_to_circle(0)
        want = len(arr.faces) - n_vertices
        if len(stars) < want:
            continue
        mv = Multiverse(arr, set(stars[:want]))
        if mv.validate():
            continue
        if max_states is not None:
            g = spine_mod.build_spine(mv)
            if len(spine_mod.enumerate_matchings(g.graph)) > max_states:
                continue
        return mv
    return None


def sample(seed, count, vertex_range=(2, 8), genus=0, max_states=None):
    """A deterministic list of random multiverses."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(*vertex_range)
        mv = random_multiverse(rng, n, genus=genus, max_states=max_states)
        if mv is not None:
            out.append(mv)
    return out


def braid_multiverse(word, wires):
    """A multiverse from a braid-like weave of horizontal strands.

    ``word`` lists crossings left to right; letter k crosses wires k and
    k+1 (0-based, wire 0 on top).  All 2*wires strand ends sit on one
    boundary circle, and every face adjacent to it except the top and the
    leftmost gaps is starred, which always leaves exactly the required
    number of stars on a connected weave.

    Returns (multiverse, doc) with ``doc`` the serializable file form.
    """
    from .combmap import assemble_arrangement, build_map
    from .files import multiverse_doc

    n = len(word)
    counter = [0]

    def new_dart():
        counter[0] += 1
        return counter[0] - 1

    # open wire ends travelling rightward: per wire, the dangling dart
    rotations = []
    edges = []
    left_caps = []
    pending = []
    for w in range(wires):
        d = new_dart()
        left_caps.append(d)
        pending.append(d)

    for k in word:
        # a crossing vertex: NE NW SW SE darts, rotation ccw
        ne, nw, sw, se = (new_dart() for _ in range(4))
        rotations.append((ne, nw, sw, se))
        edges.append((pending[k], nw))
        edges.append((pending[k + 1], sw))
        pending[k] = ne
        pending[k + 1] = se

    right_caps = []
    for w in range(wires):
        d = new_dart()
        right_caps.append(d)
        edges.append((pending[w], d))

    # boundary vertices: left column L0..L(wires-1) top to bottom, right
    # column likewise; the circle runs ccw: down-left along the left side,
    # right along the bottom, up the right side, left along the top.
    n_cross = len(rotations)
    arc = {}
    order = [('L', w) for w in range(wires)]            # top to bottom
    order += [('R', w) for w in reversed(range(wires))]  # bottom to top
    arcs = [new_dart() for _ in range(2 * len(order))]
    walk = []
    boundary_rot = {}
    for i, key in enumerate(order):
        fwd = arcs[2 * i]
        bwd_partner = arcs[2 * i + 1]
        walk.append(fwd)
        edges.append((fwd, bwd_partner))
        boundary_rot[key] = [fwd, None, None]   # fwd, strand, bwd
    for i, key in enumerate(order):
        prev = order[i - 1]
        boundary_rot[key][2] = arcs[2 * ((i - 1) % len(order)) + 1]
    for w in range(wires):
        boundary_rot[('L', w)][1] = left_caps[w]
        boundary_rot[('R', w)][1] = right_caps[w]

    all_rot = [list(r) for r in rotations]
    for key in order:
        all_rot.append(boundary_rot[key])

    cmap = build_map(all_rot, edges, [walk])
    arr = assemble_arrangement(cmap, [], outer=0)
    mv = Multiverse(arr, set())

    want = len(arr.faces) - n_cross
    adj = arr.faces_adjacent_to_circle(0)
    if len(adj) < want:
        raise ValueError("weave leaves too few faces on the boundary")
    starred = set(adj[:want])
    mv = Multiverse(arr, starred)
    issues = mv.validate()
    if issues:
        raise ValueError(f"weave is not a multiverse: {issues}")
    doc = multiverse_doc(all_rot, edges, [walk], 0, starred,
                         comment=f"weave of {wires} strands, word {word}")
    return mv, doc
