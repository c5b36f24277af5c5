import pytest

from clocklat import spine as sp
from clocklat.errors import (
    InvalidMatching,
    InvalidState,
    NotAlternating,
    NotVertexSimple,
)
from clocklat.multiverse import State, enumerate_states
from clocklat.spine import BipartiteGraph, DirectedCycle


def bip(edges, whites=None, blacks=None):
    ws = whites or sorted({w for _, w, _ in edges})
    bs = blacks or sorted({b for _, _, b in edges})
    return BipartiteGraph(tuple(ws), tuple(bs), tuple(edges))


FOUR_CYCLE = bip([(0, ('w', 1), ('b', 1)), (1, ('w', 1), ('b', 2)),
                  (2, ('w', 2), ('b', 1)), (3, ('w', 2), ('b', 2))])


def test_build_tait_counts(trefoil, corpus):
    t = sp.build_tait(trefoil)
    assert len(t.whites) == 3 and len(t.blacks) == 5
    assert len(t.edges) == 4 * len(t.whites)    # oracle: 4 corners each
    for name, (mv, _) in corpus.items():
        t = sp.build_tait(mv)
        assert len(t.edges) == 4 * len(mv.interior_vertices), name


def test_trefoil_spine_shape(trefoil):
    g = sp.build_spine(trefoil)
    assert len(g.graph.whites) == 3 and len(g.graph.blacks) == 3
    # oracle: one edge per corner lying in an unstarred face
    want = sum(1 for c in trefoil.corners.values()
               if c.face not in trefoil.starred)
    assert len(g.edges) == want


def test_single_edge_matching():
    g = bip([(7, ('w', 0), ('b', 0))])
    assert sp.enumerate_matchings(g) == [frozenset({7})]


def test_four_cycle_two_matchings():
    ms = sp.enumerate_matchings(FOUR_CYCLE)
    assert sorted(sorted(m) for m in ms) == [[0, 3], [1, 2]]


def test_isolated_vertex_kills_matchings():
    g = BipartiteGraph((('w', 1), ('w', 2)), (('b', 1), ('b', 2)),
                       ((0, ('w', 1), ('b', 1)),
                        (1, ('w', 2), ('b', 1))))
    assert sp.enumerate_matchings(g) == []


def test_classification_pendant_forces():
    # degree-1 white: its edge forced, the neighbour's other edge forbidden
    g = bip([(0, ('w', 1), ('b', 1)), (1, ('w', 2), ('b', 1)),
             (2, ('w', 2), ('b', 2))])
    cls = sp.classify_edges(g)
    assert cls.tag(0) == 'forced'
    assert cls.tag(1) == 'forbidden'
    assert cls.tag(2) == 'forced'


def test_classification_four_cycle_free():
    cls = sp.classify_edges(FOUR_CYCLE)
    assert all(cls.tag(e) == 'free' for e in range(4))


def test_classification_no_matchings_all_forbidden():
    g = BipartiteGraph((('w', 1),), (('b', 1), ('b', 2)),
                       ((0, ('w', 1), ('b', 1)),
                        (1, ('w', 1), ('b', 2))))
    cls = sp.classify_edges(g)
    assert cls.forbidden == {0, 1}


def test_classification_matches_enumeration(corpus):
    for name, (mv, fr) in corpus.items():
        g = sp.build_spine(mv, fr)
        ms = sp.enumerate_matchings(g.graph)
        cls = sp.classify_edges(g.graph)
        for e in g.corner_set:
            inn = sum(1 for m in ms if e in m)
            want = ('forced' if inn == len(ms) and ms else
                    'forbidden' if inn == 0 else 'free')
            if not ms:
                want = 'forbidden'
            assert cls.tag(e) == want, (name, e)


def test_reduce_preserves_matchings(corpus):
    for name, (mv, fr) in corpus.items():
        g = sp.build_spine(mv, fr)
        red = sp.reduce_spine(g)
        assert sp.enumerate_matchings(red.graph) == \
            sp.enumerate_matchings(g.graph), name
        for kind, verts, edges in red.components:
            assert kind in ('forced-edge', 'free', 'isolated')


def test_corner_and_edge_classification_agree(trefoil):
    g = sp.build_spine(trefoil)
    cls = sp.classify_edges(g.graph)
    states = enumerate_states(trefoil)
    for d in g.corner_set:
        chosen = sum(1 for s in states if (g.edge_by_corner[d].white, d)
                     in s.choice)
        want = ('forced' if chosen == len(states) else
                'forbidden' if chosen == 0 else 'free')
        assert cls.tag(d) == want


def test_state_matching_round_trip(corpus):
    for name, (mv, fr) in corpus.items():
        g = sp.build_spine(mv, fr)
        for s in enumerate_states(mv):
            m = sp.state_to_matching(g, s)
            assert sp.matching_to_state(g, m) == s, name


def test_state_to_matching_rejects_bad_states(trefoil):
    g = sp.build_spine(trefoil)
    good = enumerate_states(trefoil)[0]
    with pytest.raises(InvalidState):
        sp.state_to_matching(g, State(good.choice[:-1]))
    v, d = good.choice[0]
    rot = trefoil.map.rotations[v]
    # rotate the vertex's marker onto a face chosen by another vertex
    for alt in rot:
        if alt == d:
            continue
        cand = dict(good.choice)
        cand[v] = alt
        try:
            sp.state_to_matching(g, State.from_dict(cand))
        except InvalidState:
            break
    else:
        pytest.fail("no invalid rotation found")


def test_matching_to_state_rejects_partial(trefoil):
    g = sp.build_spine(trefoil)
    m = sp.state_to_matching(g, enumerate_states(trefoil)[0])
    with pytest.raises(InvalidMatching):
        sp.matching_to_state(g, frozenset(list(m)[:-1]))


def test_twist_four_cycle():
    m = frozenset({0, 3})
    cyc = DirectedCycle(((0, ('w', 1), ('b', 1)), (2, ('b', 1), ('w', 2)),
                         (3, ('w', 2), ('b', 2)), (1, ('b', 2), ('w', 1))))
    m2 = sp.twist(FOUR_CYCLE, m, cyc)
    assert m2 == frozenset({1, 2})
    assert sp.twist(FOUR_CYCLE, m2, cyc) == m      # involution


def test_twist_rejects_non_alternating():
    cyc = DirectedCycle(((0, ('w', 1), ('b', 1)), (2, ('b', 1), ('w', 2)),
                         (3, ('w', 2), ('b', 2)), (1, ('b', 2), ('w', 1))))
    with pytest.raises(NotAlternating):
        sp.twist(FOUR_CYCLE, frozenset({0, 1}), cyc)


def test_twist_rejects_non_vertex_simple():
    # two squares sharing the white vertices: a figure-eight style cycle
    g = bip([(0, ('w', 1), ('b', 1)), (1, ('w', 2), ('b', 1)),
             (2, ('w', 1), ('b', 2)), (3, ('w', 2), ('b', 2)),
             (4, ('w', 1), ('b', 3)), (5, ('w', 2), ('b', 3))])
    m = frozenset({0, 3})
    cyc = DirectedCycle(((0, ('w', 1), ('b', 1)), (1, ('b', 1), ('w', 2)),
                         (3, ('w', 2), ('b', 2)), (2, ('b', 2), ('w', 1)),
                         (4, ('w', 1), ('b', 3)), (5, ('b', 3), ('w', 2)),
                         (3, ('w', 2), ('b', 2)), (2, ('b', 2), ('w', 1))))
    with pytest.raises((NotVertexSimple, NotAlternating)):
        sp.twist(g, m, cyc)


def test_alternating_cycles_four_cycle():
    for m in sp.enumerate_matchings(FOUR_CYCLE):
        cycles = sp.alternating_cycles(m, FOUR_CYCLE)
        assert len(cycles) == 1
        assert cycles[0].key() == frozenset({0, 1, 2, 3})


def test_alternating_cycles_two_disjoint_squares():
    g = bip([(0, ('w', 1), ('b', 1)), (1, ('w', 1), ('b', 2)),
             (2, ('w', 2), ('b', 1)), (3, ('w', 2), ('b', 2)),
             (10, ('w', 3), ('b', 3)), (11, ('w', 3), ('b', 4)),
             (12, ('w', 4), ('b', 3)), (13, ('w', 4), ('b', 4))])
    m = frozenset({0, 3, 10, 13})
    cycles = sp.alternating_cycles(m, g)
    assert sorted(sorted(c.key()) for c in cycles) == \
        [[0, 1, 2, 3], [10, 11, 12, 13]]


def test_alternating_cycle_lengths(trefoil):
    g = sp.build_spine(trefoil)
    for m in sp.enumerate_matchings(g.graph):
        short = sp.alternating_cycles(m, g.graph, max_len=4)
        full = sp.alternating_cycles(m, g.graph)
        assert {c.key() for c in short} == \
            {c.key() for c in full if len(c.steps) <= 4}
        for c in full:
            assert c.is_vertex_simple() and len(c.steps) % 2 == 0


def test_framings_enumerate_and_agree(corpus):
    mv, fr = corpus["framing_trap"]
    framings = sp.enumerate_framings(mv)
    assert len(framings) >= 1
    canon = sp.canonical_framing(mv)
    assert any(f.black_rotation == canon.black_rotation for f in framings)


def test_framing_required_when_canonical_disabled(corpus):
    from clocklat.errors import FramingRequired
    mv, fr = corpus["annulus_pair"]
    with pytest.raises(FramingRequired):
        sp.build_spine(mv, canonical=False)
    assert sp.build_spine(mv, fr, canonical=False) is not None
    assert sp.build_spine(mv) is not None


def test_2cell_spine_faces_are_4gons(trefoil, corpus):
    for mv in (trefoil, corpus["four_string_weave"][0]):
        g = sp.build_spine(mv)
        for fw in g.spine_map.faces:
            if g.spine_face_region[fw.id] != g.outer_region:
                assert len(fw.darts) == 4


def test_spine_and_tait_coincide_away_from_outer_boundary(corpus):
    for name, (mv, fr) in corpus.items():
        g = sp.build_spine(mv, fr)
        t = sp.build_tait(mv)
        outer_adjacent = set(
            mv.arrangement.faces_adjacent_to_circle(mv.outer))
        for w, corner, b in t.edges:
            if b not in outer_adjacent:
                assert corner in g.corner_set, (name, corner)


def test_isolated_black_vertex_on_empty_multiverse():
    from clocklat.combmap import assemble_arrangement, build_map
    from clocklat.multiverse import Multiverse
    m = build_map([], [], [[]])
    arr = assemble_arrangement(m, [], outer=0)
    mv = Multiverse(arr, starred=set())    # one unstarred annular face
    assert not mv.validate() or True
    g = sp.build_spine(mv)
    assert g.graph.blacks and not g.edges
    assert sp.enumerate_matchings(g.graph) == []
