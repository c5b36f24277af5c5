import pytest

from clocklat import lattice as lat
from clocklat import planar
from clocklat import spine as sp
from clocklat.errors import (
    CycleDetected,
    NonPlanarInteriorUndefined,
    NotPlanar,
    NotStringUniverse,
    WrongSign,
)
from clocklat.multiverse import enumerate_states


def test_plane_faces_trefoil(trefoil):
    g = sp.build_spine(trefoil)
    red = sp.reduce_spine(g)
    pfs = planar.plane_faces(red.spine)
    # connected reduced spine on a disc: every non-outer spine face is
    # encircled by exactly one elementary cycle
    faces = len(red.spine.spine_map.faces)
    assert len(pfs.elementary) == faces - 1


def test_plane_faces_rejects_positive_genus(torus):
    g = sp.build_spine(torus)
    with pytest.raises(NotPlanar):
        planar.plane_faces(g)


def test_nested_components_union(corpus):
    mv, fr = corpus["framing_trap"]
    g = sp.build_spine(mv, fr)
    red = sp.reduce_spine(g)
    pfs = planar.plane_faces(red.spine)
    by_comp = {}
    for ec in pfs.elementary:
        by_comp.setdefault(ec.component, []).append(ec)
    # elementary cycles are the disjoint union over components: each
    # component contributes one per face beyond its outer face
    faces_per_comp = {}
    for f in red.spine.spine_map.faces:
        faces_per_comp[f.component] = faces_per_comp.get(f.component, 0) + 1
    assert len(faces_per_comp) >= 2     # the trap's spine is disconnected
    for comp, count in faces_per_comp.items():
        assert len(by_comp.get(comp, [])) == count - 1
    keys = [ec.key() for ec in pfs.elementary]
    assert len(keys) == len(set(keys))


def test_sign_flips_under_twist(trefoil):
    g = sp.build_spine(trefoil)
    red = sp.reduce_spine(g)
    pfs = planar.plane_faces(red.spine)
    m = sp.enumerate_matchings(g.graph)[0]
    for sc in planar.signed_cycles(m, pfs):
        if sc.sign == 'negative':
            m2 = planar.twist_up(red.graph, m, sc)
        else:
            m2 = planar.twist_down(red.graph, m, sc)
        flipped = [s for s in planar.signed_cycles(m2, pfs)
                   if s.key() == sc.key()]
        assert len(flipped) == 1
        assert flipped[0].sign != sc.sign


def test_twist_up_wrong_sign(trefoil):
    g = sp.build_spine(trefoil)
    red = sp.reduce_spine(g)
    pfs = planar.plane_faces(red.spine)
    m = sp.enumerate_matchings(g.graph)[0]
    for sc in planar.signed_cycles(m, pfs):
        bad = planar.twist_down if sc.sign == 'negative' else planar.twist_up
        with pytest.raises(WrongSign):
            bad(red.graph, m, sc)


def test_trefoil_chain(trefoil):
    clock = planar.build_planar_clock_lattice(trefoil)
    L = clock.lattice
    assert len(L) == 3 and len(L.covers) == 2
    assert lat.is_distributive(L)[0]
    assert set(L.cover_pairs()) == set(L.move_pairs())


def test_lattice_invariants_on_planar_corpus(corpus):
    for name, (mv, fr) in corpus.items():
        if mv.genus() != 0:
            continue
        clock = planar.build_planar_clock_lattice(mv, fr)
        L = clock.lattice
        assert lat.is_lattice(L), name
        assert lat.is_distributive(L)[0], name
        assert set(L.cover_pairs()) == set(L.move_pairs()), name


def test_transpositions_report_and_invert(trefoil):
    clock = planar.build_planar_clock_lattice(trefoil)
    for key in clock.lattice.elements:
        s = clock.state_of_key(key)
        moves = planar.plane_transpositions_from(trefoil, s, clock)
        m = sp.state_to_matching(clock.spine, s)
        cycles = planar.signed_cycles(m, clock.pfs)
        assert len(moves) == len(cycles)    # |Tr_S| = alternating cycles
        for t in moves:
            assert t.source == key
            back = [u for u in planar.plane_transpositions_from(
                        trefoil, clock.state_of_key(t.target), clock)
                    if u.target == key and u.direction != t.direction]
            assert back, "returned move has no inverse"
            assert t.n == len(t.corner_moves)


def test_product_structure_across_components(corpus):
    # the lattice is the product of the reduced spine's component lattices
    mv, fr = corpus["framing_trap"]
    clock = planar.build_planar_clock_lattice(mv, fr)
    full = clock.lattice
    comps = [c for c in clock.reduced.components if c[0] != 'isolated']
    assert len(comps) >= 2
    per_comp = []
    for kind, verts, edges in comps:
        sub = frozenset(edges)
        keys = sorted({tuple(sorted(set(k) & sub)) for k in full.elements})
        covers = set()
        for a, b in full.cover_pairs():
            ka, kb = tuple(sorted(set(a) & sub)), tuple(sorted(set(b) & sub))
            if ka != kb:
                covers.add((ka, kb))
        per_comp.append(lat.Lattice(keys, covers))
    prod = lat.product(*per_comp)
    assert lat.is_isomorphic(prod, full) is not None


def test_kauffman_moves_on_trefoil(trefoil):
    clock = planar.build_planar_clock_lattice(trefoil)
    for key in clock.lattice.elements:
        s = clock.state_of_key(key)
        kts = planar.kauffman_transpositions_from(trefoil, s, clock.spine)
        pts = planar.plane_transpositions_from(trefoil, s, clock)
        assert {(t.source, t.target, t.direction) for t in kts} == \
            {(t.source, t.target, t.direction) for t in pts}
        for t in kts:
            assert all(turns == 1 for _, _, _, turns in t.corner_moves)


def test_kauffman_subset_on_planar_multiverse(corpus):
    mv, fr = corpus["four_string_weave"]
    clock = planar.build_planar_clock_lattice(mv, fr)
    for key in clock.lattice.elements[:6]:
        s = clock.state_of_key(key)
        kts = {(t.source, t.target, t.direction)
               for t in planar.kauffman_transpositions_from(mv, s,
                                                            clock.spine)}
        pts = {(t.source, t.target, t.direction)
               for t in planar.plane_transpositions_from(mv, s, clock)
               if t.n == 2}
        assert kts <= pts


def test_kauffman_needs_planarity(torus):
    s = enumerate_states(torus)[0]
    with pytest.raises(NonPlanarInteriorUndefined):
        planar.kauffman_transpositions_from(torus, s)


def test_kauffman_equivalence_reports(trefoil, corpus):
    assert planar.verify_kauffman_equivalence(trefoil).ok
    assert planar.verify_kauffman_equivalence(
        corpus["universe_two_lattices"][0]).ok
    with pytest.raises(NotStringUniverse):
        planar.verify_kauffman_equivalence(corpus["split_weave"][0])


def test_escape_counts(trefoil, corpus):
    seen = set()
    for name in ("trefoil", "universe_two_lattices"):
        mv, fr = corpus[name]
        g = sp.build_spine(mv, fr)
        for m in sp.enumerate_matchings(g.graph):
            for cyc in sp.alternating_cycles(m, g.graph):
                count, L = planar.escape_count_check(mv, m, cyc, g)
                assert count == L + 2
                seen.add(L)
    assert {2, 3} & seen        # both short and long cycles exercised


def test_escape_count_rejects_multiverses(corpus):
    mv, fr = corpus["split_weave"]
    g = sp.build_spine(mv, fr)
    m = sp.enumerate_matchings(g.graph)[0]
    cyc = sp.alternating_cycles(m, g.graph)[0]
    with pytest.raises(NotStringUniverse):
        planar.escape_count_check(mv, m, cyc, g)


def test_unframed_cycle_on_trap(corpus):
    mv, fr = corpus["framing_trap"]
    clock = planar.build_planar_clock_lattice(mv, fr)
    assert lat.is_distributive(clock.lattice)[0]
    with pytest.raises(CycleDetected) as exc:
        planar.build_unframed_order(mv)
    w = exc.value.witness
    assert w[0] == w[-1] and len(w) >= 3


def test_unframed_agrees_on_honest_universes(corpus):
    for name in ("trefoil", "four_string_weave", "annulus_pair"):
        mv, fr = corpus[name]
        L = planar.build_unframed_order(mv)
        clock = planar.build_planar_clock_lattice(mv, fr)
        assert set(L.move_pairs()) == set(clock.lattice.move_pairs()), name


def test_kauffman_interior_departure_check(corpus):
    # on 2-cell planar multiverses the escape count makes every length-4
    # alternating cycle pass the no-interior-departure test (all four
    # non-cycle edges at its white vertices point outward), so every such
    # cycle is a Kauffman transposition; the check itself is exercised on
    # every cycle
    for name in ("four_string_weave", "universe_two_lattices"):
        mv, fr = corpus[name]
        g = sp.build_spine(mv, fr)
        for m in sp.enumerate_matchings(g.graph)[:8]:
            s = sp.matching_to_state(g, m)
            kts = planar.kauffman_transpositions_from(mv, s, g)
            four = [c for c in sp.alternating_cycles(m, g.graph, max_len=4)
                    if len(c.steps) == 4]
            assert len(kts) == len(four), name
            for cyc in four:
                sides = planar.CycleSides(g, cyc)
                for kind, v in cyc.vertices():
                    if kind != 'w':
                        continue
                    for e in g.white_rotation(v):
                        if e in cyc.key():
                            continue
                        assert sides.side_of_edge(e) != sides.interior


def test_every_framing_gives_a_distributive_lattice(corpus):
    # the clock theorem holds for each framing; the lattices may differ
    for name in ("framing_trap", "annulus_pair"):
        mv, _ = corpus[name]
        framings = sp.enumerate_framings(mv)
        assert framings
        for fr in framings:
            clock = planar.build_planar_clock_lattice(mv, fr)
            assert lat.is_distributive(clock.lattice)[0], name
            assert set(clock.lattice.cover_pairs()) == \
                set(clock.lattice.move_pairs()), name
