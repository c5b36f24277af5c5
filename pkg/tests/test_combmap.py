import pytest

from clocklat.combmap import assemble_arrangement, build_map
from clocklat.errors import (
    CyclicContainment,
    DanglingDart,
    OpenBoundaryCircle,
    RotationOverlap,
    UnknownParentFace,
)


def loop_on_sphere():
    return build_map([[0, 1]], [[0, 1]])


def theta():
    return build_map([[0, 2, 4], [5, 3, 1]], [[0, 1], [2, 3], [4, 5]])


def torus_square():
    return build_map([[0, 2, 1, 3]], [[0, 1], [2, 3]])


def test_loop_two_faces_on_sphere():
    m = loop_on_sphere()
    s = m.component_stats()[0]
    assert s.F == 2 and s.genus == 0 and s.boundary_count == 0


def test_theta_three_faces_chi_two():
    s = theta().component_stats()[0]
    assert (s.V, s.E, s.F, s.chi) == (2, 3, 3, 2)


def test_involution_fixed_point_rejected():
    with pytest.raises(DanglingDart):
        build_map([[5, 6]], [[5, 5], [6, 6]])


def test_unpaired_dart_rejected():
    with pytest.raises(DanglingDart):
        build_map([[0, 1, 2]], [[0, 1]])


def test_dart_in_two_rotations_rejected():
    with pytest.raises(RotationOverlap):
        build_map([[0, 1], [1, 0]], [[0, 1]])


def test_torus_square_one_face_genus_one():
    s = torus_square().component_stats()[0]
    assert (s.F, s.chi, s.genus) == (1, 0, 1)


def test_trefoil_map_five_faces(trefoil):
    # independent oracle: Euler count F = chi - V + E on the disc
    m = trefoil.map
    s = m.component_stats()[0]
    assert s.F == 1 - s.V + s.E
    assert s.F == 5


def test_face_walks_partition_darts():
    m = theta()
    seen = []
    for f in m.faces:
        seen.extend(f.darts)
    assert sorted(seen) == m.darts()


def test_retrace_invariant_under_rotation_shift():
    base = build_map([[0, 2, 4], [5, 3, 1]], [[0, 1], [2, 3], [4, 5]])
    shifted = build_map([[4, 0, 2], [3, 1, 5]], [[0, 1], [2, 3], [4, 5]])
    assert {frozenset(f.darts) for f in base.faces} == \
        {frozenset(f.darts) for f in shifted.faces}


def test_empty_disc():
    m = build_map([], [], [[]])
    s = m.component_stats()[0]
    assert (s.F, s.chi, s.genus) == (1, 1, 0)


def test_annulus_arrangement():
    m = build_map([], [], [[], []])
    arr = assemble_arrangement(m, [(1, 0, 0)], outer=0)
    s = arr.stats()
    assert (s.F, s.chi, s.genus, s.boundary_count) == (1, 0, 0, 2)


def test_open_boundary_circle_rejected():
    # walk darts that do not chain around the circle
    with pytest.raises(OpenBoundaryCircle):
        build_map([[0, 4, 1], [2, 5, 3]],
                  [[0, 1], [2, 3], [4, 5]], [[0, 3]])


def test_cap_side_must_be_empty():
    # a strand dart wedged between bwd and fwd on the cap side
    with pytest.raises(OpenBoundaryCircle):
        build_map([[0, 4, 1], [2, 5, 3]],
                  [[0, 3], [1, 2], [4, 5]], [[0, 1]])


def _theta_loop_components():
    rot = [[0, 2, 4], [5, 3, 1], [6, 7]]
    edges = [[0, 1], [2, 3], [4, 5], [6, 7]]
    return build_map(rot, edges)


def test_nested_loop_in_theta_face():
    m = _theta_loop_components()
    assert m.n_components == 2
    theta_faces = [f for f in m.faces if f.component == 0]
    arr = assemble_arrangement(m, [(1, 0, theta_faces[0].id)])
    # oracle: Euler for plane arrangements, F = E - V + 1 + #components
    want = 4 - 3 + 1 + 2
    assert len(arr.faces) == want == 4


def test_coordinate_arrangement_oracle():
    # same nesting counted by polygonizing an actual drawing
    shapely = pytest.importorskip("shapely")
    from shapely.geometry import LineString
    from shapely.ops import polygonize, unary_union

    theta_arcs = [
        LineString([(0, 1), (0, 3), (4, 3), (4, 1)]),
        LineString([(0, 1), (2, 1.8), (4, 1)]),
        LineString([(0, 1), (2, 0), (4, 1)]),
    ]
    loop = [LineString([(2, 1.2), (1.8, 1.4), (2, 1.6), (2.2, 1.4),
                        (2, 1.2)])]
    merged = unary_union(theta_arcs + loop)
    bounded = len(list(polygonize(merged)))
    assert bounded + 1 == 4


def test_unknown_parent_face():
    m = _theta_loop_components()
    with pytest.raises(UnknownParentFace):
        assemble_arrangement(m, [(1, 0, 99)])


def test_cyclic_containment():
    rot = [[0, 1], [2, 3]]
    m = build_map(rot, [[0, 1], [2, 3]])
    f0 = [f for f in m.faces if f.component == 0][0].id
    f1 = [f for f in m.faces if f.component == 1][0].id
    with pytest.raises(CyclicContainment):
        assemble_arrangement(m, [(1, 0, f0), (0, 1, f1)])


def test_component_euler_identity():
    for m in (loop_on_sphere(), theta(), torus_square(),
              _theta_loop_components()):
        for s in m.component_stats():
            assert s.V - s.E + s.F == 2 - 2 * s.genus - s.boundary_count


def test_trace_faces_and_surface_stats_wrappers(trefoil):
    from clocklat.combmap import surface_stats, trace_faces
    m = trefoil.map
    assert trace_faces(m) == list(m.faces)
    s = surface_stats(m)
    assert (s.F, s.genus) == (5, 0)
    assert surface_stats(trefoil.arrangement).F == 5
    with pytest.raises(ValueError):
        surface_stats(_theta_loop_components())


def test_boundary_darts_counted_once(trefoil):
    m = trefoil.map
    walk_darts = [d for f in m.faces for d in f.darts]
    assert len(walk_darts) == len(set(walk_darts))
    interior = [d for d in m.darts() if d not in m.boundary_arc_darts]
    assert sorted(d for d in walk_darts if d not in m.boundary_arc_darts) \
        == sorted(interior)
    # each circle's forward darts appear; the cap side does not
    for walk in m.boundary:
        for d in walk:
            assert d in walk_darts
            assert m.involution[d] not in walk_darts
