import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from plval.exact import barycentric_coordinates
from plval.generate import PRESETS, InstanceSpec, generate_instance, preset_complex
from plval.simplicial import (
    NotASubcomplex,
    PointOutsideError,
    SimplicialComplex,
    carrier,
    derived_complex,
    euler_characteristic,
    simplicial_neighbourhood,
    supplement,
    supplement_euler_characteristic,
    validate,
)

from .conftest import path_complex
from .oracle import alternating_count


def point_set(K):
    return {frozenset(K.vertices[i] for i in s) for s in K.simplices}


class TestValidate:
    def test_single_edge_ok(self, edge):
        assert validate(edge) == []

    def test_overlapping_triangles(self):
        K = SimplicialComplex.from_maximal(
            2, [(0, 0), (2, 0), (0, 2), (1, 0), (3, 0), (1, -2)], [(0, 1, 2), (3, 4, 5)]
        )
        problems = validate(K)
        assert problems and "(0, 1, 2)" in problems[0] and "(3, 4, 5)" in problems[0]
        assert validate(K, check_intersections=False) == []

    def test_duplicate_vertex(self):
        K = SimplicialComplex.from_maximal(1, [(0,), (1,), (1,)], [(0, 1), (0, 2)])
        assert any("duplicate vertex" in p for p in validate(K))

    def test_overlap_outside_common_face(self):
        # two edges on a line sharing vertex 0 but overlapping on [0, 1]
        K = SimplicialComplex.from_maximal(1, [(0,), (2,), (1,)], [(0, 1), (0, 2)])
        assert any("outside their common face" in p for p in validate(K))

    def test_dependent_simplex(self):
        K = SimplicialComplex.from_maximal(2, [(0, 0), (1, 1), (2, 2)], [(0, 1, 2)])
        assert any("affinely dependent" in p for p in validate(K))

    def test_missing_face_and_unused_vertex(self):
        K = SimplicialComplex(1, [(0,), (1,), (5,)], [(0, 1), (0,)], closed=True)
        problems = validate(K)
        assert any("face (1,)" in p for p in problems)
        assert any("vertex 2 belongs to no simplex" in p for p in problems)

    @pytest.mark.parametrize("preset", PRESETS)
    def test_presets_valid(self, preset):
        assert validate(preset_complex(preset)) == []


class TestEulerCharacteristic:
    def test_edge(self, edge):
        assert euler_characteristic(edge) == 1

    def test_square_boundary(self):
        K = SimplicialComplex.from_maximal(
            2, [(0, 0), (1, 0), (1, 1), (0, 1)], [(0, 1), (1, 2), (2, 3), (0, 3)]
        )
        assert euler_characteristic(K) == 0

    def test_empty(self):
        assert euler_characteristic(SimplicialComplex.empty(2)) == 0

    @pytest.mark.parametrize(
        "preset, chi, fvec",
        [
            ("interval", 1, (2, 1)),
            ("square", 1, (4, 5, 2)),
            ("square-with-hole", 0, (8, 16, 8)),
            ("two-components", 2, (4, 2)),
        ],
    )
    def test_presets(self, preset, chi, fvec):
        K = preset_complex(preset)
        assert K.f_vector() == fvec
        assert euler_characteristic(K) == chi == alternating_count(K.maximal)


class TestDerived:
    def test_edge(self, edge):
        Kp = derived_complex(edge)
        assert sorted(Kp.vertices) == [(0,), (mpq(1, 2),), (1,)]
        assert Kp.f_vector() == (3, 2)

    def test_single_vertex_unchanged(self):
        K = SimplicialComplex.from_maximal(1, [(3,)], [(0,)])
        assert derived_complex(K) == K

    def test_triangle(self, triangle):
        Kp = derived_complex(triangle)
        assert Kp.f_vector() == (7, 12, 6)
        assert euler_characteristic(Kp) == 1
        assert validate(Kp) == []

    def test_tags(self, triangle):
        Kp = derived_complex(triangle)
        sources = [t.source for t in Kp.tags]
        assert sources[:3] == [(0,), (1,), (2,)]
        assert sources[3:] == sorted(sources[3:])
        assert Kp.vertices[sources.index((0, 1, 2))] == (mpq(1, 3), mpq(1, 3))

    @settings(max_examples=15, deadline=None)
    @given(st.sampled_from(PRESETS), st.integers(0, 2), st.integers(0, 2**64 - 1))
    def test_chi_invariant(self, preset, depth, seed):
        K, _ = generate_instance(InstanceSpec(preset, depth, 0, seed))
        Kp = derived_complex(K)
        assert euler_characteristic(Kp) == euler_characteristic(K)
        assert validate(Kp) == []


class TestSupplement:
    def test_path_without_endpoints(self, path3):
        L = [(0,), (2,)]
        S = supplement(path3, L)
        assert sorted(S.vertices) == [(mpq(1, 4),), (mpq(1, 2),), (mpq(3, 4),)]
        assert S.f_vector() == (3, 2)
        assert euler_characteristic(S) == 1

    def test_empty_subcomplex_gives_derived(self, path3):
        assert point_set(supplement(path3, [])) == point_set(derived_complex(path3))

    def test_whole_complex_gives_empty(self, path3):
        S = supplement(path3, path3.simplices)
        assert len(S) == 0 and euler_characteristic(S) == 0

    def test_not_a_subcomplex(self, path3):
        with pytest.raises(NotASubcomplex):
            supplement(path3, [(0, 2)])
        with pytest.raises(NotASubcomplex):
            supplement(path3, [(0, 1)])

    def test_disjoint_from_subcomplex(self, triangle):
        L = [(0,), (1,), (0, 1)]
        S = supplement(triangle, L)
        Lp_points = {(0, 0), (1, 0), (mpq(1, 2), 0)}
        assert not Lp_points & set(S.vertices)
        assert validate(S) == []

    @settings(max_examples=25, deadline=None)
    @given(st.sampled_from(PRESETS), st.integers(0, 2), st.integers(0, 2**32), st.data())
    def test_chain_count_matches_construction(self, preset, depth, seed, data):
        K, _ = generate_instance(InstanceSpec(preset, depth, 0, seed))
        verts = data.draw(st.sets(st.integers(0, len(K.vertices) - 1)))
        L = [s for s in K.simplices if set(s) <= verts]
        assert supplement_euler_characteristic(K, L) == euler_characteristic(supplement(K, L))


class TestNeighbourhood:
    def test_midpoint(self, path3):
        Kp = derived_complex(path3)
        N = simplicial_neighbourhood(Kp, Kp.vertex_index[(mpq(1, 2),)])
        assert sorted(N.vertices) == [(mpq(1, 4),), (mpq(1, 2),), (mpq(3, 4),)]
        assert N.f_vector() == (3, 2)

    def test_isolated(self):
        K = SimplicialComplex.from_maximal(1, [(0,), (1,), (5,)], [(0, 1), (2,)])
        N = simplicial_neighbourhood(K, 2)
        assert N.vertices == ((5,),) and N.f_vector() == (1,)

    def test_equals_supplement_of_hat_zero_set(self, triangle):
        # hat at vertex 0: zero set is the opposite edge with its vertices
        Z = [(1,), (2,), (1, 2)]
        S = supplement(triangle, Z)
        Kp = derived_complex(triangle)
        N = simplicial_neighbourhood(Kp, 0)
        assert point_set(S) == point_set(N)


class TestCarrier:
    def test_interior(self, edge):
        assert carrier(edge, (mpq(1, 4),)) == (0, 1)

    def test_vertex(self, edge):
        assert carrier(edge, (0,)) == (0,)

    def test_outside(self, edge):
        with pytest.raises(PointOutsideError, match="point not in polyhedron"):
            carrier(edge, (2,))

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32), st.lists(st.integers(0, 6), min_size=3, max_size=3))
    def test_unique(self, seed, weights):
        K, _ = generate_instance(InstanceSpec("square", 2, 0, seed))
        if sum(weights) == 0:
            weights = [1, 0, 0]
        total = sum(weights)
        sig = K.maximal[seed % len(K.maximal)]
        pts = K.points(sig)
        x = tuple(sum(mpq(w, total) * p[d] for w, p in zip(weights, pts)) for d in range(2))
        hits = [
            s
            for s in K.simplices
            if (bc := barycentric_coordinates(K.points(s), x)) is not None and all(c > 0 for c in bc)
        ]
        assert hits == [carrier(K, x)]


def test_as_dict_canonical(path3):
    d = path3.as_dict()
    assert d == {
        "ambient_dim": 1,
        "vertices": [["0"], ["1/2"], ["1"]],
        "maximal_simplices": [[0, 1], [1, 2]],
    }
    assert path3.fingerprint == path_complex([0, mpq(1, 2), 1]).fingerprint
