from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from curkit.collapse import free_faces
from curkit.complex import (Code, SimplicialComplex, alexander_dual, complex_of_code, cone,
                            deletion, detect_suspensions, empty, f_vector, face, faces_of,
                            from_facets, is_cone, is_path, is_tree, join, link, path, point,
                            relabel, restriction, simplex, star, stellar_subdivide_facet,
                            suspension, suspension_power, union, void)
from curkit.errors import (CapacityExceeded, EmptyGround, GroundNotVertexSet, InvalidVertex,
                           NotAFace, NotAFacet)
from curkit.textio import format_code, format_complex, parse_code, parse_complex

from complexgen import complexes, complexes_on_vertices

P3 = path(3)


def F(*vs):
    return face(vs)


def test_from_facets_examples():
    assert P3.facets == (F(0, 1), F(1, 2))
    assert from_facets(0, []).is_void
    e = from_facets(2, [[]])
    assert e.facets == (0,) and not e.is_void
    assert from_facets(3, [[0, 1], [0]]).facets == (F(0, 1),)
    with pytest.raises(InvalidVertex):
        from_facets(2, [[0, 2]])
    with pytest.raises(CapacityExceeded):
        void(65)


def test_faces_of_examples():
    assert faces_of(P3) == [0, F(0), F(1), F(2), F(0, 1), F(1, 2)]
    assert faces_of(void(3)) == []
    assert faces_of(empty(3)) == [0]
    assert faces_of(simplex(2)) == [0, F(0), F(1), F(0, 1)]


def test_star_link_deletion_examples():
    assert link(P3, F(1)).facets == (F(0), F(2))
    assert star(P3, F(0)).facets == (F(0, 1),)
    assert deletion(P3, F(1)).facets == (F(0), F(2))
    with pytest.raises(NotAFace):
        star(P3, F(0, 2))
    with pytest.raises(NotAFace):
        link(P3, F(0, 2))


def test_join_examples():
    assert join(point(), point()).facets == (F(0, 1),)
    assert suspension(point()).facets == (F(0, 1), F(0, 2))
    # the suspension of a point is a path on three vertices, up to relabeling
    assert relabel(suspension(point()), [1, 0, 2]) == P3
    assert join(P3, empty(0)) == P3
    cx, mapping = join(P3, point(), return_map=True)
    assert mapping == {0: 3}
    assert cx == cone(P3)


def test_alexander_dual_examples():
    assert alexander_dual(simplex(2)).is_void
    assert alexander_dual(from_facets(2, [[0], [1]])) == empty(2)
    assert alexander_dual(P3).facets == (F(1),)
    with pytest.raises(GroundNotVertexSet):
        alexander_dual(from_facets(3, [[0, 1]]))
    with pytest.raises(EmptyGround):
        alexander_dual(void(0))


def test_f_vector_examples():
    assert f_vector(P3) == [1, 3, 2]
    assert f_vector(simplex(3)) == [1, 3, 3, 1]
    assert f_vector(void(2)) == []
    assert f_vector(empty(2)) == [1]


def test_is_cone_examples():
    assert is_cone(from_facets(4, [[0, 1], [0, 2], [0, 3]])) == 0
    # the 3-vertex path is the cone over two points with apex 1
    assert is_cone(P3) == 1
    assert is_cone(path(4)) is None
    assert is_cone(simplex(3)) == 0
    assert is_cone(void(2)) is None
    assert is_cone(empty(2)) is None


def test_detect_suspensions_examples():
    assert detect_suspensions(P3) == [(0, 2, from_facets(3, [[1]]))]
    assert detect_suspensions(simplex(3)) == []
    c4 = from_facets(4, [[0, 1], [1, 2], [2, 3], [0, 3]])
    assert [(u, v) for u, v, _ in detect_suspensions(c4)] == [(0, 2), (1, 3)]


def test_stellar_examples():
    assert stellar_subdivide_facet(simplex(2), F(0, 1)).facets == (F(0, 2), F(1, 2))
    sd = stellar_subdivide_facet(simplex(3), F(0, 1, 2))
    assert sd.facets == (F(0, 1, 3), F(0, 2, 3), F(1, 2, 3))
    with pytest.raises(NotAFacet):
        stellar_subdivide_facet(P3, F(1))


def test_complex_of_code_examples():
    c = Code.from_words(3, [[], [0], [1], [0, 2], [1, 2]])
    assert complex_of_code(c).facets == (F(0, 2), F(1, 2))
    assert complex_of_code(Code.from_words(3, [[0, 1, 2]])) == simplex(3)
    assert complex_of_code(Code(3, frozenset())).is_void
    assert complex_of_code(Code.from_words(3, [[]])) == empty(3)


def test_trees_and_paths():
    assert is_tree(P3) and is_path(P3)
    star_graph = from_facets(4, [[0, 1], [0, 2], [0, 3]])
    assert is_tree(star_graph) and not is_path(star_graph)
    assert is_tree(point())
    assert not is_tree(from_facets(3, [[0, 1], [1, 2], [0, 2]]))
    assert not is_tree(from_facets(4, [[0, 1], [2, 3]]))
    assert not is_tree(simplex(3))
    assert not is_tree(empty(1))


def test_suspension_power_sizes():
    assert [suspension_power(k).n for k in range(4)] == [1, 3, 5, 7]
    assert [suspension_power(k).dim for k in range(4)] == [0, 1, 2, 3]


# -- properties ---------------------------------------------------------------------

@given(complexes_on_vertices())
def test_dual_is_involution(cx):
    # the dual may drop ground elements as vertices, so the second dual is taken
    # relative to the same ground set
    assert alexander_dual(alexander_dual(cx), strict=False) == cx


@given(complexes(max_n=3), complexes(max_n=3))
def test_join_f_vector_is_convolution(a, b):
    fa, fb = f_vector(a), f_vector(b)
    fj = f_vector(join(a, b))
    if not fa or not fb:
        assert fj == []
        return
    conv = [0] * (len(fa) + len(fb) - 1)
    for i, x in enumerate(fa):
        for j, y in enumerate(fb):
            conv[i + j] += x * y
    assert fj == conv


@given(complexes(), st.data())
def test_star_is_join_of_face_and_link(cx, data):
    faces = faces_of(cx)
    if not faces:
        return
    sigma = data.draw(st.sampled_from(faces))
    lk = link(cx, sigma)
    # join on the same ground: the face and the link are disjoint
    joined = SimplicialComplex.from_masks(cx.n, [sigma | f for f in lk.facets])
    assert joined == star(cx, sigma)


@given(complexes(), st.data())
def test_deletion_partitions_faces(cx, data):
    faces = set(faces_of(cx))
    if not faces:
        return
    sigma = data.draw(st.sampled_from(sorted(faces)))
    kept = set(faces_of(deletion(cx, sigma)))
    above = {f for f in faces if sigma & ~f == 0}
    assert kept | above == faces
    assert not kept & above


@given(complexes())
def test_detected_suspensions_cover(cx):
    faces = set(faces_of(cx))
    for u, v, _ in detect_suspensions(cx):
        assert (1 << u | 1 << v) not in faces
        covered = set(faces_of(star(cx, 1 << u))) | set(faces_of(star(cx, 1 << v)))
        assert covered == faces


@given(complexes(max_n=5), st.data())
def test_stellar_free_faces(cx, data):
    # faces strictly inside the subdivided facet stay free only when they are ridges of it;
    # every other free face survives and no new one appears
    facets = [f for f in cx.facets if f]
    if not facets:
        return
    F_ = data.draw(st.sampled_from(facets))
    sd = stellar_subdivide_facet(cx, F_)
    expected = {s for s in free_faces(cx) if s & ~F_ or (F_ & ~s).bit_count() == 1}
    assert free_faces(sd) == expected


def test_stellar_keeps_free_faces_outside_codim_two():
    # a complex whose free faces are all ridges of the subdivided facet keeps them exactly
    cx = from_facets(4, [[0, 1, 2], [1, 2, 3]])
    sd = stellar_subdivide_facet(cx, F(0, 1, 2))
    assert free_faces(sd) == free_faces(cx) - {F(0)}


@given(complexes())
def test_text_round_trip(cx):
    assert parse_complex(format_complex(cx)) == cx


@given(st.integers(1, 5).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.integers(0, (1 << n) - 1), max_size=8))))
def test_code_text_round_trip(args):
    n, words = args
    code = Code(n, frozenset(words))
    assert parse_code(format_code(code)) == code


def test_relabel_and_restriction():
    rng = random.Random(5)
    for _ in range(50):
        perm = list(range(5))
        rng.shuffle(perm)
        cx = from_facets(5, [rng.sample(range(5), rng.randint(1, 3)) for _ in range(3)])
        back = relabel(relabel(cx, perm), {p: i for i, p in enumerate(perm)})
        assert back == cx
        omega = rng.randrange(1 << 5)
        assert set(faces_of(restriction(cx, omega))) == {f for f in faces_of(cx) if f & ~omega == 0}


def test_union_is_face_union():
    a, b = from_facets(4, [[0, 1]]), from_facets(4, [[2, 3], [1]])
    assert set(faces_of(union(a, b))) == set(faces_of(a)) | set(faces_of(b))


def test_dual_enumeration_oracle():
    # direct definition: σ is a dual face iff its complement is not a face
    rng = random.Random(1)
    for _ in range(100):
        n = rng.randint(1, 5)
        cx = SimplicialComplex.from_masks(n, [rng.randrange(1 << n) for _ in range(3)]
                                          + [1 << v for v in range(n)])
        full = (1 << n) - 1
        faces = set(faces_of(cx))
        expected = {s for s in range(1 << n) if full & ~s not in faces}
        assert set(faces_of(alexander_dual(cx))) == expected
