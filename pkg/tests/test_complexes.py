"""Construction, parsing, and combinatorial operations on complexes."""

import pytest
from hypothesis import given, settings, strategies as st

from srbetti.complexes import (
    boundary_simplex,
    complex_from_json,
    complex_to_json,
    dimension,
    empty_complex,
    faces_by_dim,
    format_complex,
    from_facets,
    full_simplex,
    full_subcomplex,
    join,
    mask_of,
    parse_complex,
    relabel_complex,
    submasks,
    vertices_of,
)
from srbetti.errors import (
    EmptyFacetList,
    InvalidDimension,
    IsolatedVertexMissing,
    VertexBudgetExceeded,
    VertexOutOfRange,
)


def four_cycle():
    return from_facets(4, [mask_of(e) for e in [(1, 2), (2, 3), (3, 4), (1, 4)]])


def test_mask_helpers():
    assert mask_of((1, 3)) == 0b101
    assert vertices_of(0b1010) == (2, 4)
    assert sorted(submasks(0b101)) == [0, 1, 4, 5]


def test_from_facets_two_points():
    K = from_facets(2, [mask_of([1]), mask_of([2])])
    assert K.faces == frozenset({0, 1, 2})
    assert K.dim == 0


def test_from_facets_four_cycle():
    K = four_cycle()
    assert len(K.faces) == 9
    assert K.dim == 1
    assert len(K.facets) == 4


def test_from_facets_validation():
    with pytest.raises(IsolatedVertexMissing):
        from_facets(3, [mask_of((1, 2)), mask_of((1, 2))])
    K = from_facets(3, [mask_of((1, 2)), mask_of((1, 2))], allow_isolated=True)
    assert mask_of([3]) in K.facets
    assert K.facets == frozenset({mask_of((1, 2)), mask_of([3])})
    with pytest.raises(EmptyFacetList):
        from_facets(2, [])
    with pytest.raises(EmptyFacetList):
        from_facets(2, [0, mask_of((1, 2))])
    with pytest.raises(VertexOutOfRange):
        from_facets(2, [mask_of((1, 3))])
    with pytest.raises(VertexBudgetExceeded):
        from_facets(30, [(1 << 30) - 1])


def test_redundant_facets_pruned():
    K = from_facets(3, [mask_of((1, 2, 3)), mask_of((1, 2))])
    assert K.facets == frozenset({mask_of((1, 2, 3))})


def test_full_subcomplex_four_cycle():
    K = four_cycle()
    two_points = full_subcomplex(K, mask_of((1, 3)))
    assert two_points.m == 2
    assert two_points.faces == frozenset({0, 1, 2})
    assert two_points.labels == (1, 3)
    path = full_subcomplex(K, mask_of((1, 2, 3)))
    assert path.dim == 1
    assert len(path.faces_by_card[2]) == 2
    void = full_subcomplex(K, 0)
    assert void.faces == frozenset({0})
    assert void.m == 0
    assert void.dim == -1


def test_full_subcomplex_identity_and_idempotence():
    K = four_cycle()
    assert full_subcomplex(K, K.full_mask) == K
    # K|w restricted further equals restricting K directly (via labels)
    sub = full_subcomplex(K, mask_of((1, 2, 3)))
    sub2 = full_subcomplex(sub, mask_of((1, 3)))
    direct = full_subcomplex(K, mask_of((1, 3)))
    assert sub2 == direct
    assert sub2.labels == direct.labels == (1, 3)


def test_full_subcomplex_range_error():
    with pytest.raises(VertexOutOfRange):
        full_subcomplex(four_cycle(), mask_of([5]))


def test_boundary_simplex():
    assert boundary_simplex(1).faces == frozenset({0, 1, 2})
    K2 = boundary_simplex(2)
    assert K2.m == 3 and K2.dim == 1 and len(K2.faces) == 7
    K3 = boundary_simplex(3)
    assert K3.m == 4 and K3.dim == 2
    assert len(K3.faces) == 15  # 2^4 - 2 proper faces plus the empty face
    with pytest.raises(InvalidDimension):
        boundary_simplex(0)


def test_join_two_boundaries_is_square():
    K = join(boundary_simplex(1), boundary_simplex(1))
    # 4-cycle up to relabeling 1,3,2,4: same faces as the closure below
    expected = from_facets(4, [mask_of(e) for e in [(1, 3), (3, 2), (2, 4), (1, 4)]])
    assert K.faces == expected.faces
    assert K.dim == 1


def test_join_identity_and_dimension():
    K = four_cycle()
    assert join(K, empty_complex()).faces == K.faces
    assert join(empty_complex(), K).faces == K.faces
    J = join(boundary_simplex(1), boundary_simplex(2))
    assert J.m == 5
    assert J.dim == 0 + 1 + 1


def test_join_face_count_multiplicative():
    for a, b in [(1, 1), (1, 2), (2, 3)]:
        Ka, Kb = boundary_simplex(a), boundary_simplex(b)
        assert len(join(Ka, Kb).faces) == len(Ka.faces) * len(Kb.faces)


def test_join_budget():
    with pytest.raises(VertexBudgetExceeded):
        join(full_simplex(12), full_simplex(12))


def test_dimension_and_faces_by_dim():
    assert dimension(four_cycle()) == 1
    assert dimension(boundary_simplex(3)) == 2
    assert dimension(empty_complex()) == -1
    groups = faces_by_dim(four_cycle())
    assert [len(g) for g in groups] == [1, 4, 4]


def test_downward_closure_exhaustive():
    K = four_cycle()
    for f in K.faces:
        for sub in submasks(f):
            assert sub in K.faces


def test_parse_format_roundtrip():
    text = "# the 4-cycle\nm 4\nfacet 1 2\nfacet 2 3\nfacet 3 4\nfacet 1 4\n"
    K = parse_complex(text)
    assert K == four_cycle()
    assert parse_complex(format_complex(K)) == K


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_complex("facet 1 2\n")  # missing header
    with pytest.raises(ValueError):
        parse_complex("m 3\nwedge 1 2\n")


def test_json_roundtrip():
    K = four_cycle()
    assert complex_from_json(complex_to_json(K)) == K


@st.composite
def complexes(draw, max_m=5):
    m = draw(st.integers(1, max_m))
    n_facets = draw(st.integers(1, 6))
    facets = [
        draw(st.integers(1, (1 << m) - 1)) for _ in range(n_facets)
    ]
    return from_facets(m, facets, allow_isolated=True)


@settings(max_examples=60, deadline=None)
@given(complexes())
def test_property_downward_closed_and_facets_maximal(K):
    for f in K.faces:
        for sub in submasks(f):
            assert sub in K.faces
    for a in K.facets:
        assert not any(a != b and a & b == a for b in K.facets)
    # every singleton is a face
    for v in range(1, K.m + 1):
        assert (1 << (v - 1)) in K.faces


@settings(max_examples=40, deadline=None)
@given(complexes(), st.randoms(use_true_random=False))
def test_property_full_subcomplex_nesting(K, rng):
    omega = rng.randrange(1 << K.m)
    eta = omega & rng.randrange(1 << K.m)
    sub = full_subcomplex(K, omega)
    # translate eta into sub's vertex names via labels
    labmap = {lab: i + 1 for i, lab in enumerate(sub.labels)}
    eta_in_sub = mask_of(labmap[v] for v in vertices_of(eta))
    assert full_subcomplex(sub, eta_in_sub) == full_subcomplex(K, eta)


@settings(max_examples=40, deadline=None)
@given(complexes(), st.randoms(use_true_random=False))
def test_property_relabel_preserves_face_counts(K, rng):
    new = list(range(1, K.m + 1))
    rng.shuffle(new)
    perm = {old: new[old - 1] for old in range(1, K.m + 1)}
    L = relabel_complex(K, perm)
    assert len(L.faces) == len(K.faces)
    assert L.dim == K.dim
    assert [len(g) for g in L.faces_by_card] == [len(g) for g in K.faces_by_card]
