from __future__ import annotations

import random

from hypothesis import given, settings

from curkit.collapse import CollapseCertificate, free_faces, is_collapsible
from curkit.complex import (Code, code_of_complex_minus_empty, cone, empty,
                            from_facets, path, relabel, simplex, simplex_boundary,
                            stellar_subdivide_facet, suspension, two_points, void)
from curkit.homology import leray_number, leray_witness
from curkit.screen import (COLLAPSIBLE, COMMON_VERTEX, DUAL, FACET_COVER, FIRST_KIND, NERVE,
                           SECOND_KIND, STAR_COLLAPSE, CodeKind, Kind, Outcome,
                           ScreenOptions, check_collapsible, check_dual_collapsible,
                           check_facet_cover_leray, check_free_face_common_vertex,
                           check_star_collapses, check_suspension_reduction,
                           obstruction_sites, recheck, screen_code, screen_complex,
                           splitting_advisory)

from complexgen import all_complexes, complexes

P3 = path(3)
C4 = from_facets(4, [[0, 1], [1, 2], [2, 3], [0, 3]])
STAR3 = from_facets(4, [[0, 1], [0, 2], [0, 3]])
# collapsible, two free edges {3 4} and {0 6} owned by two different triangles
TWO_FREE = from_facets(7, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 4), (0, 3, 5), (1, 3, 5),
                           (1, 4, 5), (2, 3, 6), (2, 4, 6), (3, 4, 6), (0, 5, 6), (4, 5, 6)])
# collapsible, free edges {3 6} and {0 6} meet in vertex 6
SHARED_VERTEX = from_facets(7, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 4), (0, 3, 5),
                                (1, 3, 5), (1, 4, 5), (2, 3, 6), (2, 4, 6), (0, 5, 6),
                                (4, 5, 6)])


def F(*vs):
    return sum(1 << v for v in vs)


def test_check_collapsible_examples():
    assert check_collapsible(simplex_boundary(2)).outcome is Outcome.FAIL
    assert check_collapsible(P3).outcome is Outcome.PASS
    big = from_facets(6, [[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 5]])
    assert check_collapsible(big, budget=1).outcome is Outcome.INDETERMINATE


def test_check_star_collapses_examples():
    assert check_star_collapses(P3).outcome is Outcome.PASS
    assert check_star_collapses(cone(two_points())).outcome is Outcome.PASS


def test_check_common_vertex_examples():
    assert check_free_face_common_vertex(P3).outcome is Outcome.PASS
    assert check_free_face_common_vertex(simplex(3)).outcome is Outcome.PASS
    assert isinstance(is_collapsible(SHARED_VERTEX), CollapseCertificate)
    res = check_free_face_common_vertex(SHARED_VERTEX)
    assert res.outcome is Outcome.FAIL and res.reason.data["vertex"] == 6


def test_check_facet_cover_examples():
    res = check_facet_cover_leray(P3)
    assert res.outcome is Outcome.PASS and "k=2, Leray number 1" in res.note
    assert check_facet_cover_leray(simplex(3)).outcome is Outcome.PASS
    # two triangles sharing an edge: k=2, four free edges, 1-Leray
    assert check_facet_cover_leray(from_facets(4, [[0, 1, 2], [1, 2, 3]])).outcome is Outcome.PASS


def test_stellar_subdivision_fails_leray():
    assert isinstance(is_collapsible(TWO_FREE), CollapseCertificate)
    assert free_faces(TWO_FREE) == {F(3, 4), F(0, 6)}
    sub = stellar_subdivide_facet(TWO_FREE, F(0, 1, 2))
    assert isinstance(is_collapsible(sub), CollapseCertificate)
    assert free_faces(sub) == free_faces(TWO_FREE)
    # the old facet's boundary is induced, so H_1 survives there and leray > k - 1 = 1
    assert leray_number(sub) == 2
    assert leray_witness(sub, 1)[:2] == (F(0, 1, 2), 1)
    res = check_facet_cover_leray(sub)
    assert res.outcome is Outcome.FAIL
    assert screen_complex(sub).kind is Kind.NOT_CUR


def test_check_dual_examples():
    assert check_dual_collapsible(P3).outcome is Outcome.PASS
    assert check_dual_collapsible(cone(P3)).outcome is Outcome.PASS
    # the dual of a triangle boundary is {∅}
    assert check_dual_collapsible(simplex_boundary(2)).outcome is Outcome.FAIL
    # non-vertex ground elements are dropped first
    assert check_dual_collapsible(from_facets(4, [[0, 1], [1, 2]])).outcome is Outcome.PASS


def test_suspension_reduction_examples():
    res = check_suspension_reduction(C4)
    assert res.outcome is Outcome.FAIL and "not collapsible" in res.reason.data["inner"]
    assert check_suspension_reduction(suspension(from_facets(1, [[0]]))).outcome is Outcome.PASS
    assert check_suspension_reduction(simplex(3)).note == "not a suspension"


def test_splitting_examples():
    assert splitting_advisory(P3).outcome is Outcome.PASS
    assert splitting_advisory(simplex(3)).outcome is Outcome.PASS
    res = splitting_advisory(from_facets(4, [[0, 1, 2], [1, 2, 3]]))
    assert res.outcome in (Outcome.PASS, Outcome.WARN)


def test_screen_examples():
    v = screen_complex(simplex_boundary(2))
    assert v.kind is Kind.NOT_CUR and v.summary() == "NOT_CUR: not collapsible"
    assert screen_complex(STAR3).kind is Kind.CUR
    v = screen_complex(SHARED_VERTEX)
    assert v.kind is Kind.NOT_CUR and v.reasons[0].check == COMMON_VERTEX
    assert screen_complex(void(2)).kind is Kind.CUR
    assert screen_complex(empty(2)).kind is Kind.NOT_CUR
    assert screen_complex(path(4)).kind is Kind.CUR
    assert screen_complex(C4).kind is Kind.NOT_CUR


def test_screen_witnesses():
    from curkit.geometry import verify_representation
    v = screen_complex(cone(P3), ScreenOptions(witness=True))
    assert verify_representation(v.witness, cone(P3)).ok
    v = screen_complex(path(4), ScreenOptions(witness=True))
    assert verify_representation(v.witness, path(4)).ok


def test_unknown_lists_passed_checks():
    # a strip of four triangles: collapsible, not a cone, passes every check
    cx = from_facets(6, [[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 5]])
    v = screen_complex(cx, ScreenOptions(deep_splitting=True))
    assert v.kind is Kind.UNKNOWN
    assert v.summary().startswith("UNKNOWN: passed collapsible")
    assert any("non-evasive" in n for n in v.notices)


def test_all_checks_collects_reasons():
    v = screen_complex(TWO_FREE, ScreenOptions(all_checks=True))
    assert [r.check for r in v.reasons] == [FACET_COVER, STAR_COLLAPSE]


def test_budget_exhaustion_is_not_a_verdict():
    cx = from_facets(6, [[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 5]])
    v = screen_complex(cx, ScreenOptions(budget=1))
    assert v.kind is not Kind.NOT_CUR or all(r.check not in (COLLAPSIBLE, DUAL) for r in v.reasons)


def test_reasons_recheck():
    cases = [simplex_boundary(2), C4, SHARED_VERTEX, TWO_FREE,
             stellar_subdivide_facet(TWO_FREE, F(0, 1, 2)), empty(3),
             suspension(C4)]
    for cx in cases:
        v = screen_complex(cx, ScreenOptions(all_checks=True))
        assert v.kind is Kind.NOT_CUR
        for r in v.reasons:
            assert recheck(r, cx), (str(cx), r.check)


def test_verdict_json_matches_text():
    v = screen_complex(TWO_FREE)
    data = v.to_json()
    assert data["kind"] == "NOT_CUR"
    assert data["reasons"][0]["check"] == FACET_COVER
    assert v.summary().startswith(data["kind"])


@given(complexes(max_n=5))
@settings(max_examples=60, deadline=None)
def test_screen_invariant_under_relabeling(cx):
    rng = random.Random(hash(cx.facets))
    perm = list(range(cx.n))
    rng.shuffle(perm)
    assert screen_complex(cx).kind == screen_complex(relabel(cx, perm)).kind


# -- codes --------------------------------------------------------------------------

CLASSIC = Code.from_words(3, [[], [0], [1], [0, 2], [1, 2]])


def test_obstruction_sites_examples():
    assert obstruction_sites(CLASSIC) == [F(2)]
    assert obstruction_sites(code_of_complex_minus_empty(simplex(3))) == []
    assert obstruction_sites(Code(3, frozenset(m for m in range(8) if m and m != 7))) == [0]


def test_screen_code_examples():
    v = screen_code(CLASSIC)
    assert v.kind is CodeKind.NON_CONVEX
    (rep,) = v.reports
    assert rep.site == F(2)
    assert rep.kinds == [FIRST_KIND, SECOND_KIND, NERVE]
    assert rep.betti == {"field": "Q", "nonzero": {0: 1}}
    assert v.summary() == "NON_CONVEX at {2} (first kind, second kind, nerve)"
    v = screen_code(code_of_complex_minus_empty(simplex_boundary(2)))
    assert v.kind is CodeKind.NON_CONVEX and v.reports[0].site == 0
    v = screen_code(code_of_complex_minus_empty(simplex(3)))
    assert v.kind is CodeKind.LOCALLY_PERFECT_WITHIN_BATTERY


def test_screen_code_of_path_rep():
    from curkit.constructions import path_representation
    from curkit.geometry import code_of_representation
    code = code_of_representation(path_representation(3))
    assert screen_code(code).kind is CodeKind.LOCALLY_PERFECT_WITHIN_BATTERY


def test_non_convex_has_recheckable_site():
    from curkit.complex import compact, link, complex_of_code
    for code in (CLASSIC, code_of_complex_minus_empty(C4)):
        v = screen_code(code)
        assert v.kind is CodeKind.NON_CONVEX
        for r in v.reports:
            if NERVE in r.kinds:
                small, _ = compact(link(complex_of_code(code), r.site))
                lv = screen_complex(small)
                assert lv.kind is Kind.NOT_CUR
                assert all(recheck(x, small) for x in lv.reasons)


def test_three_vertex_scan():
    # on three vertices representability is exactly collapsibility
    for cx in all_complexes(3):
        v = screen_complex(cx)
        col = isinstance(is_collapsible(cx), CollapseCertificate)
        assert (v.kind is Kind.NOT_CUR) == (not col), str(cx)
