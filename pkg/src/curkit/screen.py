"""Screening complexes and codes for convex union representability.

``screen_complex`` runs a ladder of quick classifications followed by the
necessary conditions.  A failed condition is a proof that the complex is not
representable; passing every condition leaves the answer open (UNKNOWN).
``screen_code`` looks for local obstructions of a combinatorial code.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct
from typing import Any

from .collapse import (INDETERMINATE, NO, CollapseCertificate, collapses_onto,
                       default_budget, free_face_pairs, is_collapsible)
from .complex import (Code, SimplicialComplex, alexander_dual, compact, complex_of_code,
                      deletion, detect_suspensions, fmt_face, is_cone, is_path, is_tree, link,
                      star, verts)
from .errors import CapacityExceeded, CurError
from .homology import GF2, LERAY_MAX_VERTICES, RATIONAL, leray_number, leray_witness, reduced_betti
from .textio import format_complex

# check ids
COLLAPSIBLE = "collapsible"
COMMON_VERTEX = "free-face-common-vertex"
FACET_COVER = "facet-cover-leray"
STAR_COLLAPSE = "star-collapse"
DUAL = "dual-collapsible"
SUSPENSION = "suspension-reduction"
SPLITTING = "splitting-advisory"

# plain-language statements of the facts each check relies on
CITATIONS = {
    COLLAPSIBLE: "complexes realized by convex sets with convex union are collapsible",
    COMMON_VERTEX: "the free faces of a representable complex cannot all contain one vertex",
    FACET_COVER: "if k facets contain every free face, a representable complex is "
                 "(k-1)-representable and so (k-1)-Leray",
    FACET_COVER + "/simplex": "one facet holding every free face forces a simplex "
                              "(derived: a representation in R^0 is a single point)",
    FACET_COVER + "/path": "a representable complex with at most two free faces is a path",
    STAR_COLLAPSE: "a representable complex collapses onto the star of each of its faces",
    DUAL: "the Alexander dual of a representable complex is collapsible",
    SUSPENSION: "the suspension of a non-representable complex is not representable",
    SPLITTING: "a non-face {u, v} splits a representable complex into two pieces that "
               "collapse onto their intersection",
    "nerve-never-empty": "a nerve is never the complex {∅}",
    "one-dimensional": "a complex of dimension at most one is representable iff it is a tree",
    "cone": "every cone is representable",
    "void": "the void complex is the nerve of a collection of empty sets",
}

SPLIT_COLORING_CAP = 1 << 12
NONEVASIVE_MAX_VERTICES = 12


class Kind(enum.Enum):
    CUR = "CUR"
    NOT_CUR = "NOT_CUR"
    UNKNOWN = "UNKNOWN"


class Outcome(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INDETERMINATE = "indeterminate"
    WARN = "warn"
    SKIPPED = "skipped"


@dataclass
class Reason:
    check: str
    object: str
    citation: str
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"check": self.check, "object": self.object, "citation": self.citation,
                **({"data": self.data} if self.data else {})}


@dataclass
class CheckResult:
    check: str
    outcome: Outcome
    reason: Reason | None = None
    note: str = ""
    budgeted: bool = False

    def to_json(self) -> dict:
        out = {"check": self.check, "outcome": self.outcome.value}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class ScreenOptions:
    budget: int | None = None
    deep_splitting: bool = False
    all_checks: bool = False
    witness: bool = False

    def resolved_budget(self) -> int:
        return self.budget if self.budget is not None else default_budget()


@dataclass
class Verdict:
    kind: Kind
    reasons: list[Reason] = field(default_factory=list)
    witness: Any = None
    checks: list[CheckResult] = field(default_factory=list)
    notices: list[str] = field(default_factory=list)

    @property
    def exhausted(self) -> bool:
        """UNKNOWN because every budgeted search ran out."""
        budgeted = [c for c in self.checks if c.budgeted]
        return (self.kind is Kind.UNKNOWN and bool(budgeted)
                and all(c.outcome is Outcome.INDETERMINATE for c in budgeted))

    def summary(self) -> str:
        if self.kind is Kind.NOT_CUR:
            return f"NOT_CUR: {_short(self.reasons[0])}"
        if self.kind is Kind.CUR:
            return f"CUR: {self.reasons[0].object if self.reasons else 'verified witness'}"
        passed = [c.check for c in self.checks if c.outcome is Outcome.PASS]
        return "UNKNOWN: passed " + (", ".join(passed) if passed else "no checks")

    def to_json(self) -> dict:
        out = {
            "kind": self.kind.value,
            "reasons": [r.to_json() for r in self.reasons],
            "checks": [c.to_json() for c in self.checks],
            "notices": list(self.notices),
            "witness": _witness_json(self.witness),
        }
        return out


def _short(reason: Reason) -> str:
    texts = {
        COLLAPSIBLE: "not collapsible",
        COMMON_VERTEX: f"all free faces contain vertex {reason.object}",
        FACET_COVER: f"facet cover / Leray bound violated ({reason.object})",
        STAR_COLLAPSE: f"does not collapse onto the star of {reason.object}",
        DUAL: "Alexander dual is not collapsible",
        SUSPENSION: f"suspension of a non-representable complex ({reason.object})",
        "nerve-never-empty": "the complex {∅} is never a nerve",
    }
    return texts.get(reason.check, reason.check)


def _witness_json(w):
    if w is None:
        return None
    if isinstance(w, CollapseCertificate):
        return {"collapse": w.to_text()}
    if hasattr(w, "to_json"):
        return {"representation": w.to_json()}
    return {"class": str(w)}


def _search_outcome(res) -> Outcome:
    if res is NO:
        return Outcome.FAIL
    if res is INDETERMINATE:
        return Outcome.INDETERMINATE
    return Outcome.PASS


# -- individual checks -------------------------------------------------------------

def check_collapsible(cx: SimplicialComplex, budget: int | None = None) -> CheckResult:
    res = is_collapsible(cx, budget)
    out = _search_outcome(res)
    reason = Reason(COLLAPSIBLE, str(cx), CITATIONS[COLLAPSIBLE]) if out is Outcome.FAIL else None
    note = "search budget exhausted" if out is Outcome.INDETERMINATE else ""
    return CheckResult(COLLAPSIBLE, out, reason, note, budgeted=True)


def check_free_face_common_vertex(cx: SimplicialComplex) -> CheckResult:
    frees = [s for s, _ in free_face_pairs(cx)]
    if not frees:
        return CheckResult(COMMON_VERTEX, Outcome.PASS, note="no free faces")
    common = frees[0]
    for s in frees[1:]:
        common &= s
    if common:
        v = verts(common)[0]
        return CheckResult(COMMON_VERTEX, Outcome.FAIL,
                           Reason(COMMON_VERTEX, str(v), CITATIONS[COMMON_VERTEX],
                                  {"vertex": v, "free_faces": [list(verts(s)) for s in frees]}))
    return CheckResult(COMMON_VERTEX, Outcome.PASS)


def free_face_facets(cx: SimplicialComplex) -> list[int]:
    """Facets owning a free face; each free face has exactly one, so this is the minimal cover."""
    return sorted({f for _, f in free_face_pairs(cx)})


def check_facet_cover_leray(cx: SimplicialComplex) -> CheckResult:
    pairs = free_face_pairs(cx)
    if not pairs:
        return CheckResult(FACET_COVER, Outcome.PASS, note="no free faces")
    cover = sorted({f for _, f in pairs})
    k = len(cover)
    nfree = len(pairs)
    if k == 1 and not cx.is_simplex:
        return CheckResult(FACET_COVER, Outcome.FAIL,
                           Reason(FACET_COVER, f"k=1 facet {fmt_face(cover[0])}, not a simplex",
                                  CITATIONS[FACET_COVER + "/simplex"], {"k": 1}))
    if nfree <= 2 and not is_path(cx):
        return CheckResult(FACET_COVER, Outcome.FAIL,
                           Reason(FACET_COVER, f"{nfree} free faces, not a path",
                                  CITATIONS[FACET_COVER + "/path"], {"free_faces": nfree}))
    if len(cx.vertices) > LERAY_MAX_VERTICES:
        return CheckResult(FACET_COVER, Outcome.INDETERMINATE,
                           note=f"Leray number needs <= {LERAY_MAX_VERTICES} vertices")
    try:
        leray = leray_number(cx, RATIONAL)
    except CapacityExceeded as exc:
        return CheckResult(FACET_COVER, Outcome.INDETERMINATE, note=str(exc))
    if leray > k - 1:
        mask, dim, value = leray_witness(cx, k - 1, RATIONAL)
        return CheckResult(FACET_COVER, Outcome.FAIL,
                           Reason(FACET_COVER,
                                  f"k={k}, Leray number {leray}; induced on {fmt_face(mask)} "
                                  f"has reduced H_{dim} of rank {value}",
                                  CITATIONS[FACET_COVER],
                                  {"k": k, "leray": leray, "induced": list(verts(mask)),
                                   "homology_dim": dim, "rank": value}))
    return CheckResult(FACET_COVER, Outcome.PASS, note=f"k={k}, Leray number {leray}")


def check_star_collapses(cx: SimplicialComplex, budget: int | None = None) -> CheckResult:
    seen = set()
    pending = False
    for sigma in sorted(cx.face_masks(), key=lambda m: (m.bit_count(), m)):
        if not sigma:
            continue
        st = star(cx, sigma)
        if st.facets in seen:
            continue
        seen.add(st.facets)
        res = collapses_onto(cx, st, budget)
        if res is NO:
            return CheckResult(STAR_COLLAPSE, Outcome.FAIL,
                               Reason(STAR_COLLAPSE, fmt_face(sigma), CITATIONS[STAR_COLLAPSE],
                                      {"face": list(verts(sigma))}), budgeted=True)
        if res is INDETERMINATE:
            pending = True
    if pending:
        return CheckResult(STAR_COLLAPSE, Outcome.INDETERMINATE,
                           note="some star searches ran out of budget", budgeted=True)
    return CheckResult(STAR_COLLAPSE, Outcome.PASS, budgeted=True)


def check_dual_collapsible(cx: SimplicialComplex, budget: int | None = None) -> CheckResult:
    small, _ = compact(cx)
    if small.n < 1:
        return CheckResult(DUAL, Outcome.SKIPPED, note="no vertices")
    note = "" if cx.ground_is_vertex_set() else "dual taken on the vertex set"
    dual = alexander_dual(small)
    out = _search_outcome(is_collapsible(dual, budget))
    reason = None
    if out is Outcome.FAIL:
        reason = Reason(DUAL, str(dual), CITATIONS[DUAL], {"dual": format_complex(dual)})
    if out is Outcome.INDETERMINATE:
        note = "search budget exhausted"
    return CheckResult(DUAL, out, reason, note, budgeted=True)


def check_suspension_reduction(cx: SimplicialComplex, options: ScreenOptions | None = None,
                               _depth: int = 0) -> CheckResult:
    options = options or ScreenOptions()
    sus = detect_suspensions(cx)
    if not sus:
        return CheckResult(SUSPENSION, Outcome.PASS, note="not a suspension")
    if _depth > cx.n:
        return CheckResult(SUSPENSION, Outcome.SKIPPED, note="recursion limit")
    for u, v, base in sus:
        small, _ = compact(base)
        inner = _screen(small, options, _depth + 1)
        if inner.kind is Kind.NOT_CUR:
            return CheckResult(SUSPENSION, Outcome.FAIL,
                               Reason(SUSPENSION, f"suspension vertices {u}, {v}",
                                      CITATIONS[SUSPENSION],
                                      {"u": u, "v": v, "base": format_complex(base),
                                       "inner": inner.summary()}))
    return CheckResult(SUSPENSION, Outcome.PASS)


def splitting_advisory(cx: SimplicialComplex, budget: int | None = None) -> CheckResult:
    """Look for a facet-generated split at each non-edge; WARN if none is found.

    Never refutes: the pieces in the splitting statement need not be generated
    by facets of the complex.
    """
    vs = cx.vertices
    failures = []
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            if (1 << u | 1 << v) in cx:
                continue
            ok = _split_exists(cx, u, v, budget)
            if ok is None:
                return CheckResult(SPLITTING, Outcome.SKIPPED, note="coloring cap or budget hit")
            if not ok:
                failures.append((u, v))
    if failures:
        return CheckResult(SPLITTING, Outcome.WARN,
                           note="no facet-generated split for pairs "
                                + ", ".join(f"({u},{v})" for u, v in failures))
    return CheckResult(SPLITTING, Outcome.PASS)


def _split_exists(cx, u, v, budget):
    bu, bv = 1 << u, 1 << v
    with_u = [f for f in cx.facets if f & bu]
    with_v = [f for f in cx.facets if f & bv]
    free = [f for f in cx.facets if not f & (bu | bv)]
    if 1 << len(free) > SPLIT_COLORING_CAP:
        return None
    for colors in iproduct((0, 1), repeat=len(free)):
        part1 = with_v + [f for f, c in zip(free, colors) if c == 0]   # avoids u
        part2 = with_u + [f for f, c in zip(free, colors) if c == 1]   # avoids v
        d1 = SimplicialComplex.from_masks(cx.n, part1)
        d2 = SimplicialComplex.from_masks(cx.n, part2)
        common = SimplicialComplex.from_masks(cx.n, [f & g for f in d1.facets for g in d2.facets])
        results = [collapses_onto(cx, d1, budget), collapses_onto(cx, d2, budget),
                   collapses_onto(d1, common, budget), collapses_onto(d2, common, budget)]
        if any(r is INDETERMINATE for r in results):
            return None
        if all(isinstance(r, CollapseCertificate) for r in results):
            return True
    return False


# -- non-evasiveness (only used for notices) -----------------------------------------

def is_nonevasive(cx: SimplicialComplex) -> bool | None:
    """Recursive vertex-decision test; None when the complex is too large."""
    small, _ = compact(cx)
    if small.n > NONEVASIVE_MAX_VERTICES:
        return None
    return _nonevasive(small.n, small.facets)


@lru_cache(maxsize=None)
def _nonevasive(n: int, facets: tuple) -> bool:
    cx = SimplicialComplex(n, facets, not facets)
    vs = cx.vertices
    if len(vs) == 1:
        return True
    if len(vs) == 0:
        return False
    for v in vs:
        lk = link(cx, 1 << v)
        dl = deletion(cx, 1 << v)
        if _nonevasive(n, lk.facets) and _nonevasive(n, dl.facets):
            return True
    return False


# -- the ladder -------------------------------------------------------------------------

def screen_complex(cx: SimplicialComplex, options: ScreenOptions | None = None) -> Verdict:
    return _screen(cx, options or ScreenOptions(), 0)


def _screen(cx: SimplicialComplex, options: ScreenOptions, depth: int) -> Verdict:
    budget = options.resolved_budget()
    if cx.is_void:
        return Verdict(Kind.CUR, [Reason("void", "void complex", CITATIONS["void"])], "void")
    if cx.is_empty_complex:
        return Verdict(Kind.NOT_CUR, [Reason("nerve-never-empty", "{∅}",
                                             CITATIONS["nerve-never-empty"])])
    apex = is_cone(cx)
    if apex is not None:
        verdict = Verdict(Kind.CUR, [Reason("cone", f"cone with apex {apex}", CITATIONS["cone"],
                                            {"apex": apex})], "cone")
        if options.witness and depth == 0:
            verdict.witness = _cone_witness(cx, apex)
        return verdict
    if cx.dim <= 1:
        if is_tree(cx):
            verdict = Verdict(Kind.CUR, [Reason("one-dimensional", "tree",
                                                CITATIONS["one-dimensional"])], "tree")
            if options.witness and depth == 0 and len(cx.vertices) <= 6:
                verdict.witness = _tree_witness(cx)
            return verdict
        # a graph is collapsible exactly when it is a tree
        return Verdict(Kind.NOT_CUR, [Reason(COLLAPSIBLE, str(cx), CITATIONS[COLLAPSIBLE],
                                             {"graph": "not a tree"})])

    checks: list = [
        lambda: check_collapsible(cx, budget),
        lambda: check_free_face_common_vertex(cx),
        lambda: check_facet_cover_leray(cx),
        lambda: check_star_collapses(cx, budget),
        lambda: check_dual_collapsible(cx, budget),
        lambda: check_suspension_reduction(cx, options, depth),
    ]
    if options.deep_splitting:
        checks.append(lambda: splitting_advisory(cx, budget))
    verdict = Verdict(Kind.UNKNOWN)
    for run in checks:
        res = run()
        verdict.checks.append(res)
        if res.outcome is Outcome.FAIL:
            verdict.reasons.append(res.reason)
            if not options.all_checks:
                break
        elif res.outcome in (Outcome.INDETERMINATE, Outcome.SKIPPED, Outcome.WARN) and res.note:
            verdict.notices.append(f"{res.check}: {res.note}")
    if verdict.reasons:
        verdict.kind = Kind.NOT_CUR
        return verdict
    if depth == 0:
        ne = is_nonevasive(cx)
        if ne is False:
            verdict.notices.append("evasive yet passes every check; whether every representable "
                                   "complex is non-evasive is open in the literature")
        elif ne is True:
            verdict.notices.append("non-evasive; non-evasiveness alone does not imply "
                                   "representability")
    return verdict


def _cone_witness(cx, apex):
    from .constructions import cone_representation
    base = link(cx, 1 << apex)
    try:
        if len(base.vertices) == 0:
            # cone over {∅}: the apex alone, other ground elements empty
            return cone_representation(base, apex) if base.n > 0 else None
        return cone_representation(base, apex)
    except CurError:
        return None


def _tree_witness(cx):
    from .constructions import tree_representation
    try:
        return tree_representation(cx)
    except CurError:
        return None


def recheck(reason: Reason, cx: SimplicialComplex, budget: int | None = None) -> bool:
    """Re-run the named check on its own; True when it fails again."""
    runners = {
        COLLAPSIBLE: lambda: check_collapsible(cx, budget),
        COMMON_VERTEX: lambda: check_free_face_common_vertex(cx),
        FACET_COVER: lambda: check_facet_cover_leray(cx),
        STAR_COLLAPSE: lambda: check_star_collapses(cx, budget),
        DUAL: lambda: check_dual_collapsible(cx, budget),
        SUSPENSION: lambda: check_suspension_reduction(cx, ScreenOptions(budget=budget)),
    }
    if reason.check == "nerve-never-empty":
        return cx.is_empty_complex
    run = runners.get(reason.check)
    if run is None:
        return False
    return run().outcome is Outcome.FAIL


# -- codes ----------------------------------------------------------------------------

class KindOfSite(enum.Enum):
    FIRST_KIND = "first kind"
    SECOND_KIND = "second kind"
    NERVE = "nerve"


FIRST_KIND = KindOfSite.FIRST_KIND
SECOND_KIND = KindOfSite.SECOND_KIND
NERVE = KindOfSite.NERVE


@dataclass
class ObstructionReport:
    site: int
    link: SimplicialComplex
    kinds: list[KindOfSite] = field(default_factory=list)
    betti: dict = field(default_factory=dict)
    link_verdict: Verdict | None = None
    notes: list[str] = field(default_factory=list)

    def text(self) -> str:
        kinds = ", ".join(k.value for k in self.kinds) or "no obstruction"
        return f"{fmt_face(self.site)} ({kinds})"

    def to_json(self) -> dict:
        return {
            "site": list(verts(self.site)),
            "link": format_complex(self.link),
            "kinds": [k.name for k in self.kinds],
            "betti": self.betti,
            "link_verdict": self.link_verdict.to_json() if self.link_verdict else None,
            "notes": self.notes,
        }


class CodeKind(enum.Enum):
    NON_CONVEX = "NON_CONVEX"
    LOCALLY_PERFECT_WITHIN_BATTERY = "LOCALLY_PERFECT_WITHIN_BATTERY"


@dataclass
class CodeVerdict:
    kind: CodeKind
    reports: list[ObstructionReport]

    def summary(self) -> str:
        if self.kind is CodeKind.NON_CONVEX:
            bad = [r for r in self.reports if NERVE in r.kinds]
            return "NON_CONVEX at " + "; ".join(r.text() for r in bad)
        return "locally perfect within battery"

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "reports": [r.to_json() for r in self.reports]}


def obstruction_sites(code: Code) -> list[int]:
    """Intersections of nonempty families of maximal codewords that are missing from the code."""
    maxw = code.maximal_codewords()
    closure: set[int] = set()
    frontier = set(maxw)
    while frontier:
        closure |= frontier
        nxt = set()
        for a in frontier:
            for b in maxw:
                c = a & b
                if c not in closure:
                    nxt.add(c)
        frontier = nxt
    sites = [s for s in closure if s not in code]
    return sorted(sites, key=lambda m: (m.bit_count(), m))


def screen_code(code: Code, options: ScreenOptions | None = None) -> CodeVerdict:
    options = options or ScreenOptions()
    budget = options.resolved_budget()
    cx = complex_of_code(code)
    reports = []
    for site in obstruction_sites(code):
        lk = link(cx, site)
        small, _ = compact(lk)
        rep = ObstructionReport(site, lk)
        for field_ in (RATIONAL, GF2):
            b = reduced_betti(small, field_)
            nz = {i: r for i, r in b.values.items() if r}
            if nz:
                rep.betti = {"field": field_.value, "nonzero": nz}
                rep.kinds.append(FIRST_KIND)
                break
        res = is_collapsible(small, budget)
        if res is NO:
            rep.kinds.append(SECOND_KIND)
        elif res is INDETERMINATE:
            rep.notes.append("collapsibility search of the link ran out of budget")
        verdict = screen_complex(small, ScreenOptions(budget=budget,
                                                      deep_splitting=options.deep_splitting))
        rep.link_verdict = verdict
        if verdict.kind is Kind.NOT_CUR:
            rep.kinds.append(NERVE)
        elif verdict.kind is Kind.UNKNOWN:
            rep.notes.append("link passes every check; representability undecided")
        reports.append(rep)
    kind = (CodeKind.NON_CONVEX if any(NERVE in r.kinds for r in reports)
            else CodeKind.LOCALLY_PERFECT_WITHIN_BATTERY)
    return CodeVerdict(kind, reports)
