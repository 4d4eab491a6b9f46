"""Free faces, elementary collapses and exhaustive collapse search.

The search is a depth-first search over elementary collapses, memoized on the
exact facet set of the current complex.  It either returns a replayable
:class:`CollapseCertificate`, or ``NO`` after exhausting the search tree, or
``INDETERMINATE`` when the state budget runs out.
"""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field

from .complex import SimplicialComplex, fmt_face, submasks, verts
from .errors import NotFree, NotSubcomplex, ParseError

DEFAULT_BUDGET = 10**6


def default_budget() -> int:
    env = os.environ.get("CUR_BUDGET")
    if env:
        value = int(env)
        if value <= 0:
            raise ValueError("CUR_BUDGET must be positive")
        return value
    return DEFAULT_BUDGET


class Search(enum.Enum):
    NO = "NO"
    INDETERMINATE = "INDETERMINATE"


NO = Search.NO
INDETERMINATE = Search.INDETERMINATE


@dataclass
class CollapseCertificate:
    """Ordered list of (free face, the unique facet containing it)."""

    steps: list[tuple[int, int]] = field(default_factory=list)

    def replay(self, start: SimplicialComplex) -> SimplicialComplex:
        """Apply the steps to ``start``, checking legality at each one."""
        cx = start
        for sigma, facet in self.steps:
            if _owner(cx, sigma) != facet:
                raise NotFree(f"step {fmt_face(sigma)} -> {fmt_face(facet)} is not a legal collapse")
            cx = _collapse(cx, sigma, facet)
        return cx

    def then(self, other: "CollapseCertificate") -> "CollapseCertificate":
        return CollapseCertificate(self.steps + other.steps)

    def to_text(self) -> str:
        return "".join(f"{fmt_face(s)} -> {fmt_face(f)}\n" for s, f in self.steps)

    @classmethod
    def from_text(cls, text: str) -> "CollapseCertificate":
        steps = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            try:
                left, right = line.split("->")
                steps.append((_parse_braced(left), _parse_braced(right)))
            except ValueError:
                raise ParseError(f"bad certificate line {line!r}") from None
        return cls(steps)


def _parse_braced(text: str) -> int:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(text)
    mask = 0
    for tok in text[1:-1].split():
        mask |= 1 << int(tok)
    return mask


def _owner(cx: SimplicialComplex, sigma: int) -> int | None:
    """The unique facet containing a non-facet face ``sigma``, else None."""
    owner = None
    for f in cx.facets:
        if sigma & ~f == 0:
            if f == sigma or owner is not None:
                return None
            owner = f
    return owner


def _collapse(cx: SimplicialComplex, sigma: int, facet: int) -> SimplicialComplex:
    rest = [f for f in cx.facets if f != facet]
    rest += [facet & ~(1 << v) for v in verts(sigma)]
    return SimplicialComplex.from_masks(cx.n, rest)


def _free_pairs(facets: tuple[int, ...]) -> list[tuple[int, int]]:
    pairs = []
    for i, f in enumerate(facets):
        # a proper subset of f is free iff it avoids every overlap f ∩ g
        overlaps = [f & g for j, g in enumerate(facets) if j != i]
        for s in submasks(f):
            if s == f:
                continue
            if any(s & ~o == 0 for o in overlaps):
                continue
            pairs.append((s, f))
    return pairs


def free_faces(cx: SimplicialComplex) -> set[int]:
    """Non-facet faces lying in exactly one facet."""
    return {s for s, _ in _free_pairs(cx.facets)}


def free_face_pairs(cx: SimplicialComplex) -> list[tuple[int, int]]:
    return sorted(_free_pairs(cx.facets), key=lambda p: (-p[0].bit_count(), p[0]))


def elementary_collapse(cx: SimplicialComplex, sigma: int) -> SimplicialComplex:
    facet = _owner(cx, sigma)
    if facet is None:
        raise NotFree(f"{fmt_face(sigma)} is not a free face")
    return _collapse(cx, sigma, facet)


def _reduced_euler(cx: SimplicialComplex) -> int:
    return sum((-1) ** (m.bit_count() - 1) for m in cx.face_masks())


def collapses_onto(cx: SimplicialComplex, target: SimplicialComplex,
                   budget: int | None = None):
    """Search for a collapse of ``cx`` onto the subcomplex ``target``.

    Returns a :class:`CollapseCertificate`, ``NO`` or ``INDETERMINATE``.
    Only free faces outside ``target`` are tried, largest first.
    """
    if budget is None:
        budget = default_budget()
    if not all(f in cx for f in target.facets):
        raise NotSubcomplex("target is not a subcomplex")
    goal = target.facets
    if cx.facets == goal:
        return CollapseCertificate()
    # collapses preserve the Euler characteristic; a cheap sound refutation
    if _reduced_euler(cx) != _reduced_euler(target):
        return NO

    def outside(s):
        return s not in target

    dead: set[tuple[int, ...]] = set()
    states = 0
    path: list[tuple[int, int]] = []
    stack = [(cx.facets, iter(_moves(cx.facets, outside)))]
    while stack:
        facets, moves = stack[-1]
        step = next(moves, None)
        if step is None:
            dead.add(facets)
            stack.pop()
            if path:
                path.pop()
            continue
        sigma, facet = step
        nxt = SimplicialComplex.from_masks(cx.n, [f for f in facets if f != facet]
                                           + [facet & ~(1 << v) for v in verts(sigma)]).facets
        if nxt == goal:
            return CollapseCertificate(path + [step])
        if nxt in dead:
            continue
        states += 1
        if states > budget:
            return INDETERMINATE
        path.append(step)
        stack.append((nxt, iter(_moves(nxt, outside))))
    return NO


def _moves(facets, keep):
    pairs = [p for p in _free_pairs(facets) if keep(p[0])]
    pairs.sort(key=lambda p: (-p[0].bit_count(), p[0]))
    return pairs


def is_collapsible(cx: SimplicialComplex, budget: int | None = None):
    return collapses_onto(cx, SimplicialComplex(cx.n, (), True), budget)
