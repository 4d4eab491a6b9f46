"""Nerves of polytope collections and exact coverage tests."""
from __future__ import annotations

from typing import Sequence

from ..complex import SimplicialComplex
from ..errors import BadInput, CapacityExceeded
from .polytope import (HPolytope, Polytope, VPolytope, affine_hull, common_point, dot,
                       to_h, to_v)

COVER_BUDGET = 200_000


def nerve_of_collection(sets: Sequence[Polytope]) -> SimplicialComplex:
    """Index sets with a common point (closed semantics).

    Faces are enumerated by size; a candidate is tested only when all its
    facets-by-one-vertex are already known to be faces.
    """
    n = len(sets)
    if n > 64:
        raise BadInput("at most 64 sets")
    if n and len({s.dim for s in sets}) > 1:
        raise BadInput("sets live in different dimensions")
    level = [1 << i for i in range(n) if common_point([sets[i]]) is not None]
    if not level:
        return SimplicialComplex.from_masks(n, [])
    faces = set(level)
    while level:
        nxt = set()
        for m in level:
            for i in range(m.bit_length(), n):
                cand = m | (1 << i)
                if cand in faces or cand in nxt:
                    continue
                if any(cand & ~(1 << v) not in faces for v in range(n) if cand >> v & 1):
                    continue
                members = [sets[v] for v in range(n) if cand >> v & 1]
                if common_point(members) is not None:
                    nxt.add(cand)
        faces |= nxt
        level = sorted(nxt)
    return SimplicialComplex.from_masks(n, list(faces))


def _strict_point(rows: list, dim: int):
    return common_point([HPolytope(dim, tuple(rows))], dim=dim, strict=True)


def covers(Q: Polytope, sets: Sequence[Polytope], budget: int = COVER_BUDGET) -> bool:
    """Whether the closed polytope ``Q`` lies inside the union of ``sets``.

    Region subtraction: take a set meeting the interior of the current piece
    and split the piece along that set's rows.  Pieces without interior are
    dropped, which is exact for full-dimensional ``Q`` because the uncovered
    part of a closed cover is relatively open.  A lower-dimensional ``Q`` is
    first rewritten in coordinates of its affine hull.
    """
    Q = to_h(Q)
    sets = [to_h(s) for s in sets]
    if any(s.dim != Q.dim for s in sets):
        raise BadInput("dimension mismatch")
    if common_point([Q]) is None:
        return True
    if _strict_point(list(Q.rows), Q.dim) is None:
        Q, sets = _restrict_to_hull(Q, sets)
        if Q.dim == 0:
            return any(all(b >= 0 for _, b in s.rows) for s in sets)
    return _subtract(Q, sets, budget)


def covers_interior(Q: Polytope, sets: Sequence[Polytope], budget: int = COVER_BUDGET) -> bool:
    """Like :func:`covers` but a lower-dimensional ``Q`` counts as covered.

    This is coverage up to sets without interior, used for code extraction.
    """
    Q = to_h(Q)
    sets = [to_h(s) for s in sets]
    if _strict_point(list(Q.rows), Q.dim) is None:
        return True
    return _subtract(Q, sets, budget)


def _restrict_to_hull(Q: HPolytope, sets: list[HPolytope]):
    pts = list(to_v(Q).points)
    p0, basis, _ = affine_hull(pts)
    k = len(basis)

    def pull(p: HPolytope) -> HPolytope:
        rows = []
        for a, b in p.rows:
            a2, b2 = tuple(dot(a, v) for v in basis), b - dot(a, p0)
            # rows constant on the hull are either vacuous or empty the set;
            # vacuous ones would block the strict-interior test
            if any(a2) or b2 < 0:
                rows.append((a2, b2))
        return HPolytope(k, tuple(rows))

    return pull(Q), [pull(s) for s in sets]


def _subtract(Q: HPolytope, sets: list[HPolytope], budget: int) -> bool:
    d = Q.dim
    stack = [list(Q.rows)]
    work = 0
    while stack:
        piece = stack.pop()
        work += 1
        if work > budget:
            raise CapacityExceeded("coverage test budget exceeded")
        chosen = None
        for s in sets:
            if _strict_point(piece + list(s.rows), d) is not None:
                chosen = s
                break
        if chosen is None:
            return False
        prefix: list = []
        for a, b in chosen.rows:
            if not any(a):
                continue
            rest = piece + prefix + [(tuple(-v for v in a), -b)]
            if _strict_point(rest, d) is not None:
                stack.append(rest)
            prefix.append((a, b))
    return True


def convex_hull_of_union(sets: Sequence[Polytope], dim: int) -> HPolytope | None:
    """H-form of conv of the union, or None when every set is empty."""
    pts = []
    for s in sets:
        pts.extend(to_v(s).points)
    if not pts:
        return None
    return to_h(VPolytope(dim, tuple(dict.fromkeys(pts))))

