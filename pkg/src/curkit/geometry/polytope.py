"""Exact H- and V-polytopes and the operations on them.

An :class:`HPolytope` is the closed set ``{x : a.x <= b for every row}``; a
:class:`VPolytope` is the convex hull of its points (possibly none).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd, lcm
from typing import Sequence, Union

from gmpy2 import mpq

from ..errors import BadInput, CapacityExceeded, Unbounded
from .lp import ONE, ZERO, Q, solve

CONVERT_BUDGET = 500_000


@dataclass(frozen=True)
class HPolytope:
    dim: int
    rows: tuple  # of (tuple of mpq, mpq)

    def __post_init__(self):
        for a, _ in self.rows:
            if len(a) != self.dim:
                raise BadInput(f"row of length {len(a)} in dimension {self.dim}")

    def contains_point(self, x) -> bool:
        return all(dot(a, x) <= b for a, b in self.rows)


@dataclass(frozen=True)
class VPolytope:
    dim: int
    points: tuple  # of tuples of mpq

    def __post_init__(self):
        for p in self.points:
            if len(p) != self.dim:
                raise BadInput(f"point of length {len(p)} in dimension {self.dim}")


Polytope = Union[HPolytope, VPolytope]


def hpoly(dim: int, rows: Sequence) -> HPolytope:
    return HPolytope(dim, tuple((tuple(Q(v) for v in a), Q(b)) for a, b in rows))


def vpoly(dim: int, points: Sequence) -> VPolytope:
    return VPolytope(dim, tuple(tuple(Q(v) for v in p) for p in points))


def box(lo: Sequence, hi: Sequence) -> HPolytope:
    d = len(lo)
    rows = []
    for i in range(d):
        e = [ZERO] * d
        e[i] = ONE
        rows.append((tuple(e), Q(hi[i])))
        rows.append((tuple(-v for v in e), -Q(lo[i])))
    return HPolytope(d, tuple(rows))


def interval(lo, hi) -> HPolytope:
    return box([lo], [hi])


def empty_h(dim: int) -> HPolytope:
    return HPolytope(dim, (((ZERO,) * dim, mpq(-1)),))


def dot(a, x) -> mpq:
    s = ZERO
    for u, v in zip(a, x):
        if u and v:
            s += u * v
    return s


# -- exact linear algebra -------------------------------------------------------

def rref(rows: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [v / p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [u - f * w for u, w in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: list[list], ncols: int) -> list[list]:
    """Basis of {x : rows.x = 0}."""
    if not rows:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][f]
        basis.append(v)
    return basis


def solve_square(A: list[list], b: list) -> list | None:
    """Unique solution of A x = b, or None when A is singular."""
    n = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [red[i][n] for i in range(n)]


def primitive(a: Sequence, b) -> tuple:
    """Scale a row (a, b) to coprime integers (positive scale only)."""
    vals = list(a) + [b]
    den = 1
    for v in vals:
        den = lcm(den, int(v.denominator))
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(mpq(v) for v in ints[:-1]), mpq(ints[-1])


# -- LP-backed queries -----------------------------------------------------------

def _system(polys: Sequence[Polytope], dim: int):
    """Variables: x (free, dim entries) followed by one weight per V-point."""
    nvar = dim + sum(len(p.points) for p in polys if isinstance(p, VPolytope))
    ub, eq, nonneg = [], [], []
    offset = dim
    for p in polys:
        if p.dim != dim:
            raise BadInput("dimension mismatch")
        if isinstance(p, HPolytope):
            for a, b in p.rows:
                ub.append((list(a) + [ZERO] * (nvar - dim), b))
        else:
            k = len(p.points)
            if k == 0:
                return None
            idx = range(offset, offset + k)
            nonneg.extend(idx)
            row = [ZERO] * nvar
            for j in idx:
                row[j] = ONE
            eq.append((row, ONE))
            for coord in range(dim):
                row = [ZERO] * nvar
                row[coord] = ONE
                for j, pt in zip(idx, p.points):
                    row[j] = -pt[coord]
                eq.append((row, ZERO))
            offset += k
    return nvar, ub, eq, nonneg


def common_point(polys: Sequence[Polytope], dim: int | None = None, strict: bool = False):
    """A point in the intersection, or None.

    With ``strict`` the point lies strictly inside every H-row (an interior
    point of the intersection); V-polytopes must be converted first.
    """
    if dim is None:
        if not polys:
            raise BadInput("cannot infer dimension")
        dim = polys[0].dim
    polys = list(polys)
    if strict:
        polys = [to_h(p) for p in polys]
    sysm = _system(polys, dim)
    if sysm is None:
        return None
    nvar, ub, eq, nonneg = sysm
    if dim == 0 and not ub and not eq:
        return ()
    if not strict:
        res = solve([ZERO] * nvar, ub=ub, eq=eq, nonneg=nonneg)
        return tuple(res.x[:dim]) if res.feasible else None
    ext = [(a + [ONE], b) for a, b in ub]
    ext.append(([ZERO] * nvar + [ONE], ONE))
    res = solve([ZERO] * nvar + [ONE], ub=ext)
    if res.status != "optimal" or res.value <= 0:
        return None
    return tuple(res.x[:dim])


def maximize(direction: Sequence, polys: Sequence[Polytope], dim: int | None = None):
    """Maximum of ``direction . x`` over the intersection (LPResult)."""
    if dim is None:
        dim = polys[0].dim
    sysm = _system(polys, dim)
    if sysm is None:
        from .lp import LPResult
        return LPResult("infeasible")
    nvar, ub, eq, nonneg = sysm
    c = [Q(v) for v in direction] + [ZERO] * (nvar - dim)
    return solve(c, ub=ub, eq=eq, nonneg=nonneg)


def is_empty(p: Polytope) -> bool:
    if isinstance(p, VPolytope):
        return not p.points
    return common_point([p]) is None


def is_full_dimensional(p: Polytope) -> bool:
    return common_point([p], strict=True) is not None


def contains(outer: Polytope, inner: Polytope) -> bool:
    """Whether ``inner`` is a subset of ``outer``."""
    if is_empty(inner):
        return True
    if isinstance(outer, VPolytope):
        outer = to_h(outer)
    if isinstance(inner, VPolytope):
        return all(outer.contains_point(p) for p in inner.points)
    for a, b in outer.rows:
        res = maximize(a, [inner])
        if res.status == "unbounded" or res.value > b:
            return False
    return True


# -- set algebra -----------------------------------------------------------------

def intersect(p: Polytope, q: Polytope) -> HPolytope:
    p, q = to_h(p), to_h(q)
    if p.dim != q.dim:
        raise BadInput("dimension mismatch")
    return HPolytope(p.dim, p.rows + q.rows)


def lift(p: HPolytope, before: int = 0, after: int = 0) -> HPolytope:
    """The cylinder ``R^before x p x R^after``."""
    pad0 = (ZERO,) * before
    pad1 = (ZERO,) * after
    return HPolytope(before + p.dim + after, tuple((pad0 + a + pad1, b) for a, b in p.rows))


def product(p: Polytope, q: Polytope) -> Polytope:
    if isinstance(p, VPolytope) and isinstance(q, VPolytope):
        return VPolytope(p.dim + q.dim, tuple(x + y for x in p.points for y in q.points))
    p, q = to_h(p), to_h(q)
    if is_empty(p) or is_empty(q):
        return empty_h(p.dim + q.dim)
    return HPolytope(p.dim + q.dim, lift(p, after=q.dim).rows + lift(q, before=p.dim).rows)


def bounding_box(sets: Sequence[Polytope], dim: int) -> HPolytope:
    """Axis box containing every set with margin 1 (``[-1, 1]^d`` if all empty)."""
    lo = [None] * dim
    hi = [None] * dim
    for s in sets:
        if s.dim != dim:
            raise BadInput("dimension mismatch")
        if is_empty(s):
            continue
        for i in range(dim):
            if isinstance(s, VPolytope):
                top = max(p[i] for p in s.points)
                bot = min(p[i] for p in s.points)
            else:
                e = [ZERO] * dim
                e[i] = ONE
                r1 = maximize(e, [s])
                e[i] = -ONE
                r2 = maximize(e, [s])
                if r1.status == "unbounded" or r2.status == "unbounded":
                    raise Unbounded("bounding_box needs bounded sets")
                top, bot = r1.value, -r2.value
            hi[i] = top if hi[i] is None else max(hi[i], top)
            lo[i] = bot if lo[i] is None else min(lo[i], bot)
    lo = [(ZERO if v is None else v) - 1 for v in lo]
    hi = [(ZERO if v is None else v) + 1 for v in hi]
    return box(lo, hi)


# -- conversion ------------------------------------------------------------------

def _check_bounded(p: HPolytope) -> None:
    for i in range(p.dim):
        for s in (ONE, -ONE):
            e = [ZERO] * p.dim
            e[i] = s
            if maximize(e, [p]).status == "unbounded":
                raise Unbounded("polytope is unbounded")


def vertices(p: HPolytope, budget: int = CONVERT_BUDGET) -> VPolytope:
    """Vertex enumeration over all d-subsets of rows."""
    d = p.dim
    if common_point([p]) is None:
        return VPolytope(d, ())
    if d == 0:
        return VPolytope(0, ((),))
    _check_bounded(p)
    rows = list(dict.fromkeys(primitive(a, b) for a, b in p.rows if any(a)))
    seen = []
    found = set()
    count = 0
    for subset in combinations(range(len(rows)), d):
        count += 1
        if count > budget:
            raise CapacityExceeded("vertex enumeration budget exceeded")
        x = solve_square([list(rows[i][0]) for i in subset], [rows[i][1] for i in subset])
        if x is None:
            continue
        x = tuple(x)
        if x in found:
            continue
        if all(dot(a, x) <= b for a, b in rows):
            found.add(x)
            seen.append(x)
    return VPolytope(d, tuple(sorted(seen)))


def affine_hull(points: Sequence) -> tuple[tuple, list[list], list[int]]:
    """(base point, basis of the direction space in RREF, pivot coordinates)."""
    p0 = points[0]
    diffs = [[u - v for u, v in zip(p, p0)] for p in points[1:]]
    diffs = [r for r in diffs if any(r)]
    if not diffs:
        return p0, [], []
    red, pivots = rref(diffs)
    return p0, red, pivots


def facets_of_points(points: Sequence, budget: int = CONVERT_BUDGET) -> HPolytope:
    """H-form of conv(points): equalities for the affine hull plus facets inside it."""
    pts = list(dict.fromkeys(tuple(Q(v) for v in p) for p in points))
    if not pts:
        raise BadInput("dimension unknown for an empty point set")
    d = len(pts[0])
    return _facets(pts, d, budget)


def _facets(pts, d, budget):
    if not pts:
        return empty_h(d)
    p0, basis, pivots = affine_hull(pts)
    k = len(pivots)
    rows = []
    for n in nullspace(basis, d) if k < d else []:
        c = dot(n, p0)
        rows.append(primitive(n, c))
        rows.append(primitive([-v for v in n], -c))
    if k > 0:
        proj = [tuple(p[i] for i in pivots) for p in pts]
        count = 0
        found = set()
        for subset in combinations(range(len(proj)), k):
            count += 1
            if count > budget:
                raise CapacityExceeded("facet enumeration budget exceeded")
            base = proj[subset[0]]
            diffs = [[u - v for u, v in zip(proj[j], base)] for j in subset[1:]]
            ns = nullspace(diffs, k) if diffs else nullspace([], 1)
            if len(ns) != 1:
                continue
            normal = ns[0]
            c = dot(normal, base)
            vals = [dot(normal, q) for q in proj]
            if all(v <= c for v in vals):
                row = primitive(normal, c)
            elif all(v >= c for v in vals):
                row = primitive([-v for v in normal], -c)
            else:
                continue
            if row in found:
                continue
            found.add(row)
            full = [ZERO] * d
            for coef, i in zip(row[0], pivots):
                full[i] = coef
            rows.append((tuple(full), row[1]))
    return HPolytope(d, tuple(dict.fromkeys(rows)))


def to_h(p: Polytope, budget: int = CONVERT_BUDGET) -> HPolytope:
    if isinstance(p, HPolytope):
        return p
    if not p.points:
        return empty_h(p.dim)
    if p.dim == 0:
        return HPolytope(0, ())
    return _facets(list(dict.fromkeys(p.points)), p.dim, budget)


def to_v(p: Polytope, budget: int = CONVERT_BUDGET) -> VPolytope:
    if isinstance(p, VPolytope):
        return p
    return vertices(p, budget)


def dual_convert(p: Polytope, budget: int = CONVERT_BUDGET) -> Polytope:
    """H-form to V-form or V-form to H-form, exactly."""
    if isinstance(p, HPolytope):
        return vertices(p, budget)
    return to_h(p, budget)
