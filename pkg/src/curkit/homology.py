"""Reduced simplicial homology ranks over GF(2) and the rationals."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .complex import SimplicialComplex, restriction, verts
from .errors import CapacityExceeded

LERAY_MAX_VERTICES = 20


class Field(enum.Enum):
    GF2 = "GF2"
    RATIONAL = "Q"


GF2 = Field.GF2
RATIONAL = Field.RATIONAL


@dataclass(frozen=True)
class BettiVector:
    field: Field
    values: dict[int, int]

    def __getitem__(self, i: int) -> int:
        return self.values.get(i, 0)

    def as_list(self) -> list[int]:
        """Values for dimensions -1, 0, 1, ... up to the top dimension."""
        if not self.values:
            return []
        top = max(self.values)
        return [self.values.get(i, 0) for i in range(-1, top + 1)]

    def is_zero(self) -> bool:
        return not any(self.values.values())

    def __str__(self) -> str:
        return " ".join(map(str, self.as_list()))


def _faces_by_size(cx: SimplicialComplex) -> list[list[int]]:
    if cx.is_void:
        return []
    levels: list[list[int]] = [[] for _ in range(cx.dim + 2)]
    for m in cx.face_masks():
        levels[m.bit_count()].append(m)
    for lev in levels:
        lev.sort()
    return levels


def _rank_gf2(rows: list[int]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in pivots:
                r ^= pivots[top]
            else:
                pivots[top] = r
                rank += 1
                break
    return rank


def _rank_q(rows: list[dict[int, int]]) -> int:
    """Rank over Q of a sparse integer matrix, by integer row reduction."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            col = max(row)
            if col not in pivots:
                pivots[col] = row
                rank += 1
                break
            prow = pivots[col]
            a, b = row[col], prow[col]
            # row <- b*row - a*prow eliminates col, stays integral
            new = {}
            for k in set(row) | set(prow):
                v = b * row.get(k, 0) - a * prow.get(k, 0)
                if v:
                    new[k] = v
            g = 0
            for v in new.values():
                g = gcd(g, v)
            if g > 1:
                new = {k: v // g for k, v in new.items()}
            row = new
    return rank


def _boundary_rank(lower: list[int], upper: list[int], field: Field) -> int:
    """Rank of the boundary map from faces of size k+1 to faces of size k."""
    if not lower or not upper:
        return 0
    index = {m: i for i, m in enumerate(lower)}
    if field is GF2:
        rows = []
        for m in upper:
            r = 0
            for v in verts(m):
                r |= 1 << index[m & ~(1 << v)]
            rows.append(r)
        return _rank_gf2(rows)
    rows = []
    for m in upper:
        r = {}
        for pos, v in enumerate(verts(m)):
            r[index[m & ~(1 << v)]] = -1 if pos % 2 else 1
        rows.append(r)
    return _rank_q(rows)


def reduced_betti(cx: SimplicialComplex, field: Field = RATIONAL) -> BettiVector:
    """Ranks of reduced homology, indexed by dimension -1..dim."""
    levels = _faces_by_size(cx)
    if not levels:
        return BettiVector(field, {})
    ranks = [_boundary_rank(levels[k], levels[k + 1], field) for k in range(len(levels) - 1)]
    ranks.append(0)
    values = {}
    for k, faces in enumerate(levels):
        into = ranks[k - 1] if k > 0 else 0
        values[k - 1] = len(faces) - into - ranks[k]
    return BettiVector(field, values)


def is_acyclic(cx: SimplicialComplex, field: Field = RATIONAL) -> bool:
    return reduced_betti(cx, field).is_zero()


def top_nonzero(betti: BettiVector) -> int | None:
    dims = [i for i, b in betti.values.items() if b]
    return max(dims) if dims else None


def leray_number(cx: SimplicialComplex, field: Field = RATIONAL) -> int:
    """Smallest d >= 0 with every induced subcomplex acyclic in dimensions >= d."""
    vs = cx.vertices
    if len(vs) > LERAY_MAX_VERTICES:
        raise CapacityExceeded(f"{len(vs)} vertices exceeds Leray limit {LERAY_MAX_VERTICES}")
    best = 0
    for r in range(len(vs) + 1):
        for omega in combinations(vs, r):
            mask = 0
            for v in omega:
                mask |= 1 << v
            sub = restriction(cx, mask)
            if sub.dim + 1 <= best:
                # homology above dim is zero, nothing new to learn
                continue
            top = top_nonzero(reduced_betti(sub, field))
            if top is not None:
                best = max(best, top + 1)
    return best


def leray_witness(cx: SimplicialComplex, d: int, field: Field = RATIONAL):
    """An induced subcomplex with nonzero homology in some dimension >= d, if any."""
    vs = cx.vertices
    for r in range(len(vs) + 1):
        for omega in combinations(vs, r):
            mask = sum(1 << v for v in omega)
            sub = restriction(cx, mask)
            betti = reduced_betti(sub, field)
            for i, b in betti.values.items():
                if i >= d and b:
                    return mask, i, b
    return None
