"""Simplicial complexes and combinatorial codes.

Faces are stored as integer bitmasks: vertex ``i`` is bit ``1 << i``.  A
complex keeps only its facets; faces are enumerated on demand.  The void
complex (no faces at all) and the empty complex ``{∅}`` are distinct values:

>>> void(3).is_void, empty(3).is_void
(True, False)
>>> empty(3).facets
(0,)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .errors import (
    CapacityExceeded,
    EmptyGround,
    GroundNotVertexSet,
    InvalidVertex,
    NotAFace,
    NotAFacet,
)

MAX_GROUND = 64

FaceSet = int


# -- face helpers -----------------------------------------------------------

def face(*vertices) -> FaceSet:
    """Bitmask of a face: ``face(0, 2)`` or ``face([0, 2])``."""
    if len(vertices) == 1 and not isinstance(vertices[0], int):
        vertices = tuple(vertices[0])
    mask = 0
    for v in vertices:
        if v < 0:
            raise InvalidVertex(f"negative vertex id {v}")
        mask |= 1 << v
    return mask


def verts(mask: FaceSet) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def size(mask: FaceSet) -> int:
    return mask.bit_count()


def fmt_face(mask: FaceSet) -> str:
    return "{" + " ".join(map(str, verts(mask))) + "}"


def submasks(mask: FaceSet) -> Iterator[FaceSet]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _maximal(masks: Iterable[FaceSet]) -> tuple[FaceSet, ...]:
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda x: -x.bit_count()):
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    return tuple(sorted(kept))


def _check_ground(n: int) -> None:
    if n < 0:
        raise InvalidVertex("ground size must be non-negative")
    if n > MAX_GROUND:
        raise CapacityExceeded(f"ground size {n} exceeds {MAX_GROUND}")


# -- complexes ----------------------------------------------------------------

@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex on the ground set ``{0, ..., n-1}``.

    ``facets`` is the sorted tuple of inclusion-maximal faces (bitmasks).
    Ground elements need not be vertices.
    """

    n: int
    facets: tuple[FaceSet, ...]
    is_void: bool = field(default=False)

    def __post_init__(self):
        _check_ground(self.n)
        if self.is_void != (len(self.facets) == 0):
            raise ValueError("is_void must hold exactly when there are no facets")
        full = (1 << self.n) - 1
        for f in self.facets:
            if f & ~full:
                raise InvalidVertex(f"facet {fmt_face(f)} leaves ground set of size {self.n}")

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[FaceSet]) -> "SimplicialComplex":
        facets = _maximal(masks)
        return cls(n, facets, not facets)

    @property
    def vertex_mask(self) -> FaceSet:
        m = 0
        for f in self.facets:
            m |= f
        return m

    @property
    def vertices(self) -> tuple[int, ...]:
        return verts(self.vertex_mask)

    @property
    def dim(self) -> int:
        """Dimension; -1 for ``{∅}`` and -2 (by convention) for the void complex."""
        if self.is_void:
            return -2
        return max(f.bit_count() for f in self.facets) - 1

    @property
    def is_empty_complex(self) -> bool:
        return self.facets == (0,)

    @property
    def is_simplex(self) -> bool:
        return len(self.facets) == 1

    def facet_sets(self) -> list[tuple[int, ...]]:
        return [verts(f) for f in self.facets]

    def __contains__(self, sigma: FaceSet) -> bool:
        return any(sigma & ~f == 0 for f in self.facets)

    def face_masks(self) -> set[FaceSet]:
        out: set[int] = set()
        for f in self.facets:
            out.update(submasks(f))
        return out

    def ground_is_vertex_set(self) -> bool:
        return self.vertex_mask == (1 << self.n) - 1

    def __str__(self) -> str:
        if self.is_void:
            return f"void(n={self.n})"
        return f"<n={self.n}: " + ", ".join(fmt_face(f) for f in self.facets) + ">"


def from_facets(n: int, faces: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Complex generated (down-closed) by ``faces``; ``[]`` gives the void complex."""
    _check_ground(n)
    masks = []
    for f in faces:
        m = face(f) if not isinstance(f, int) else f
        if m >> n:
            raise InvalidVertex(f"face {fmt_face(m)} has a vertex >= {n}")
        masks.append(m)
    return SimplicialComplex.from_masks(n, masks)


def void(n: int = 0) -> SimplicialComplex:
    return SimplicialComplex(n, (), True)


def empty(n: int = 0) -> SimplicialComplex:
    return SimplicialComplex(n, (0,), False)


def simplex(n: int, mask: FaceSet | None = None) -> SimplicialComplex:
    """The full simplex on ``mask`` (default: the whole ground set)."""
    if mask is None:
        mask = (1 << n) - 1
    return SimplicialComplex.from_masks(n, [mask])


def simplex_boundary(k: int) -> SimplicialComplex:
    """Boundary of the k-simplex, on k+1 vertices."""
    full = (1 << (k + 1)) - 1
    return SimplicialComplex.from_masks(k + 1, [full & ~(1 << i) for i in range(k + 1)])


def path(m: int) -> SimplicialComplex:
    """Path 0-1-...-(m-1)."""
    if m == 1:
        return from_facets(1, [[0]])
    return from_facets(m, [[i, i + 1] for i in range(m - 1)])


def faces_of(cx: SimplicialComplex) -> list[FaceSet]:
    """All faces, ordered by (size, mask).  Void gives ``[]``."""
    return sorted(cx.face_masks(), key=lambda m: (m.bit_count(), m))


def f_vector(cx: SimplicialComplex) -> list[int]:
    if cx.is_void:
        return []
    counts = [0] * (cx.dim + 2)
    for m in cx.face_masks():
        counts[m.bit_count()] += 1
    return counts


def _require_face(cx, sigma):
    if sigma not in cx:
        raise NotAFace(f"{fmt_face(sigma)} is not a face")


def star(cx: SimplicialComplex, sigma: FaceSet) -> SimplicialComplex:
    _require_face(cx, sigma)
    return SimplicialComplex.from_masks(cx.n, [f for f in cx.facets if sigma & ~f == 0])


def link(cx: SimplicialComplex, sigma: FaceSet) -> SimplicialComplex:
    _require_face(cx, sigma)
    return SimplicialComplex.from_masks(cx.n, [f & ~sigma for f in cx.facets if sigma & ~f == 0])


def deletion(cx: SimplicialComplex, sigma: FaceSet) -> SimplicialComplex:
    """Remove every face containing ``sigma``."""
    out = []
    for f in cx.facets:
        if sigma & ~f:
            out.append(f)
        else:
            out.extend(f & ~(1 << v) for v in verts(sigma))
    return SimplicialComplex.from_masks(cx.n, out)


def restriction(cx: SimplicialComplex, omega: FaceSet) -> SimplicialComplex:
    if cx.is_void:
        return cx
    return SimplicialComplex.from_masks(cx.n, [f & omega for f in cx.facets])


def union(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    return SimplicialComplex.from_masks(max(a.n, b.n), a.facets + b.facets)


def intersection(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    return SimplicialComplex.from_masks(max(a.n, b.n), [f & g for f in a.facets for g in b.facets])


def is_subcomplex(small: SimplicialComplex, big: SimplicialComplex) -> bool:
    return all(f in big for f in small.facets)


def relabel(cx: SimplicialComplex, mapping: dict[int, int] | list[int], n: int | None = None):
    """Apply a vertex map (old id -> new id)."""
    if n is None:
        n = cx.n
    out = []
    for f in cx.facets:
        m = 0
        for v in verts(f):
            m |= 1 << mapping[v]
        out.append(m)
    return SimplicialComplex.from_masks(n, out)


def compact(cx: SimplicialComplex) -> tuple[SimplicialComplex, list[int]]:
    """Relabel onto ``0..f_0-1`` keeping order; returns (complex, old ids)."""
    old = list(cx.vertices)
    mapping = {v: i for i, v in enumerate(old)}
    return relabel(cx, mapping, len(old)), old


# -- joins, cones, suspensions --------------------------------------------------

def join(a: SimplicialComplex, b: SimplicialComplex, return_map: bool = False):
    """Join with ``b`` re-indexed by ``a.n``.

    With ``return_map`` the vertex map for ``b`` (old id -> new id) is returned too.
    """
    shift = a.n
    n = a.n + b.n
    _check_ground(n)
    cx = SimplicialComplex.from_masks(n, [f | (g << shift) for f in a.facets for g in b.facets])
    if return_map:
        return cx, {v: v + shift for v in range(b.n)}
    return cx


def point() -> SimplicialComplex:
    return from_facets(1, [[0]])


def two_points() -> SimplicialComplex:
    return from_facets(2, [[0], [1]])


def cone(cx: SimplicialComplex) -> SimplicialComplex:
    """Cone with the new apex ``cx.n``."""
    return join(cx, point())


def suspension(cx: SimplicialComplex) -> SimplicialComplex:
    """Suspension with the new suspension vertices ``cx.n`` and ``cx.n + 1``."""
    return join(cx, two_points())


def suspension_power(k: int) -> SimplicialComplex:
    cx = point()
    for _ in range(k):
        cx = suspension(cx)
    return cx


def is_cone(cx: SimplicialComplex) -> int | None:
    """Smallest vertex lying in every facet, if any."""
    if cx.is_void:
        return None
    common = cx.facets[0]
    for f in cx.facets[1:]:
        common &= f
    if not common:
        return None
    return (common & -common).bit_length() - 1


def detect_suspensions(cx: SimplicialComplex) -> list[tuple[int, int, SimplicialComplex]]:
    """All pairs u < v with {u, v} not a face and link(u) = link(v) = Δ|V∖{u,v}."""
    out = []
    vmask = cx.vertex_mask
    vs = verts(vmask)
    for u, v in combinations(vs, 2):
        uv = (1 << u) | (1 << v)
        if uv in cx:
            continue
        lu = link(cx, 1 << u)
        if lu != link(cx, 1 << v):
            continue
        if lu != restriction(cx, vmask & ~uv):
            continue
        out.append((u, v, lu))
    return out


def alexander_dual(cx: SimplicialComplex, strict: bool = True) -> SimplicialComplex:
    """Alexander dual {σ ⊆ [n] : [n]∖σ ∉ Δ}.

    With ``strict`` (the default) every ground element must be a vertex.  With
    ``strict=False`` the dual is taken relative to the ground set as given,
    which is what the collapse-duality statement for pairs needs.
    """
    n = cx.n
    if n == 0:
        raise EmptyGround("Alexander dual needs a non-empty ground set")
    if strict and not cx.ground_is_vertex_set():
        raise GroundNotVertexSet("every ground element must be a vertex")
    full = (1 << n) - 1
    if cx.is_void:
        return simplex(n)
    # facets of the dual are complements of the minimal non-faces
    faces = cx.face_masks()
    minimal_nonfaces = set()
    for s in faces:
        for v in range(n):
            bit = 1 << v
            if s & bit:
                continue
            t = s | bit
            if t in faces or t in minimal_nonfaces:
                continue
            if all((t & ~(1 << u)) in faces for u in verts(t)):
                minimal_nonfaces.add(t)
    return SimplicialComplex.from_masks(n, [full & ~t for t in minimal_nonfaces])


def stellar_subdivide_facet(cx: SimplicialComplex, facet_mask: FaceSet) -> SimplicialComplex:
    """Stellar subdivision at a facet, with the new vertex ``cx.n``."""
    if facet_mask not in cx.facets:
        raise NotAFacet(f"{fmt_face(facet_mask)} is not a facet")
    if facet_mask == 0:
        raise NotAFacet("cannot subdivide the empty face")
    new = 1 << cx.n
    rest = [f for f in cx.facets if f != facet_mask]
    rest += [new | (facet_mask & ~(1 << j)) for j in verts(facet_mask)]
    return SimplicialComplex.from_masks(cx.n + 1, rest)


def is_tree(cx: SimplicialComplex) -> bool:
    """Connected, acyclic graph (a single vertex counts)."""
    if cx.is_void or cx.dim < 0 or cx.dim > 1:
        return False
    nv = len(cx.vertices)
    edges = [f for f in cx.facets if f.bit_count() == 2]
    if len(edges) != nv - 1:
        return False
    return _connected(cx.vertex_mask, edges)


def is_path(cx: SimplicialComplex) -> bool:
    if not is_tree(cx):
        return False
    deg: dict[int, int] = {}
    for f in cx.facets:
        for v in verts(f):
            deg[v] = deg.get(v, 0) + 1
    return all(d <= 2 for d in deg.values())


def _connected(vmask: int, edges: list[int]) -> bool:
    if vmask == 0:
        return True
    seen = vmask & -vmask
    changed = True
    while changed:
        changed = False
        for e in edges:
            if e & seen and e & ~seen:
                seen |= e
                changed = True
    return seen == vmask


# -- codes --------------------------------------------------------------------

@dataclass(frozen=True)
class Code:
    """A combinatorial code: a set of codewords over ``{0, ..., n-1}``."""

    n: int
    codewords: frozenset[FaceSet]

    def __post_init__(self):
        _check_ground(self.n)
        full = (1 << self.n) - 1
        for w in self.codewords:
            if w & ~full:
                raise InvalidVertex(f"codeword {fmt_face(w)} leaves ground set of size {self.n}")

    @classmethod
    def from_words(cls, n: int, words: Iterable[Iterable[int]]) -> "Code":
        return cls(n, frozenset(w if isinstance(w, int) else face(w) for w in words))

    def maximal_codewords(self) -> tuple[FaceSet, ...]:
        return _maximal(self.codewords)

    def __contains__(self, word: FaceSet) -> bool:
        return word in self.codewords

    def sorted_words(self) -> list[FaceSet]:
        return sorted(self.codewords, key=lambda m: (m.bit_count(), m))


def complex_of_code(code: Code) -> SimplicialComplex:
    return SimplicialComplex.from_masks(code.n, code.codewords)


def code_of_complex_minus_empty(cx: SimplicialComplex) -> Code:
    """The code Γ∖{∅} consisting of every nonempty face."""
    return Code(cx.n, frozenset(m for m in cx.face_masks() if m))
