"""Generators of polytope representations for the known sufficient classes.

Each generator returns a :class:`Representation` whose ``log`` records the
steps that produced it.  :func:`replay` re-runs a log and checks that every
recorded constant comes out the same, so a log reproduces its representation
exactly.  Generators that pick constants (the building step) re-verify their
output and raise :class:`FailedVerification` if the check fails.
"""
from __future__ import annotations

from collections import deque

from .complex import (SimplicialComplex, fmt_face, is_tree, join, point, restriction,
                      star, suspension_power, two_points, verts)
from .errors import (BadInput, CapacityExceeded, FailedVerification, GroundNotVertexSet,
                     NeedsConvexUnion, NonGenericInput, NotAFace, NotATree)
from .geometry.lp import ONE, ZERO, Q, qstr
from .geometry.nerve import nerve_of_collection
from .geometry.polytope import (HPolytope, VPolytope, bounding_box, box, common_point,
                                empty_h, interval, is_empty, lift, maximize, product, to_h,
                                to_v)
from .geometry.representation import (Representation, UnionCertificate,
                                      verify_representation)
from .textio import format_complex, parse_complex

MAX_HALVINGS = 64


def _step(op: str, params: dict | None = None, constants: dict | None = None) -> dict:
    return {"op": op, "params": params or {}, "constants": constants or {}}


# -- base representations -----------------------------------------------------------

def point_representation() -> Representation:
    """One set, the whole of R^0."""
    return Representation(0, [HPolytope(0, ())], UnionCertificate.bounding(0),
                          [_step("point")])


def two_point_representation() -> Representation:
    """[0,1] and [2,3] in R^1; the union is not convex."""
    return Representation(1, [interval(0, 1), interval(2, 3)], UnionCertificate.none(),
                          [_step("two_points")])


def path_representation(m: int) -> Representation:
    """Intervals [i, i+3/2] realizing the path 0-1-...-(m-1)."""
    if m < 1:
        raise BadInput("a path needs at least one vertex")
    half = Q("3/2")
    sets = [interval(i, i + half) for i in range(m)]
    return Representation(1, sets, UnionCertificate.explicit(interval(0, m + Q("1/2"))),
                          [_step("path", {"m": m})])


def _barycentric_sets(cx: SimplicialComplex) -> list[VPolytope]:
    n = cx.n
    pts: list[list[tuple]] = [[] for _ in range(n)]
    for sigma in sorted(cx.face_masks()):
        if not sigma:
            continue
        w = Q(1) / sigma.bit_count()
        b = tuple(w if sigma >> j & 1 else ZERO for j in range(n))
        for i in verts(sigma):
            pts[i].append(b)
    return [VPolytope(n, tuple(p)) for p in pts]


def generic_representation(cx: SimplicialComplex) -> Representation:
    """Barycenters of faces; set i is the hull of the barycenters of faces through i.

    The nerve is ``cx`` but the union is usually not convex, so no union
    certificate is attached.
    """
    if cx.n < 1:
        raise BadInput("need at least one ground element")
    if not cx.ground_is_vertex_set():
        raise GroundNotVertexSet("every ground element must be a vertex")
    return Representation(cx.n, _barycentric_sets(cx), UnionCertificate.none(),
                          [_step("generic", {"complex": format_complex(cx)})])


def cone_representation(base: SimplicialComplex, apex: int | None = None) -> Representation:
    """Representation of the cone over ``base``.

    With ``apex=None`` the apex is the new vertex ``base.n``.  Otherwise
    ``apex`` must be a ground element of ``base`` that is not a vertex.  The
    apex set is a box around all other sets, which certifies the union.
    """
    if base.is_void:
        raise BadInput("the cone over the void complex is void")
    given = apex
    if apex is None:
        cx = SimplicialComplex.from_masks(base.n + 1, base.facets)
        apex = base.n
    else:
        if not 0 <= apex < base.n or base.vertex_mask >> apex & 1:
            raise BadInput(f"apex {apex} must be a ground element outside the base")
        cx = base
    sets: list = _barycentric_sets(cx)
    sets[apex] = bounding_box(sets, cx.n)
    return Representation(cx.n, sets, UnionCertificate.bounding(apex),
                          [_step("cone", {"base": format_complex(base),
                                          "apex": given})])


# -- join ------------------------------------------------------------------------------

def join_representation(left: Representation, right: Representation) -> Representation:
    """Product construction for the join of the two nerves.

    ``left`` needs a convex union ``U``; with ``V`` a convex set around the
    sets of ``right``, the new sets are ``U_k x V`` and ``U x V_j``.
    """
    U = left.union_polytope()
    if U is None:
        raise NeedsConvexUnion("the left representation has no union certificate")
    V = right.union_polytope()
    if V is None:
        V = bounding_box(right.sets, right.dim)
    sets = [product(s, V) for s in left.sets] + [product(U, s) for s in right.sets]
    if left.union.kind == "bounding":
        union = UnionCertificate.bounding(left.union.index)
    else:
        union = UnionCertificate.explicit(to_h(product(U, V)))
    log = left.log + [_step("join", {"right": right.log})]
    return Representation(left.dim + right.dim, sets, union, log)


def suspension_power_representation(k: int) -> Representation:
    """Representation of the k-fold suspension of a point in R^k."""
    if k < 0:
        raise BadInput("k must be non-negative")
    rep = point_representation()
    for _ in range(k):
        rep = join_representation(rep, two_point_representation())
    return rep


# -- building step ------------------------------------------------------------------

def building_target(cx: SimplicialComplex, sigma: int, omega: int) -> SimplicialComplex:
    """``cx`` plus the cone with apex ``cx.n`` over the star of sigma restricted to omega."""
    base = restriction(star(cx, sigma), omega)
    apex = 1 << cx.n
    return SimplicialComplex.from_masks(cx.n + 1, list(cx.facets) + [f | apex for f in base.facets])


def build_cone_over_star(rep: Representation, sigma: int, omega: int,
                         verify: bool = True) -> Representation:
    """Add one set and one dimension so the nerve gains a cone over a restricted star.

    The new nerve is ``Δ ∪ (n * star(σ)|_ω)`` where ``Δ`` is the nerve of
    ``rep`` and ``n`` the new vertex.  ``rep`` must have a convex union.
    """
    Qu = rep.union_polytope()
    if Qu is None:
        raise NeedsConvexUnion("building needs a representation with a convex union")
    if sigma == 0:
        raise BadInput("sigma must be a nonempty face")
    if sigma & ~omega:
        raise BadInput("omega must contain sigma")
    n, d = rep.n, rep.dim
    if omega >> n:
        raise BadInput("omega leaves the ground set")
    hs = [to_h(s) for s in rep.sets]
    cx = nerve_of_collection(rep.sets)
    if sigma not in cx:
        raise NotAFace(f"{fmt_face(sigma)} is not a face of the nerve")

    # interior witnesses of every intersection above sigma
    tops = []
    for tau in sorted(cx.face_masks()):
        if tau & sigma != sigma:
            continue
        p = common_point([hs[i] for i in verts(tau)], dim=d, strict=True)
        if p is None:
            raise NonGenericInput(f"intersection at {fmt_face(tau)} has empty interior")
        tops.append(tuple(p))
    tops = list(dict.fromkeys(tops))

    bottom = [tuple(q) + (ZERO,) for q in to_v(Qu).points]
    W = to_h(VPolytope(d + 1, tuple(bottom + [p + (ONE,) for p in tops])))

    t = (ZERO,) * d + (ONE,)
    neg_t = (ZERO,) * d + (-ONE,)
    P_sigma = [row for i in verts(sigma) for row in lift(hs[i], after=1).rows]
    eps = None
    cand = Q("1/2")
    for _ in range(MAX_HALVINGS):
        top_slab = HPolytope(d + 1, W.rows + ((neg_t, cand - 1),))
        if all(maximize(a, [top_slab]).value <= b for a, b in P_sigma):
            eps = cand
            break
        cand /= 2
    if eps is None:
        raise CapacityExceeded("no slab thickness found")

    slab01 = ((t, ONE), (neg_t, ZERO))
    sets = []
    for i, h in enumerate(hs):
        if is_empty(h):
            sets.append(empty_h(d + 1))
            continue
        rows = lift(h, after=1).rows + slab01 + W.rows
        if not omega >> i & 1:
            rows += ((t, 1 - eps),)
        sets.append(HPolytope(d + 1, rows))
    sets.append(HPolytope(d + 1, W.rows + ((neg_t, eps / 2 - 1),)))
    constants = {"eps": qstr(eps), "witnesses": [[qstr(v) for v in p] for p in tops]}
    out = Representation(d + 1, sets, UnionCertificate.explicit(W),
                         rep.log + [_step("building", {"sigma": list(verts(sigma)),
                                                       "omega": list(verts(omega))},
                                          constants)])
    if verify:
        target = building_target(cx, sigma, omega)
        report = verify_representation(out, target)
        if not report:
            raise FailedVerification("building step output does not verify: "
                                     + "; ".join(report.messages))
    return out


# -- trees ----------------------------------------------------------------------------

def permute_representation(rep: Representation, order: list[int]) -> Representation:
    """New set ``j`` is old set ``order[j]``."""
    if sorted(order) != list(range(rep.n)):
        raise BadInput("order must be a permutation")
    union = rep.union
    if union.kind == "bounding":
        union = UnionCertificate.bounding(order.index(union.index))
    return Representation(rep.dim, [rep.sets[i] for i in order], union,
                          rep.log + [_step("permute", {"order": list(order)})])


def tree_representation(tree: SimplicialComplex, verify: bool = True) -> Representation:
    """Grow a tree one leaf at a time with building steps at the parent vertex."""
    if not is_tree(tree):
        raise NotATree("input is not a tree")
    if not tree.ground_is_vertex_set():
        raise GroundNotVertexSet("every ground element must be a vertex")
    vs = tree.vertices
    adj: dict[int, list[int]] = {v: [] for v in vs}
    for f in tree.facets:
        if f.bit_count() == 2:
            a, b = verts(f)
            adj[a].append(b)
            adj[b].append(a)
    root = vs[0]
    order = [root]
    parent = {root: None}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(adj[u]):
            if w not in parent:
                parent[w] = u
                order.append(w)
                queue.append(w)
    index = {v: i for i, v in enumerate(order)}
    rep = point_representation()
    for v in order[1:]:
        p = 1 << index[parent[v]]
        rep = build_cone_over_star(rep, p, p, verify=False)
    # set for original vertex v currently sits at index[v]
    rep = permute_representation(rep, [index[v] for v in range(tree.n)])
    if verify:
        report = verify_representation(rep, tree)
        if not report:
            raise FailedVerification("tree representation does not verify: "
                                     + "; ".join(report.messages))
    return rep


# -- log replay -------------------------------------------------------------------------

def replay(log: list) -> Representation:
    """Rebuild a representation from its construction log."""
    rep = None
    for step in log:
        op, params, constants = step["op"], step.get("params", {}), step.get("constants", {})
        if op == "point":
            rep = point_representation()
        elif op == "two_points":
            rep = two_point_representation()
        elif op == "path":
            rep = path_representation(int(params["m"]))
        elif op == "generic":
            rep = generic_representation(parse_complex(params["complex"]))
        elif op == "cone":
            rep = cone_representation(parse_complex(params["base"]), params.get("apex"))
        elif op == "join":
            rep = join_representation(_need(rep, op), replay(params["right"]))
        elif op == "building":
            sigma = sum(1 << v for v in params["sigma"])
            omega = sum(1 << v for v in params["omega"])
            rep = build_cone_over_star(_need(rep, op), sigma, omega, verify=False)
            got = rep.log[-1]["constants"]
            if got != constants:
                raise FailedVerification(f"replayed constants {got} differ from log {constants}")
        elif op == "permute":
            rep = permute_representation(_need(rep, op), list(params["order"]))
        else:
            raise BadInput(f"unknown construction step {op!r}")
    if rep is None:
        raise BadInput("empty construction log")
    return rep


def _need(rep, op):
    if rep is None:
        raise BadInput(f"step {op!r} needs a preceding representation")
    return rep


def target_of_suspension_power(k: int) -> SimplicialComplex:
    return suspension_power(k)


def target_of_join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    return join(a, b)


__all__ = [
    "point_representation", "two_point_representation", "path_representation",
    "generic_representation", "cone_representation", "join_representation",
    "suspension_power_representation", "build_cone_over_star", "building_target",
    "tree_representation", "permute_representation", "replay", "point", "two_points",
    "box",
]
