"""Polytope collections realizing a complex, with a certificate for their union."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..complex import Code, SimplicialComplex, verts
from ..errors import BadInput, CapacityExceeded, ParseError
from .lp import Q, qstr
from .nerve import convex_hull_of_union, covers, covers_interior, nerve_of_collection
from .polytope import HPolytope, Polytope, contains, hpoly, intersect, to_h, vpoly

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class UnionCertificate:
    kind: str  # "bounding" | "explicit" | "none"
    index: int | None = None
    polytope: HPolytope | None = None

    @classmethod
    def bounding(cls, i: int) -> "UnionCertificate":
        return cls("bounding", index=i)

    @classmethod
    def explicit(cls, q: HPolytope) -> "UnionCertificate":
        return cls("explicit", polytope=q)

    @classmethod
    def none(cls) -> "UnionCertificate":
        return cls("none")


@dataclass
class Representation:
    dim: int
    sets: list
    union: UnionCertificate = field(default_factory=UnionCertificate.none)
    log: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.sets)

    def union_polytope(self) -> HPolytope | None:
        """The convex union asserted by the certificate (None for NONE)."""
        if self.union.kind == "bounding":
            return to_h(self.sets[self.union.index])
        if self.union.kind == "explicit":
            return self.union.polytope
        return None

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "sets": [_poly_json(s) for s in self.sets],
            "union": _union_json(self.union),
            "log": self.log,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data: dict) -> "Representation":
        try:
            dim = int(data["dim"])
            sets = [_poly_from(s, dim) for s in data["sets"]]
            union = _union_from(data.get("union", "none"), dim, len(sets))
            return cls(dim, sets, union, list(data.get("log", [])))
        except (KeyError, TypeError, ValueError, BadInput) as exc:
            raise ParseError(f"bad representation: {exc}") from exc

    @classmethod
    def loads(cls, text: str) -> "Representation":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from exc
        return cls.from_json(data)

    def save(self, path) -> None:
        Path(path).write_text(self.dumps() + "\n")

    @classmethod
    def load(cls, path) -> "Representation":
        return cls.loads(Path(path).read_text())


def _poly_json(p: Polytope) -> dict:
    if isinstance(p, HPolytope):
        return {"type": "H", "rows": [[qstr(v) for v in a] + [qstr(b)] for a, b in p.rows]}
    return {"type": "V", "points": [[qstr(v) for v in pt] for pt in p.points]}


def _poly_from(obj: dict, dim: int) -> Polytope:
    if obj["type"] == "H":
        return hpoly(dim, [([Q(v) for v in r[:-1]], Q(r[-1])) for r in obj["rows"]])
    if obj["type"] == "V":
        return vpoly(dim, [[Q(v) for v in pt] for pt in obj["points"]])
    raise ValueError(f"unknown polytope type {obj['type']!r}")


def _union_json(u: UnionCertificate) -> Any:
    if u.kind == "bounding":
        return f"bounding:{u.index}"
    if u.kind == "explicit":
        return {"explicit": _poly_json(u.polytope)}
    return "none"


def _union_from(obj, dim: int, n: int) -> UnionCertificate:
    if obj == "none":
        return UnionCertificate.none()
    if isinstance(obj, str) and obj.startswith("bounding:"):
        i = int(obj.split(":", 1)[1])
        if not 0 <= i < n:
            raise ValueError(f"bounding index {i} out of range")
        return UnionCertificate.bounding(i)
    if isinstance(obj, dict) and "explicit" in obj:
        q = _poly_from(obj["explicit"], dim)
        return UnionCertificate.explicit(to_h(q))
    raise ValueError(f"bad union certificate {obj!r}")


# -- verification -----------------------------------------------------------------

@dataclass
class VerifyReport:
    ok: bool = False
    nerve_ok: bool | None = None
    union_ok: bool | None = None
    nerve: SimplicialComplex | None = None
    messages: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def text(self) -> str:
        head = "true" if self.ok else "false"
        return "\n".join([head] + [f"  {m}" for m in self.messages])


def verify_representation(rep: Representation, cx: SimplicialComplex) -> VerifyReport:
    """Check that the nerve of ``rep.sets`` is ``cx`` and that the union is convex."""
    report = VerifyReport()
    try:
        _verify(rep, cx, report)
    except CapacityExceeded as exc:
        report.messages.append(f"capacity exceeded: {exc}")
        exc.report = report
        raise
    report.ok = bool(report.nerve_ok and report.union_ok)
    return report


def _verify(rep: Representation, cx: SimplicialComplex, report: VerifyReport) -> None:
    for s in rep.sets:
        if s.dim != rep.dim:
            report.nerve_ok = report.union_ok = False
            report.messages.append("a set lives in the wrong dimension")
            return
    nerve = nerve_of_collection(rep.sets)
    report.nerve = nerve
    if rep.n != cx.n:
        report.nerve_ok = False
        report.messages.append(f"{rep.n} sets for a ground set of size {cx.n}")
    else:
        report.nerve_ok = nerve.facets == cx.facets
        if not report.nerve_ok:
            report.messages.append(f"nerve is {nerve}, expected {cx}")
    kind = rep.union.kind
    if kind == "bounding":
        big = rep.sets[rep.union.index]
        bad = [i for i, s in enumerate(rep.sets) if i != rep.union.index and not contains(big, s)]
        report.union_ok = not bad
        if bad:
            report.messages.append(f"bounding set {rep.union.index} misses sets {bad}")
        return
    if kind == "explicit":
        q = rep.union.polytope
    else:
        q = convex_hull_of_union(rep.sets, rep.dim)
        if q is None:
            report.union_ok = True
            return
    bad = [i for i, s in enumerate(rep.sets) if not contains(q, s)]
    if bad:
        report.union_ok = False
        report.messages.append(f"sets {bad} stick out of the claimed union")
        return
    report.union_ok = covers(q, rep.sets)
    if not report.union_ok:
        report.messages.append("the sets do not cover their claimed union")


# -- codes --------------------------------------------------------------------------

def code_of_representation(rep: Representation) -> Code:
    """Codewords whose region has nonempty interior.

    ``σ`` is a codeword when the intersection of the sets in ``σ`` minus the
    sets outside ``σ`` contains an open ball; the empty word uses the convex
    hull of the union in place of the intersection.  Sets are expected to be
    in general position, so that these regions are full-dimensional or empty.
    A union certificate is taken at its word.
    """
    n = rep.n
    hs = [to_h(s) for s in rep.sets]
    # a union certificate names the union itself, which is then its own hull;
    # the certificate is trusted here (run verify_representation first)
    hull = rep.union_polytope()
    if hull is None:
        hull = convex_hull_of_union(rep.sets, rep.dim)
    if hull is None:
        log.warning("all sets are empty; returning the empty code")
        return Code(n, frozenset())
    words = set()
    if not covers_interior(hull, hs):
        words.add(0)
    nerve = nerve_of_collection(rep.sets)
    for sigma in nerve.face_masks():
        if not sigma:
            continue
        region = hs[verts(sigma)[0]]
        for i in verts(sigma)[1:]:
            region = intersect(region, hs[i])
        others = [hs[j] for j in range(n) if not sigma >> j & 1]
        if not covers_interior(region, others):
            words.add(sigma)
    return Code(n, frozenset(words))


def describe(rep: Representation) -> str:
    kinds = "".join("H" if isinstance(s, HPolytope) else "V" for s in rep.sets)
    union = "explicit" if rep.union.kind == "explicit" else _union_json(rep.union)
    return f"{rep.n} sets in R^{rep.dim} ({kinds}), union {union}"

