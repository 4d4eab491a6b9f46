"""Generators of small complexes shared by the tests."""
from __future__ import annotations

import random

from hypothesis import strategies as st

from curkit.complex import SimplicialComplex, verts


def all_complexes(n: int) -> list[SimplicialComplex]:
    """Every complex on ground {0..n-1}, void and {∅} included (Dedekind many)."""
    nonempty = sorted(range(1, 1 << n), key=lambda m: (m.bit_count(), m))
    out = [SimplicialComplex.from_masks(n, [])]

    def extend(idx, chosen):
        if idx == len(nonempty):
            out.append(SimplicialComplex.from_masks(n, list(chosen) + [0]))
            return
        m = nonempty[idx]
        extend(idx + 1, chosen)
        if all(m & ~(1 << v) in chosen or m & ~(1 << v) == 0 for v in verts(m)):
            chosen.add(m)
            extend(idx + 1, chosen)
            chosen.discard(m)

    extend(0, set())
    return out


def random_complex(rng: random.Random, n: int, k: int | None = None, full_ground=False):
    """Down-closure of k random faces; optionally forced to use every ground element."""
    if k is None:
        k = rng.randint(1, 6)
    faces = [rng.randrange(1, 1 << n) for _ in range(k)]
    if full_ground:
        covered = 0
        for f in faces:
            covered |= f
        faces += [1 << v for v in range(n) if not covered >> v & 1]
    return SimplicialComplex.from_masks(n, faces)


def random_expansion(rng: random.Random, n: int, steps: int) -> SimplicialComplex:
    """A collapsible complex grown from a vertex by random elementary expansions."""
    faces = {0, 1}
    for _ in range(steps):
        fs = list(faces)
        for _ in range(50):
            base = rng.choice(fs)
            free = [v for v in range(n) if not base >> v & 1]
            if len(free) < 2:
                continue
            a, b = rng.sample(free, 2)
            sigma, tau = base | 1 << a, base | 1 << a | 1 << b
            if sigma in faces or tau in faces:
                continue
            others = [tau & ~(1 << v) for v in verts(tau) if tau & ~(1 << v) != sigma]
            if all(o in faces for o in others) and all(sigma & ~(1 << v) in faces for v in verts(sigma)):
                faces |= {sigma, tau}
                break
    return SimplicialComplex.from_masks(n, faces)


@st.composite
def complexes(draw, max_n: int = 5, min_n: int = 1):
    n = draw(st.integers(min_n, max_n))
    faces = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=0, max_size=6))
    return SimplicialComplex.from_masks(n, faces)


@st.composite
def complexes_on_vertices(draw, max_n: int = 5):
    """Complexes whose ground set is exactly the vertex set."""
    cx = draw(complexes(max_n=max_n))
    faces = list(cx.facets) + [1 << v for v in range(cx.n)]
    return SimplicialComplex.from_masks(cx.n, faces)
