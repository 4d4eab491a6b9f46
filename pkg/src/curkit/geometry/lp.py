"""Exact rational linear programming.

A dense two-phase tableau simplex with Bland's anti-cycling rule.  Every
number is a ``gmpy2.mpq``; nothing is ever rounded.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

from ..errors import BadInput

ZERO = mpq(0)
ONE = mpq(1)


def Q(x) -> mpq:
    """Coerce an int, ``Fraction``, ``mpq`` or ``"p/q"`` string to ``mpq``."""
    if isinstance(x, mpq):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, (int, str)):
        return mpq(x)
    raise BadInput(f"not an exact rational: {x!r}")


def qstr(x: mpq) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list | None = None
    value: mpq | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


def _pivot(rows, obj, basis, r, c):
    prow = rows[r]
    p = prow[c]
    if p != 1:
        prow = [v / p for v in prow]
        rows[r] = prow
    nz = [k for k, v in enumerate(prow) if v]
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[c]
        if f:
            for k in nz:
                row[k] -= f * prow[k]
    f = obj[c]
    if f:
        for k in nz:
            obj[k] -= f * prow[k]
    basis[r] = c


def _iterate(rows, obj, basis, allowed):
    """Minimize; ``obj`` holds reduced costs and -value in its last slot."""
    while True:
        enter = -1
        for j in allowed:
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal"
        best = -1
        best_ratio = None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if (best < 0 or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[best])):
                    best, best_ratio = i, ratio
        if best < 0:
            return "unbounded"
        _pivot(rows, obj, basis, best, enter)


def _standard(A, b, c, unit_cols):
    """Minimize c.y s.t. A y = b, y >= 0.

    ``unit_cols[i]`` is a column that is the i-th unit vector (or -1); rows
    without one get an artificial variable.  Requires b >= 0.
    """
    m = len(A)
    nvar = len(c)
    art_rows = [i for i in range(m) if unit_cols[i] < 0]
    ncol = nvar + len(art_rows)
    rows = []
    basis = []
    art_index = {}
    for k, i in enumerate(art_rows):
        art_index[i] = nvar + k
    for i in range(m):
        row = list(A[i]) + [ZERO] * len(art_rows) + [b[i]]
        if i in art_index:
            row[art_index[i]] = ONE
            basis.append(art_index[i])
        else:
            basis.append(unit_cols[i])
        rows.append(row)
    real = range(nvar)
    if art_rows:
        obj = [ZERO] * (ncol + 1)
        for i in art_rows:
            row = rows[i]
            for k in range(nvar):
                if row[k]:
                    obj[k] -= row[k]
            obj[-1] -= row[-1]
        _iterate(rows, obj, basis, real)
        if obj[-1] != 0:
            return "infeasible", None, None
        # drive remaining artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(rows):
            if basis[i] >= nvar:
                col = next((k for k in real if rows[i][k]), None)
                if col is None:
                    del rows[i]
                    del basis[i]
                    continue
                _pivot(rows, obj, basis, i, col)
            i += 1
        for row in rows:
            del row[nvar:ncol]
    obj = list(c) + [ZERO]
    for i, row in enumerate(rows):
        cb = c[basis[i]]
        if cb:
            for k, v in enumerate(row):
                if v:
                    obj[k] -= cb * v
    status = _iterate(rows, obj, basis, real)
    if status == "unbounded":
        return status, None, None
    y = [ZERO] * nvar
    for i, col in enumerate(basis):
        y[col] = rows[i][-1]
    return "optimal", y, -obj[-1]


def solve(c: Sequence, ub: Sequence = (), eq: Sequence = (), nonneg=(),
          maximize: bool = True) -> LPResult:
    """Optimize ``c.z`` subject to ``a.z <= b`` (ub) and ``a.z == b`` (eq).

    Variables are free unless their index is in ``nonneg``.  Constraints are
    ``(coefficients, rhs)`` pairs.
    """
    nz = len(c)
    for a, _ in list(ub) + list(eq):
        if len(a) != nz:
            raise BadInput(f"constraint has {len(a)} coefficients, expected {nz}")
    nonneg = set(nonneg)
    # column layout: one column per nonneg var, two (plus, minus) per free var
    cols: list[tuple[int, int]] = []
    where: list[list[int]] = []
    for k in range(nz):
        if k in nonneg:
            where.append([len(cols)])
            cols.append((k, 1))
        else:
            where.append([len(cols), len(cols) + 1])
            cols.append((k, 1))
            cols.append((k, -1))
    nbase = len(cols)
    nslack = len(ub)
    width = nbase + nslack
    A, b, units = [], [], []
    for i, (a, rhs) in enumerate(ub):
        rhs = Q(rhs)
        row = [ZERO] * width
        for j, (k, sgn) in enumerate(cols):
            v = a[k]
            if v:
                row[j] = Q(v) * sgn
        row[nbase + i] = ONE
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
            units.append(-1)
        else:
            units.append(nbase + i)
        A.append(row)
        b.append(rhs)
    for a, rhs in eq:
        rhs = Q(rhs)
        row = [ZERO] * width
        for j, (k, sgn) in enumerate(cols):
            v = a[k]
            if v:
                row[j] = Q(v) * sgn
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        A.append(row)
        b.append(rhs)
        units.append(-1)
    sign = -1 if maximize else 1
    cost = [ZERO] * width
    for j, (k, s) in enumerate(cols):
        v = c[k]
        if v:
            cost[j] = Q(v) * s * sign
    status, y, val = _standard(A, b, cost, units)
    if status != "optimal":
        return LPResult(status)
    z = []
    for k in range(nz):
        w = where[k]
        z.append(y[w[0]] - y[w[1]] if len(w) == 2 else y[w[0]])
    value = sum((Q(c[k]) * z[k] for k in range(nz)), ZERO)
    _check(z, ub, eq)
    return LPResult("optimal", z, value)


def _check(z, ub, eq):
    for a, rhs in ub:
        if sum((Q(ai) * zi for ai, zi in zip(a, z) if ai), ZERO) > Q(rhs):
            raise AssertionError("LP witness violates an inequality")
    for a, rhs in eq:
        if sum((Q(ai) * zi for ai, zi in zip(a, z) if ai), ZERO) != Q(rhs):
            raise AssertionError("LP witness violates an equality")


def lp_feasible(rows: Sequence, strict_rows=(), dim: int | None = None):
    """A point with ``a.x <= b`` for all rows (``<`` for rows in ``strict_rows``).

    Strict feasibility maximizes a margin ``s <= 1`` added to the strict rows;
    the system is strictly feasible iff the optimum is positive.  Returns the
    exact witness, or ``None``.
    """
    if dim is None:
        if not rows:
            raise BadInput("cannot infer dimension from an empty system")
        dim = len(rows[0][0])
    for a, _ in rows:
        if len(a) != dim:
            raise BadInput(f"row of length {len(a)} in dimension {dim}")
    strict = set(strict_rows)
    if not strict:
        res = solve([ZERO] * dim, ub=rows)
        return res.x if res.feasible else None
    ext = []
    for i, (a, rhs) in enumerate(rows):
        ext.append((list(a) + [ONE if i in strict else ZERO], rhs))
    ext.append(([ZERO] * dim + [ONE], ONE))
    res = solve([ZERO] * dim + [ONE], ub=ext)
    if res.status != "optimal" or res.value <= 0:
        return None
    return res.x[:dim]
