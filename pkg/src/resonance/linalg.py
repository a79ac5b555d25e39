"""Exact rational linear algebra and sign-vector enumeration.

Everything here works over ``fractions.Fraction`` or plain ints; floats only
appear inside :func:`positive_orthogonal_weight`, whose answer is verified
exactly before it is returned.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple[int, ...]


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = [[Fraction(v) for v in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(vectors: Iterable[Sequence], ncols: int) -> int:
    return len(rref(vectors, ncols)[1])


def primitive(vec: Sequence) -> Vector:
    """Scale a rational vector to coprime integers with positive leading entry."""
    fr = [Fraction(v) for v in vec]
    den = reduce(lcm, (f.denominator for f in fr), 1)
    ints = [int(f * den) for f in fr]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def nullspace(rows: Iterable[Sequence], ncols: int) -> list[Vector]:
    """Integer basis of {y : <r, y> = 0 for every row r}.

    One basis vector per free column of the RREF, in column order, each made
    primitive with a positive leading coefficient.
    """
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        y = [Fraction(0)] * ncols
        y[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            y[pc] = -row[f]
        basis.append(primitive(y))
    return basis


def in_span(vec: Sequence, red: list[list[Fraction]], pivots: list[int]) -> bool:
    """Membership of ``vec`` in the row space described by an RREF."""
    v = [Fraction(x) for x in vec]
    for row, pc in zip(red, pivots):
        if v[pc] != 0:
            f = v[pc]
            v = [a - f * b for a, b in zip(v, row)]
    return not any(v)


def sign_vectors_orthogonal(constraints: Sequence[Sequence[int]], n: int) -> list[Vector]:
    """All x in {-1,0,1}^n with <c, x> = 0 for every integer vector c.

    Depth-first over coordinates; a branch is cut as soon as some partial
    sum can no longer be cancelled by the remaining coordinates.
    """
    cons = [tuple(int(v) for v in c) for c in constraints if any(c)]
    if not cons:
        return _all_sign_vectors(n)
    k = len(cons)
    # slack[j][i] = sum_{t >= i} |c_j[t]|
    slack = []
    for c in cons:
        tail = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            tail[i] = tail[i + 1] + abs(c[i])
        slack.append(tail)
    cols = [tuple(c[i] for c in cons) for i in range(n)]
    out: list[Vector] = []
    x = [0] * n

    def rec(i: int, sums: list[int]) -> None:
        if i == n:
            if not any(sums):
                out.append(tuple(x))
            return
        col = cols[i]
        for s in (0, 1, -1):
            new = [sums[j] + s * col[j] for j in range(k)]
            if all(abs(new[j]) <= slack[j][i + 1] for j in range(k)):
                x[i] = s
                rec(i + 1, new)
        x[i] = 0

    rec(0, [0] * k)
    return out


def _all_sign_vectors(n: int) -> list[Vector]:
    out: list[Vector] = [()]
    for _ in range(n):
        out = [v + (s,) for v in out for s in (0, 1, -1)]
    return out


def positive_orthogonal_weight(vectors: Sequence[Sequence[int]], n: int) -> Vector | None:
    """A strictly positive integer vector orthogonal to every given vector.

    The search runs a float LP over coefficients of an exact integer basis
    of the orthogonal complement, so orthogonality holds by construction and
    only positivity of the rounded answer has to be re-checked.
    """
    basis = nullspace(vectors, n) if vectors else [tuple(int(i == j) for j in range(n)) for i in range(n)]
    if not basis:
        return None
    ones = tuple(1 for _ in range(n))
    if all(sum(a * b for a, b in zip(v, ones)) == 0 for v in vectors):
        return ones
    from scipy.optimize import linprog

    k = len(basis)
    # minimise nothing; require sum_j c_j basis_j[i] >= 1 for every i
    a_ub = [[-basis[j][i] for j in range(k)] for i in range(n)]
    res = linprog(c=[0.0] * k, A_ub=a_ub, b_ub=[-1.0] * n, bounds=[(None, None)] * k, method="highs")
    if res.status != 0:
        return None
    for denom in (1, 10, 100, 1000, 10**6):
        coef = [Fraction(c).limit_denominator(denom) for c in res.x]
        w = [sum(coef[j] * basis[j][i] for j in range(k)) for i in range(n)]
        if all(v > 0 for v in w):
            return primitive(w)
    return None
