"""Exact linear algebra over the rationals.

Rank uses Bareiss fraction-free elimination on an integer-scaled copy, so no
``Fraction`` arithmetic happens in the hot loop.  Null spaces use reduced row
echelon form over ``Fraction``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm
from typing import Sequence

from .exactpoly import Scalar, _norm


def _integer_rows(rows: Sequence[Sequence[Scalar]]) -> list[list[int]]:
    out = []
    for r in rows:
        den = 1
        for x in r:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    A = _integer_rows(rows)
    if not A:
        return 0
    m, n = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
        pr = A[r]
        p = pr[c]
        for i in range(r + 1, m):
            row = A[i]
            a = row[c]
            if a:
                for j in range(c + 1, n):
                    row[j] = (p * row[j] - a * pr[j]) // prev
            else:
                for j in range(c + 1, n):
                    row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        r += 1
    return r


def rref(rows: Sequence[Sequence[Scalar]]) -> tuple[list[list[Fraction]], list[int]]:
    A = [[Fraction(x) for x in r] for r in rows]
    if not A:
        return A, []
    m, n = len(A), len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{v : A v = 0}``."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    n = len(rows[0])
    R, pivots = rref(rows)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][f]
        basis.append(v)
    return basis


def det(rows: Sequence[Sequence[Scalar]]) -> Scalar:
    A = [[Fraction(x) for x in r] for r in rows]
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    acc = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        acc *= A[c][c]
        inv = 1 / A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] * inv
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return _norm(acc * sign)


def matmul(A, B):
    return [[sum(a * b for a, b in zip(r, col)) for col in zip(*B)] for r in A]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_pow(A, e: int):
    out = identity(len(A))
    for _ in range(e):
        out = matmul(out, A)
    return out


# Sampling range for random points: integers in [-B, B].
SAMPLE_BOUND = 10**4


def random_point(names: Sequence[str], rng: random.Random, bound: int = SAMPLE_BOUND) -> dict[str, int]:
    return {nm: rng.randint(-bound, bound) for nm in names}


def schwartz_zippel_bound(total_degree: int, bound: int = SAMPLE_BOUND) -> Fraction:
    """Probability that a nonzero polynomial of the given degree vanishes at a random point."""
    return Fraction(total_degree, 2 * bound + 1)
