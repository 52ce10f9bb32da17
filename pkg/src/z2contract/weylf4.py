"""Weyl group invariants of F4 on the Cartan subspace of the pair (F4, B4).

Coordinates are e1..e4 (the standard basis of R^4); e1 spans the Cartan
subspace c of g1 and e2, e3, e4 span the Cartan subalgebra of the generic
stabiliser, so the bi-degree of a monomial is (degree in e2..e4, degree in e1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .exactpoly import BiDegree, Part, Poly, VarSpace, jacobian_rank_at
from .linalg import identity, matmul, random_point
from .reports import Status, VerificationReport, stopwatch

VARS = VarSpace(("e1", "e2", "e3", "e4"), (Part.ONE, Part.ZERO, Part.ZERO, Part.ZERO))

# simple roots in the e-basis
SIMPLE_ROOTS = (
    (Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2)),
    (0, 0, 0, 1),
    (0, 0, 1, -1),
    (0, 1, -1, 0),
)

# generic stabiliser B3 and the g1 of (F4, B4)
S_DIM, S_RANK, DIM_G1 = 21, 3, 16
WEYL_ORDER = 1152


@dataclass(frozen=True)
class ReflectionMap:
    matrix: tuple[tuple[Fraction, ...], ...]

    def apply(self, v):
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.matrix)

    def is_involution(self) -> bool:
        return matmul(self.matrix, self.matrix) == identity(4)

    def is_orthogonal(self) -> bool:
        T = [list(r) for r in zip(*self.matrix)]
        return matmul(T, self.matrix) == identity(4)

    def pull_back(self, p: Poly) -> Poly:
        """``p o s``, i.e. ``p(s v)``."""
        es = VARS.vars()
        images = {}
        for i, row in enumerate(self.matrix):
            acc = VARS.zero()
            for a, e in zip(row, es):
                if a:
                    acc = acc + e * a
            images[VARS.names[i]] = acc
        return p.subs(images)


def reflection(alpha) -> ReflectionMap:
    alpha = [Fraction(a) for a in alpha]
    norm = sum(a * a for a in alpha)
    rows = []
    for i in range(4):
        rows.append(tuple(Fraction(int(i == j)) - 2 * alpha[i] * alpha[j] / norm for j in range(4)))
    return ReflectionMap(tuple(rows))


def f4_simple_reflections() -> list[ReflectionMap]:
    return [reflection(a) for a in SIMPLE_ROOTS]


def d4_basic_invariants() -> tuple[Poly, Poly, Poly, Poly]:
    """``(f2, f4', f4, f6)``: squared norm, product, and the elementary symmetric
    functions of degree 2 and 3 in the squares."""
    e = VARS.vars()
    sq = [x * x for x in e]
    zero = VARS.zero()
    f2 = sum(sq, zero)
    f4p = e[0] * e[1] * e[2] * e[3]
    f4 = sum((sq[i] * sq[j] for i, j in combinations(range(4), 2)), zero)
    f6 = sum((sq[i] * sq[j] * sq[k] for i, j, k in combinations(range(4), 3)), zero)
    return f2, f4p, f4, f6


def f4_good_generators() -> tuple[Poly, Poly, Poly, Poly]:
    f2, f4p, f4, f6 = d4_basic_invariants()
    g2 = f2
    g6 = f6 - f2 * f4 * Fraction(1, 6)
    g8 = f4p**2 + f4**2 * Fraction(1, 12) - f2 * f6 * Fraction(1, 4)
    g12 = (f4p**2 * f4 * 4 - f6**2 * Fraction(3, 2) - f4p**2 * f2**2 * Fraction(3, 2)
           - f4**3 * Fraction(1, 9) + f2 * f4 * f6 * Fraction(1, 2))
    return g2, g6, g8, g12


def expected_highest_components() -> tuple[Poly, Poly, Poly, Poly]:
    """The closed forms claimed for the e1-highest components of g2, g6, g8, g12."""
    e1, e2, e3, e4 = VARS.vars()
    S = e2**2 + e3**2 + e4**2
    P = e2**2 * e3**2 + e2**2 * e4**2 + e3**2 * e4**2
    Q = e2**2 * e3**2 * e4**2
    return (
        e1**2,
        e1**4 * S,
        e1**4 * (S**2 * Fraction(1, 12) - P * Fraction(1, 4)),
        e1**6 * (Q * Fraction(-3, 2) - S**3 * Fraction(1, 9) + S * P * Fraction(1, 2)),
    )


def highest_components() -> list[Poly]:
    return [g.top_component() for g in f4_good_generators()]


def proportionality(p: Poly, q: Poly):
    """``c`` with ``p = c q``, or ``None``."""
    if not q or set(p.terms) != set(q.terms):
        return None
    k = next(iter(q.terms))
    c = Fraction(p.terms[k]) / Fraction(q.terms[k])
    return c if p == q.scale(c) else None


NAMES = ("g2", "g6", "g8", "g12")


def check_invariance() -> VerificationReport:
    with stopwatch() as ms:
        refl = f4_simple_reflections()
        bad = [f"{nm} under s{i + 1}" for nm, g in zip(NAMES, f4_good_generators())
               for i, s in enumerate(refl) if s.pull_back(g) != g]
    return VerificationReport("f4/invariance", Status.FAIL if bad else Status.PASS,
                              expected={"fixed_by_all_simple_reflections": True},
                              computed={"failures": bad}, witness="; ".join(bad) or None, elapsed_ms=ms[0])


def check_highest_components() -> VerificationReport:
    with stopwatch() as ms:
        got = highest_components()
        want = expected_highest_components()
        mismatches = {}
        for nm, p, q in zip(NAMES, got, want):
            if p != q:
                mismatches[nm] = {"computed": p, "expected": q, "ratio": proportionality(p, q)}
    witness = "; ".join(f"{nm}: {v['computed'].to_text()}" for nm, v in mismatches.items()) or None
    return VerificationReport("f4/highest-components", Status.FAIL if mismatches else Status.PASS,
                              expected={nm: q for nm, q in zip(NAMES, want)},
                              computed={"mismatches": mismatches}, witness=witness, elapsed_ms=ms[0])


def check_independence(seed: int = 0) -> VerificationReport:
    with stopwatch() as ms:
        tops = highest_components()
        rng = random.Random(seed)
        pt = random_point(VARS.names, rng)
        r = jacobian_rank_at(tops, pt)
    return VerificationReport("f4/independence", Status.PASS if r == 4 else Status.FAIL,
                              expected={"jacobian_rank": 4}, computed={"jacobian_rank": r},
                              witness=",".join(f"{k}={v}" for k, v in pt.items()), elapsed_ms=ms[0])


F4_BIDEGREES = [BiDegree(0, 2), BiDegree(2, 4), BiDegree(4, 4), BiDegree(6, 6)]


def check_bidegrees() -> VerificationReport:
    with stopwatch() as ms:
        bd = [p.bidegree() for p in highest_components()]
    return VerificationReport("f4/bidegrees", Status.PASS if bd == F4_BIDEGREES else Status.FAIL,
                              expected={"bidegrees": F4_BIDEGREES}, computed={"bidegrees": bd}, elapsed_ms=ms[0])


def f4_verify(seed: int = 0) -> list[VerificationReport]:
    return [check_invariance(), check_highest_components(), check_independence(seed), check_bidegrees()]


def weyl_group_f4() -> list[tuple]:
    """All elements of W(F4), by closure under the simple reflections."""
    gens = [s.matrix for s in f4_simple_reflections()]
    start = tuple(tuple(Fraction(x) for x in r) for r in identity(4))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(tuple(r) for r in matmul(s, g))
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return sorted(seen)


def full_group_invariance(points: int = 3, seed: int = 0) -> bool:
    """Numeric check of g(w v) = g(v) for every w in W(F4) at random points."""
    rng = random.Random(seed)
    gens = f4_good_generators()
    group = weyl_group_f4()
    for _ in range(points):
        v = [rng.randint(-50, 50) for _ in range(4)]
        vals = [g.evaluate(v) for g in gens]
        for w in group:
            wv = [sum(a * x for a, x in zip(row, v)) for row in w]
            if [g.evaluate(wv) for g in gens] != vals:
                return False
    return True


def reflection_words(max_len: int = 3):
    refl = f4_simple_reflections()
    for k in range(1, max_len + 1):
        yield from product(refl, repeat=k)
