"""The N-regular grading of gl(2n) by gl(n) + gl(n): explicit generators of the
coadjoint invariants of the contraction, the covariants xi1^(2i-2), and the
partition arithmetic behind the nilpotent-cone estimate."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactpoly import Poly, PolyMatrix, Scalar
from .liealg import COADJOINT, SymmetricPair, build_symmetric_pair, contract, is_invariant
from .linalg import identity, matmul, mat_pow, nullspace, rank
from .reports import Status, VerificationReport, stopwatch

MAX_N = 3


# -- partitions -----------------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError("parts must be positive")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError("parts must be nonincreasing")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions(total: int, largest: int | None = None):
    """All partitions of ``total`` in reverse lexicographic order."""
    largest = total if largest is None else largest
    if total == 0:
        yield Partition(())
        return
    for first in range(min(total, largest), 0, -1):
        for rest in partitions(total - first, first):
            yield Partition((first,) + rest.parts)


def dual_partition(p: Partition) -> Partition:
    if not p.parts:
        return p
    return Partition(tuple(sum(1 for x in p.parts if x > i) for i in range(p.parts[0])))


def centralizer_dim_from_partition(p: Partition) -> int:
    return sum(x * x for x in dual_partition(p).parts)


def nilpotent_of_type(p: Partition) -> list[list[int]]:
    """Nilpotent matrix in Jordan form with block sizes ``p``."""
    N = p.total
    X = [[0] * N for _ in range(N)]
    start = 0
    for size in p.parts:
        for i in range(start, start + size - 1):
            X[i][i + 1] = 1
        start += size
    return X


def commutant_map(X: list[list[Scalar]], rows: list[tuple[int, int]] | None = None,
                  cols: list[tuple[int, int]] | None = None) -> list[list[Scalar]]:
    """Matrix of ``Y -> [Y, X]`` from span{E_ab : (a,b) in rows} to the entries ``cols``."""
    N = len(X)
    cells = [(a, b) for a in range(N) for b in range(N)]
    rows = cells if rows is None else rows
    cols = cells if cols is None else cols
    out = []
    for (a, b) in rows:
        # [E_ab, X] = E_ab X - X E_ab
        C: dict = {}
        for j in range(N):
            if X[b][j]:
                C[(a, j)] = C.get((a, j), 0) + X[b][j]
        for i in range(N):
            if X[i][a]:
                C[(i, b)] = C.get((i, b), 0) - X[i][a]
        out.append([C.get(c, 0) for c in cols])
    # columns are images of basis vectors
    return [list(r) for r in zip(*out)] if out else []


def centralizer_dim(X: list[list[Scalar]]) -> int:
    """Dimension of the centraliser of ``X`` in gl(N), by brute-force linear algebra."""
    N = len(X)
    return N * N - rank(commutant_map(X))


# -- the N-regular pair ---------------------------------------------------------------

def _check_pair(pair: SymmetricPair):
    if pair.family != "GL" or pair.n != pair.m:
        raise ValueError("N-regular machinery needs the GL pair with equal block sizes")


def _block_cells(n: int):
    N = 2 * n
    g0 = [(a, b) for a in range(N) for b in range(N) if (a < n) == (b < n)]
    g1 = [(a, b) for a in range(N) for b in range(N) if (a < n) != (b < n)]
    return g0, g1


def assemble(A, B) -> list[list[Scalar]]:
    """The g1 element ``[[0, A], [B, 0]]``."""
    n = len(A)
    X = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            X[i][n + j] = A[i][j]
            X[n + i][j] = B[i][j]
    return X


def regular_nilpotent_in_g1(pair: SymmetricPair) -> dict:
    """``B = I`` and ``A`` a single nilpotent Jordan block, as a point of k* (g1 part only)."""
    _check_pair(pair)
    n = pair.n
    A = [[int(j == i + 1) for j in range(n)] for i in range(n)]
    X = assemble(A, identity(n))
    if centralizer_dim(X) != 2 * n:
        raise AssertionError("assembled element is not regular")
    return matrix_to_dual_point(pair, X)


def matrix_to_dual_point(pair: SymmetricPair, X) -> dict:
    """Coordinates ``y_j = tr(X x_j)`` of a matrix seen in g* via the trace form."""
    out = {}
    for lab, Bm in zip(pair.algebra.labels, pair.model.basis):
        out[lab] = sum(x * X[b][a] for (a, b), x in Bm.items())
    return out


def dual_point_to_matrix(pair: SymmetricPair, point: dict) -> list[list[Scalar]]:
    return pair.model.combination([point[l] for l in pair.algebra.labels], pair.model.dual_basis)


@dataclass(frozen=True, eq=False)
class NRegularSystem:
    pair: SymmetricPair
    barred: tuple[Poly, ...]
    hatted: tuple[Poly, ...]

    @property
    def generators(self) -> list[Poly]:
        return list(self.barred) + list(self.hatted)


def _blocks(pair: SymmetricPair):
    X = pair.dual_matrix()
    n = pair.n
    zero = X.zero()
    xi0 = PolyMatrix.build(2 * n, 2 * n, lambda i, j: X[i, j] if (i < n) == (j < n) else zero)
    xi1 = PolyMatrix.build(2 * n, 2 * n, lambda i, j: X[i, j] if (i < n) != (j < n) else zero)
    return xi0, xi1


def _trace_product(P: PolyMatrix, Q: PolyMatrix) -> Poly:
    acc = P.zero()
    for a in range(P.rows):
        for b in range(P.rows):
            if P[a, b] and Q[b, a]:
                acc = acc + P[a, b] * Q[b, a]
    return acc


def hatted_invariants(pair: SymmetricPair, powers) -> list[Poly]:
    """``tr(xi0 xi1^p)`` on k* for each ``p`` in ``powers`` (all even)."""
    xi0, xi1 = _blocks(pair)
    sq = xi1 * xi1
    out = []
    for p in powers:
        if p % 2:
            raise ValueError("odd powers of xi1 leave g0")
        P = identity_poly(xi1) if p == 0 else sq ** (p // 2)
        out.append(_trace_product(xi0, P))
    return out


def identity_poly(M: PolyMatrix) -> PolyMatrix:
    zero, one = M.zero(), M.one()
    return PolyMatrix.build(M.rows, M.rows, lambda i, j: one if i == j else zero)


def nregular_generators(pair: SymmetricPair, check: bool = True) -> NRegularSystem:
    """``tr(xi1^(2i))`` and ``tr(xi0 xi1^(2i-2))`` for ``i = 1..n``."""
    _check_pair(pair)
    n = pair.n
    if n > MAX_N:
        raise ValueError(f"n = {n} exceeds the cap {MAX_N}")
    _, xi1 = _blocks(pair)
    sq = xi1 * xi1
    barred, P = [], sq
    for i in range(1, n + 1):
        barred.append(P.trace())
        if i < n:
            P = P * sq
    hatted = hatted_invariants(pair, [2 * i - 2 for i in range(1, n + 1)])
    system = NRegularSystem(pair, tuple(barred), tuple(hatted))
    if check:
        L = contract(pair).algebra
        if not all(is_invariant(L, f, COADJOINT) for f in system.generators):
            raise RuntimeError("generator is not K-invariant")
    return system


def covariants(X, n: int) -> list[list[list[Scalar]]]:
    """``F_i(xi1) = xi1^(2i-2)``, ``i = 1..n``, numerically."""
    sq = matmul(X, X)
    out = [identity(len(X))]
    for _ in range(n - 1):
        out.append(matmul(out[-1], sq))
    return out


def centralizer_span_check(pair: SymmetricPair, xi1: list[list[Scalar]], label: str = "") -> VerificationReport:
    """Do ``F_1(xi1), ..., F_n(xi1)`` span the centraliser of ``xi1`` in g0?"""
    _check_pair(pair)
    n = pair.n
    cid = f"centralizer-span/gl({n},{n})" + (f"/{label}" if label else "")
    with stopwatch() as ms:
        if centralizer_dim(xi1) != 2 * n:
            return VerificationReport(cid, Status.SKIPPED, {"centralizer_dim": 2 * n},
                                      {"centralizer_dim": centralizer_dim(xi1)},
                                      witness="xi1 is not regular in g", elapsed_ms=ms[0])
        g0, g1 = _block_cells(n)
        A = commutant_map(xi1, g0, g1)
        kernel = nullspace(A, ncols=len(g0))
        Fs = [[F[a][b] for (a, b) in g0] for F in covariants(xi1, n)]
        in_kernel = all(not any(r) for r in matmul(A, [list(c) for c in zip(*Fs)])) if Fs else True
        span = rank(Fs)
        ok = in_kernel and span == len(kernel) == n
    return VerificationReport(cid, Status.PASS if ok else Status.FAIL,
                              expected={"centralizer_dim_g0": n, "span_dim": n},
                              computed={"centralizer_dim_g0": len(kernel), "span_dim": span,
                                        "covariants_commute": in_kernel},
                              witness=";".join(",".join(map(str, r)) for r in xi1), elapsed_ms=ms[0])


def random_regular_g1(n: int, rng: random.Random, bound: int = 20, tries: int = 20) -> list[list[int]]:
    for _ in range(tries):
        A = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        B = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        X = assemble(A, B)
        if centralizer_dim(X) == 2 * n:
            return X
    raise RuntimeError("no regular sample found")


# -- partition arithmetic ------------------------------------------------------------

def uslovie_check(p: Partition, brute_force: bool = False) -> VerificationReport:
    """The nilpotent-cone estimate for the nilpotent of type ``p`` in gl(2n).

    Two independent evaluations: ``1/2 dim g_xi + floor((eta1-1)/2) - 2n + 1`` and
    ``1/2 sum (eta^_i - 1)^2 + (floor((s+1)/2) - s/2)``; they must agree and be >= 0.
    With ``brute_force`` the first also uses a numerically computed centraliser
    dimension and the rank of ``{xi^(2i)}``.
    """
    if p.total % 2:
        raise ValueError("partition of an odd number")
    n = p.total // 2
    d = dual_partition(p)
    s = len(d.parts)
    eta1 = p.parts[0] if p.parts else 0
    with stopwatch() as ms:
        lhs = Fraction(centralizer_dim_from_partition(p), 2) + (eta1 - 1) // 2 - 2 * n + 1
        closed = Fraction(sum((x - 1) ** 2 for x in d.parts), 2) + ((s + 1) // 2 - Fraction(s, 2))
        computed = {"lhs": lhs, "closed_form": closed}
        ok = lhs == closed and closed >= 0
        if brute_force:
            X = nilpotent_of_type(p)
            powers = [[x for r in mat_pow(X, 2 * i) for x in r] for i in range(1, n)]
            direct = Fraction(centralizer_dim(X), 2) + (rank(powers) if powers else 0) - 2 * n + 1
            computed["direct"] = direct
            ok = ok and direct == lhs
    return VerificationReport(f"uslovie/{p}", Status.PASS if ok else Status.FAIL,
                              expected={"nonnegative": True, "agree": True}, computed=computed,
                              elapsed_ms=ms[0])


@lru_cache(maxsize=None)
def _strings(p: int, q: int) -> list[tuple]:
    """Multisets of alternating strings using ``p`` letters a and ``q`` letters b.

    A string is ``(length, first)`` with ``first`` in {"a", "b"}; output is sorted
    tuples so each multiset occurs once.
    """
    kinds = []
    for L in range(1, p + q + 1):
        for first in "ab":
            na = (L + 1) // 2 if first == "a" else L // 2
            kinds.append((L, first, na, L - na))
    out = []

    def rec(start, pa, qb, acc):
        if pa == 0 and qb == 0:
            out.append(tuple(acc))
            return
        for idx in range(start, len(kinds)):
            L, first, na, nb = kinds[idx]
            if na <= pa and nb <= qb:
                rec(idx, pa - na, qb - nb, acc + [(L, first)])

    rec(0, p, q, [])
    return out


def ab_diagram_nilpotent(diagram, p: int, q: int) -> list[list[int]]:
    """Nilpotent element of g1 for gl(p+q) graded by gl(p) + gl(q), built from alternating strings."""
    N = p + q
    X = [[0] * N for _ in range(N)]
    nxt = {"a": 0, "b": p}
    for L, first in diagram:
        letter = first
        prev = None
        for _ in range(L):
            cur = nxt[letter]
            nxt[letter] += 1
            if prev is not None:
                X[cur][prev] = 1  # prev -> cur
            prev = cur
            letter = "b" if letter == "a" else "a"
    return X


def nilpotent_cone_bound_check(p: int, q: int) -> VerificationReport:
    """For every nilpotent G0-orbit in g1 of gl(p+q): ``rk g <= dim g1_xi + dim span``
    of the covariants ``xi^(2i)``, ``i = 0..l-k-1``, evaluated at xi."""
    N = p + q
    k = min(p, q)
    count = N - k
    g0 = [(a, b) for a in range(N) for b in range(N) if (a < p) == (b < p)]
    g1 = [(a, b) for a in range(N) for b in range(N) if (a < p) != (b < p)]
    worst = None
    with stopwatch() as ms:
        for diagram in _strings(p, q):
            X = ab_diagram_nilpotent(diagram, p, q)
            dim_g1_xi = len(g1) - rank(commutant_map(X, g1, g0))
            sq = matmul(X, X)
            pw, vecs = identity(N), []
            for _ in range(count):
                vecs.append([pw[a][b] for (a, b) in g0])
                pw = matmul(pw, sq)
            slack = dim_g1_xi + rank(vecs) - N
            if worst is None or slack < worst[0]:
                worst = (slack, diagram)
    ok = worst[0] >= 0
    return VerificationReport(f"nilcone-bound/gl({p},{q})", Status.PASS if ok else Status.FAIL,
                              expected={"min_slack_nonnegative": True},
                              computed={"min_slack": worst[0], "orbits": len(_strings(p, q))},
                              witness=" ".join(f"{f}{L}" for L, f in worst[1]), elapsed_ms=ms[0])


def build_nregular_pair(n: int) -> SymmetricPair:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must lie in 1..{MAX_N}")
    return build_symmetric_pair("GL", n, n)
