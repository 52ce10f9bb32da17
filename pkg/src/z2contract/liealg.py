"""Lie algebras by structure constants, classical matrix models, symmetric pairs
and their Z2-contractions, invariance derivations and index computations."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .exactpoly import Part, Poly, PolyMatrix, Scalar, VarSpace, _norm, as_scalar, scalar_text
from .linalg import nullspace, random_point, rank, rref
from .reports import Status, VerificationReport, stopwatch

DEFAULT_SIZE_CAP = 10

ADJOINT = "adjoint"
COADJOINT = "coadjoint"


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Basis labels plus sparse structure constants ``[x_i, x_j] = sum_k c_ij^k x_k``."""

    labels: tuple[str, ...]
    brackets: Mapping[tuple[int, int], tuple[tuple[int, Scalar], ...]]
    parts: tuple[Part, ...] | None = None
    name: str = ""
    model: "MatrixModel | None" = field(default=None, repr=False)

    @classmethod
    def from_constants(cls, labels, constants, **kw) -> "LieAlgebra":
        """Build from ``{(i, j): {k: c}}`` given for ``i < j`` (or either order, consistently)."""
        br: dict = {}
        for (i, j), comps in constants.items():
            items = tuple((k, as_scalar(c)) for k, c in sorted(dict(comps).items()) if c)
            if not items:
                continue
            if i == j:
                raise ValueError("[x_i, x_i] must vanish")
            br[(i, j)] = items
            neg = tuple((k, -c) for k, c in items)
            if (j, i) in br and br[(j, i)] != neg:
                raise ValueError(f"constants for ({i},{j}) are not antisymmetric")
            br[(j, i)] = neg
        return cls(tuple(labels), br, **kw)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def bracket(self, i: int, j: int) -> tuple:
        return self.brackets.get((i, j), ())

    def bracket_vectors(self, u: Sequence, v: Sequence) -> list:
        out = [0] * self.dim
        for (i, j), comps in self.brackets.items():
            a, b = u[i], v[j]
            if a and b:
                ab = a * b
                for k, c in comps:
                    out[k] += ab * c
        return out

    @cached_property
    def varspace(self) -> VarSpace:
        parts = self.parts or (Part.ZERO,) * self.dim
        return VarSpace(self.labels, parts)

    @cached_property
    def _ad_rows(self) -> list[list[tuple[int, tuple]]]:
        rows: list = [[] for _ in range(self.dim)]
        for (i, j), comps in sorted(self.brackets.items()):
            rows[i].append((j, comps))
        return rows

    @cached_property
    def _ad_cols(self) -> list[dict]:
        # for each i: k -> [(j, c_ij^k)]
        cols: list = [dict() for _ in range(self.dim)]
        for (i, j), comps in sorted(self.brackets.items()):
            for k, c in comps:
                cols[i].setdefault(k, []).append((j, c))
        return cols

    def indices(self, part: Part) -> list[int]:
        parts = self.parts or (Part.ZERO,) * self.dim
        return [i for i, p in enumerate(parts) if p is part]

    def structure_constant_lines(self) -> list[str]:
        """Export format: ``"i j k num/den"``, 0-based, one line per nonzero constant with ``i < j``."""
        lines = []
        for (i, j) in sorted(self.brackets):
            if i < j:
                for k, c in self.brackets[(i, j)]:
                    lines.append(f"{i} {j} {k} {scalar_text(c)}")
        return lines



def parse_structure_constants(labels: Sequence[str], lines: Sequence[str], **kw) -> LieAlgebra:
    consts: dict = {}
    for ln in lines:
        ln = ln.strip()
        if not ln:
            continue
        i, j, k, c = ln.split()
        consts.setdefault((int(i), int(j)), {})[int(k)] = Fraction(c)
    return LieAlgebra.from_constants(labels, consts, **kw)


def heisenberg() -> LieAlgebra:
    return LieAlgebra.from_constants(("a", "b", "h"), {(0, 1): {2: 1}}, name="heisenberg")


def abelian(d: int) -> LieAlgebra:
    return LieAlgebra.from_constants(tuple(f"t{i}" for i in range(1, d + 1)), {}, name=f"abelian({d})")


# -- matrix models -------------------------------------------------------------

SparseMatrix = dict  # (row, col) -> scalar


def _sparse_mul(X: SparseMatrix, Y: SparseMatrix) -> SparseMatrix:
    by_row: dict = {}
    for (k, j), y in Y.items():
        by_row.setdefault(k, []).append((j, y))
    out: dict = {}
    for (i, k), x in X.items():
        for j, y in by_row.get(k, ()):
            out[(i, j)] = out.get((i, j), 0) + x * y
    return {ij: v for ij, v in out.items() if v}


def _commutator(X: SparseMatrix, Y: SparseMatrix) -> SparseMatrix:
    out = dict(_sparse_mul(X, Y))
    for ij, v in _sparse_mul(Y, X).items():
        out[ij] = out.get(ij, 0) - v
    return {ij: v for ij, v in out.items() if v}


def trace_form(X: SparseMatrix, Y: SparseMatrix) -> Scalar:
    return sum(x * Y.get((b, a), 0) for (a, b), x in X.items())


@dataclass(frozen=True, eq=False)
class MatrixModel:
    family: str
    N: int
    basis: tuple[SparseMatrix, ...]
    labels: tuple[str, ...]

    @cached_property
    def _pivots(self) -> dict:
        piv = {}
        for j, B in enumerate(self.basis):
            a, b = min(B)
            piv[(a, b)] = (j, B[(a, b)])
        return piv

    def coords(self, X: SparseMatrix) -> list:
        """Coordinates of a matrix in the model's basis (raises if X is outside the span)."""
        v = [0] * len(self.basis)
        for ij, (j, piv) in self._pivots.items():
            if ij in X:
                v[j] = _norm(Fraction(X[ij]) / piv)
        back: dict = {}
        for j, c in enumerate(v):
            if c:
                for ij, x in self.basis[j].items():
                    back[ij] = back.get(ij, 0) + c * x
        if {k: w for k, w in back.items() if w} != {k: w for k, w in X.items() if w}:
            raise ValueError("matrix lies outside the model")
        return v

    @cached_property
    def dual_basis(self) -> tuple[SparseMatrix, ...]:
        """Basis dual to ``basis`` under the trace form ``tr(XY)``."""
        n = len(self.basis)
        gram = [[trace_form(self.basis[i], self.basis[j]) for j in range(n)] for i in range(n)]
        aug = [row + [int(i == j) for j in range(n)] for i, row in enumerate(gram)]
        R, piv = rref(aug)
        if piv[:n] != list(range(n)):
            raise ValueError("trace form is degenerate on this model")
        inv = [r[n:] for r in R]
        out = []
        for i in range(n):
            X: dict = {}
            for j in range(n):
                c = inv[i][j]
                if c:
                    for ij, x in self.basis[j].items():
                        X[ij] = X.get(ij, 0) + c * x
            out.append({ij: _norm(v) for ij, v in X.items() if v})
        return tuple(out)

    def combination(self, coeffs: Sequence, basis: Sequence[SparseMatrix] | None = None, zero=0) -> list[list]:
        """Dense matrix ``sum_j coeffs[j] * basis[j]``; coefficients may be polynomials."""
        basis = self.basis if basis is None else basis
        M = [[zero] * self.N for _ in range(self.N)]
        for c, B in zip(coeffs, basis):
            for (a, b), x in B.items():
                M[a][b] = M[a][b] + c * x
        return M


def _gl_model(N: int) -> MatrixModel:
    basis, labels = [], []
    for a in range(N):
        for b in range(N):
            basis.append({(a, b): 1})
            labels.append(f"E{a + 1}_{b + 1}")
    return MatrixModel("gl", N, tuple(basis), tuple(labels))


def _so_model(N: int) -> MatrixModel:
    basis, labels = [], []
    for a in range(N):
        for b in range(a + 1, N):
            basis.append({(a, b): 1, (b, a): -1})
            labels.append(f"R{a + 1}_{b + 1}")
    return MatrixModel("so", N, tuple(basis), tuple(labels))


def algebra_from_model(model: MatrixModel, parts=None, name: str = "") -> LieAlgebra:
    consts: dict = {}
    n = len(model.basis)
    for i in range(n):
        for j in range(i + 1, n):
            C = _commutator(model.basis[i], model.basis[j])
            if C:
                v = model.coords(C)
                consts[(i, j)] = {k: c for k, c in enumerate(v) if c}
    return LieAlgebra.from_constants(model.labels, consts, parts=parts, name=name, model=model)


def build_classical(family: str, N: int, cap: int = DEFAULT_SIZE_CAP) -> LieAlgebra:
    family = family.lower()
    if N < 1:
        raise ValueError("matrix size must be positive")
    if N > cap:
        raise ValueError(f"matrix size {N} exceeds the cap {cap}")
    if family == "gl":
        model = _gl_model(N)
    elif family == "so":
        if N < 2:
            raise ValueError("so(N) needs N >= 2")
        model = _so_model(N)
    else:
        raise ValueError(f"unsupported family {family!r}")
    return algebra_from_model(model, name=f"{family}({N})")


def check_jacobi(L: LieAlgebra) -> bool:
    n = L.dim
    def unit(i):
        v = [0] * n
        v[i] = 1
        return v
    units = [unit(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            bij = [0] * n
            for k, c in L.bracket(i, j):
                bij[k] = c
            for k in range(j + 1, n):
                bjk = [0] * n
                for t, c in L.bracket(j, k):
                    bjk[t] = c
                bki = [0] * n
                for t, c in L.bracket(k, i):
                    bki[t] = c
                s1 = L.bracket_vectors(bij, units[k])
                s2 = L.bracket_vectors(bjk, units[i])
                s3 = L.bracket_vectors(bki, units[j])
                if any(a + b + c for a, b, c in zip(s1, s2, s3)):
                    return False
    return True


# -- symmetric pairs -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SliceData:
    """The subspace c + s as a matrix ``M~`` whose entries are slice variables."""

    varspace: VarSpace
    matrix: PolyMatrix
    c_names: tuple[str, ...]
    s_names: tuple[str, ...]


@dataclass(frozen=True, eq=False)
class SymmetricPair:
    family: str  # "GL" or "SO"
    n: int
    m: int
    algebra: LieAlgebra

    @property
    def N(self) -> int:
        return self.n + self.m

    @property
    def model(self) -> MatrixModel:
        return self.algebra.model

    @property
    def label(self) -> str:
        return f"{self.family.lower()}({self.n},{self.m})"

    @property
    def varspace(self) -> VarSpace:
        return self.algebra.varspace

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def dim0(self) -> int:
        return len(self.algebra.indices(Part.ZERO))

    @property
    def dim1(self) -> int:
        return len(self.algebra.indices(Part.ONE))

    @property
    def rank_k(self) -> int:
        """Rank of the symmetric pair (dimension of a Cartan subspace)."""
        return min(self.n, self.m)

    @property
    def rank_l(self) -> int:
        return self.N if self.family == "GL" else self.N // 2

    @property
    def s_dim(self) -> int:
        """Dimension of the generic stabiliser s of g0 on g1."""
        d = self.n - self.m
        return d * d + self.m if self.family == "GL" else d * (d - 1) // 2

    @property
    def s_rank(self) -> int:
        d = self.n - self.m
        return self.n if self.family == "GL" else d // 2

    def check_grading(self) -> bool:
        parts = self.algebra.parts
        for (i, j), comps in self.algebra.brackets.items():
            want = Part((parts[i].value + parts[j].value) % 2)
            if any(parts[k] is not want for k, _ in comps):
                return False
        return True

    def generic_matrix(self) -> PolyMatrix:
        """``sum_j z_j x_j``: the generic element of g in basis coordinates."""
        vs = self.varspace
        return PolyMatrix(self.model.combination(vs.vars(), zero=vs.zero()))

    def dual_matrix(self) -> PolyMatrix:
        """Matrix ``X(y)`` with ``tr(X x_j) = y_j``: a point of g* seen in g via the trace form."""
        vs = self.varspace
        return PolyMatrix(self.model.combination(vs.vars(), self.model.dual_basis, zero=vs.zero()))

    @cached_property
    def dual_substitution(self) -> dict[str, Poly]:
        """``z_j`` as linear forms in ``y``, so that ``f(z(y))`` is ``f`` read on g* via the trace form."""
        vs = self.varspace
        ys = vs.vars()
        out = {nm: vs.zero() for nm in self.algebra.labels}
        for i, D in enumerate(self.model.dual_basis):
            for j, c in enumerate(self.model.coords(D)):
                if c:
                    nm = self.algebra.labels[j]
                    out[nm] = out[nm] + ys[i] * c
        return out

    def to_dual(self, f: Poly) -> Poly:
        return f.subs(self.dual_substitution)

    @cached_property
    def slice(self) -> SliceData:
        return _build_slice(self)

    def slice_assignment(self, side: str = "dual") -> dict[str, Poly]:
        """Coordinates of the slice matrix, as polynomials in the slice variables.

        ``side="g"`` gives basis coordinates ``z_j`` of ``M~``; ``side="dual"``
        gives ``y_j = tr(M~ x_j)``, the point of g* identified with ``M~``.
        """
        sl = self.slice
        svs = sl.varspace
        E = sl.matrix.entries
        out = {}
        if side == "g":
            for (a, b), (j, piv) in sorted(self.model._pivots.items(), key=lambda t: t[1][0]):
                out[self.algebra.labels[j]] = E[a][b] / piv
        elif side == "dual":
            for j, B in enumerate(self.model.basis):
                acc = svs.zero()
                for (a, b), x in B.items():
                    e = E[b][a]
                    if e:
                        acc = acc + e * x
                out[self.algebra.labels[j]] = acc
        else:
            raise ValueError("side must be 'g' or 'dual'")
        return out


def _build_slice(pair: SymmetricPair) -> SliceData:
    n, m, N = pair.n, pair.m, pair.N
    r = n - m
    if pair.family == "SO":
        c = [f"d{i}" for i in range(1, m + 1)]
        s = [f"e{a}_{b}" for a in range(1, r + 1) for b in range(a + 1, r + 1)]
        vs = VarSpace.build(zero=s, one=c)
        zero = vs.zero()
        M = [[zero] * N for _ in range(N)]
        for i in range(m):
            d = vs.var(c[i])
            M[i][m + i] = d
            M[m + i][i] = -d
        for a in range(r):
            for b in range(a + 1, r):
                e = vs.var(f"e{a + 1}_{b + 1}")
                M[2 * m + a][2 * m + b] = e
                M[2 * m + b][2 * m + a] = -e
    else:
        c = [f"b{i}" for i in range(1, m + 1)]
        diag = [f"a{i}" for i in range(1, m + 1)]
        es = [f"e{a}_{b}" for a in range(1, r + 1) for b in range(1, r + 1)]
        s = diag + es
        vs = VarSpace.build(zero=s, one=c)
        zero = vs.zero()
        M = [[zero] * N for _ in range(N)]
        for i in range(m):
            a_, b_ = vs.var(diag[i]), vs.var(c[i])
            M[i][i] = a_
            M[m + i][m + i] = a_
            M[i][m + i] = b_
            M[m + i][i] = -b_
        for a in range(r):
            for b in range(r):
                M[2 * m + a][2 * m + b] = vs.var(f"e{a + 1}_{b + 1}")
    return SliceData(vs, PolyMatrix(M), tuple(c), tuple(s))


def build_symmetric_pair(family: str, n: int, m: int, cap: int = DEFAULT_SIZE_CAP) -> SymmetricPair:
    """Block model: the first ``m`` indices form one block and the last ``n`` the other."""
    family = family.upper()
    if family not in ("GL", "SO"):
        raise ValueError(f"unsupported family {family!r}")
    if m < 0 or n < m or n < 1:
        raise ValueError("need n >= m >= 0 and n >= 1")
    N = n + m
    model_alg = build_classical(family.lower(), N, cap=cap)
    model = model_alg.model

    def part_of(B):
        (a, b) = min(B)
        return Part.ZERO if (a < m) == (b < m) else Part.ONE

    parts = tuple(part_of(B) for B in model.basis)
    alg = LieAlgebra(model_alg.labels, model_alg.brackets, parts=parts,
                     name=f"{family.lower()}({n},{m})", model=model)
    pair = SymmetricPair(family, n, m, alg)
    if not pair.check_grading():
        raise AssertionError("block model is not Z2-graded")
    return pair


@dataclass(frozen=True, eq=False)
class Contraction:
    pair: SymmetricPair
    algebra: LieAlgebra

    @property
    def varspace(self) -> VarSpace:
        return self.algebra.varspace

    @property
    def dim(self) -> int:
        return self.algebra.dim


def contract(pair: SymmetricPair) -> Contraction:
    """Semidirect product g0 x| g1: the bracket on g1 x g1 is set to zero."""
    parts = pair.algebra.parts
    br = {
        ij: comps
        for ij, comps in pair.algebra.brackets.items()
        if not (parts[ij[0]] is Part.ONE and parts[ij[1]] is Part.ONE)
    }
    alg = LieAlgebra(pair.algebra.labels, br, parts=parts,
                     name=f"k[{pair.label}]", model=pair.model)
    return Contraction(pair, alg)


# -- derivations -------------------------------------------------------------------

def _check_space(L: LieAlgebra, p: Poly):
    if p.vs != L.varspace:
        raise ValueError("polynomial does not live on this algebra's coordinates")


def coadjoint_derivation(L: LieAlgebra, i: int, p: Poly) -> Poly:
    """``D_i(p) = sum_{j,k} c_ij^k y_k dp/dy_j`` on k[L*]."""
    _check_space(L, p)
    vs = L.varspace
    shifts, units = vs.shifts, vs.units
    acc: dict = {}
    get = acc.get
    for j, comps in L._ad_rows[i]:
        s, uj = shifts[j], units[j]
        targets = [(units[k] - uj, c) for k, c in comps]
        for key, coef in p.terms.items():
            e = (key >> s) & 0xFF
            if e:
                ce = coef * e
                for du, c in targets:
                    nk = key + du
                    acc[nk] = get(nk, 0) + ce * c
    return Poly._clean(vs, acc)


def adjoint_derivation(L: LieAlgebra, i: int, p: Poly) -> Poly:
    """``D_i(p) = sum_{j,k} c_ij^k z_j dp/dz_k`` on k[L]."""
    _check_space(L, p)
    vs = L.varspace
    shifts, units = vs.shifts, vs.units
    acc: dict = {}
    get = acc.get
    for k, srcs in L._ad_cols[i].items():
        s, uk = shifts[k], units[k]
        targets = [(units[j] - uk, c) for j, c in srcs]
        for key, coef in p.terms.items():
            e = (key >> s) & 0xFF
            if e:
                ce = coef * e
                for du, c in targets:
                    nk = key + du
                    acc[nk] = get(nk, 0) + ce * c
    return Poly._clean(vs, acc)


def is_invariant(L: LieAlgebra, p: Poly, rep: str = COADJOINT, basis: Sequence[int] | None = None) -> bool:
    der = coadjoint_derivation if rep == COADJOINT else adjoint_derivation
    if rep not in (ADJOINT, COADJOINT):
        raise ValueError(f"unknown representation {rep!r}")
    for i in (range(L.dim) if basis is None else basis):
        if der(L, i, p):
            return False
    return True


# -- Poisson matrix, index, stabilisers --------------------------------------------

def poisson_matrix(L: LieAlgebra) -> PolyMatrix:
    vs = L.varspace
    ys = vs.vars()
    zero = vs.zero()

    def entry(i, j):
        acc = zero
        for k, c in L.bracket(i, j):
            acc = acc + ys[k] * c
        return acc

    return PolyMatrix.build(L.dim, L.dim, entry)


def _values(L: LieAlgebra, point) -> list:
    if isinstance(point, Mapping):
        return [point[nm] for nm in L.labels]
    vals = list(point)
    if len(vals) != L.dim:
        raise ValueError("incomplete point")
    return vals


def poisson_at(L: LieAlgebra, point) -> list[list]:
    vals = _values(L, point)
    n = L.dim
    P = [[0] * n for _ in range(n)]
    for (i, j), comps in L.brackets.items():
        P[i][j] = sum(c * vals[k] for k, c in comps)
    return P


def stabilizer_dim_at(L: LieAlgebra, point) -> int:
    return L.dim - rank(poisson_at(L, point))


def random_dual_point(L: LieAlgebra, rng: random.Random) -> dict:
    return random_point(L.labels, rng)


def index_estimate(L: LieAlgebra, trials: int = 3, seed: int = 0) -> int:
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = random.Random(seed)
    best = 0
    for _ in range(trials):
        best = max(best, rank(poisson_at(L, random_dual_point(L, rng))))
    return L.dim - best


def _orbit_rank(L: LieAlgebra, P, g0, g1) -> int:
    return rank([[P[i][j] for j in g1] for i in g0]) if g0 and g1 else 0


def dim_stab_formula_check(C: Contraction, point=None, seed: int = 0, resamples: int = 20) -> VerificationReport:
    """Compare ``dim k_eta`` with ``codim(G0.xi) + dim (g_{0,xi})_alpha-bar`` at one point."""
    L = C.algebra
    g0, g1 = L.indices(Part.ZERO), L.indices(Part.ONE)
    cid = f"dimstab/{C.pair.label}"
    with stopwatch() as ms:
        rng = random.Random(seed)
        ranks = []
        samples = []
        for _ in range(resamples):
            pt = random_dual_point(L, rng)
            samples.append(pt)
            ranks.append(_orbit_rank(L, poisson_at(L, pt), g0, g1))
        max_orbit = max(ranks)
        if point is None:
            point = samples[ranks.index(max_orbit)]
        vals = _values(L, point)
        P = poisson_at(L, vals)
        orbit = _orbit_rank(L, P, g0, g1)
        lhs = L.dim - rank(P)
        codim = len(g1) - orbit
        # g_{0,xi}: u in g0 with sum_i u_i xi([x_i, x_j]) = 0 for all j in g1
        A_T = [[P[i][j] for i in g0] for j in g1]
        U = nullspace(A_T, ncols=len(g0)) if g1 else nullspace([], ncols=len(g0))
        P00 = [[P[i][j] for j in g0] for i in g0]
        B = [[sum(u[a] * P00[a][b] * v[b] for a in range(len(g0)) for b in range(len(g0)) if u[a] and v[b])
              for v in U] for u in U]
        stab_alpha = len(U) - (rank(B) if U else 0)
        rhs = codim + stab_alpha
    witness = ",".join(f"{nm}={scalar_text(v)}" for nm, v in zip(L.labels, vals))
    return VerificationReport(
        cid,
        Status.PASS if lhs == rhs else Status.FAIL,
        expected={"rhs": rhs, "codim_orbit": codim, "dim_centraliser": len(U), "stab_alpha_bar": stab_alpha},
        computed={"lhs": lhs, "g0_regular": orbit == max_orbit},
        witness=witness,
        elapsed_ms=ms[0],
    )
