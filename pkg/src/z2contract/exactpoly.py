"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are packed into a single Python int.  Each variable owns an 8-bit
exponent field; above them sit a field for the degree in ``ONE``-part
variables and a field for the total degree::

    key = total << 8(n+1) | one_degree << 8n | e_0 << 8(n-1) | ... | e_{n-1}

Multiplying monomials is then integer addition, and both gradings are read
off with a shift.  Exponents and total degree are capped at 255.

Coefficients are ``int`` when integral and ``Fraction`` otherwise, which keeps
the common integral case fast while staying exact.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, Union

Scalar = Union[int, Fraction]

_BITS = 8
_MASK = (1 << _BITS) - 1
MAX_DEGREE = _MASK


class Part(enum.Enum):
    ZERO = 0
    ONE = 1


class BiDegree(NamedTuple):
    """(degree in ZERO-part variables, degree in ONE-part variables)."""

    a: int
    b: int

    def __le__(self, other):  # componentwise, hence only a partial order
        return self.a <= other.a and self.b <= other.b

    def __ge__(self, other):
        return self.a >= other.a and self.b >= other.b

    def __add__(self, other):
        return BiDegree(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return BiDegree(self.a - other.a, self.b - other.b)


def _norm(c: Scalar) -> Scalar:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def as_scalar(c) -> Scalar:
    if isinstance(c, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"not an exact scalar: {c!r}")


def scalar_text(c: Scalar) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True, eq=False)
class VarSpace:
    """Ordered, graded set of variable names shared by a family of polynomials."""

    names: tuple[str, ...]
    parts: tuple[Part, ...]
    index: dict = field(init=False, repr=False)
    units: tuple[int, ...] = field(init=False, repr=False)
    shifts: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        names = tuple(self.names)
        parts = tuple(self.parts)
        if len(names) != len(parts):
            raise ValueError("every variable needs a part label")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nm):
                raise ValueError(f"bad variable name {nm!r}")
        n = len(names)
        shifts = tuple(_BITS * (n - 1 - i) for i in range(n))
        one = 1 << (_BITS * n)
        tot = 1 << (_BITS * (n + 1))
        units = tuple(
            (1 << s) | tot | (one if p is Part.ONE else 0) for s, p in zip(shifts, parts)
        )
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "index", {nm: i for i, nm in enumerate(names)})
        object.__setattr__(self, "units", units)
        object.__setattr__(self, "shifts", shifts)

    @classmethod
    def build(cls, zero: Iterable[str] = (), one: Iterable[str] = ()) -> "VarSpace":
        zero, one = list(zero), list(one)
        return cls(tuple(zero + one), (Part.ZERO,) * len(zero) + (Part.ONE,) * len(one))

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, VarSpace):
            return NotImplemented
        return self.names == other.names and self.parts == other.parts

    def __hash__(self):
        return hash((self.names, self.parts))

    @property
    def tot_shift(self) -> int:
        return _BITS * (len(self.names) + 1)

    @property
    def one_shift(self) -> int:
        return _BITS * len(self.names)

    def part(self, name: str) -> Part:
        return self.parts[self.index[name]]

    def names_in(self, part: Part) -> list[str]:
        return [nm for nm, p in zip(self.names, self.parts) if p is part]

    def pack(self, exponents: Mapping[str, int]) -> int:
        key = 0
        for nm, e in exponents.items():
            if e < 0:
                raise ValueError("negative exponent")
            if e == 0:
                continue
            if e > MAX_DEGREE:
                raise OverflowError("exponent exceeds 255")
            key += e * self.units[self.index[nm]]
        if key >> self.tot_shift > MAX_DEGREE:
            raise OverflowError("total degree exceeds 255")
        return key

    def unpack(self, key: int) -> list[tuple[int, int]]:
        """(variable index, exponent) pairs of a packed monomial, ascending index."""
        out = []
        i = len(self.names) - 1
        while i >= 0:
            e = key & _MASK
            if e:
                out.append((i, e))
            key >>= _BITS
            i -= 1
        out.reverse()
        return out

    def monomial(self, key: int) -> dict[str, int]:
        return {self.names[i]: e for i, e in self.unpack(key)}

    def var(self, name: str) -> "Poly":
        try:
            return Poly(self, {self.units[self.index[name]]: 1})
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def vars(self) -> list["Poly"]:
        return [self.var(nm) for nm in self.names]

    def const(self, c) -> "Poly":
        c = as_scalar(c)
        return Poly(self, {0: c} if c else {})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def sort_key(self, key: int):
        lex = key & ((1 << self.one_shift) - 1)
        return (key >> self.tot_shift, lex)


class Poly:
    """Immutable sparse polynomial over the rationals on a fixed ``VarSpace``."""

    __slots__ = ("vs", "terms", "_deg")

    def __init__(self, vs: VarSpace, terms: dict | None = None):
        self.vs = vs
        self.terms = terms if terms is not None else {}
        self._deg = None

    @staticmethod
    def _clean(vs, d):
        out = {}
        for k, c in d.items():
            if c:
                out[k] = _norm(c)
        return Poly(vs, out)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.vs is not self.vs and other.vs != self.vs:
                raise ValueError("polynomials live in different VarSpaces")
            return other
        return self.vs.const(other)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        d = dict(big)
        for k, c in small.items():
            s = d.get(k, 0) + c
            if s:
                d[k] = _norm(s)
            else:
                d.pop(k, None)
        return Poly(self.vs, d)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vs, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = as_scalar(c)
        if not c:
            return self.vs.zero()
        return Poly(self.vs, {k: _norm(v * c) for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return self.vs.zero()
        if self.degree() + other.degree() > MAX_DEGREE:
            raise OverflowError("product degree exceeds 255")
        if len(a) < len(b):
            a, b = b, a
        d: dict = {}
        get = d.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                d[k] = get(k, 0) + ca * cb
        return Poly._clean(self.vs, d)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, Poly):
            return NotImplemented
        return self.scale(1 / Fraction(as_scalar(other)))

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers")
        result = self.vs.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vs == other.vs and self.terms == other.terms
        try:
            return self.terms == self.vs.const(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.vs, frozenset(self.terms.items())))

    # -- degrees -----------------------------------------------------------
    def degree(self):
        """Total degree; ``None`` for the zero polynomial."""
        if not self.terms:
            return None
        if self._deg is None:
            self._deg = max(self.terms) >> self.vs.tot_shift
        return self._deg

    def is_homogeneous(self) -> bool:
        t = self.vs.tot_shift
        return len({k >> t for k in self.terms}) <= 1

    def bidegrees(self) -> set[BiDegree]:
        t, o = self.vs.tot_shift, self.vs.one_shift
        out = set()
        for k in self.terms:
            tot, one = k >> t, (k >> o) & _MASK
            out.add(BiDegree(tot - one, one))
        return out

    def bidegree(self) -> BiDegree:
        bd = self.bidegrees()
        if len(bd) != 1:
            raise ValueError("polynomial is not bi-homogeneous")
        return bd.pop()

    def variables(self) -> set[str]:
        used = 0
        for k in self.terms:
            used |= k
        return {nm for nm in self.vs.names if (used >> self.vs.shifts[self.vs.index[nm]]) & _MASK} if used else set()

    def coefficient(self, exponents: Mapping[str, int]) -> Fraction:
        return Fraction(self.terms.get(self.vs.pack(exponents), 0))

    def items(self) -> Iterator[tuple[dict[str, int], Fraction]]:
        for k in self.sorted_keys():
            yield self.vs.monomial(k), Fraction(self.terms[k])

    def sorted_keys(self) -> list[int]:
        return sorted(self.terms, key=self.vs.sort_key, reverse=True)

    # -- calculus and substitution -----------------------------------------
    def diff(self, name: str) -> "Poly":
        try:
            i = self.vs.index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None
        s, u = self.vs.shifts[i], self.vs.units[i]
        d = {}
        for k, c in self.terms.items():
            e = (k >> s) & _MASK
            if e:
                d[k - u] = c * e
        return Poly(self.vs, d)

    def subs(self, assignment: Mapping[str, object], target: VarSpace | None = None) -> "Poly":
        """Substitute polynomials (or scalars) for variables.

        Variables without an assignment map to the variable of the same name in
        ``target`` (which defaults to this polynomial's own VarSpace).
        """
        target = target or self.vs
        vs = self.vs
        images: list = []
        for i, nm in enumerate(vs.names):
            if nm in assignment:
                img = assignment[nm]
                if isinstance(img, Poly):
                    if img.vs != target:
                        raise ValueError(f"image of {nm} lives in another VarSpace")
                else:
                    img = target.const(img)
            else:
                if nm not in target.index:
                    raise ValueError(f"unassigned variable {nm} missing from target VarSpace")
                img = target.var(nm)
            images.append(img)
        for nm in assignment:
            if nm not in vs.index:
                raise KeyError(f"unknown variable {nm!r}")
        zero_vars = {i for i, img in enumerate(images) if not img.terms}
        if all(len(img.terms) <= 1 and (img.degree() or 0) <= 1 for img in images):
            return self._subs_monomial(images, zero_vars, target)
        powers: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] ** e
            return powers[key]

        acc: dict = {}
        for k, c in self.terms.items():
            factors = vs.unpack(k)
            if any(i in zero_vars for i, _ in factors):
                continue
            term = target.const(c)
            for i, e in factors:
                term = term * power(i, e)
            for tk, tc in term.terms.items():
                acc[tk] = acc.get(tk, 0) + tc
        return Poly._clean(target, acc)

    def _subs_monomial(self, images, zero_vars, target) -> "Poly":
        # every image is c or c*y: exponents move, coefficients multiply
        vs = self.vs
        img = [next(iter(p.terms.items()), (0, 0)) for p in images]
        acc: dict = {}
        for k, c in self.terms.items():
            factors = vs.unpack(k)
            if any(i in zero_vars for i, _ in factors):
                continue
            nk = 0
            for i, e in factors:
                tk, tc = img[i]
                nk += e * tk
                c = c * tc**e
            acc[nk] = acc.get(nk, 0) + c
        return Poly._clean(target, acc)

    def _point_values(self, point) -> list:
        if isinstance(point, Mapping):
            try:
                return [point[nm] for nm in self.vs.names]
            except KeyError as exc:
                raise ValueError(f"point does not assign {exc.args[0]!r}") from None
        vals = list(point)
        if len(vals) != len(self.vs):
            raise ValueError("point has wrong length")
        return vals

    def evaluate(self, point) -> Scalar:
        vals = self._point_values(point)
        total = 0
        unpack = self.vs.unpack
        for k, c in self.terms.items():
            v = c
            for i, e in unpack(k):
                v *= vals[i] ** e
            total += v
        return _norm(total) if isinstance(total, Fraction) else total

    def gradient_at(self, point) -> list[Scalar]:
        vals = self._point_values(point)
        grad = [0] * len(vals)
        unpack = self.vs.unpack
        for k, c in self.terms.items():
            fs = unpack(k)
            pw = [vals[i] ** e for i, e in fs]
            m = len(fs)
            pre = [1] * (m + 1)
            for j in range(m):
                pre[j + 1] = pre[j] * pw[j]
            suf = 1
            for j in range(m - 1, -1, -1):
                i, e = fs[j]
                grad[i] += c * e * vals[i] ** (e - 1) * pre[j] * suf
                suf *= pw[j]
        return [_norm(g) if isinstance(g, Fraction) else g for g in grad]

    # -- grading -----------------------------------------------------------
    def bihomogeneous_components(self) -> list[tuple[BiDegree, "Poly"]]:
        t, o = self.vs.tot_shift, self.vs.one_shift
        buckets: dict = {}
        for k, c in self.terms.items():
            tot, one = k >> t, (k >> o) & _MASK
            buckets.setdefault(BiDegree(tot - one, one), {})[k] = c
        return [(bd, Poly(self.vs, buckets[bd])) for bd in sorted(buckets)]

    def _extreme_component(self, top: bool) -> "Poly":
        if not self.terms:
            raise ValueError("zero polynomial has no top/bottom component")
        if not self.is_homogeneous():
            raise ValueError("polynomial is not homogeneous")
        o = self.vs.one_shift
        ones = [(k >> o) & _MASK for k in self.terms]
        target = max(ones) if top else min(ones)
        return Poly(self.vs, {k: c for k, c, b in zip(self.terms, self.terms.values(), ones) if b == target})

    def top_component(self) -> "Poly":
        """Bi-homogeneous part of maximal ONE-degree (the Z2-degeneration on the dual)."""
        return self._extreme_component(True)

    def bottom_component(self) -> "Poly":
        """Bi-homogeneous part of minimal ONE-degree."""
        return self._extreme_component(False)

    # -- division ------------------------------------------------------------
    def leading_key(self) -> int:
        return max(self.terms, key=self.vs.sort_key)

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Quotient of an exact division; raises ``ArithmeticError`` on a remainder."""
        divisor = self._coerce(divisor)
        if not divisor.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        vs = self.vs
        lk = divisor.leading_key()
        lc = Fraction(divisor.terms[lk])
        lead_fields = vs.unpack(lk)
        rem = dict(self.terms)
        quot: dict = {}
        sort_key = vs.sort_key
        while rem:
            k = max(rem, key=sort_key)
            exps = dict(vs.unpack(k))
            if any(exps.get(i, 0) < e for i, e in lead_fields):
                raise ArithmeticError("division is not exact")
            qk = k - lk
            qc = _norm(Fraction(rem[k]) / lc)
            quot[qk] = qc
            for dk, dc in divisor.terms.items():
                nk = qk + dk
                v = rem.get(nk, 0) - qc * dc
                if v:
                    rem[nk] = _norm(v)
                else:
                    rem.pop(nk, None)
        return Poly(vs, quot)

    # -- text form -----------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in self.sorted_keys():
            c = Fraction(self.terms[k])
            sign = "-" if c < 0 else "+"
            c = abs(c)
            mono = "*".join(
                self.vs.names[i] + (f"^{e}" if e > 1 else "") for i, e in self.vs.unpack(k)
            )
            if not mono:
                body = scalar_text(c)
            elif c == 1:
                body = mono
            else:
                body = f"{scalar_text(c)}*{mono}"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = to_text

    def __repr__(self):
        return f"Poly({self.to_text()!r})"


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_poly(text: str, vs: VarSpace) -> Poly:
    """Inverse of :meth:`Poly.to_text`."""
    text = text.strip()
    if text == "0":
        return vs.zero()
    acc = vs.zero()
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        term = vs.const(sign)
        for factor in m.group(2).strip().split("*"):
            factor = factor.strip()
            if re.fullmatch(r"\d+(/\d+)?", factor):
                term = term * Fraction(factor)
                continue
            name, _, exp = factor.partition("^")
            term = term * vs.var(name) ** (int(exp) if exp else 1)
        acc = acc + term
    return acc


class PolyMatrix:
    """Dense rectangular matrix of ring elements (``Poly`` or exact scalars)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise ValueError("matrix must be non-empty")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("matrix is not rectangular")
        vss = {e.vs for r in rows for e in r if isinstance(e, Poly)}
        if len(vss) > 1:
            raise ValueError("entries live in different VarSpaces")
        self.rows, self.cols, self.entries = len(rows), width, rows

    @classmethod
    def build(cls, rows: int, cols: int, fn) -> "PolyMatrix":
        return cls([[fn(i, j) for j in range(cols)] for i in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def varspace(self):
        for r in self.entries:
            for e in r:
                if isinstance(e, Poly):
                    return e.vs
        return None

    def zero(self):
        vs = self.varspace
        return vs.zero() if vs is not None else 0

    def one(self):
        vs = self.varspace
        return vs.const(1) if vs is not None else 1

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int] | None = None) -> "PolyMatrix":
        cols = rows if cols is None else cols
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows])

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in r] for r in self.entries])

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return PolyMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + other.map(lambda e: -e)

    def __mul__(self, other):
        if not isinstance(other, PolyMatrix):
            return self.map(lambda e: e * other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        zero = self.zero() if self.varspace is not None else other.zero()
        out = []
        for r in self.entries:
            row = []
            for j in range(other.cols):
                acc = zero
                for k, a in enumerate(r):
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def __rmul__(self, other):
        return self.map(lambda e: other * e)

    def __pow__(self, e: int) -> "PolyMatrix":
        if not self.is_square() or e < 0:
            raise ValueError("power of a non-square matrix")
        result = identity_like(self)
        for _ in range(e):
            result = result * self
        return result

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        acc = self.zero()
        for i in range(self.rows):
            acc = acc + self.entries[i][i]
        return acc

    def is_skew(self) -> bool:
        if not self.is_square():
            return False
        for i in range(self.rows):
            if self.entries[i][i]:
                return False
            for j in range(i + 1, self.rows):
                if self.entries[i][j] != -self.entries[j][i]:
                    return False
        return True

    def evaluate(self, point) -> "PolyMatrix":
        return self.map(lambda e: e.evaluate(point) if isinstance(e, Poly) else e)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols})"


def identity_like(M: PolyMatrix) -> PolyMatrix:
    zero, one = M.zero(), M.one()
    return PolyMatrix.build(M.rows, M.rows, lambda i, j: one if i == j else zero)


def _as_matrix(M) -> PolyMatrix:
    return M if isinstance(M, PolyMatrix) else PolyMatrix(M)


def pfaffian(M, *, check: bool = True):
    """Pfaffian of a skew-symmetric matrix, with ``Pf([[0, a], [-a, 0]]) = a``.

    Expands along the first row; sub-Pfaffians are memoised on their index
    tuple so that the ``2^k`` shared subsets are computed once per call.
    """
    M = _as_matrix(M)
    if not M.is_square():
        raise ValueError("Pfaffian needs a square matrix")
    if M.rows % 2:
        raise ValueError("Pfaffian needs even order")
    if check and not M.is_skew():
        raise ValueError("matrix is not skew-symmetric")
    return all_pfaffians(M, [tuple(range(M.rows))])[tuple(range(M.rows))]


def all_pfaffians(M: PolyMatrix, subsets: Iterable[Sequence[int]]) -> dict:
    """Pfaffians of principal submatrices on each (sorted) index subset."""
    E = M.entries
    zero, one = M.zero(), M.one()
    memo: dict = {(): one}

    def pf(idx):
        if idx in memo:
            return memo[idx]
        i0 = idx[0]
        acc = zero
        for pos in range(1, len(idx)):
            a = E[i0][idx[pos]]
            if not a:
                continue
            rest = idx[1:pos] + idx[pos + 1:]
            sub = pf(rest)
            if not sub:
                continue
            term = a * sub
            acc = acc + term if pos % 2 == 1 else acc - term
        memo[idx] = acc
        return acc

    out = {}
    for s in subsets:
        s = tuple(sorted(s))
        if len(s) % 2:
            raise ValueError("Pfaffian needs even order")
        out[s] = pf(s)
    return out


def determinant(M):
    """Determinant by Bareiss fraction-free elimination (exact division)."""
    M = _as_matrix(M)
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    A = [list(r) for r in M.entries]
    zero = M.zero()
    sign = 1
    prev = M.one()
    for k in range(n - 1):
        if not A[k][k]:
            for r in range(k + 1, n):
                if A[r][k]:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[k][k] * A[i][j] - A[i][k] * A[k][j]
                A[i][j] = _exact_quotient(num, prev)
            A[i][k] = zero
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign == 1 else -d


def _exact_quotient(num, den):
    if isinstance(num, Poly):
        if isinstance(den, Poly):
            if len(den.terms) == 1 and 0 in den.terms:
                return num.scale(1 / Fraction(den.terms[0]))
            return num.exact_div(den)
        return num.scale(1 / Fraction(den))
    q = Fraction(num) / Fraction(den)
    return _norm(q)


def principal_minor_sums(M) -> list:
    """``[f_1, ..., f_N]`` with ``f_i`` the sum of all principal ``i x i`` minors.

    Faddeev-LeVerrier: ``M_1 = M``, ``c_k = -tr(M_k)/k``,
    ``M_{k+1} = M (M_k + c_k I)``; then ``f_k = (-1)^k c_k``.
    """
    M = _as_matrix(M)
    if not M.is_square():
        raise ValueError("principal minors need a square matrix")
    n = M.rows
    out = []
    Mk = M
    for k in range(1, n + 1):
        ck = Mk.trace() * Fraction(-1, k)
        out.append(ck if k % 2 == 0 else -ck)
        if k < n:
            shifted = PolyMatrix(
                [[e + ck if i == j else e for j, e in enumerate(r)] for i, r in enumerate(Mk.entries)]
            )
            Mk = M * shifted
    return out


def skew_principal_minor_sums(M) -> list:
    """For skew ``M``: ``[g_1, ..., g_{N//2}]`` with ``g_i`` the sum of principal ``2i``-minors.

    Uses ``det(M_I) = Pf(M_I)^2`` over all even index subsets.
    """
    from itertools import combinations

    M = _as_matrix(M)
    if not M.is_skew():
        raise ValueError("matrix is not skew-symmetric")
    n = M.rows
    subsets = [c for i in range(1, n // 2 + 1) for c in combinations(range(n), 2 * i)]
    pfs = all_pfaffians(M, subsets)
    out = []
    for i in range(1, n // 2 + 1):
        acc = M.zero()
        for c in combinations(range(n), 2 * i):
            p = pfs[c]
            if p:
                acc = acc + p * p
        out.append(acc)
    return out


def jacobian_matrix_at(fs: Sequence[Poly], point) -> list[list[Scalar]]:
    if not fs:
        raise ValueError("need at least one polynomial")
    vs = fs[0].vs
    if any(f.vs != vs for f in fs):
        raise ValueError("polynomials live in different VarSpaces")
    return [f.gradient_at(point) for f in fs]


def jacobian_rank_at(fs: Sequence[Poly], point) -> int:
    from .linalg import rank

    return rank(jacobian_matrix_at(fs, point))
