"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`.  :class:`Matrix` is an immutable dense
matrix over the rationals; the elimination kernels work on sparse integer rows
(denominators cleared row by row) and only divide at the very end, which keeps
the common case of small integer matrices fast.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

__all__ = [
    "Q",
    "Matrix",
    "Polynomial",
    "rref",
    "kernel_basis",
    "solve_affine",
    "min_poly",
    "min_poly_by_powers",
    "squarefree_part",
    "jordan_chevalley",
    "JCError",
    "format_rational",
    "iterated_image_ranks",
]


class JCError(ArithmeticError):
    """Raised when the Jordan-Chevalley iteration fails its exact check."""


def Q(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational (floats are not accepted)")


def format_rational(q: Fraction) -> str:
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# --------------------------------------------------------------------------
# sparse integer elimination kernels

def _int_row(row: Sequence[Fraction]) -> dict:
    den = 1
    for v in row:
        if v:
            den = lcm(den, v.denominator)
    out = {}
    for j, v in enumerate(row):
        if v:
            out[j] = v.numerator * (den // v.denominator)
    return out


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def _reduce_against(row: dict, basis: dict) -> dict:
    """Eliminate every pivot column of ``basis`` from ``row`` (fraction free).

    A pivot row only has columns >= its pivot, so columns are cleared in
    increasing order and never reappear.
    """
    c = -1
    while row:
        hits = [j for j in row if j > c and j in basis]
        if not hits:
            return row
        c = min(hits)
        p = basis[c]
        a, b = p[c], row[c]
        g = gcd(a, b)
        a //= g
        b //= g
        new = {j: v * a for j, v in row.items()} if a != 1 else dict(row)
        for j, v in p.items():
            w = new.get(j, 0) - b * v
            if w:
                new[j] = w
            else:
                new.pop(j, None)
        row = _primitive(new)
    return row


def _echelon(rows: Iterable[dict]) -> dict:
    """Echelon basis of the span of integer rows: pivot column -> row.

    Each stored row has its pivot as its smallest column and no entry in the
    pivot column of any other stored row with a smaller pivot.
    """
    basis: dict = {}
    for row in rows:
        row = _reduce_against(dict(row), basis)
        if not row:
            continue
        c = min(row)
        if row[c] < 0:
            row = {j: -v for j, v in row.items()}
        basis[c] = row
    return basis


def _rank_rows(rows: Iterable[Sequence[Fraction]]) -> int:
    return len(_echelon(_int_row(r) for r in rows))


# --------------------------------------------------------------------------

class Matrix:
    """Immutable dense matrix of Fractions, stored row major."""

    __slots__ = ("rows", "cols", "_r")

    def __init__(self, rows: Sequence[Sequence], cols: Optional[int] = None):
        data = tuple(tuple(Q(v) for v in r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(data[0])
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(data)
        self.cols = cols
        self._r = data

    @classmethod
    def _raw(cls, data, rows: int, cols: int) -> "Matrix":
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._r = data
        return m

    # constructors
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        z = Fraction(0)
        return cls._raw(tuple((z,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        one, z = Fraction(1), Fraction(0)
        return cls._raw(tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        vals = [Q(v) for v in values]
        n = len(vals)
        z = Fraction(0)
        return cls._raw(tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: Optional[int] = None) -> "Matrix":
        columns = [tuple(Q(v) for v in c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("rows must be given for a matrix with no columns")
            rows = len(columns[0])
        if not columns:
            return cls._raw(tuple(() for _ in range(rows)), rows, 0)
        return cls._raw(tuple(tuple(c[i] for c in columns) for i in range(rows)), rows, len(columns))

    @classmethod
    def column(cls, values: Sequence) -> "Matrix":
        return cls([[v] for v in values], 1)

    # access
    def __getitem__(self, idx):
        i, j = idx
        return self._r[i][j]

    def row(self, i: int) -> tuple:
        return self._r[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._r)

    def columns(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list:
        return [list(r) for r in self._r]

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rational(v) for v in r) + "]" for r in self._r)
        return f"Matrix([{body}])"

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._r == other._r

    def __hash__(self):
        return hash((self.rows, self.cols, self._r))

    # arithmetic
    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._r, other._r)),
                           self.rows, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._r, other._r)),
                           self.rows, self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._r), self.rows, self.cols)

    def scale(self, c) -> "Matrix":
        c = Q(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self._r), self.rows, self.cols)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        n = other.cols
        z = Fraction(0)
        brows = other._r
        out = []
        for r in self._r:
            acc = [z] * n
            for k, a in enumerate(r):
                if a:
                    for j, b in enumerate(brows[k]):
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return Matrix._raw(tuple(out), self.rows, n)

    def apply(self, v: Sequence) -> tuple:
        """Matrix times a column vector given as a sequence."""
        z = Fraction(0)
        out = []
        for r in self._r:
            acc = z
            for a, b in zip(r, v):
                if a and b:
                    acc += a * b
            out.append(acc)
        return tuple(out)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __pow__(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        result = Matrix.identity(self.rows)
        base = self
        while k > 0:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self._r)) if self.rows else tuple(() for _ in range(self.cols)),
                           self.cols, self.rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def trace(self) -> Fraction:
        return sum((self._r[i][i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(tuple(self._r[i][j] for j in cols) for i in rows), len(rows), len(cols))

    def hstack(self, *others: "Matrix") -> "Matrix":
        data = [list(r) for r in self._r]
        cols = self.cols
        for o in others:
            if o.rows != self.rows:
                raise ValueError("hstack row mismatch")
            for d, r in zip(data, o._r):
                d.extend(r)
            cols += o.cols
        return Matrix._raw(tuple(tuple(d) for d in data), self.rows, cols)

    def vstack(self, *others: "Matrix") -> "Matrix":
        data = list(self._r)
        for o in others:
            if o.cols != self.cols:
                raise ValueError("vstack column mismatch")
            data.extend(o._r)
        return Matrix._raw(tuple(data), len(data), self.cols)

    def kron(self, other: "Matrix") -> "Matrix":
        out = []
        for r in self._r:
            for s in other._r:
                out.append(tuple(a * b for a in r for b in s))
        return Matrix._raw(tuple(out), self.rows * other.rows, self.cols * other.cols)

    def vec(self) -> tuple:
        """Row-major flattening."""
        return tuple(v for r in self._r for v in r)

    # elimination based queries
    def rank(self) -> int:
        if self.rows <= self.cols:
            return _rank_rows(self._r)
        return _rank_rows(self.T._r)

    def column_rank(self, cols: Sequence[int]) -> int:
        """Rank of the submatrix formed by the given columns."""
        return _rank_rows(tuple(r[j] for r in self._r) for j in cols)

    def is_nilpotent(self) -> bool:
        if self.rows != self.cols:
            raise ValueError("nilpotency of a non-square matrix")
        return (self ** self.rows).is_zero() if self.rows else True

    def inverse(self) -> "Matrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        r, piv = rref(self.hstack(Matrix.identity(n)))
        if piv != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return r.submatrix(range(n), range(n, 2 * n))

    def commutes_with(self, other: "Matrix") -> bool:
        return self @ other == other @ self


# --------------------------------------------------------------------------

def rref(m: Matrix) -> tuple:
    """Reduced row echelon form and the (strictly increasing) pivot columns."""
    basis = _echelon(_int_row(r) for r in m._r)
    pivots = sorted(basis)
    # back substitution: clear each pivot column from the rows above it
    for idx in range(len(pivots) - 1, -1, -1):
        c = pivots[idx]
        p = basis[c]
        for c2 in pivots[:idx]:
            row = basis[c2]
            b = row.get(c)
            if not b:
                continue
            a = p[c]
            g = gcd(a, b)
            a //= g
            b //= g
            new = {j: v * a for j, v in row.items()}
            for j, v in p.items():
                w = new.get(j, 0) - b * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            basis[c2] = _primitive(new)
    z = Fraction(0)
    out = []
    for c in pivots:
        row = basis[c]
        lead = row[c]
        dense = [z] * m.cols
        for j, v in row.items():
            dense[j] = Fraction(v, lead)
        out.append(tuple(dense))
    for _ in range(m.rows - len(pivots)):
        out.append((z,) * m.cols)
    return Matrix._raw(tuple(out), m.rows, m.cols), pivots


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form the canonical basis of ``{v : m v = 0}``.

    Free variables are set to 1 one at a time, in column order.
    """
    r, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    cols = []
    one, z = Fraction(1), Fraction(0)
    for f in free:
        v = [z] * m.cols
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        cols.append(v)
    return Matrix.from_columns(cols, rows=m.cols)


def solve_affine(a: Matrix, b: Sequence) -> Optional[tuple]:
    """Solve ``a v = b``.

    Returns ``(particular, kernel)`` with free variables of the particular
    solution set to zero, or ``None`` when the system is inconsistent.
    """
    b = [Q(v) for v in b]
    if len(b) != a.rows:
        raise ValueError("right-hand side length does not match the row count")
    aug = a.hstack(Matrix.column(b) if a.rows else Matrix._raw((), 0, 1))
    r, pivots = rref(aug)
    if pivots and pivots[-1] == a.cols:
        return None
    z = Fraction(0)
    x = [z] * a.cols
    for i, p in enumerate(pivots):
        x[p] = r[i, a.cols]
    return tuple(x), kernel_basis(a)


# --------------------------------------------------------------------------

class Polynomial:
    """Univariate polynomial with rational coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        c = [Q(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Polynomial":
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            raise ValueError("zero polynomial has no monic form")
        lc = self.coeffs[-1]
        return Polynomial([c / lc for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Polynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{format_rational(c)}*t^{i}" if i else format_rational(c))
        return "Polynomial(" + " + ".join(terms) + ")"

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = Q(other)
            return Polynomial([c * a for a in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def divmod(self, other: "Polynomial") -> tuple:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lead()
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        while len(rem) - 1 >= dq and rem:
            shift = len(rem) - 1 - dq
            f = rem[-1] / lc
            quot[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= f * c
            while rem and rem[-1] == 0:
                rem.pop()
        return Polynomial(quot), Polynomial(rem)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[1]

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def lcm(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero() or other.is_zero():
            return Polynomial()
        return ((self * other) // self.gcd(other)).monic()

    def __call__(self, t):
        if isinstance(t, Matrix):
            return self.at_matrix(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def at_matrix(self, m: Matrix) -> Matrix:
        """Horner evaluation at a square matrix."""
        n = m.rows
        acc = Matrix.zeros(n, n)
        ident = Matrix.identity(n)
        for c in reversed(self.coeffs):
            acc = acc @ m + ident.scale(c)
        return acc

    def at_matrix_vector(self, m: Matrix, v: Sequence) -> tuple:
        """``p(m) v`` by Horner on vectors (no matrix powers formed)."""
        acc = tuple(Fraction(0) for _ in v)
        for c in reversed(self.coeffs):
            acc = m.apply(acc)
            if c:
                acc = tuple(a + c * b for a, b in zip(acc, v))
        return acc

    def to_strings(self) -> list:
        return [format_rational(c) for c in self.coeffs]


def _vector_min_poly(m: Matrix, v: tuple) -> Polynomial:
    """Monic polynomial of least degree with ``p(m) v = 0``."""
    krylov = [v]
    while True:
        w = m.apply(krylov[-1])
        sol = solve_affine(Matrix.from_columns(krylov, rows=m.rows), w)
        if sol is not None:
            coeffs = [-c for c in sol[0]] + [1]
            return Polynomial(coeffs)
        krylov.append(w)


def min_poly(m: Matrix) -> Polynomial:
    """Minimal polynomial of a square matrix.

    Computed as the lcm of the Krylov minimal polynomials of the standard
    basis vectors, skipping vectors already killed by the running lcm.
    """
    if m.rows != m.cols:
        raise ValueError("minimal polynomial of a non-square matrix")
    n = m.rows
    p = Polynomial([1])
    for i in range(n):
        e = tuple(Fraction(int(i == j)) for j in range(n))
        if not any(p.at_matrix_vector(m, e)):
            continue
        p = p.lcm(_vector_min_poly(m, e))
    return p


def min_poly_by_powers(m: Matrix) -> Polynomial:
    """First linear dependence among I, m, m^2, ... (slow reference route)."""
    if m.rows != m.cols:
        raise ValueError("minimal polynomial of a non-square matrix")
    powers = [Matrix.identity(m.rows).vec()]
    current = Matrix.identity(m.rows)
    while True:
        current = current @ m
        target = current.vec()
        sol = solve_affine(Matrix.from_columns(powers, rows=len(target)), target)
        if sol is not None:
            return Polynomial([-c for c in sol[0]] + [1])
        powers.append(target)


def squarefree_part(p: Polynomial) -> Polynomial:
    if p.is_zero():
        raise ValueError("zero input")
    g = p.gcd(p.derivative())
    return (p // g).monic()


def jordan_chevalley(m: Matrix) -> tuple:
    """Split ``m = s + n`` with ``s`` semisimple, ``n`` nilpotent, both in Q[m].

    Newton iteration ``z <- z - p(z) p'(z)^-1`` for the squarefree part ``p``
    of the minimal polynomial, started at ``z = m``.  The inverse of an
    invertible element of Q[m] is again in Q[m] (Cayley-Hamilton), so the
    plain matrix inverse stays inside the algebra.
    """
    if m.rows != m.cols:
        raise ValueError("Jordan-Chevalley decomposition of a non-square matrix")
    mp = min_poly(m)
    p = squarefree_part(mp)
    dp = p.derivative()
    # p(m)^e = 0 once e reaches the largest root multiplicity
    mult_bound = max(mp.degree - p.degree + 1, 1)
    steps = (mult_bound - 1).bit_length() + 1
    z = m
    for _ in range(steps):
        pz = p.at_matrix(z)
        if pz.is_zero():
            break
        z = z - pz @ dp.at_matrix(z).inverse()
    if not p.at_matrix(z).is_zero():
        raise JCError("JC did not converge")
    n = m - z
    if not n.is_nilpotent():
        raise JCError("JC did not converge")
    return z, n


def iterated_image_ranks(m: Matrix, cols: Sequence[int], steps: int) -> list:
    """``[rank(m^t restricted to cols) for t in 0..steps]``.

    Works on a running echelon basis of the image instead of forming powers,
    which keeps large sparse operators cheap.
    """
    if m.rows != m.cols:
        raise ValueError("iterated images need a square matrix")
    den = 1
    for row in m._r:
        for v in row:
            if v:
                den = lcm(den, v.denominator)
    columns = [{} for _ in range(m.cols)]
    for i, row in enumerate(m._r):
        for j, v in enumerate(row):
            if v:
                columns[j][i] = v.numerator * (den // v.denominator)
    current = [{c: 1} for c in dict.fromkeys(cols)]
    ranks = [len(current)]
    for _ in range(steps):
        images = []
        for vec in current:
            out: dict = {}
            for j, a in vec.items():
                for i, b in columns[j].items():
                    w = out.get(i, 0) + a * b
                    if w:
                        out[i] = w
                    else:
                        out.pop(i, None)
            if out:
                images.append(_primitive(out))
        current = list(_echelon(images).values())
        ranks.append(len(current))
        if not current:
            ranks.extend([0] * (steps + 1 - len(ranks)))
            break
    return ranks
