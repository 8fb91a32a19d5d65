"""Super vector spaces and parity-homogeneous linear maps.

Bases are always ordered even block first, then odd block.  A map's matrix is
``target_dim x source_dim`` with entry ``(r, c)`` the coefficient of target
basis vector ``r`` in the image of source basis vector ``c``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .exact import Matrix, kernel_basis, rref, solve_affine

__all__ = [
    "Parity",
    "EVEN",
    "ODD",
    "SuperSpace",
    "HomMap",
    "superdim",
    "parity_shift",
    "tensor",
    "tensor_maps",
    "braiding",
    "dual",
    "dual_map",
    "evaluation",
    "supertrace",
    "compose",
    "direct_sum",
    "direct_sum_maps",
    "restrict_to_subspace",
    "quotient_by_subspace",
    "quotient_basis",
    "subspace",
    "tensor_permutation",
    "SubquotientError",
]


class Parity(enum.IntEnum):
    EVEN = 0
    ODD = 1

    def __add__(self, other):
        return Parity((int(self) + int(other)) % 2)

    __radd__ = __add__

    @classmethod
    def of(cls, value) -> "Parity":
        if isinstance(value, Parity):
            return value
        if isinstance(value, str):
            return cls[value.upper()]
        return cls(int(value) % 2)

    @property
    def label(self) -> str:
        return self.name.lower()


EVEN = Parity.EVEN
ODD = Parity.ODD


def _sign(e) -> int:
    return -1 if int(e) % 2 else 1


class SubquotientError(ValueError):
    pass


@dataclass(frozen=True)
class SuperSpace:
    even: tuple = ()
    odd: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "even", tuple(self.even))
        object.__setattr__(self, "odd", tuple(self.odd))
        labels = self.even + self.odd
        if len(set(labels)) != len(labels):
            raise ValueError("super space labels must be distinct")

    @classmethod
    def standard(cls, m: int, n: int, prefix: str = "v") -> "SuperSpace":
        return cls(tuple(f"{prefix}{i}" for i in range(m)),
                   tuple(f"{prefix}{i}" for i in range(m, m + n)))

    @property
    def dim(self) -> int:
        return len(self.even) + len(self.odd)

    @property
    def dims(self) -> tuple:
        return (len(self.even), len(self.odd))

    @property
    def sdim(self) -> int:
        return len(self.even) - len(self.odd)

    @property
    def labels(self) -> tuple:
        return self.even + self.odd

    def parity(self, i: int) -> Parity:
        return EVEN if i < len(self.even) else ODD

    def parities(self) -> list:
        return [self.parity(i) for i in range(self.dim)]

    def indices(self, p) -> range:
        ne = len(self.even)
        return range(ne) if Parity.of(p) == EVEN else range(ne, self.dim)

    def __repr__(self):
        return f"SuperSpace({len(self.even)}|{len(self.odd)})"


def superdim(v: SuperSpace) -> tuple:
    return (len(v.even), len(v.odd), v.sdim)


def _check_blocks(source: SuperSpace, target: SuperSpace, parity: Parity, m: Matrix) -> list:
    bad = []
    for r in range(target.dim):
        pr = target.parity(r)
        row = m.row(r)
        for c in range(source.dim):
            if row[c] and pr != source.parity(c) + parity:
                bad.append((r, c))
    return bad


@dataclass(frozen=True)
class HomMap:
    """Parity-homogeneous linear map between super spaces."""

    source: SuperSpace
    target: SuperSpace
    parity: Parity
    matrix: Matrix

    def __post_init__(self):
        object.__setattr__(self, "parity", Parity.of(self.parity))
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ValueError(f"matrix shape {self.matrix.shape} does not match "
                             f"{self.target.dim}x{self.source.dim}")
        bad = _check_blocks(self.source, self.target, self.parity, self.matrix)
        if bad:
            raise ValueError(f"{self.parity.label} map has entries in forbidden blocks, e.g. {bad[0]}")

    @classmethod
    def identity(cls, v: SuperSpace) -> "HomMap":
        return cls(v, v, EVEN, Matrix.identity(v.dim))

    @classmethod
    def zero(cls, source: SuperSpace, target: SuperSpace, parity=EVEN) -> "HomMap":
        return cls(source, target, parity, Matrix.zeros(target.dim, source.dim))

    def is_endomorphism(self) -> bool:
        return self.source == self.target

    def __add__(self, other: "HomMap") -> "HomMap":
        self._compatible(other)
        return HomMap(self.source, self.target, self.parity, self.matrix + other.matrix)

    def __sub__(self, other: "HomMap") -> "HomMap":
        self._compatible(other)
        return HomMap(self.source, self.target, self.parity, self.matrix - other.matrix)

    def __neg__(self) -> "HomMap":
        return HomMap(self.source, self.target, self.parity, -self.matrix)

    def scale(self, c) -> "HomMap":
        return HomMap(self.source, self.target, self.parity, self.matrix.scale(c))

    def __matmul__(self, other: "HomMap") -> "HomMap":
        return compose(self, other)

    def _compatible(self, other):
        if (self.source, self.target, self.parity) != (other.source, other.target, other.parity):
            raise ValueError("maps differ in source, target or parity")


def parity_shift(obj):
    """Swap even and odd blocks of a space or of both ends of a map."""
    if isinstance(obj, SuperSpace):
        return SuperSpace(obj.odd, obj.even)
    if isinstance(obj, HomMap):
        src, tgt = parity_shift(obj.source), parity_shift(obj.target)
        ps = _shift_perm(obj.source)
        pt = _shift_perm(obj.target)
        return HomMap(src, tgt, obj.parity, obj.matrix.submatrix(pt, ps))
    raise TypeError(f"cannot parity shift {type(obj).__name__}")


def _shift_perm(v: SuperSpace) -> list:
    # new index i of the shifted space holds old index perm[i]
    ne = len(v.even)
    return list(range(ne, v.dim)) + list(range(ne))


def _tensor_order(v: SuperSpace, w: SuperSpace) -> list:
    """Lexicographic pairs (v major) stably sorted into even then odd block."""
    pairs = [(i, j) for i in range(v.dim) for j in range(w.dim)]
    return sorted(pairs, key=lambda ij: int(v.parity(ij[0]) + w.parity(ij[1])))


def tensor(v: SuperSpace, w: SuperSpace) -> SuperSpace:
    order = _tensor_order(v, w)
    lv, lw = v.labels, w.labels
    names = [f"{lv[i]}⊗{lw[j]}" for i, j in order]
    n_even = sum(1 for i, j in order if v.parity(i) + w.parity(j) == EVEN)
    return SuperSpace(names[:n_even], names[n_even:])


def tensor_permutation(v: SuperSpace, w: SuperSpace) -> list:
    """Canonical position -> lexicographic index ``i * dim(w) + j``."""
    return [i * w.dim + j for i, j in _tensor_order(v, w)]


def tensor_maps(f: HomMap, g: HomMap) -> HomMap:
    """``(f ⊗ g)(v ⊗ w) = (-1)^{|g||v|} f(v) ⊗ g(w)``."""
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    so = _tensor_order(f.source, g.source)
    to = _tensor_order(f.target, g.target)
    fm, gm = f.matrix, g.matrix
    gp = int(g.parity)
    z = Fraction(0)
    rows = []
    for (r1, r2) in to:
        frow, grow = fm.row(r1), gm.row(r2)
        row = []
        for (c1, c2) in so:
            a = frow[c1]
            if a:
                b = grow[c2]
                if b:
                    val = a * b
                    if gp and int(f.source.parity(c1)):
                        val = -val
                    row.append(val)
                    continue
            row.append(z)
        rows.append(tuple(row))
    return HomMap(src, tgt, f.parity + g.parity, Matrix._raw(tuple(rows), tgt.dim, src.dim))


def braiding(v: SuperSpace, w: SuperSpace) -> HomMap:
    """``v ⊗ w -> (-1)^{|v||w|} w ⊗ v``."""
    src, tgt = tensor(v, w), tensor(w, v)
    so = _tensor_order(v, w)
    pos = {ij: k for k, ij in enumerate(_tensor_order(w, v))}
    rows = [[Fraction(0)] * src.dim for _ in range(tgt.dim)]
    for c, (i, j) in enumerate(so):
        s = _sign(int(v.parity(i)) * int(w.parity(j)))
        rows[pos[(j, i)]][c] = Fraction(s)
    return HomMap(src, tgt, EVEN, Matrix(rows, src.dim))


def dual(v: SuperSpace) -> SuperSpace:
    return SuperSpace(tuple(f"{a}*" for a in v.even), tuple(f"{a}*" for a in v.odd))


def dual_map(f: HomMap) -> HomMap:
    """``(f* φ)(v) = (-1)^{|f||φ|} φ(f v)`` in the dual bases."""
    fm = f.matrix
    fp = int(f.parity)
    rows = []
    for c in range(f.source.dim):
        row = []
        for r in range(f.target.dim):
            val = fm[r, c]
            if fp and int(f.target.parity(r)):
                val = -val
            row.append(val)
        rows.append(row)
    return HomMap(dual(f.target), dual(f.source), f.parity,
                  Matrix(rows, f.target.dim) if rows else Matrix.zeros(0, f.target.dim))


def evaluation(v: SuperSpace) -> HomMap:
    """``ev: V ⊗ V* -> k``, ``v ⊗ φ -> (-1)^{|v||φ|} φ(v)``."""
    src = tensor(v, dual(v))
    unit = SuperSpace(("1",), ())
    row = []
    for i, j in _tensor_order(v, dual(v)):
        row.append(Fraction(_sign(int(v.parity(i)))) if i == j else Fraction(0))
    return HomMap(src, unit, EVEN, Matrix([row], src.dim))


def supertrace(f: HomMap) -> Fraction:
    if f.parity != EVEN or not f.is_endomorphism():
        raise ValueError("supertrace undefined")
    m = f.matrix
    ne = len(f.source.even)
    return (sum((m[i, i] for i in range(ne)), Fraction(0))
            - sum((m[i, i] for i in range(ne, f.source.dim)), Fraction(0)))


def compose(f: HomMap, g: HomMap) -> HomMap:
    """``f ∘ g``."""
    if g.target != f.source:
        raise ValueError("cannot compose: target of g is not the source of f")
    return HomMap(g.source, f.target, f.parity + g.parity, f.matrix @ g.matrix)


def _disjoint_labels(a: tuple, b: tuple) -> tuple:
    taken = set(a)
    out = []
    for lab in b:
        new = lab
        while new in taken:
            new = new + "'"
        taken.add(new)
        out.append(new)
    return tuple(out)


def direct_sum(v: SuperSpace, w: SuperSpace) -> SuperSpace:
    wl = _disjoint_labels(v.labels, w.labels)
    return SuperSpace(v.even + wl[: len(w.even)], v.odd + wl[len(w.even):])


def _sum_embedding(v: SuperSpace, w: SuperSpace) -> tuple:
    ne_v, ne_w = len(v.even), len(w.even)
    vi = list(range(ne_v)) + [ne_v + ne_w + k for k in range(len(v.odd))]
    wi = [ne_v + k for k in range(ne_w)] + [ne_v + ne_w + len(v.odd) + k for k in range(len(w.odd))]
    return vi, wi


def direct_sum_maps(f: HomMap, g: HomMap) -> HomMap:
    if f.parity != g.parity:
        raise ValueError("direct sum of maps with different parities")
    src = direct_sum(f.source, g.source)
    tgt = direct_sum(f.target, g.target)
    svi, swi = _sum_embedding(f.source, g.source)
    tvi, twi = _sum_embedding(f.target, g.target)
    rows = [[Fraction(0)] * src.dim for _ in range(tgt.dim)]
    for r in range(f.target.dim):
        for c in range(f.source.dim):
            rows[tvi[r]][svi[c]] = f.matrix[r, c]
    for r in range(g.target.dim):
        for c in range(g.source.dim):
            rows[twi[r]][swi[c]] = g.matrix[r, c]
    return HomMap(src, tgt, f.parity, Matrix(rows, src.dim) if rows else Matrix.zeros(0, src.dim))


# --------------------------------------------------------------------------
# graded subspaces given as column spans

def _graded_split(space: SuperSpace, basis: Matrix) -> tuple:
    """Split a column span into pure-even and pure-odd canonical bases."""
    n = space.dim
    ev = list(space.indices(EVEN))
    od = list(space.indices(ODD))
    total = basis.rank()
    pieces = []
    for idx in (ev, od):
        others = [i for i in range(n) if i not in idx]
        # vectors of the span that vanish outside idx
        if basis.cols == 0:
            pieces.append(Matrix.zeros(n, 0))
            continue
        k = kernel_basis(basis.submatrix(others, range(basis.cols))) if others else Matrix.identity(basis.cols)
        vecs = basis @ k if k.cols else Matrix.zeros(n, 0)
        pieces.append(_column_echelon(vecs))
    if pieces[0].cols + pieces[1].cols != total:
        raise SubquotientError("subspace not graded")
    return pieces[0], pieces[1]


def _column_echelon(vecs: Matrix) -> Matrix:
    """Canonical basis of a column span (rref of the transpose)."""
    if vecs.cols == 0:
        return vecs
    r, piv = rref(vecs.T)
    return r.submatrix(range(len(piv)), range(vecs.rows)).T


def restrict_to_subspace(f: HomMap, basis: Matrix) -> HomMap:
    """Restriction of an endomorphism to an invariant graded subspace.

    The subspace gets its canonical graded basis (even vectors first).
    """
    if not f.is_endomorphism():
        raise ValueError("restriction needs an endomorphism")
    sub, b = subspace(f.source, basis)
    coords = []
    for c in range(b.cols):
        image = f.matrix.apply(b.col(c))
        sol = solve_affine(b, image)
        if sol is None:
            raise SubquotientError("subspace is not invariant under the map")
        coords.append(sol[0])
    m = Matrix.from_columns(coords, rows=b.cols)
    return HomMap(sub, sub, f.parity, m)


def subspace(space: SuperSpace, basis: Matrix) -> tuple:
    """Graded canonical basis of a column span and the corresponding space."""
    ev, od = _graded_split(space, basis)
    b = ev.hstack(od)
    sub = SuperSpace(tuple(f"s{i}" for i in range(ev.cols)),
                     tuple(f"s{i}" for i in range(ev.cols, ev.cols + od.cols)))
    return sub, b


def quotient_basis(space: SuperSpace, basis: Matrix) -> tuple:
    """Representatives completing a graded subspace basis, via RREF pivots.

    Returns ``(quotient space, representatives, subspace basis)``; the
    representatives are standard basis vectors, even ones first.
    """
    ev, od = _graded_split(space, basis)
    sub = ev.hstack(od)
    n = space.dim
    aug = sub.hstack(Matrix.identity(n))
    _, piv = rref(aug)
    chosen = [p - sub.cols for p in piv if p >= sub.cols]
    reps = Matrix.from_columns([[Fraction(int(i == c)) for i in range(n)] for c in chosen], rows=n)
    ne = sum(1 for c in chosen if space.parity(c) == EVEN)
    q = SuperSpace(tuple(f"q{i}" for i in range(ne)), tuple(f"q{i}" for i in range(ne, len(chosen))))
    return q, reps, sub


def quotient_by_subspace(f: HomMap, basis: Matrix) -> HomMap:
    """Endomorphism induced on ``V / U`` for an ``f``-stable graded ``U``."""
    if not f.is_endomorphism():
        raise ValueError("quotient needs an endomorphism")
    q, reps, sub = quotient_basis(f.source, basis)
    big = reps.hstack(sub)
    coords = []
    for c in range(reps.cols):
        image = f.matrix.apply(reps.col(c))
        sol = solve_affine(big, image)
        coords.append(sol[0][: reps.cols])
    for c in range(sub.cols):
        sol = solve_affine(big, f.matrix.apply(sub.col(c)))
        if any(sol[0][: reps.cols]):
            raise SubquotientError("subspace is not invariant under the map")
    m = Matrix.from_columns(coords, rows=reps.cols) if coords else Matrix.zeros(0, 0)
    return HomMap(q, q, f.parity, m)
