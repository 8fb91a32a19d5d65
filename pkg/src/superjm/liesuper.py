"""Lie superalgebras by structure constants and their representations."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .exact import Matrix, Q, jordan_chevalley, solve_affine
from .superlinalg import (
    EVEN,
    ODD,
    HomMap,
    Parity,
    SuperSpace,
    direct_sum_maps,
    dual_map,
    parity_shift,
    tensor_maps,
)

__all__ = [
    "LieSuperAlgebra",
    "AlgebraElement",
    "Representation",
    "MinusculeData",
    "gl_superalgebra",
    "osp12",
    "osp_simple",
    "osp_y_coefficients",
    "validate",
    "is_faithful",
    "adjoint_rep",
    "minuscule_data",
    "tensor_rep",
    "dual_rep",
    "direct_sum_rep",
    "shift_rep",
    "trivial_rep",
]


def _sign(e) -> int:
    return -1 if int(e) % 2 else 1


class LieSuperAlgebra:
    """Finite-dimensional Lie superalgebra given by structure constants.

    ``brackets`` maps ``(i, j)`` with ``i <= j`` to ``{k: c}``, meaning
    ``[b_i, b_j] = sum c b_k``; the ``i > j`` half follows from super
    antisymmetry and is never stored.
    """

    def __init__(self, names: Sequence[str], parities: Sequence, brackets: Mapping):
        self.names = tuple(names)
        self.parities = tuple(Parity.of(p) for p in parities)
        if len(self.names) != len(self.parities):
            raise ValueError("names and parities differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be distinct")
        n = len(self.names)
        table = {}
        for (i, j), terms in brackets.items():
            if not (0 <= i <= j < n):
                raise ValueError(f"bracket key {(i, j)} must satisfy 0 <= i <= j < {n}")
            clean = {int(k): Q(c) for k, c in terms.items() if Q(c) != 0}
            if clean:
                table[(i, j)] = clean
        self._table = table
        self._full = self._expand()
        self._index = {name: i for i, name in enumerate(self.names)}

    def _expand(self) -> list:
        n = self.dim
        full = [[{} for _ in range(n)] for _ in range(n)]
        for (i, j), terms in self._table.items():
            full[i][j] = dict(terms)
            if i != j:
                s = -_sign(int(self.parities[i]) * int(self.parities[j]))
                full[j][i] = {k: s * c for k, c in terms.items()}
        return full

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def dims(self) -> tuple:
        ev = sum(1 for p in self.parities if p == EVEN)
        return (ev, self.dim - ev)

    @property
    def brackets(self) -> dict:
        return {k: dict(v) for k, v in self._table.items()}

    def index(self, name: str) -> int:
        return self._index[name]

    def basis_bracket(self, i: int, j: int) -> dict:
        return self._full[i][j]

    def indices(self, parity) -> list:
        p = Parity.of(parity)
        return [i for i, q in enumerate(self.parities) if q == p]

    def element(self, coeffs) -> "AlgebraElement":
        return AlgebraElement.of(self, coeffs)

    def basis_element(self, i) -> "AlgebraElement":
        if isinstance(i, str):
            i = self.index(i)
        return AlgebraElement(self, tuple(Fraction(int(k == i)) for k in range(self.dim)))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, (Fraction(0),) * self.dim)

    def bracket(self, u: "AlgebraElement", v: "AlgebraElement") -> "AlgebraElement":
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(u.coeffs):
            if not a:
                continue
            for j, b in enumerate(v.coeffs):
                if not b:
                    continue
                ab = a * b
                for k, c in self._full[i][j].items():
                    out[k] += ab * c
        return AlgebraElement(self, tuple(out))

    def ad(self, u: "AlgebraElement") -> Matrix:
        """Matrix of ``ad_u`` in the basis (column j = [u, b_j])."""
        cols = [self.bracket(u, self.basis_element(j)).coeffs for j in range(self.dim)]
        return Matrix.from_columns(cols, rows=self.dim)

    def space(self) -> SuperSpace:
        ev = [self.names[i] for i in self.indices(EVEN)]
        od = [self.names[i] for i in self.indices(ODD)]
        return SuperSpace(ev, od)

    def canonical_order(self) -> list:
        """Basis indices reordered even first (the adjoint space order)."""
        return self.indices(EVEN) + self.indices(ODD)

    def with_structure(self, brackets: Mapping) -> "LieSuperAlgebra":
        return LieSuperAlgebra(self.names, self.parities, brackets)

    def __eq__(self, other):
        if not isinstance(other, LieSuperAlgebra):
            return NotImplemented
        return (self.names, self.parities, self._table) == (other.names, other.parities, other._table)

    def __hash__(self):
        return hash((self.names, self.parities))

    def __repr__(self):
        ev, od = self.dims
        return f"LieSuperAlgebra(dim=({ev}|{od}), basis={list(self.names)})"


@dataclass(frozen=True)
class AlgebraElement:
    algebra: LieSuperAlgebra
    coeffs: tuple

    @classmethod
    def of(cls, algebra: LieSuperAlgebra, coeffs) -> "AlgebraElement":
        if isinstance(coeffs, AlgebraElement):
            return coeffs
        if isinstance(coeffs, Mapping):
            vec = [Fraction(0)] * algebra.dim
            for name, c in coeffs.items():
                vec[algebra.index(name)] = Q(c)
            return cls(algebra, tuple(vec))
        vec = tuple(Q(c) for c in coeffs)
        if len(vec) != algebra.dim:
            raise ValueError("coefficient vector has the wrong length")
        return cls(algebra, vec)

    def __add__(self, other):
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coeffs))

    def scale(self, c):
        c = Q(c)
        return AlgebraElement(self.algebra, tuple(c * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def parity(self) -> Optional[Parity]:
        """Parity if homogeneous (zero counts as even), else ``None``."""
        ps = {self.algebra.parities[i] for i, c in enumerate(self.coeffs) if c}
        if not ps:
            return EVEN
        if len(ps) == 1:
            return ps.pop()
        return None

    def is_odd(self) -> bool:
        return all(not c or self.algebra.parities[i] == ODD for i, c in enumerate(self.coeffs))

    def as_dict(self) -> dict:
        return {self.algebra.names[i]: c for i, c in enumerate(self.coeffs) if c}

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs or (
            self.algebra == other.algebra and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = " + ".join(f"{c}*{n}" for n, c in self.as_dict().items()) or "0"
        return f"AlgebraElement({terms})"


class Representation:
    """A representation ``rho`` of a Lie superalgebra on a super space."""

    def __init__(self, algebra: LieSuperAlgebra, space: SuperSpace, action: Sequence[HomMap]):
        action = tuple(action)
        if len(action) != algebra.dim:
            raise ValueError("need exactly one action map per basis element")
        for b, f in enumerate(action):
            if f.source != space or f.target != space:
                raise ValueError(f"action of {algebra.names[b]} is not an endomorphism of the space")
            if f.parity != algebra.parities[b]:
                raise ValueError(f"action of {algebra.names[b]} has the wrong parity")
        self.algebra = algebra
        self.space = space
        self.action = action

    @classmethod
    def from_matrices(cls, algebra: LieSuperAlgebra, space: SuperSpace, matrices) -> "Representation":
        if isinstance(matrices, Mapping):
            matrices = [matrices[name] for name in algebra.names]
        maps = [HomMap(space, space, algebra.parities[b], m) for b, m in enumerate(matrices)]
        return cls(algebra, space, maps)

    @property
    def dim(self) -> int:
        return self.space.dim

    def matrix(self, b) -> Matrix:
        if isinstance(b, str):
            b = self.algebra.index(b)
        return self.action[b].matrix

    def rho(self, u: AlgebraElement) -> Matrix:
        n = self.space.dim
        acc = Matrix.zeros(n, n)
        for b, c in enumerate(u.coeffs):
            if c:
                acc = acc + self.action[b].matrix.scale(c)
        return acc

    def rho_map(self, u: AlgebraElement) -> HomMap:
        p = u.parity
        if p is None:
            raise ValueError("element is not parity homogeneous")
        return HomMap(self.space, self.space, p, self.rho(u))

    def __repr__(self):
        ev, od = self.space.dims
        return f"Representation({self.algebra!r} on ({ev}|{od}))"


def trivial_rep(algebra: LieSuperAlgebra, parity=EVEN) -> Representation:
    space = SuperSpace(("1",), ()) if Parity.of(parity) == EVEN else SuperSpace((), ("1",))
    return Representation(algebra, space, [HomMap.zero(space, space, p) for p in algebra.parities])


def tensor_rep(a: Representation, b: Representation) -> Representation:
    """``rho(x) = rho_a(x) ⊗ 1 + 1 ⊗ rho_b(x)`` with Koszul signs."""
    if a.algebra != b.algebra:
        raise ValueError("representations of different algebras")
    ia, ib = HomMap.identity(a.space), HomMap.identity(b.space)
    maps = [tensor_maps(fa, ib) + tensor_maps(ia, fb) for fa, fb in zip(a.action, b.action)]
    return Representation(a.algebra, maps[0].source if maps else a.space, maps)


def dual_rep(a: Representation) -> Representation:
    maps = [-dual_map(f) for f in a.action]
    from .superlinalg import dual
    return Representation(a.algebra, dual(a.space), maps)


def direct_sum_rep(a: Representation, b: Representation) -> Representation:
    if a.algebra != b.algebra:
        raise ValueError("representations of different algebras")
    maps = [direct_sum_maps(fa, fb) for fa, fb in zip(a.action, b.action)]
    from .superlinalg import direct_sum
    return Representation(a.algebra, direct_sum(a.space, b.space), maps)


def shift_rep(a: Representation) -> Representation:
    return Representation(a.algebra, parity_shift(a.space), [parity_shift(f) for f in a.action])


# --------------------------------------------------------------------------
# constructors

def gl_superalgebra(m: int, n: int) -> tuple:
    """gl(m|n) on matrix units ``E{i}{j}`` (1-based) with its defining rep."""
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("gl(m|n) needs m + n >= 1")
    d = m + n

    def par(i):
        return 0 if i < m else 1

    units = [(i, j) for i in range(d) for j in range(d)]
    # even units first so the adjoint space keeps the algebra's order
    units.sort(key=lambda ij: (par(ij[0]) + par(ij[1])) % 2)
    names = [f"E{i + 1}{j + 1}" if d < 10 else f"E{i + 1}_{j + 1}" for i, j in units]
    parities = [(par(i) + par(j)) % 2 for i, j in units]
    pos = {u: k for k, u in enumerate(units)}
    brackets = {}
    for a, (i, j) in enumerate(units):
        for b in range(a, len(units)):
            k, l = units[b]
            # [E_ij, E_kl] = δ_jk E_il - (-1)^{|E_ij||E_kl|} δ_li E_kj
            terms = {}
            if j == k:
                terms[pos[(i, l)]] = terms.get(pos[(i, l)], 0) + 1
            if l == i:
                s = _sign(parities[a] * parities[b])
                terms[pos[(k, j)]] = terms.get(pos[(k, j)], 0) - s
            terms = {t: c for t, c in terms.items() if c}
            if terms:
                brackets[(a, b)] = terms
    algebra = LieSuperAlgebra(names, parities, brackets)
    space = SuperSpace.standard(m, n)
    mats = []
    for i, j in units:
        rows = [[0] * d for _ in range(d)]
        rows[i][j] = 1
        mats.append(Matrix(rows))
    return algebra, Representation.from_matrices(algebra, space, mats)


def osp_y_coefficients(k: int) -> list:
    """``c_0, ..., c_{2k}`` with ``c_0 = 0`` and ``c_{j+1} + c_j = 2k - 2j``."""
    c = [Fraction(0)]
    for j in range(2 * k):
        c.append(Fraction(2 * k - 2 * j) - c[-1])
    return c


def _osp_chain_matrices(k: int) -> dict:
    """h, X, Y on the chain a_0..a_{2k} (canonical even-then-odd order)."""
    length = 2 * k + 1
    order = [j for j in range(length) if j % 2 == 0] + [j for j in range(length) if j % 2 == 1]
    pos = {j: i for i, j in enumerate(order)}
    c = osp_y_coefficients(k)
    h = [[Fraction(0)] * length for _ in range(length)]
    x = [[Fraction(0)] * length for _ in range(length)]
    y = [[Fraction(0)] * length for _ in range(length)]
    for j in range(length):
        h[pos[j]][pos[j]] = Fraction(2 * k - 2 * j)
        if j + 1 < length:
            x[pos[j + 1]][pos[j]] = Fraction(1)
        if j > 0:
            y[pos[j - 1]][pos[j]] = c[j]
    hm, xm, ym = Matrix(h), Matrix(x), Matrix(y)
    return {"h": hm, "X": xm, "Y": ym, "E": ym @ ym, "F": xm @ xm}


OSP_NAMES = ("h", "E", "F", "X", "Y")


def osp12() -> LieSuperAlgebra:
    """osp(1|2) on ``h, E, F, X, Y`` with ``E = [Y,Y]/2`` and ``F = [X,X]/2``.

    Structure constants are read off the supercommutators of the (2|1)
    dimensional chain matrices, then checked against the defining relations
    ``[h,X] = -2X``, ``[h,Y] = 2Y``, ``[Y,X] = h``.
    """
    mats = _osp_chain_matrices(1)
    parities = (0, 0, 0, 1, 1)
    basis = [mats[nm] for nm in OSP_NAMES]
    cols = [m.vec() for m in basis]
    span = Matrix.from_columns(cols)
    brackets = {}
    for i in range(5):
        for j in range(i, 5):
            a, b = basis[i], basis[j]
            s = _sign(parities[i] * parities[j])
            comm = a @ b - (b @ a).scale(s)
            sol = solve_affine(span, comm.vec())
            if sol is None:
                raise ArithmeticError("osp(1|2) chain matrices do not close")
            terms = {k: c for k, c in enumerate(sol[0]) if c}
            if terms:
                brackets[(i, j)] = terms
    alg = LieSuperAlgebra(OSP_NAMES, parities, brackets)
    h, X, Y = (alg.basis_element(nm) for nm in ("h", "X", "Y"))
    assert alg.bracket(h, X) == X.scale(-2)
    assert alg.bracket(h, Y) == Y.scale(2)
    assert alg.bracket(Y, X) == h
    return alg


_OSP = None


def _osp() -> LieSuperAlgebra:
    global _OSP
    if _OSP is None:
        _OSP = osp12()
    return _OSP


def osp_simple(k: int, shift=EVEN) -> Representation:
    """The simple osp(1|2)-module of dimension (k+1|k), parity shifted on request."""
    if k < 0:
        raise ValueError("k must be non-negative")
    mats = _osp_chain_matrices(k)
    space = SuperSpace(tuple(f"a{j}" for j in range(0, 2 * k + 1, 2)),
                       tuple(f"a{j}" for j in range(1, 2 * k + 1, 2)))
    rep = Representation.from_matrices(_osp(), space, mats)
    if Parity.of(shift) == ODD:
        rep = shift_rep(rep)
    return rep


# --------------------------------------------------------------------------
# checks

def validate(obj) -> list:
    """List of violated identities; empty means valid."""
    if isinstance(obj, LieSuperAlgebra):
        return _validate_algebra(obj)
    if isinstance(obj, Representation):
        return _validate_rep(obj)
    raise TypeError(f"cannot validate {type(obj).__name__}")


def _validate_algebra(g: LieSuperAlgebra) -> list:
    problems = []
    n = g.dim
    p = [int(q) for q in g.parities]
    for i in range(n):
        if p[i] == 0 and g.basis_bracket(i, i):
            problems.append(f"antisymmetry: [{g.names[i]},{g.names[i]}] != 0 for even element")
        for j in range(n):
            for k, c in g.basis_bracket(i, j).items():
                if p[k] != (p[i] + p[j]) % 2:
                    problems.append(f"parity: [{g.names[i]},{g.names[j]}] has a {g.names[k]} term")
    full = g._full

    def left(i: int, terms: dict) -> dict:
        # [b_i, sum c b_l] on sparse coefficient dicts
        out: dict = {}
        for l, c in terms.items():
            for k, d in full[i][l].items():
                out[k] = out.get(k, 0) + c * d
        return {k: v for k, v in out.items() if v}

    def right(terms: dict, k: int) -> dict:
        out: dict = {}
        for l, c in terms.items():
            for m, d in full[l][k].items():
                out[m] = out.get(m, 0) + c * d
        return {m: v for m, v in out.items() if v}

    for i in range(n):
        for j in range(n):
            bij = full[i][j]
            s = _sign(p[i] * p[j])
            for k in range(n):
                # [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
                lhs = left(i, full[j][k])
                rhs = right(bij, k)
                for m, v in left(j, full[i][k]).items():
                    rhs[m] = rhs.get(m, 0) + s * v
                if {m: v for m, v in rhs.items() if v} != lhs:
                    problems.append(f"jacobi: ({g.names[i]}, {g.names[j]}, {g.names[k]})")
    return problems


def _validate_rep(rep: Representation) -> list:
    g = rep.algebra
    problems = []
    p = [int(q) for q in g.parities]
    mats = [f.matrix for f in rep.action]
    for i in range(g.dim):
        for j in range(i, g.dim):
            lhs = rep.rho(g.bracket(g.basis_element(i), g.basis_element(j)))
            rhs = mats[i] @ mats[j] - (mats[j] @ mats[i]).scale(_sign(p[i] * p[j]))
            if lhs != rhs:
                problems.append(f"homomorphism: rho([{g.names[i]},{g.names[j]}])")
    return problems


def is_faithful(rep: Representation) -> bool:
    if rep.algebra.dim == 0:
        return True
    cols = [f.matrix.vec() for f in rep.action]
    if not cols[0]:
        return False
    return Matrix.from_columns(cols).rank() == rep.algebra.dim


def adjoint_rep(g: LieSuperAlgebra) -> Representation:
    """Adjoint representation on the algebra itself, even basis vectors first."""
    order = g.canonical_order()
    space = g.space()
    maps = []
    for b in range(g.dim):
        ad = g.ad(g.basis_element(b))
        maps.append(HomMap(space, space, g.parities[b], ad.submatrix(order, order)))
    return Representation(g, space, maps)


# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MinusculeData:
    x: AlgebraElement
    y: AlgebraElement
    rho_x: Matrix
    y_s: Matrix
    y_n: Matrix


def minuscule_data(rep: Representation, x: AlgebraElement) -> MinusculeData:
    """``[x,x] = y`` and the Jordan-Chevalley split of ``rho(y)``."""
    if not x.is_odd():
        raise ValueError("minuscule data needs an odd element")
    g = rep.algebra
    y = g.bracket(x, x)
    rx = rep.rho(x)
    ry = rep.rho(y)
    if ry != (rx @ rx).scale(2):
        raise ArithmeticError("rho([x,x]) != 2 rho(x)^2: representation is invalid")
    y_s, y_n = jordan_chevalley(ry)
    if not (y_s.commutes_with(rx) and y_n.commutes_with(rx)):
        raise ArithmeticError("Jordan-Chevalley parts do not commute with rho(x)")
    return MinusculeData(x=x, y=y, rho_x=rx, y_s=y_s, y_n=y_n)
