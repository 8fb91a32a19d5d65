"""Semisimplification into osp(1|2) data, fusion rules and the DS functor."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import Matrix, kernel_basis, solve_affine
from .liesuper import (
    AlgebraElement,
    LieSuperAlgebra,
    Representation,
    _osp,
    adjoint_rep,
    minuscule_data,
    osp_y_coefficients,
    validate,
)
from .nilform import (
    BlockDecomposition,
    DefectError,
    OddNilpotent,
    adapted_basis,
    block_multiplicities,
)
from .superlinalg import EVEN, ODD, HomMap, Parity, SuperSpace, _graded_split, restrict_to_subspace

__all__ = [
    "SemisimpleObject",
    "Ga11Object",
    "semisimplify",
    "phi_nilpotent",
    "phi_general",
    "T_functor",
    "osp_rep_to_semisimple",
    "y_perturbation_dimension",
    "ga11_fusion",
    "osp_fusion",
    "ga11_tensor",
    "DSModule",
    "ds_module",
    "ds_algebra",
    "ds_rep",
    "restriction_dims",
    "hinich_witness",
]


def _normalize(items) -> tuple:
    c = Counter()
    for a, p, m in items:
        if m:
            c[(int(a), Parity.of(p))] += int(m)
    return tuple((a, p, m) for (a, p), m in sorted(c.items()) if m)


@dataclass(frozen=True)
class SemisimpleObject:
    """``⊕ (Π^shift M̃_{2k})^mult`` stored as sorted ``(k, shift, mult)``."""

    summands: tuple = ()

    @classmethod
    def of(cls, items) -> "SemisimpleObject":
        return cls(_normalize(tuple(t) + (1,) if len(t) == 2 else tuple(t) for t in items))

    def __post_init__(self):
        object.__setattr__(self, "summands", _normalize(self.summands))

    def is_zero(self) -> bool:
        return not self.summands

    @property
    def dims(self) -> tuple:
        ev = od = 0
        for k, s, m in self.summands:
            big, small = (k + 1) * m, k * m
            if s == EVEN:
                ev, od = ev + big, od + small
            else:
                ev, od = ev + small, od + big
        return (ev, od)

    @property
    def sdim(self) -> int:
        ev, od = self.dims
        return ev - od

    def __add__(self, other: "SemisimpleObject") -> "SemisimpleObject":
        return SemisimpleObject(self.summands + other.summands)


@dataclass(frozen=True)
class Ga11Object:
    """``⊕ (Π^shift M_{length-1})^mult`` stored as sorted ``(length, shift, mult)``."""

    summands: tuple = ()

    @classmethod
    def of(cls, items) -> "Ga11Object":
        return cls(_normalize(tuple(t) + (1,) if len(t) == 2 else tuple(t) for t in items))

    @classmethod
    def from_blocks(cls, dec: BlockDecomposition) -> "Ga11Object":
        return cls(tuple((b.length, b.top_parity, b.mult) for b in dec.blocks))

    def __post_init__(self):
        object.__setattr__(self, "summands", _normalize(self.summands))

    @property
    def dims(self) -> tuple:
        return BlockDecomposition.from_blocks(self.summands).dims

    def __add__(self, other: "Ga11Object") -> "Ga11Object":
        return Ga11Object(self.summands + other.summands)


def semisimplify(obj) -> SemisimpleObject:
    """Drop even-length blocks; a block of length ``2k+1`` becomes ``M̃_{2k}``."""
    if isinstance(obj, BlockDecomposition):
        obj = Ga11Object.from_blocks(obj)
    if not isinstance(obj, Ga11Object):
        raise TypeError("semisimplify expects a Ga11Object or BlockDecomposition")
    return SemisimpleObject(tuple(((l - 1) // 2, s, m) for l, s, m in obj.summands if l % 2 == 1))


def _odd_map(rep: Representation, x: AlgebraElement) -> HomMap:
    if not x.is_odd():
        raise ValueError("element must be odd")
    return HomMap(rep.space, rep.space, ODD, rep.rho(x))


def phi_nilpotent(rep: Representation, x: AlgebraElement) -> SemisimpleObject:
    f = _odd_map(rep, x)
    if not f.matrix.is_nilpotent():
        raise ValueError("element not nilpotent; use phi_general")
    return semisimplify(block_multiplicities(OddNilpotent(f)))


def phi_general(rep: Representation, x: AlgebraElement) -> SemisimpleObject:
    """Semisimplify ``x`` on the zero eigenspace ``Ker(y_s)`` of ``y = [x,x]``."""
    f = _odd_map(rep, x)
    data = minuscule_data(rep, x)
    fixed = kernel_basis(data.y_s)
    if fixed.cols == 0:
        return SemisimpleObject()
    restricted = restrict_to_subspace(f, fixed)
    if not restricted.matrix.is_nilpotent():
        raise DefectError("x is not nilpotent on Ker(y_s)")
    return semisimplify(block_multiplicities(OddNilpotent(restricted)))


# --------------------------------------------------------------------------
# T = Gr with its osp(1|2) action

def T_functor(op: OddNilpotent) -> Representation:
    """osp(1|2)-module on the associated graded of a neat operator.

    Basis: chain vectors of the adapted basis, even ones first.  ``h`` is the
    filtration degree, ``X`` the induced ``x``, ``Y`` the lowering partner fixed
    by ``c_0 = 0`` and ``c_{j+1} + c_j = k - 2j`` along each chain.
    """
    dec = adapted_basis(op)
    if any(b.length % 2 == 0 for b in dec.blocks):
        raise ValueError("T is defined only for neat operators")
    space = op.space
    slots = []  # (chain index, position, parity, vector)
    for ci, ch in enumerate(dec.chains):
        for j, v in enumerate(ch):
            slots.append((ci, j, _parity_of(space, v), v))
    slots.sort(key=lambda s: int(s[2]))
    n = len(slots)
    pos = {(ci, j): i for i, (ci, j, _, _) in enumerate(slots)}
    labels = [f"g{ci}_{j}" for ci, j, _, _ in slots]
    n_even = sum(1 for s in slots if s[2] == EVEN)
    gr = SuperSpace(tuple(labels[:n_even]), tuple(labels[n_even:]))
    if n == 0:
        return Representation.from_matrices(_osp(), gr, [Matrix.zeros(0, 0)] * 5)

    # induced x read off in the chain basis
    c = Matrix.from_columns([s[3] for s in slots], rows=n)
    x_gr = c.inverse() @ op.matrix @ c
    h = [[Fraction(0)] * n for _ in range(n)]
    y = [[Fraction(0)] * n for _ in range(n)]
    for ci, ch in enumerate(dec.chains):
        k = len(ch) - 1
        coeffs = osp_y_coefficients(k // 2)
        for j in range(len(ch)):
            h[pos[(ci, j)]][pos[(ci, j)]] = Fraction(k - 2 * j)
            if j > 0:
                y[pos[(ci, j - 1)]][pos[(ci, j)]] = coeffs[j]
    hm, ym = Matrix(h), Matrix(y)
    mats = {"h": hm, "E": ym @ ym, "F": x_gr @ x_gr, "X": x_gr, "Y": ym}
    rep = Representation.from_matrices(_osp(), gr, mats)
    problems = validate(rep)
    if problems:
        raise DefectError("T construction is not a representation: " + problems[0])
    return rep


def _parity_of(space: SuperSpace, v) -> Parity:
    ps = {space.parity(i) for i, a in enumerate(v) if a}
    if len(ps) != 1:
        raise DefectError("vector is not parity homogeneous")
    return ps.pop()


def osp_rep_to_semisimple(rep: Representation) -> SemisimpleObject:
    """Simple multiplicities of an osp(1|2)-module, read from its X blocks."""
    x = rep.action[rep.algebra.index("X")]
    dec = block_multiplicities(OddNilpotent(x))
    if any(b.length % 2 == 0 for b in dec.blocks):
        raise DefectError("X has an even-length block on an osp(1|2)-module")
    return semisimplify(dec)


def y_perturbation_dimension(rep: Representation) -> int:
    """Dimension of odd ``Z`` with ``[h, Z] = 2Z`` and ``[Z, X] = 0``.

    Zero means ``Y`` is uniquely determined by ``h`` and ``X``.
    """
    space = rep.space
    n = space.dim
    h, x = rep.matrix("h"), rep.matrix("X")
    unknowns = [(r, c) for r in range(n) for c in range(n) if space.parity(r) != space.parity(c)]
    if not unknowns:
        return 0
    rows = []
    # [h, Z] - 2Z = 0 and ZX + XZ = 0, entry by entry
    for i in range(n):
        for j in range(n):
            e1, e2 = [], []
            for r, c in unknowns:
                a = (h[i, r] if c == j else 0) - (h[c, j] if r == i else 0) - (2 if (r, c) == (i, j) else 0)
                b = (x[c, j] if r == i else 0) + (x[i, r] if c == j else 0)
                e1.append(a)
                e2.append(b)
            rows.append(e1)
            rows.append(e2)
    return len(unknowns) - Matrix(rows).rank()


# --------------------------------------------------------------------------
# fusion

def _pi(e) -> Parity:
    return Parity(int(e) % 2)


def ga11_fusion(left, right) -> Ga11Object:
    """``Π^a M_p ⊗ Π^b M_q`` by the closed-form rules; inputs are ``(index, shift)``."""
    p, a = int(left[0]), Parity.of(left[1])
    q, b = int(right[0]), Parity.of(right[1])
    if p < 0 or q < 0:
        raise ValueError("module indices must be non-negative")
    shift = a + b
    if p % 2 == 1 and q % 2 == 0:
        p, q = q, p
    out = []
    if p % 2 == 0 and q % 2 == 0:
        k, m = p // 2, q // 2
        for s in range(abs(k - m), k + m + 1):
            out.append((2 * s + 1, shift + _pi(k + m - s), 1))
    elif p % 2 == 0:
        # M_{2m} ⊗ M_{2k+1}, with the odd index on the right after the swap
        m, k = p // 2, q // 2
        for s in range(min(abs(k - m), abs(k - m + 1)), k + m + 1):
            out.append((2 * s + 2, shift + _pi(k + m - s), 1))
    else:
        # s runs in steps of two, as in the sl(2) rule; consecutive s would
        # overshoot the dimension (2k+2)(2m+2)
        k, m = p // 2, q // 2
        for s in range(abs(k - m), k + m + 1, 2):
            out.append((2 * s + 2, shift, 1))
            out.append((2 * s + 2, shift + ODD, 1))
    return Ga11Object(tuple(out))


def _as_semisimple(obj) -> SemisimpleObject:
    if isinstance(obj, SemisimpleObject):
        return obj
    return SemisimpleObject(((int(obj[0]), Parity.of(obj[1]), 1),))


def osp_fusion(left, right) -> SemisimpleObject:
    """``M̃_{2k} ⊗ M̃_{2m} = ⊕_{s=|k-m|}^{k+m} Π^{k+m-s} M̃_{2s}``, bilinearly."""
    lo, ro = _as_semisimple(left), _as_semisimple(right)
    out = []
    for k, a, ma in lo.summands:
        for m, b, mb in ro.summands:
            for s in range(abs(k - m), k + m + 1):
                out.append((s, a + b + _pi(k + m - s), ma * mb))
    return SemisimpleObject(tuple(out))


def ga11_tensor(f: OddNilpotent, g: OddNilpotent) -> OddNilpotent:
    """The operator ``x ⊗ 1 + 1 ⊗ x`` on the tensor product (Koszul signs)."""
    from .superlinalg import tensor_maps
    x = tensor_maps(f.x, HomMap.identity(g.space)) + tensor_maps(HomMap.identity(f.space), g.x)
    return OddNilpotent(x)


def restriction_dims(length: int) -> tuple:
    """Graded dims of ``M_{length-1}``: ``(k+1|k+1)`` for ``M_{2k+1}``, ``(k+1|k)`` for ``M_{2k}``."""
    return BlockDecomposition.from_blocks([(length, EVEN)]).dims


# --------------------------------------------------------------------------
# Duflo-Serganova

def _complement(kernel: Matrix, image: Matrix, space: SuperSpace) -> list:
    """Pure-parity vectors of ``kernel`` completing ``image`` (even first)."""
    ev, od = _graded_split(space, kernel)
    chosen = []
    current = list(image.columns())
    rank = Matrix.from_columns(current, rows=space.dim).rank() if current else 0
    for par, block in ((EVEN, ev), (ODD, od)):
        for v in block.columns():
            trial = current + [v]
            r = Matrix.from_columns(trial, rows=space.dim).rank()
            if r > rank:
                current, rank = trial, r
                chosen.append((par, v))
    return chosen


def _quotient_coords(reps: list, image: Matrix, v) -> tuple:
    n = len(v)
    big = Matrix.from_columns(list(reps) + list(image.columns()), rows=n)
    sol = solve_affine(big, v)
    if sol is None:
        raise DefectError("vector left the kernel")
    return sol[0][: len(reps)]


@dataclass(frozen=True)
class DSModule:
    space: SuperSpace
    representatives: tuple
    action: dict = field(default_factory=dict)


def _square_zero_check(rep: Representation, x: AlgebraElement) -> Matrix:
    if not x.is_odd():
        raise ValueError("element must be odd")
    rx = rep.rho(x)
    if not rep.rho(rep.algebra.bracket(x, x)).is_zero() or not (rx @ rx).is_zero():
        raise ValueError("DS requires square-zero element")
    return rx


def ds_module(rep: Representation, x: AlgebraElement) -> DSModule:
    """``Ker x / Im x`` with maps induced by basis elements commuting with ``x``."""
    rx = _square_zero_check(rep, x)
    space = rep.space
    ker = kernel_basis(rx)
    img = _column_span(rx)
    chosen = _complement(ker, img, space)
    reps = [v for _, v in chosen]
    n_even = sum(1 for p, _ in chosen if p == EVEN)
    q = SuperSpace(tuple(f"d{i}" for i in range(n_even)),
                   tuple(f"d{i}" for i in range(n_even, len(chosen))))
    g = rep.algebra
    action = {}
    for b in range(g.dim):
        if not g.bracket(g.basis_element(b), x).is_zero():
            continue
        m = rep.action[b].matrix
        cols = [_quotient_coords(reps, img, m.apply(v)) for v in reps]
        mat = Matrix.from_columns(cols, rows=len(reps)) if reps else Matrix.zeros(0, 0)
        action[g.names[b]] = HomMap(q, q, g.parities[b], mat)
    if q.sdim != space.sdim:
        raise DefectError("DS changed the superdimension")
    return DSModule(q, tuple(tuple(v) for v in reps), action)


def _column_span(m: Matrix) -> Matrix:
    cols = [c for c in m.columns() if any(c)]
    return Matrix.from_columns(cols, rows=m.rows) if cols else Matrix.zeros(m.rows, 0)


def _ds_data(g: LieSuperAlgebra, x: AlgebraElement):
    if not x.is_odd():
        raise ValueError("element must be odd")
    if not g.bracket(x, x).is_zero():
        raise ValueError("DS requires square-zero element")
    ad = adjoint_rep(g)
    order = g.canonical_order()
    adx = ad.rho(x)
    ker = kernel_basis(adx)
    img = _column_span(adx)
    chosen = _complement(ker, img, ad.space)
    return ad, order, img, chosen


def _to_element(g: LieSuperAlgebra, order: list, v) -> AlgebraElement:
    coeffs = [Fraction(0)] * g.dim
    for i, c in zip(order, v):
        coeffs[i] = c
    return AlgebraElement(g, tuple(coeffs))


def _from_element(order: list, u: AlgebraElement) -> tuple:
    return tuple(u.coeffs[i] for i in order)


def ds_algebra(g: LieSuperAlgebra, x: AlgebraElement) -> LieSuperAlgebra:
    """``Ker ad_x / Im ad_x`` with the induced bracket."""
    _, order, img, chosen = _ds_data(g, x)
    reps = [v for _, v in chosen]
    names = []
    for i, v in enumerate(reps):
        support = [j for j, c in enumerate(v) if c]
        if len(support) == 1 and v[support[0]] == 1:
            names.append(g.names[order[support[0]]])
        else:
            names.append(f"z{i}")
    if len(set(names)) != len(names):
        names = [f"z{i}" for i in range(len(reps))]
    elems = [_to_element(g, order, v) for v in reps]
    brackets = {}
    for i in range(len(elems)):
        for j in range(i, len(elems)):
            br = _from_element(order, g.bracket(elems[i], elems[j]))
            coords = _quotient_coords(reps, img, br)
            terms = {k: c for k, c in enumerate(coords) if c}
            if terms:
                brackets[(i, j)] = terms
    out = LieSuperAlgebra(names, [p for p, _ in chosen], brackets)
    problems = validate(out)
    if problems:
        raise DefectError("induced bracket fails: " + problems[0])
    return out


def ds_rep(rep: Representation, x: AlgebraElement) -> Representation:
    """``M_x`` as a representation of ``ds_algebra(g, x)``."""
    g = rep.algebra
    _, order, _, chosen = _ds_data(g, x)
    gx = ds_algebra(g, x)
    rx = _square_zero_check(rep, x)
    ker = kernel_basis(rx)
    img = _column_span(rx)
    mchosen = _complement(ker, img, rep.space)
    mreps = [v for _, v in mchosen]
    n_even = sum(1 for p, _ in mchosen if p == EVEN)
    q = SuperSpace(tuple(f"d{i}" for i in range(n_even)),
                   tuple(f"d{i}" for i in range(n_even, len(mchosen))))
    mats = []
    for _, v in chosen:
        m = rep.rho(_to_element(g, order, v))
        cols = [_quotient_coords(mreps, img, m.apply(w)) for w in mreps]
        mats.append(Matrix.from_columns(cols, rows=len(mreps)) if mreps else Matrix.zeros(0, 0))
    out = Representation.from_matrices(gx, q, mats)
    problems = validate(out)
    if problems:
        raise DefectError("induced action fails: " + problems[0])
    return out


# --------------------------------------------------------------------------

def hinich_witness() -> dict:
    """Exact sequence ``0 -> ΠM_1 -> M_2 -> M_0 -> 0`` and its semisimplification.

    The sub is ``span(a_1, a_2)`` of the chain ``a_0 -> a_1 -> a_2``.  Returns the
    graded dims of the three semisimplified terms and whether they still add up.
    """
    from .nilform import chain_operator
    sub, mid, quo = chain_operator(2, ODD), chain_operator(3, EVEN), chain_operator(1, EVEN)
    # mid basis (even first): a0, a2, a1 ; sub basis: a1 (odd top) -> b0, a2 -> b1
    ms, ss, qs = mid.space, sub.space, quo.space
    mpos = {lab: i for i, lab in enumerate(ms.labels)}
    spos = {lab: i for i, lab in enumerate(ss.labels)}
    inc = [[0] * ss.dim for _ in range(ms.dim)]
    inc[mpos["a1"]][spos["a0"]] = 1
    inc[mpos["a2"]][spos["a1"]] = 1
    proj = [[0] * ms.dim for _ in range(qs.dim)]
    proj[0][mpos["a0"]] = 1
    i_map = HomMap(ss, ms, EVEN, Matrix(inc, ss.dim))
    p_map = HomMap(ms, qs, EVEN, Matrix(proj, ms.dim))
    checks = {
        "inclusion_equivariant": mid.matrix @ i_map.matrix == i_map.matrix @ sub.matrix,
        "projection_equivariant": p_map.matrix @ mid.matrix == quo.matrix @ p_map.matrix,
        "injective": i_map.matrix.rank() == ss.dim,
        "surjective": p_map.matrix.rank() == qs.dim,
        "exact_middle": (p_map.matrix @ i_map.matrix).is_zero()
        and i_map.matrix.rank() + p_map.matrix.rank() == ms.dim,
    }
    dims = [semisimplify(block_multiplicities(op)).dims for op in (sub, mid, quo)]
    additive = tuple(a + b for a, b in zip(dims[0], dims[2])) == dims[1]
    return {"sequence_checks": checks, "semisimplified_dims": dims, "dims_additive": additive}
