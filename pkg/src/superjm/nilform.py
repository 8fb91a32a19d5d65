"""Normal form of an odd nilpotent operator.

A chain ``a_0 -> a_1 -> ... -> a_k`` (``x a_j = a_{j+1}``, ``x a_k = 0``) is a
block of length ``k + 1``; its top parity is the parity of ``a_0``.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .exact import Matrix, iterated_image_ranks, kernel_basis, rref
from .superlinalg import EVEN, ODD, HomMap, Parity, SuperSpace, _graded_split

__all__ = [
    "OddNilpotent",
    "Block",
    "BlockDecomposition",
    "Filtration",
    "DefectError",
    "block_multiplicities",
    "adapted_basis",
    "is_neat_on",
    "deligne_filtration",
    "grading_operator",
    "block_weights",
    "chain_operator",
    "span_key",
]


class DefectError(ArithmeticError):
    """An internal consistency check failed."""


@dataclass(frozen=True)
class OddNilpotent:
    x: HomMap

    def __post_init__(self):
        x = self.x
        if not x.is_endomorphism():
            raise ValueError("operator must be an endomorphism")
        if x.parity != ODD:
            raise ValueError("operator must be odd")
        if not (x.matrix ** (x.source.dim + 1)).is_zero():
            raise ValueError("operator is not nilpotent")

    @classmethod
    def of(cls, space: SuperSpace, matrix) -> "OddNilpotent":
        if not isinstance(matrix, Matrix):
            matrix = Matrix(matrix, space.dim)
        return cls(HomMap(space, space, ODD, matrix))

    @property
    def space(self) -> SuperSpace:
        return self.x.source

    @property
    def matrix(self) -> Matrix:
        return self.x.matrix


@dataclass(frozen=True, order=True)
class Block:
    length: int
    top_parity: Parity
    mult: int = 1

    @property
    def bottom_parity(self) -> Parity:
        return self.top_parity + Parity((self.length - 1) % 2)

    @property
    def dims(self) -> tuple:
        ev = (self.length + 1) // 2 if self.top_parity == EVEN else self.length // 2
        return (ev * self.mult, (self.length - ev) * self.mult)


def _canonical_blocks(counter: Counter) -> tuple:
    return tuple(Block(l, p, m) for (l, p), m in sorted(counter.items()) if m)


@dataclass(frozen=True)
class BlockDecomposition:
    """Multiset of blocks ``(length, top_parity)``; chains optional."""

    blocks: tuple
    chains: Optional[tuple] = None

    @classmethod
    def from_blocks(cls, items, chains=None) -> "BlockDecomposition":
        """Items are ``Block`` or ``(length, top_parity[, mult])``."""
        c = Counter()
        for item in items:
            if isinstance(item, Block):
                c[(item.length, item.top_parity)] += item.mult
            else:
                mult = item[2] if len(item) > 2 else 1
                c[(int(item[0]), Parity.of(item[1]))] += int(mult)
        return cls(_canonical_blocks(c), chains)

    def counter(self) -> Counter:
        return Counter({(b.length, b.top_parity): b.mult for b in self.blocks})

    def multiset(self) -> tuple:
        return tuple((b.length, b.top_parity, b.mult) for b in self.blocks)

    @property
    def dims(self) -> tuple:
        ev = sum(b.dims[0] for b in self.blocks)
        od = sum(b.dims[1] for b in self.blocks)
        return (ev, od)

    def lengths(self) -> list:
        return [b.length for b in self.blocks for _ in range(b.mult)]

    def same_blocks(self, other: "BlockDecomposition") -> bool:
        return self.blocks == other.blocks


def block_multiplicities(op: OddNilpotent) -> BlockDecomposition:
    """Block multiset from ranks of powers.

    Blocks of length >= l with bottom parity d number
    ``rank(x^(l-1) on V_p) - rank(x^l on V_p)`` where ``p = d + l - 1``.
    """
    space, m = op.space, op.matrix
    n = space.dim
    if n == 0:
        return BlockDecomposition(())
    ranks = {p: iterated_image_ranks(m, list(space.indices(p)), n + 1) for p in (EVEN, ODD)}
    at_least = {}
    for length in range(1, n + 1):
        for bottom in (EVEN, ODD):
            p = bottom + Parity((length - 1) % 2)
            r = ranks[p]
            at_least[(length, bottom)] = r[length - 1] - r[length]
    counts = Counter()
    for (length, bottom), c in at_least.items():
        exact = c - at_least.get((length + 1, bottom), 0)
        if exact < 0:
            raise DefectError("negative block multiplicity")
        if exact:
            counts[(length, bottom + Parity((length - 1) % 2))] = exact
    dec = BlockDecomposition(_canonical_blocks(counts))
    if dec.dims != space.dims:
        raise DefectError("block dimensions do not match the space")
    return dec


def _span_rank(vectors) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    return Matrix(vectors).rank()


def _random_combos(basis: Matrix, rng: random.Random) -> list:
    """Random invertible recombination of the columns, in random order."""
    k = basis.cols
    if k == 0:
        return []
    while True:
        coeffs = Matrix([[rng.randint(-3, 3) for _ in range(k)] for _ in range(k)])
        if coeffs.rank() == k:
            break
    return list((basis @ coeffs).columns())


def adapted_basis(op: OddNilpotent, rng: Optional[random.Random] = None) -> BlockDecomposition:
    """Greedy chain extraction, longest chains first.

    Top vectors are taken from ``Ker x^l`` complementing ``Ker x^(l-1)``
    plus the vectors of earlier chains lying in ``Ker x^l``.  Candidates are
    the canonical pure-parity kernel vectors, lowest pivot first; passing
    ``rng`` replaces them by random pure-parity combinations.
    """
    space, m = op.space, op.matrix
    n = space.dim
    if n == 0:
        return BlockDecomposition((), ())
    powers = [Matrix.identity(n)]
    while not powers[-1].is_zero():
        powers.append(powers[-1] @ m)
    top = len(powers) - 1
    kernels = [kernel_basis(p) for p in powers]
    chains: list = []
    # vectors of existing chains sitting in Ker x^l but not Ker x^(l-1)
    for length in range(top, 0, -1):
        base = list(kernels[length - 1].columns())
        for ch in chains:
            base.append(ch[len(ch) - length])
        ev, od = _graded_split(space, kernels[length])
        if rng is None:
            candidates = list(ev.columns()) + list(od.columns())
        else:
            candidates = _random_combos(ev, rng) + _random_combos(od, rng)
            rng.shuffle(candidates)
        current = list(base)
        rank = _span_rank(current)
        for v in candidates:
            r = _span_rank(current + [v])
            if r > rank:
                current.append(v)
                rank = r
                chain = [tuple(v)]
                for _ in range(length - 1):
                    chain.append(m.apply(chain[-1]))
                chains.append(tuple(chain))
    vectors = [v for ch in chains for v in ch]
    if len(vectors) != n or _span_rank(vectors) != n:
        raise DefectError("chains do not form a basis")
    counts = Counter()
    for ch in chains:
        counts[(len(ch), _vector_parity(space, ch[0]))] += 1
    chains.sort(key=lambda ch: (len(ch), _vector_parity(space, ch[0])))
    return BlockDecomposition(_canonical_blocks(counts), tuple(chains))


def _vector_parity(space: SuperSpace, v) -> Parity:
    ps = {space.parity(i) for i, c in enumerate(v) if c}
    if len(ps) != 1:
        raise DefectError("chain vector is not parity homogeneous")
    return ps.pop()


def is_neat_on(op: OddNilpotent) -> bool:
    return all(b.length % 2 == 1 for b in block_multiplicities(op).blocks)


def block_weights(dec: BlockDecomposition) -> Counter:
    """Multiset of ``k - 2j`` over all chain positions."""
    w = Counter()
    for b in dec.blocks:
        k = b.length - 1
        for j in range(b.length):
            w[k - 2 * j] += b.mult
    return w


def chain_operator(length: int, top_parity=EVEN) -> OddNilpotent:
    """The indecomposable block itself, basis ``a_0..a_{length-1}``."""
    top = Parity.of(top_parity)
    labels = [f"a{j}" for j in range(length)]
    par = [top + Parity(j % 2) for j in range(length)]
    even = [j for j in range(length) if par[j] == EVEN]
    odd = [j for j in range(length) if par[j] == ODD]
    order = even + odd
    pos = {j: i for i, j in enumerate(order)}
    space = SuperSpace(tuple(labels[j] for j in even), tuple(labels[j] for j in odd))
    rows = [[0] * length for _ in range(length)]
    for j in range(length - 1):
        rows[pos[j + 1]][pos[j]] = 1
    return OddNilpotent.of(space, Matrix(rows, length))


# --------------------------------------------------------------------------
# Deligne filtration

def span_key(vectors: Matrix) -> tuple:
    """Canonical fingerprint of a column span (nonzero rows of the rref)."""
    if vectors.cols == 0:
        return ()
    r, piv = rref(vectors.T)
    return tuple(r.row(i) for i in range(len(piv)))


def _columns_matrix(vectors, n: int) -> Matrix:
    if not vectors:
        return Matrix.zeros(n, 0)
    return Matrix.from_columns(vectors, rows=n)


@dataclass(frozen=True)
class Filtration:
    """Increasing filtration; ``levels[i]`` spans F^i for ``low <= i <= high``.

    Below ``low`` the filtration is zero, from ``high`` on it is everything.
    """

    space: SuperSpace
    levels: dict

    @property
    def low(self) -> int:
        return min(self.levels) if self.levels else 0

    @property
    def high(self) -> int:
        return max(self.levels) if self.levels else 0

    def piece(self, i: int) -> Matrix:
        n = self.space.dim
        if not self.levels or i < self.low:
            return Matrix.zeros(n, 0)
        if i > self.high:
            return self.levels[self.high]
        return self.levels[i]

    def dim(self, i: int) -> int:
        b = self.piece(i)
        return b.rank() if b.cols else 0

    def gr_dim(self, i: int) -> int:
        return self.dim(i) - self.dim(i - 1)

    def gr_dims(self) -> dict:
        return {i: self.gr_dim(i) for i in range(self.low, self.high + 1) if self.gr_dim(i)}

    def key(self) -> tuple:
        return tuple((i, span_key(self.piece(i))) for i in range(self.low, self.high + 1))


def deligne_filtration(op: OddNilpotent, rng: Optional[random.Random] = None) -> Filtration:
    """Per chain of length ``k + 1``, ``a_j`` enters at level ``k - 2j``."""
    dec = adapted_basis(op, rng)
    n = op.space.dim
    entries = []
    kmax = 0
    for ch in dec.chains:
        k = len(ch) - 1
        kmax = max(kmax, k)
        for j, v in enumerate(ch):
            entries.append((k - 2 * j, v))
    levels = {}
    for i in range(-kmax, kmax + 1):
        levels[i] = _canonical_span(_columns_matrix([v for lvl, v in entries if lvl <= i], n))
    filt = Filtration(op.space, levels)
    problems = verify_deligne(op, filt)
    if problems:
        raise DefectError("; ".join(problems))
    return filt


def _canonical_span(vectors: Matrix) -> Matrix:
    if vectors.cols == 0:
        return vectors
    r, piv = rref(vectors.T)
    return r.submatrix(range(len(piv)), range(vectors.rows)).T


def _sum_rank(*mats: Matrix) -> int:
    cols = [c for m in mats for c in m.columns()]
    return _span_rank(cols)


def verify_deligne(op: OddNilpotent, filt: Filtration) -> list:
    """Both defining conditions plus nesting and exhaustiveness."""
    m = op.matrix
    n = op.space.dim
    problems = []
    lo, hi = filt.low, filt.high
    if filt.dim(hi) != n:
        problems.append("filtration is not exhaustive")
    if filt.dim(lo - 1) != 0:
        problems.append("filtration does not start at zero")
    for i in range(lo, hi + 1):
        if _sum_rank(filt.piece(i - 1), filt.piece(i)) != filt.dim(i):
            problems.append(f"F^{i - 1} not contained in F^{i}")
    for i in range(lo, hi + 1):
        target = filt.piece(i - 2)
        if _sum_rank(target, m @ filt.piece(i)) != filt.dim(i - 2):
            problems.append(f"x F^{i} not inside F^{i - 2}")
    for i in range(0, hi + 1):
        if filt.gr_dim(i) != filt.gr_dim(-i):
            problems.append(f"dim Gr^{i} != dim Gr^{-i}")
            continue
        xi = m ** i
        below = filt.piece(-i - 1)
        image = _sum_rank(below, xi @ filt.piece(i)) - filt.dim(-i - 1)
        if image != filt.gr_dim(i):
            problems.append(f"x^{i} is not bijective from Gr^{i} to Gr^{-i}")
    return problems


def grading_operator(op: OddNilpotent) -> HomMap:
    """Even operator acting by ``k - 2j`` on ``a_j`` of each chain; neat only."""
    dec = adapted_basis(op)
    if any(b.length % 2 == 0 for b in dec.blocks):
        raise ValueError("grading defined only for neat operators")
    n = op.space.dim
    if n == 0:
        return HomMap.zero(op.space, op.space)
    vectors, weights = [], []
    for ch in dec.chains:
        k = len(ch) - 1
        for j, v in enumerate(ch):
            vectors.append(v)
            weights.append(k - 2 * j)
    c = Matrix.from_columns(vectors, rows=n)
    h = c @ Matrix.diag(weights) @ c.inverse()
    hmap = HomMap(op.space, op.space, EVEN, h)
    x = op.matrix
    if h @ x - x @ h != x.scale(-2):
        raise DefectError("[h, x] != -2x")
    return hmap
