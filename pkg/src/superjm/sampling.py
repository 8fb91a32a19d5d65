"""Seeded random generators for operators, modules and elements."""
from __future__ import annotations

import random
from fractions import Fraction

from .exact import Matrix
from .liesuper import (
    AlgebraElement,
    LieSuperAlgebra,
    Representation,
    direct_sum_rep,
    dual_rep,
    shift_rep,
    tensor_rep,
)
from .nilform import OddNilpotent
from .superlinalg import ODD, HomMap, SuperSpace

__all__ = [
    "random_even_invertible",
    "random_odd_nilpotent",
    "random_block_module",
    "random_odd_element",
    "random_rank_one_square_zero",
    "random_module",
    "random_rational_matrix",
]


def random_even_invertible(rng: random.Random, space: SuperSpace, radius: int = 2) -> Matrix:
    n = space.dim
    while True:
        rows = [[rng.randint(-radius, radius) if space.parity(r) == space.parity(c) else 0
                 for c in range(n)] for r in range(n)]
        m = Matrix(rows, n)
        if m.rank() == n:
            return m


def random_block_module(rng: random.Random, m: int, n: int, max_length: int = 6) -> list:
    """Random chains ``(top parity, length)`` exactly filling dims ``(m|n)``."""
    left = [m, n]
    chains = []
    while left[0] + left[1]:
        top = rng.choice([p for p in (0, 1) if left[p]])
        want = rng.randint(1, max_length)
        length, p = 0, top
        while length < want and left[p]:
            left[p] -= 1
            length += 1
            p ^= 1
        chains.append((top, length))
    return chains


def _chain_matrix(m: int, n: int, chains: list) -> Matrix:
    nxt = [0, m]
    rows = [[0] * (m + n) for _ in range(m + n)]
    for top, length in chains:
        idx, p = [], top
        for _ in range(length):
            idx.append(nxt[p])
            nxt[p] += 1
            p ^= 1
        for j in range(length - 1):
            rows[idx[j + 1]][idx[j]] = 1
    return Matrix(rows, m + n)


def random_odd_nilpotent(rng: random.Random, max_even: int = 8, max_odd: int = 8,
                         max_length: int = 6, dims=None) -> OddNilpotent:
    """Random block sum conjugated by a random even invertible matrix."""
    if dims is None:
        m, n = rng.randint(0, max_even), rng.randint(0, max_odd)
        if m + n == 0:
            m = 1
    else:
        m, n = dims
    space = SuperSpace.standard(m, n)
    x = _chain_matrix(m, n, random_block_module(rng, m, n, max_length))
    p = random_even_invertible(rng, space)
    return OddNilpotent(HomMap(space, space, ODD, p @ x @ p.inverse()))


def random_odd_element(rng: random.Random, g: LieSuperAlgebra, radius: int = 2) -> AlgebraElement:
    coeffs = [Fraction(rng.randint(-radius, radius)) if p == ODD else Fraction(0) for p in g.parities]
    return AlgebraElement(g, tuple(coeffs))


def random_rank_one_square_zero(rng: random.Random, g: LieSuperAlgebra, m: int, n: int,
                                radius: int = 2) -> AlgebraElement:
    """``u w^T`` with ``u`` in one parity block and ``w`` in the other (gl(m|n))."""

    def nonzero(size):
        while True:
            v = [rng.randint(-radius, radius) for _ in range(size)]
            if any(v):
                return v

    coeffs = {}
    if rng.random() < 0.5:
        u, w = nonzero(m), nonzero(n)
        for i in range(m):
            for j in range(n):
                if u[i] * w[j]:
                    coeffs[_unit(m + n, i, m + j)] = u[i] * w[j]
    else:
        u, w = nonzero(n), nonzero(m)
        for i in range(n):
            for j in range(m):
                if u[i] * w[j]:
                    coeffs[_unit(m + n, m + i, j)] = u[i] * w[j]
    return g.element(coeffs)


def _unit(d: int, i: int, j: int) -> str:
    return f"E{i + 1}{j + 1}" if d < 10 else f"E{i + 1}_{j + 1}"


def random_module(rng: random.Random, defining: Representation, max_dim: int = 12) -> Representation:
    """A small module built from the defining one by duals, shifts, sums and products."""
    pool = [defining, dual_rep(defining), shift_rep(defining)]
    rep = rng.choice(pool)
    for _ in range(rng.randint(0, 2)):
        other = rng.choice(pool)
        if rng.random() < 0.5 and rep.dim * other.dim <= max_dim:
            rep = tensor_rep(rep, other)
        elif rep.dim + other.dim <= max_dim:
            rep = direct_sum_rep(rep, other)
    return rep


def random_rational_matrix(rng: random.Random, n: int, radius: int = 3) -> Matrix:
    """Random matrix with a bias towards repeated eigenvalues."""
    kind = rng.randrange(3)
    if kind == 0:
        return Matrix([[Fraction(rng.randint(-radius, radius), rng.randint(1, 3)) for _ in range(n)]
                       for _ in range(n)], n)
    # conjugate a block-triangular matrix with few distinct eigenvalues
    eig = [rng.randint(-2, 2) for _ in range(rng.randint(1, 2))]
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = rng.choice(eig)
        if i + 1 < n and rng.random() < 0.6:
            rows[i][i + 1] = 1
    core = Matrix(rows, n)
    if kind == 2 and n >= 2:
        # an irreducible quadratic block keeps eigenvalues outside Q
        core = Matrix([[core[i, j] if not (i < 2 and j < 2) else (0 if i == j else (1 if i < j else -2))
                        for j in range(n)] for i in range(n)], n)
    while True:
        p = Matrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)], n)
        if p.rank() == n:
            return p @ core @ p.inverse()
