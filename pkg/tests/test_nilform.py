import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from superjm.exact import Matrix
from superjm.nilform import (
    BlockDecomposition,
    OddNilpotent,
    adapted_basis,
    block_multiplicities,
    block_weights,
    chain_operator,
    deligne_filtration,
    grading_operator,
    is_neat_on,
    verify_deligne,
)
from superjm.sampling import random_even_invertible, random_odd_nilpotent
from superjm.superlinalg import EVEN, ODD, HomMap, SuperSpace

seeds = st.integers(0, 2**32 - 1)


def _random_op(seed, **kw):
    return random_odd_nilpotent(random.Random(seed), **kw)


def test_operator_validation():
    v = SuperSpace.standard(1, 1)
    with pytest.raises(ValueError):
        OddNilpotent(HomMap(v, v, EVEN, Matrix.identity(2)))
    with pytest.raises(ValueError):
        OddNilpotent.of(v, [[0, 1], [1, 0]])


@pytest.mark.parametrize("length", range(1, 8))
@pytest.mark.parametrize("top", [EVEN, ODD])
def test_single_chain_is_one_block(length, top):
    dec = block_multiplicities(chain_operator(length, top))
    assert [(b.length, b.top_parity, b.mult) for b in dec.blocks] == [(length, top, 1)]


def test_block_dims_and_bottom_parity():
    dec = BlockDecomposition.from_blocks([(3, ODD, 2), (2, EVEN, 1)])
    block = [b for b in dec.blocks if b.length == 3][0]
    # two copies of odd, even, odd plus one copy of even, odd
    assert block.dims == (2, 4) and block.bottom_parity == ODD
    assert dec.dims == (3, 5)


def test_weights_of_a_neat_chain():
    assert block_weights(block_multiplicities(chain_operator(3))) == Counter({2: 1, 0: 1, -2: 1})


@given(seeds)
def test_rank_formula_matches_greedy_chains(seed):
    op = _random_op(seed, max_even=5, max_odd=5)
    greedy = adapted_basis(op)
    assert block_multiplicities(op).blocks == greedy.blocks
    vectors = [v for chain in greedy.chains for v in chain]
    assert Matrix.from_columns(vectors, rows=op.space.dim).rank() == op.space.dim
    for chain in greedy.chains:
        for a, b in zip(chain, chain[1:]):
            assert op.matrix.apply(a) == tuple(b)
        assert not any(op.matrix.apply(chain[-1]))


@given(seeds)
def test_blocks_invariant_under_even_conjugation(seed):
    rng = random.Random(seed)
    op = _random_op(seed, max_even=4, max_odd=4)
    p = random_even_invertible(rng, op.space)
    moved = OddNilpotent(HomMap(op.space, op.space, ODD, p @ op.matrix @ p.inverse()))
    assert block_multiplicities(moved).blocks == block_multiplicities(op).blocks


@given(seeds)
def test_block_dims_add_up(seed):
    op = _random_op(seed)
    assert block_multiplicities(op).dims == op.space.dims


@given(seeds)
def test_deligne_axioms_and_canonicity(seed):
    op = _random_op(seed, max_even=5, max_odd=5)
    filt = deligne_filtration(op)
    assert verify_deligne(op, filt) == []
    other = deligne_filtration(op, random.Random(seed + 1))
    assert other.key() == filt.key()
    gr = filt.gr_dims()
    assert all(gr.get(i, 0) == gr.get(-i, 0) for i in gr)
    assert sum(gr.values()) == op.space.dim


@given(seeds)
def test_neat_iff_no_even_length_block(seed):
    op = _random_op(seed, max_even=4, max_odd=4)
    filt = deligne_filtration(op)
    odd_levels_vanish = all(filt.gr_dim(k) == 0 for k in range(filt.low, filt.high + 1) if k % 2)
    assert is_neat_on(op) == odd_levels_vanish


def test_deligne_of_two_chain():
    filt = deligne_filtration(chain_operator(2))
    assert filt.gr_dims() == {-1: 1, 1: 1}


def test_grading_operator_on_neat_chain():
    op = chain_operator(5, ODD)
    h = grading_operator(op)
    x = op.matrix
    assert h.matrix @ x - x @ h.matrix == x.scale(-2)
    assert sorted(h.matrix[i, i] for i in range(5)) == [-4, -2, 0, 2, 4]


def test_grading_operator_refuses_non_neat():
    with pytest.raises(ValueError, match="grading defined only for neat operators"):
        grading_operator(chain_operator(2))


def test_zero_dimensional_operator():
    op = OddNilpotent.of(SuperSpace(), Matrix.zeros(0, 0))
    assert block_multiplicities(op).blocks == ()
    assert is_neat_on(op)
