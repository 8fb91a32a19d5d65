import random

import pytest
from hypothesis import given, strategies as st

from superjm.functors import (
    Ga11Object,
    SemisimpleObject,
    T_functor,
    ds_algebra,
    ds_module,
    ds_rep,
    ga11_fusion,
    ga11_tensor,
    hinich_witness,
    osp_fusion,
    osp_rep_to_semisimple,
    phi_general,
    phi_nilpotent,
    restriction_dims,
    semisimplify,
    y_perturbation_dimension,
)
from superjm.liesuper import dual_rep, gl_superalgebra, osp_simple, tensor_rep, validate
from superjm.nilform import block_multiplicities, chain_operator, is_neat_on
from superjm.sampling import random_module, random_odd_element, random_odd_nilpotent
from superjm.superlinalg import EVEN, ODD

parities = st.sampled_from([EVEN, ODD])
indexed = st.tuples(st.integers(0, 5), parities)
simple = st.tuples(st.integers(0, 4), parities)
seeds = st.integers(0, 2**32 - 1)

GL12, V12 = gl_superalgebra(1, 2)


def _block_dims(index, shift):
    return chain_operator(index + 1, shift).space.dims


@given(indexed, indexed)
def test_ga11_fusion_matches_operator(left, right):
    op = ga11_tensor(chain_operator(left[0] + 1, left[1]), chain_operator(right[0] + 1, right[1]))
    assert Ga11Object.from_blocks(block_multiplicities(op)) == ga11_fusion(left, right)


@given(indexed, indexed)
def test_ga11_fusion_commutes(left, right):
    assert ga11_fusion(left, right) == ga11_fusion(right, left)


def test_odd_times_odd_rule():
    # M_1 ⊗ M_1 = M_1 ⊕ ΠM_1 (dimension 4)
    assert ga11_fusion((1, EVEN), (1, EVEN)) == Ga11Object.of([(2, EVEN), (2, ODD)])
    # M_3 ⊗ M_3 has dimension 16: s = 0 and s = 2
    assert ga11_fusion((3, EVEN), (3, EVEN)).dims == (8, 8)


@given(simple, simple, simple)
def test_osp_fusion_associative(a, b, c):
    left = osp_fusion(osp_fusion(a, b), c)
    right = osp_fusion(a, osp_fusion(b, c))
    assert left == right


@given(simple, simple)
def test_osp_fusion_dims_multiply(a, b):
    prod = osp_fusion(a, b)
    da, db = SemisimpleObject.of([a]).dims, SemisimpleObject.of([b]).dims
    even = da[0] * db[0] + da[1] * db[1]
    odd = da[0] * db[1] + da[1] * db[0]
    assert prod.dims == (even, odd)
    assert osp_fusion(a, b) == osp_fusion(b, a)


def test_osp_fusion_unit():
    unit = SemisimpleObject.of([(0, EVEN)])
    x = SemisimpleObject.of([(2, ODD), (1, EVEN, 3)])
    assert osp_fusion(unit, x) == x


def test_semisimplify_drops_even_length_blocks():
    obj = Ga11Object.of([(2, EVEN), (3, ODD, 2), (1, EVEN)])
    assert semisimplify(obj) == SemisimpleObject.of([(1, ODD, 2), (0, EVEN)])


@given(seeds)
def test_semisimplification_is_monoidal(seed):
    rng = random.Random(seed)
    a = random_odd_nilpotent(rng, 3, 3, max_length=4)
    b = random_odd_nilpotent(rng, 3, 3, max_length=4)
    lhs = semisimplify(block_multiplicities(ga11_tensor(a, b)))
    rhs = osp_fusion(semisimplify(block_multiplicities(a)), semisimplify(block_multiplicities(b)))
    assert lhs == rhs


@pytest.mark.parametrize("length", range(1, 9))
def test_restriction_dims(length):
    k = (length - 1) // 2
    assert restriction_dims(length) == ((k + 1, k + 1) if length % 2 == 0 else (k + 1, k))


def test_phi_on_gl12_example():
    x = GL12.element({"E12": 1, "E31": 1})
    assert phi_general(V12, x) == SemisimpleObject.of([(1, ODD)])
    assert phi_nilpotent(V12, x) == phi_general(V12, x)


def test_phi_nilpotent_refuses_semisimple_square():
    x = GL12.element({"E12": 1, "E21": 1})
    with pytest.raises(ValueError, match="use phi_general"):
        phi_nilpotent(V12, x)


def test_phi_at_zero_is_restriction_to_trivial():
    assert phi_general(V12, GL12.zero()) == SemisimpleObject.of([(0, EVEN, 1), (0, ODD, 2)])


@given(seeds)
def test_phi_general_preserves_sdim(seed):
    rng = random.Random(seed)
    mod = random_module(rng, V12, max_dim=9)
    x = random_odd_element(rng, GL12)
    assert phi_general(mod, x).sdim == mod.space.sdim


def test_t_functor_on_odd_chain():
    rep = T_functor(chain_operator(3))
    ref = osp_simple(1)
    assert validate(rep) == []
    assert all(rep.matrix(n) == ref.matrix(n) for n in ref.algebra.names)


@given(seeds)
def test_t_functor_recovers_semisimplification(seed):
    op = random_odd_nilpotent(random.Random(seed), 3, 3, max_length=5)
    if not is_neat_on(op):
        return
    rep = T_functor(op)
    assert validate(rep) == []
    assert osp_rep_to_semisimple(rep) == semisimplify(block_multiplicities(op))
    assert y_perturbation_dimension(rep) == 0


def test_hinich_witness():
    w = hinich_witness()
    assert all(w["sequence_checks"].values())
    assert w["semisimplified_dims"] == [(0, 0), (2, 1), (1, 0)]
    assert w["dims_additive"] is False


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_ds_algebra_of_rank_one(m, n):
    g, rep = gl_superalgebra(m, n)
    x = g.element({f"E1{m + 1}": 1})
    gx = ds_algebra(g, x)
    assert gx.dims == ((m - 1) ** 2 + (n - 1) ** 2, 2 * (m - 1) * (n - 1))
    assert validate(gx) == []
    mx = ds_module(rep, x)
    assert mx.space.dims == (m - 1, n - 1)


def test_ds_rep_is_a_representation():
    g, rep = gl_superalgebra(2, 2)
    x = g.element({"E13": 1})
    out = ds_rep(tensor_rep(rep, dual_rep(rep)), x)
    assert validate(out) == []
    assert out.space.sdim == 0


def test_ds_refuses_non_square_zero():
    g, rep = gl_superalgebra(1, 1)
    x = g.element({"E12": 1, "E21": 1})
    with pytest.raises(ValueError, match="square-zero"):
        ds_module(rep, x)
    with pytest.raises(ValueError, match="square-zero"):
        ds_algebra(g, x)


def test_gl11_projective_annihilated():
    g, v = gl_superalgebra(1, 1)
    vv = tensor_rep(v, dual_rep(v))
    assert phi_general(vv, g.element({"E12": 1})).is_zero()
    assert not phi_general(vv, g.zero()).is_zero()
