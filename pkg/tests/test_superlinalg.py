from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superjm.exact import Matrix
from superjm.superlinalg import (
    EVEN,
    ODD,
    HomMap,
    Parity,
    SubquotientError,
    SuperSpace,
    braiding,
    compose,
    direct_sum,
    direct_sum_maps,
    dual,
    dual_map,
    evaluation,
    parity_shift,
    quotient_by_subspace,
    restrict_to_subspace,
    subspace,
    superdim,
    supertrace,
    tensor,
    tensor_maps,
)


@st.composite
def spaces(draw, max_even=3, max_odd=3):
    m = draw(st.integers(0, max_even))
    n = draw(st.integers(0 if m else 1, max_odd))
    return SuperSpace.standard(m, n)


@st.composite
def homogeneous_maps(draw, source, target=None, parity=None):
    target = target or source
    if parity is None:
        parity = draw(st.sampled_from([EVEN, ODD]))
    rows = []
    for r in range(target.dim):
        row = []
        for c in range(source.dim):
            allowed = target.parity(r) == source.parity(c) + parity
            row.append(draw(st.integers(-3, 3)) if allowed else 0)
        rows.append(row)
    return HomMap(source, target, parity, Matrix(rows, source.dim))


@st.composite
def space_with_maps(draw, count=2):
    v = draw(spaces())
    return v, [draw(homogeneous_maps(v)) for _ in range(count)]


def _sign(a, b):
    return -1 if int(a) * int(b) else 1


def test_parity_arithmetic_and_parsing():
    assert ODD + ODD == EVEN
    assert Parity.of("odd") == ODD and Parity.of(0) == EVEN
    assert ODD.label == "odd"


def test_superdim_and_shift():
    v = SuperSpace.standard(3, 1)
    assert superdim(v) == (3, 1, 2)
    assert v.sdim == 2
    assert parity_shift(v).dims == (1, 3)


def test_forbidden_blocks_rejected():
    v = SuperSpace.standard(1, 1)
    with pytest.raises(ValueError):
        HomMap(v, v, ODD, Matrix([[1, 0], [0, 0]], 2))


def test_tensor_dims():
    v, w = SuperSpace.standard(2, 1), SuperSpace.standard(1, 2)
    assert tensor(v, w).dims == (2 + 2, 4 + 1)


@given(spaces(), spaces())
def test_braiding_is_an_involution(v, w):
    twice = compose(braiding(w, v), braiding(v, w))
    assert twice.matrix == Matrix.identity(v.dim * w.dim)


@given(space_with_maps(4))
def test_tensor_interchange_law(data):
    v, (f, g, f2, g2) = data
    lhs = compose(tensor_maps(f, g), tensor_maps(f2, g2))
    rhs = tensor_maps(compose(f, f2), compose(g, g2))
    assert lhs.matrix == rhs.matrix.scale(_sign(g.parity, f2.parity))


@given(space_with_maps(1))
def test_evaluation_is_equivariant(data):
    v, (f,) = data
    ident = HomMap.identity(v)
    ident_dual = HomMap.identity(dual(v))
    minus_dual = dual_map(f).scale(-1)
    action = tensor_maps(f, ident_dual).matrix + tensor_maps(ident, minus_dual).matrix
    assert (evaluation(v).matrix @ action).is_zero()


@given(space_with_maps(2))
def test_supertrace_graded_cyclicity(data):
    v, (f, g) = data
    if f.parity != g.parity:
        return
    assert supertrace(compose(f, g)) == _sign(f.parity, g.parity) * supertrace(compose(g, f))


def test_supertrace_of_identity_is_sdim():
    v = SuperSpace.standard(2, 5)
    assert supertrace(HomMap.identity(v)) == -3


@given(space_with_maps(2))
def test_dual_map_reverses_composition(data):
    v, (f, g) = data
    lhs = dual_map(compose(f, g)).matrix
    rhs = compose(dual_map(g), dual_map(f)).matrix
    assert lhs == rhs.scale(_sign(f.parity, g.parity))


@given(space_with_maps(1))
def test_parity_shift_twice_is_identity(data):
    _, (f,) = data
    assert parity_shift(parity_shift(f)) == f


def test_direct_sum():
    v, w = SuperSpace.standard(1, 1), SuperSpace.standard(2, 0, prefix="w")
    s = direct_sum(v, w)
    assert s.dims == (3, 1)
    f = direct_sum_maps(HomMap.identity(v), HomMap.identity(w))
    assert f.matrix == Matrix.identity(4)


def test_subquotient_of_chain():
    # a0 -> a1 -> a2 -> a3 with a0 even; the image of x is spanned by a1, a2, a3
    v = SuperSpace(("a0", "a2"), ("a1", "a3"))
    x = Matrix([[0, 0, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0]], 4)
    op = HomMap(v, v, ODD, x)
    image = Matrix.from_columns([x.col(j) for j in range(4)], rows=4)
    sub, basis = subspace(v, image)
    assert sub.dims == (1, 2)
    restricted = restrict_to_subspace(op, basis)
    assert restricted.matrix.rank() == 2
    quotient = quotient_by_subspace(op, basis)
    assert quotient.source.dims == (1, 0)
    assert quotient.matrix.is_zero()


def test_restriction_to_non_invariant_subspace_fails():
    v = SuperSpace.standard(1, 1)
    op = HomMap(v, v, ODD, Matrix([[0, 0], [1, 0]], 2))
    with pytest.raises(SubquotientError):
        restrict_to_subspace(op, Matrix([[1], [0]], 1))


def test_rational_entries_survive():
    v = SuperSpace.standard(1, 1)
    f = HomMap(v, v, EVEN, Matrix([[Fraction(1, 3), 0], [0, Fraction(-2, 7)]], 2))
    assert supertrace(f) == Fraction(1, 3) + Fraction(2, 7)
