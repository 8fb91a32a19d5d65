import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superjm.exact import Matrix, min_poly, squarefree_part
from superjm.liesuper import (
    AlgebraElement,
    LieSuperAlgebra,
    Representation,
    adjoint_rep,
    direct_sum_rep,
    dual_rep,
    gl_superalgebra,
    is_faithful,
    minuscule_data,
    osp12,
    osp_simple,
    osp_y_coefficients,
    shift_rep,
    tensor_rep,
    trivial_rep,
    validate,
)
from superjm.sampling import random_module
from superjm.superlinalg import EVEN, ODD, SuperSpace

GL12, V12 = gl_superalgebra(1, 2)


@st.composite
def homogeneous_elements(draw, g=GL12):
    parity = draw(st.sampled_from([EVEN, ODD]))
    coeffs = [Fraction(draw(st.integers(-2, 2))) if p == parity else Fraction(0) for p in g.parities]
    return AlgebraElement(g, tuple(coeffs))


def _sign(u, v):
    pu, pv = u.parity or EVEN, v.parity or EVEN
    return -1 if int(pu) * int(pv) else 1


@pytest.mark.parametrize("m,n", [(1, 0), (1, 1), (1, 2), (2, 1), (2, 2), (3, 2), (3, 3)])
def test_gl_is_a_lie_superalgebra(m, n):
    g, rep = gl_superalgebra(m, n)
    assert g.dims == (m * m + n * n, 2 * m * n)
    assert validate(g) == []
    assert validate(rep) == []
    assert is_faithful(rep)


def test_gl_basis_names():
    g, _ = gl_superalgebra(1, 1)
    assert set(g.names) == {"E11", "E22", "E12", "E21"}
    assert g.parities[g.index("E12")] == ODD


def test_osp_structure_constants():
    o = osp12()
    h, e, f, x, y = (o.basis_element(n) for n in ("h", "E", "F", "X", "Y"))
    assert o.bracket(h, x) == x.scale(-2)
    assert o.bracket(h, y) == y.scale(2)
    assert o.bracket(y, x) == h
    assert o.bracket(x, x) == f.scale(2)
    assert o.bracket(y, y) == e.scale(2)
    assert o.bracket(h, e) == e.scale(4)
    assert o.bracket(e, f) == h.scale(-2)
    assert validate(o) == []


def test_corrupted_structure_constants_are_detected():
    o = osp12()
    brackets = dict(o.brackets)
    key = (o.index("X"), o.index("Y"))
    brackets[key] = {o.index("h"): Fraction(3)}
    assert any(p.startswith("jacobi") for p in validate(o.with_structure(brackets)))


def test_antisymmetry_violation_rejected_or_reported():
    space_parities = [EVEN, EVEN]
    try:
        g = LieSuperAlgebra(["a", "b"], space_parities, {(0, 0): {1: 1}})
    except ValueError:
        return
    assert validate(g)


@pytest.mark.parametrize("k", range(7))
def test_osp_simple_modules(k):
    for shift in (EVEN, ODD):
        rep = osp_simple(k, shift)
        assert validate(rep) == []
        assert rep.space.dims == ((k + 1, k) if shift == EVEN else (k, k + 1))


@pytest.mark.parametrize("k", range(6))
def test_y_coefficient_recurrence(k):
    c = osp_y_coefficients(k)
    assert len(c) == 2 * k + 1 and c[0] == 0
    assert all(c[j + 1] + c[j] == 2 * k - 2 * j for j in range(2 * k))


@given(homogeneous_elements(), homogeneous_elements())
def test_super_antisymmetry(u, v):
    assert GL12.bracket(u, v) == GL12.bracket(v, u).scale(-_sign(u, v))


@given(homogeneous_elements(), homogeneous_elements(), homogeneous_elements())
def test_super_jacobi_on_elements(u, v, w):
    lhs = GL12.bracket(u, GL12.bracket(v, w))
    rhs = GL12.bracket(GL12.bracket(u, v), w) + GL12.bracket(v, GL12.bracket(u, w)).scale(_sign(u, v))
    assert lhs == rhs


@given(homogeneous_elements(), homogeneous_elements())
def test_defining_rep_is_a_homomorphism(u, v):
    lhs = V12.rho(GL12.bracket(u, v))
    ru, rv = V12.rho(u), V12.rho(v)
    assert lhs == ru @ rv - (rv @ ru).scale(_sign(u, v))


@given(st.integers(0, 2**32 - 1))
def test_constructed_modules_are_representations(seed):
    rep = random_module(random.Random(seed), V12, max_dim=9)
    assert validate(rep) == []


def test_module_constructions():
    g, v = gl_superalgebra(1, 1)
    assert tensor_rep(v, dual_rep(v)).space.dims == (2, 2)
    assert direct_sum_rep(v, trivial_rep(g)).space.dims == (2, 1)
    assert shift_rep(v).space.dims == (1, 1)
    for rep in (tensor_rep(v, v), dual_rep(v), shift_rep(v), adjoint_rep(g)):
        assert validate(rep) == []


def test_adjoint_rep_matches_brackets():
    o = osp12()
    ad = adjoint_rep(o)
    assert validate(ad) == []
    assert ad.space.dims == (3, 2)


def test_bad_representation_reported():
    g, v = gl_superalgebra(1, 1)
    mats = {n: v.matrix(n) for n in g.names}
    mats["E11"] = Matrix.zeros(2, 2)
    bad = Representation.from_matrices(g, v.space, mats)
    assert validate(bad)


@given(homogeneous_elements())
def test_minuscule_data(x):
    if not x.is_odd():
        return
    data = minuscule_data(V12, x)
    assert data.y_s + data.y_n == V12.rho(GL12.bracket(x, x))
    p = min_poly(data.y_s)
    assert p == squarefree_part(p)
    assert data.y_s.commutes_with(data.rho_x)


def test_minuscule_data_needs_odd():
    with pytest.raises(ValueError):
        minuscule_data(V12, GL12.basis_element("E11"))


def test_trivial_rep_of_one_dimension():
    g, _ = gl_superalgebra(1, 1)
    t = trivial_rep(g)
    assert t.space == SuperSpace(t.space.even, t.space.odd) and t.dim == 1
    assert validate(t) == []
