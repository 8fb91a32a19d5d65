"""Property suites behind ``check``; every case is an exact equality."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .exact import Matrix, JCError, jordan_chevalley, min_poly, solve_affine, squarefree_part
from .functors import (
    Ga11Object,
    T_functor,
    ds_algebra,
    ds_module,
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
from .jm import (
    JMError,
    gl12_element,
    jm_triple,
    neat_cone_scan,
    neat_in_g,
    support_membership,
    triple_representation,
)
from .liesuper import (
    adjoint_rep,
    dual_rep,
    gl_superalgebra,
    osp12,
    osp_simple,
    tensor_rep,
    validate,
)
from .nilform import (
    OddNilpotent,
    adapted_basis,
    block_multiplicities,
    chain_operator,
    deligne_filtration,
    is_neat_on,
)
from .sampling import (
    random_module,
    random_odd_element,
    random_odd_nilpotent,
    random_rank_one_square_zero,
    random_rational_matrix,
)
from .superlinalg import EVEN, ODD

__all__ = ["CheckResult", "SUITES", "DEFAULT_SIZES", "run_suite"]


@dataclass
class CheckResult:
    suite: str
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, label) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(str(label))


DEFAULT_SIZES = {
    "clebsch_max_index": 11,
    "nilpotents": 200,
    "cone_samples": 1000,
    "triples": 100,
    "module_pairs": 100,
    "ds_modules": 3,
    "jc_matrices": 200,
}


def clebsch(seed: int, sizes: dict) -> list:
    top = sizes["clebsch_max_index"]
    fusion = CheckResult("clebsch", "tensor_blocks_equal_fusion_rule")
    dims = CheckResult("clebsch", "restriction_dims")
    for p in range(top + 1):
        dims.record(restriction_dims(p + 1) == ((p // 2 + 1, p // 2 + p % 2)), p)
        for q in range(top + 1):
            for a in (EVEN, ODD):
                for b in (EVEN, ODD):
                    op = ga11_tensor(chain_operator(p + 1, a), chain_operator(q + 1, b))
                    got = Ga11Object.from_blocks(block_multiplicities(op))
                    fusion.record(got == ga11_fusion((p, a), (q, b)), (p, a.label, q, b.label))
    return [fusion, dims]


def deligne(seed: int, sizes: dict) -> list:
    rng = random.Random(seed)
    axioms = CheckResult("deligne", "filtration_axioms")
    canon = CheckResult("deligne", "filtration_canonical_under_random_pivots")
    oracle = CheckResult("deligne", "rank_formula_equals_greedy_chains_and_basis")
    neat = CheckResult("deligne", "neat_iff_odd_graded_pieces_vanish")
    for i in range(sizes["nilpotents"]):
        op = random_odd_nilpotent(rng)
        label = (i, op.space.dims)
        try:
            f1 = deligne_filtration(op)
            axioms.record(True, label)
        except ArithmeticError as exc:
            axioms.record(False, f"{label}: {exc}")
            continue
        f2 = deligne_filtration(op, random.Random(rng.randrange(2**32)))
        canon.record(f1.key() == f2.key(), label)
        greedy = adapted_basis(op)
        vectors = [v for chain in greedy.chains for v in chain]
        spans = len(vectors) == op.space.dim and Matrix.from_columns(vectors, rows=op.space.dim).rank() == op.space.dim
        oracle.record(block_multiplicities(op).blocks == greedy.blocks and spans, label)
        gr_odd_zero = all(f1.gr_dim(k) == 0 for k in range(f1.low, f1.high + 1) if k % 2)
        dec = block_multiplicities(op)
        sdim_nonzero = all(b.dims[0] != b.dims[1] for b in dec.blocks)
        neat.record(is_neat_on(op) == gr_odd_zero == sdim_nonzero, label)
    return [axioms, canon, oracle, neat]


def jm(seed: int, sizes: dict) -> list:
    rng = random.Random(seed)
    cone = CheckResult("jm", "gl12_neat_cone")
    scan = neat_cone_scan(sizes["cone_samples"], seed)
    cone.cases = scan["samples"] + scan["boundary_points"]
    cone.failures = [str(c) for c in scan["counterexamples"]]

    triples = CheckResult("jm", "gl12_triples_relations_and_spectrum")
    restriction = CheckResult("jm", "triple_restriction_matches_phi")
    g, rep = gl_superalgebra(1, 2)
    done = 0
    while done < sizes["triples"]:
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        t = rng.choice([-3, -2, -1, 1, 2, 3])
        if (a, b) == (0, 0):
            continue
        x = gl12_element(g, a, b, -t * b, t * a)
        done += 1
        try:
            tr = jm_triple(g, rep, x)
        except JMError as exc:
            triples.record(False, f"{(a, b, t)}: {exc}")
            continue
        triples.record(all(tr.relation_check().values()) and bool(tr.spectrum), (a, b, t))
        osp_rep = triple_representation(tr, rep)
        restriction.record(not validate(osp_rep) and osp_rep_to_semisimple(osp_rep) == phi_nilpotent(rep, x), (a, b, t))

    osp = CheckResult("jm", "osp12_self_triple")
    o = osp12()
    tr = jm_triple(o, adjoint_rep(o), o.basis_element("X"))
    osp.record(all(tr.relation_check().values()), "relations")
    osp.record(tr.h == o.basis_element("h") and tr.Y == o.basis_element("Y"), "recovers h and Y")

    refuse = CheckResult("jm", "gl11_e_refused")
    g11, r11 = gl_superalgebra(1, 1)
    try:
        jm_triple(g11, r11, g11.element({"E12": 1}))
        refuse.record(False, "triple returned")
    except JMError as exc:
        refuse.record(str(exc) == "not neat", str(exc))
    return [cone, triples, restriction, osp, refuse]


def ds(seed: int, sizes: dict) -> list:
    rng = random.Random(seed)
    dims = CheckResult("ds", "ds_algebra_is_gl_m-1_n-1")
    sdim = CheckResult("ds", "ds_module_preserves_sdim")
    zero = CheckResult("ds", "ds_at_zero_is_identity")
    for m in range(1, 4):
        for n in range(1, 4):
            g, rep = gl_superalgebra(m, n)
            x = random_rank_one_square_zero(rng, g, m, n)
            gx = ds_algebra(g, x)  # validates Jacobi on the quotient
            want = ((m - 1) ** 2 + (n - 1) ** 2, 2 * (m - 1) * (n - 1))
            dims.record(gx.dims == want, (m, n))
            for _ in range(sizes["ds_modules"]):
                mod = random_module(rng, rep, max_dim=2 * (m + n))
                mx = ds_module(mod, x)
                sdim.record(mx.space.sdim == mod.space.sdim, (m, n, mod.space.dims))
            zero.record(ds_algebra(g, g.zero()).dims == g.dims and ds_module(rep, g.zero()).space.dims == rep.space.dims, (m, n))
    return [dims, sdim, zero]


def functor(seed: int, sizes: dict) -> list:
    rng = random.Random(seed)
    mono = CheckResult("functor", "phi_monoidal")
    for i in range(sizes["module_pairs"]):
        a = random_odd_nilpotent(rng, 4, 4, max_length=5)
        b = random_odd_nilpotent(rng, 4, 4, max_length=5)
        lhs = semisimplify(block_multiplicities(ga11_tensor(a, b)))
        rhs = osp_fusion(semisimplify(block_multiplicities(a)), semisimplify(block_multiplicities(b)))
        mono.record(lhs == rhs, i)

    sdim = CheckResult("functor", "phi_general_preserves_sdim")
    g, rep = gl_superalgebra(1, 2)
    for i in range(sizes["module_pairs"]):
        mod = random_module(rng, rep, max_dim=9)
        x = random_odd_element(rng, g)
        sdim.record(phi_general(mod, x).sdim == mod.space.sdim, (i, x.as_dict()))

    hinich = CheckResult("functor", "semisimplification_not_exact_in_middle")
    w = hinich_witness()
    hinich.record(all(w["sequence_checks"].values()), "sequence is exact")
    hinich.record(w["semisimplified_dims"] == [(0, 0), (2, 1), (1, 0)], w["semisimplified_dims"])
    hinich.record(not w["dims_additive"], "dims not additive")

    proj = CheckResult("functor", "gl11_projective_annihilated")
    g11, v = gl_superalgebra(1, 1)
    vv = tensor_rep(v, dual_rep(v))
    e = g11.element({"E12": 1})
    proj.record(phi_general(vv, e).is_zero(), "Phi_e(V*V) = 0")
    proj.record(not phi_general(vv, g11.zero()).is_zero(), "Phi_0(V*V) != 0")
    for a in range(-2, 3):
        for b in range(-2, 3):
            x = g11.element({"E12": a, "E21": b})
            member = support_membership(vv, x)
            is_neat = neat_in_g(g11, v, x)
            proj.record(member == ((a, b) == (0, 0)) == is_neat, (a, b))

    simples = CheckResult("functor", "osp_simple_modules")
    for k in range(7):
        for s in (EVEN, ODD):
            r = osp_simple(k, s)
            dims = (k + 1, k) if s == EVEN else (k, k + 1)
            blocks = block_multiplicities(OddNilpotent(r.action[r.algebra.index("X")]))
            ok = not validate(r) and r.space.dims == dims and [(b.length, b.top_parity, b.mult) for b in blocks.blocks] == [(2 * k + 1, s, 1)]
            simples.record(ok, (k, s.label))

    t = CheckResult("functor", "T_functor_on_blocks")
    m2 = T_functor(chain_operator(3))
    ref = osp_simple(1)
    t.record(all(m2.matrix(n) == ref.matrix(n) for n in ref.algebra.names), "T(M_2) = osp_simple(1)")
    for i in range(20):
        op = random_odd_nilpotent(rng, 4, 4, max_length=5)
        if not is_neat_on(op):
            continue
        tr = T_functor(op)
        t.record(osp_rep_to_semisimple(tr) == semisimplify(block_multiplicities(op)), i)
        t.record(y_perturbation_dimension(tr) == 0, f"{i}: Y unique")
    return [mono, sdim, hinich, proj, simples, t]


def jc(seed: int, sizes: dict) -> list:
    rng = random.Random(seed)
    res = CheckResult("jc", "jordan_chevalley_random")
    for i in range(sizes["jc_matrices"]):
        n = rng.randint(1, 6)
        m = random_rational_matrix(rng, n)
        try:
            s, nil = jordan_chevalley(m)
        except JCError as exc:
            res.record(False, f"{i}: {exc}")
            continue
        p = min_poly(s)
        powers = [(m ** k).vec() for k in range(n)]
        in_span = solve_affine(Matrix.from_columns(powers, rows=n * n), s.vec()) is not None
        ok = (s + nil == m and s.commutes_with(nil) and (nil ** n).is_zero()
              and p == squarefree_part(p) and in_span)
        res.record(ok, i)
    return [res]


SUITES: dict = {
    "clebsch": clebsch,
    "deligne": deligne,
    "jm": jm,
    "ds": ds,
    "functor": functor,
    "jc": jc,
}


def run_suite(name: str, seed: int = 0, sizes: dict | None = None) -> list:
    merged = dict(DEFAULT_SIZES)
    merged.update(sizes or {})
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(SUITES[key](seed, merged))
        return out
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name](seed, merged)
