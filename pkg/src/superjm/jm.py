"""Neatness, osp(1|2)-triples through an odd element, and support scans."""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exact import Matrix, kernel_basis, min_poly, solve_affine, squarefree_part
from .functors import phi_general
from .liesuper import (
    AlgebraElement,
    LieSuperAlgebra,
    Representation,
    _osp,
    adjoint_rep,
    direct_sum_rep,
    gl_superalgebra,
    is_faithful,
    tensor_rep,
)
from .nilform import (
    Filtration,
    OddNilpotent,
    block_multiplicities,
    block_weights,
    deligne_filtration,
    is_neat_on,
)
from .superlinalg import ODD, HomMap

__all__ = [
    "JMError",
    "OspTriple",
    "SupportReport",
    "neat_in_g",
    "jm_triple",
    "triple_representation",
    "integer_spectrum",
    "deligne_on_algebra",
    "support_membership",
    "support_scan",
    "neat_cone_scan",
    "gl12_element",
]


class JMError(ValueError):
    """x cannot be completed to an osp(1|2)-triple."""


@dataclass(frozen=True)
class OspTriple:
    algebra: LieSuperAlgebra
    x: AlgebraElement
    h: AlgebraElement
    Y: AlgebraElement
    spectrum: tuple = ()
    relations: bool = True

    def relation_check(self) -> dict:
        g = self.algebra
        return {
            "[h,x]=-2x": g.bracket(self.h, self.x) == self.x.scale(-2),
            "[h,Y]=2Y": g.bracket(self.h, self.Y) == self.Y.scale(2),
            "[Y,x]=h": g.bracket(self.Y, self.x) == self.h,
        }


def _odd_nilpotent(rep: Representation, x: AlgebraElement) -> Optional[OddNilpotent]:
    m = rep.rho(x)
    if not m.is_nilpotent():
        return None
    return OddNilpotent(HomMap(rep.space, rep.space, ODD, m))


def neat_in_g(algebra: LieSuperAlgebra, faithful_rep: Representation, x: AlgebraElement) -> bool:
    """``x`` is nilpotent and neat on a faithful representation."""
    if not is_faithful(faithful_rep):
        raise ValueError("criterion requires a faithful representation")
    if not x.is_odd():
        raise ValueError("element must be odd")
    op = _odd_nilpotent(faithful_rep, x)
    return op is not None and is_neat_on(op)


def integer_spectrum(m: Matrix) -> Optional[Counter]:
    """Eigenvalue multiplicities if ``m`` is semisimple with integer spectrum."""
    n = m.rows
    if n == 0:
        return Counter()
    p = min_poly(m)
    if p != squarefree_part(p):
        return None
    # Cauchy bound for the roots of a monic polynomial
    roots = []
    bound = 1 + max((abs(c) for c in p.coeffs[:-1]), default=0)
    for c in range(-int(bound), int(bound) + 1):
        if p(Fraction(c)) == 0:
            roots.append(c)
    if len(roots) != p.degree:
        return None
    eigen = Counter()
    for c in roots:
        eigen[c] = kernel_basis(m - Matrix.identity(n).scale(c)).cols
    if sum(eigen.values()) != n:
        return None
    return eigen


def _odd_indices(g: LieSuperAlgebra) -> list:
    return g.indices(ODD)


def _restrict_odd(g: LieSuperAlgebra, mat: Matrix) -> Matrix:
    """Columns of ``mat`` (algebra coordinates) belonging to odd basis elements."""
    return mat.submatrix(range(mat.rows), _odd_indices(g))


def _lift_odd(g: LieSuperAlgebra, coords) -> AlgebraElement:
    vec = [Fraction(0)] * g.dim
    for i, c in zip(_odd_indices(g), coords):
        vec[i] = c
    return AlgebraElement(g, tuple(vec))


def jm_triple(algebra: LieSuperAlgebra, rep: Representation, x: AlgebraElement) -> OspTriple:
    """Complete a neat ``x`` to ``(h, x, Y)`` by two linear solves.

    1. odd ``w`` with ``[[x, w], x] = -2x``; ``h = [x, w]``;
    2. odd ``Y`` with ``[Y, x] = h`` and ``[h, Y] = 2Y``;
    then certify the relations, ``ad_h`` semisimple with integer spectrum,
    and the spectrum of ``rho(h)`` against the chain weights of ``rho(x)``.
    """
    g = algebra
    if rep.algebra != g:
        raise ValueError("representation is of a different algebra")
    if not x.is_odd():
        raise ValueError("element must be odd")
    if x.is_zero():
        z = g.zero()
        return OspTriple(g, x, z, z, spectrum=tuple(sorted(Counter({0: rep.dim}).items())) if rep.dim else ())
    if not neat_in_g(g, rep, x):
        raise JMError("not neat")

    adx = g.ad(x)
    # [[x, w], x] = -[x, [x, w]] for odd x, w
    system = _restrict_odd(g, adx @ adx)
    sol = solve_affine(system, x.scale(2).coeffs)
    if sol is None:
        raise JMError("no grading element: x not JM-extendable")
    w = _lift_odd(g, sol[0])
    h = g.bracket(x, w)

    adh = g.ad(h)
    # [Y, x] = [x, Y] for odd Y, x
    top = _restrict_odd(g, adx)
    bottom = _restrict_odd(g, adh - Matrix.identity(g.dim).scale(2))
    sol = solve_affine(top.vstack(bottom), tuple(h.coeffs) + (Fraction(0),) * g.dim)
    if sol is None:
        raise JMError("no Y over this h: x not JM-extendable")
    y = _lift_odd(g, sol[0])

    triple = OspTriple(g, x, h, y)
    if not all(triple.relation_check().values()):
        raise JMError("relations fail after solving")
    if integer_spectrum(adh) is None:
        raise JMError("ad_h is not semisimple with integer spectrum")
    eigen = integer_spectrum(rep.rho(h))
    weights = block_weights(block_multiplicities(_odd_nilpotent(rep, x)))
    if eigen is None or +eigen != +weights:
        raise JMError("spectrum certificate fails")
    return OspTriple(g, x, h, y, spectrum=tuple(sorted(eigen.items(), reverse=True)), relations=True)


def triple_representation(triple: OspTriple, rep: Representation) -> Representation:
    """The osp(1|2)-module structure on ``rep`` induced by the triple."""
    hm, xm, ym = rep.rho(triple.h), rep.rho(triple.x), rep.rho(triple.Y)
    mats = {"h": hm, "E": ym @ ym, "F": xm @ xm, "X": xm, "Y": ym}
    return Representation.from_matrices(_osp(), rep.space, mats)


def deligne_on_algebra(algebra: LieSuperAlgebra, x: AlgebraElement) -> Filtration:
    ad = adjoint_rep(algebra)
    m = ad.rho(x)
    if not m.is_nilpotent():
        raise ValueError("ad_x is not nilpotent")
    return deligne_filtration(OddNilpotent(HomMap(ad.space, ad.space, ODD, m)))


def support_membership(module: Representation, x: AlgebraElement) -> bool:
    return not phi_general(module, x).is_zero()


# --------------------------------------------------------------------------
# scans

@dataclass
class SupportReport:
    modules: list
    seed: int
    samples: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    quasi_reductive: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations


def _sample_odd(g: LieSuperAlgebra, rng: random.Random, radius: int) -> AlgebraElement:
    return _lift_odd(g, [Fraction(rng.randint(-radius, radius)) for _ in _odd_indices(g)])


def support_scan(
    algebra: LieSuperAlgebra,
    rep: Representation,
    modules: Sequence,
    samples: int = 20,
    seed: int = 0,
    radius: int = 1,
    special: Sequence[AlgebraElement] = (),
    quasi_reductive: bool = True,
) -> SupportReport:
    """Sample odd elements and record support membership per module.

    ``modules`` is a list of ``(name, Representation)``.  For each pair the
    sum and tensor product are added and checked pointwise: the sum is in
    the union, the tensor product in the intersection.  Neat samples (judged
    on the faithful ``rep``) must lie in every nonzero module's support.
    """
    rng = random.Random(seed)
    points = list(special) + [_sample_odd(algebra, rng, radius) for _ in range(samples)]
    named = list(modules)
    pairs = []
    for i in range(len(named)):
        for j in range(i + 1, len(named)):
            (a, ra), (b, rb) = named[i], named[j]
            pairs.append((a, b, direct_sum_rep(ra, rb), tensor_rep(ra, rb)))
    report = SupportReport(modules=[n for n, _ in named], seed=seed, quasi_reductive=quasi_reductive)
    for x in points:
        neat = neat_in_g(algebra, rep, x)
        member = {name: support_membership(r, x) for name, r in named}
        entry = {"x": x, "neat": neat, "member": member, "laws": {}}
        for a, b, rsum, rten in pairs:
            s, t = support_membership(rsum, x), support_membership(rten, x)
            union = member[a] or member[b]
            inter = member[a] and member[b]
            entry["laws"][f"{a}+{b}"] = s == union
            entry["laws"][f"{a}*{b}"] = t == inter
            if s != union or t != inter:
                report.violations.append(f"support law fails for {a}, {b} at {x.as_dict()}")
        if neat:
            for name, r in named:
                if r.dim and not member[name]:
                    report.violations.append(f"neat element outside supp({name}) at {x.as_dict()}")
        report.samples.append(entry)
    return report


def gl12_element(g: LieSuperAlgebra, a, b, c, d) -> AlgebraElement:
    """``[[0, a, b], [c, 0, 0], [d, 0, 0]]`` in gl(1|2)."""
    return g.element({"E12": a, "E13": b, "E21": c, "E31": d})


def _cone_samples(rng: random.Random, count: int, radius: int) -> list:
    """Half uniform, half on the nilpotent cone ``ac + bd = 0``."""
    out = []
    for i in range(count):
        if i % 2 == 0:
            out.append(tuple(rng.randint(-radius, radius) for _ in range(4)))
            continue
        a, b = rng.randint(-radius, radius), rng.randint(-radius, radius)
        t = rng.randint(-radius, radius)
        mode = rng.randrange(3)
        if mode == 0:
            out.append((a, b, -t * b, t * a))
        elif mode == 1:
            out.append((a, b, 0, 0))
        else:
            out.append((0, 0, a, b))
    return out


def neat_cone_scan(samples: int = 1000, seed: int = 0, radius: int = 3) -> dict:
    """Check nilpotency and neatness predictions for odd elements of gl(1|2)."""
    g, rep = gl_superalgebra(1, 2)
    rng = random.Random(seed)
    boundary = [(a, b, c, d) for a in (-1, 0, 1) for b in (-1, 0, 1) for c in (-1, 0, 1) for d in (-1, 0, 1)]
    points = boundary + _cone_samples(rng, samples, radius)
    counterexamples = []
    stats = Counter()
    for a, b, c, d in points:
        x = gl12_element(g, a, b, c, d)
        nilpotent = rep.rho(x).is_nilpotent()
        if nilpotent != (a * c + b * d == 0):
            counterexamples.append({"abcd": [a, b, c, d], "kind": "nilpotency"})
            continue
        stats["nilpotent" if nilpotent else "not_nilpotent"] += 1
        if not nilpotent:
            continue
        neat = neat_in_g(g, rep, x)
        predicted = ((a, b) != (0, 0) and (c, d) != (0, 0)) or (a, b, c, d) == (0, 0, 0, 0)
        stats["neat" if neat else "not_neat"] += 1
        if neat != predicted:
            counterexamples.append({"abcd": [a, b, c, d], "kind": "neatness"})
    return {
        "preset": "gl12-neat-cone",
        "seed": seed,
        "samples": samples,
        "boundary_points": len(boundary),
        "counts": dict(sorted(stats.items())),
        "counterexamples": counterexamples,
        "ok": not counterexamples,
    }
