"""JSON encodings.  Rationals are strings ``"p/q"`` (or ``"p"``)."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .exact import Matrix, Q, format_rational
from .functors import Ga11Object, SemisimpleObject
from .jm import OspTriple
from .liesuper import AlgebraElement, LieSuperAlgebra, Representation
from .nilform import BlockDecomposition, Filtration, OddNilpotent
from .superlinalg import HomMap, Parity, SuperSpace

__all__ = [
    "InputError",
    "dumps",
    "load_document",
    "rational_to_json",
    "rational_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "space_to_json",
    "space_from_json",
    "hommap_to_json",
    "hommap_from_json",
    "algebra_to_json",
    "algebra_from_json",
    "element_to_json",
    "element_from_json",
    "rep_to_json",
    "rep_from_json",
    "blocks_to_json",
    "blocks_from_json",
    "filtration_to_json",
    "filtration_from_json",
    "semisimple_to_json",
    "semisimple_from_json",
    "ga11_to_json",
    "ga11_from_json",
    "triple_to_json",
    "operator_from_json",
]


class InputError(ValueError):
    """Malformed or invalid input; ``code`` is a short machine-readable tag."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def dumps(doc: Any) -> str:
    """Stable rendering: keys keep insertion order, fixed separators."""
    return json.dumps(doc, ensure_ascii=False, indent=2)


def load_document(text_or_path: str) -> Any:
    """Parse inline JSON, or read it from a file path."""
    text = text_or_path.strip()
    if not text.startswith(("{", "[", '"')):
        path = Path(text_or_path)
        if not path.exists():
            raise InputError("missing_file", f"no such file: {text_or_path}")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("malformed_json", f"malformed JSON: {exc.msg} at line {exc.lineno}") from None


def _need(doc: Any, key: str, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise InputError("schema", f"missing key {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise InputError("schema", f"key {key!r} has the wrong type")
    return value


def rational_to_json(q) -> str:
    return format_rational(Q(q))


def rational_from_json(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise InputError("schema", f"rational must be a string or integer, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise InputError("schema", f"bad rational {s!r}") from None


def matrix_to_json(m: Matrix) -> list:
    return [[format_rational(v) for v in row] for row in m.tolist()]


def matrix_from_json(doc, cols: Optional[int] = None) -> Matrix:
    if not isinstance(doc, list) or any(not isinstance(r, list) for r in doc):
        raise InputError("schema", "matrix must be a list of rows")
    rows = [[rational_from_json(v) for v in r] for r in doc]
    if len({len(r) for r in rows}) > 1:
        raise InputError("schema", "matrix rows have different lengths")
    try:
        return Matrix(rows, cols)
    except ValueError as exc:
        raise InputError("schema", str(exc)) from None


def space_to_json(v: SuperSpace) -> dict:
    return {"even": list(v.even), "odd": list(v.odd)}


def space_from_json(doc) -> SuperSpace:
    try:
        return SuperSpace(tuple(_need(doc, "even", list)), tuple(_need(doc, "odd", list)))
    except ValueError as exc:
        raise InputError("invalid", str(exc)) from None


def hommap_to_json(f: HomMap) -> dict:
    return {"parity": f.parity.label, "matrix": matrix_to_json(f.matrix)}


def hommap_from_json(doc, source: SuperSpace, target: Optional[SuperSpace] = None) -> HomMap:
    target = target or source
    try:
        parity = Parity.of(_need(doc, "parity"))
        return HomMap(source, target, parity, matrix_from_json(_need(doc, "matrix"), source.dim))
    except InputError:
        raise
    except ValueError as exc:
        raise InputError("invalid", str(exc)) from None


def algebra_to_json(g: LieSuperAlgebra) -> dict:
    brackets = []
    for (i, j), terms in sorted(g.brackets.items()):
        brackets.append({"i": i, "j": j, "terms": [{"k": k, "c": format_rational(c)} for k, c in sorted(terms.items())]})
    return {
        "basis": [{"name": n, "parity": p.label} for n, p in zip(g.names, g.parities)],
        "brackets": brackets,
    }


def algebra_from_json(doc, validate_it: bool = True) -> LieSuperAlgebra:
    from .liesuper import validate
    if isinstance(doc, str):
        doc = load_document(doc)
    basis = _need(doc, "basis", list)
    try:
        names = [_need(b, "name", str) for b in basis]
        parities = [Parity.of(_need(b, "parity")) for b in basis]
        brackets = {}
        for entry in _need(doc, "brackets", list):
            i, j = int(_need(entry, "i")), int(_need(entry, "j"))
            brackets[(i, j)] = {int(_need(t, "k")): rational_from_json(_need(t, "c")) for t in _need(entry, "terms", list)}
        g = LieSuperAlgebra(names, parities, brackets)
    except InputError:
        raise
    except (ValueError, TypeError) as exc:
        raise InputError("invalid", str(exc)) from None
    if validate_it:
        problems = validate(g)
        if problems:
            raise InputError("invalid_algebra", f"algebra fails {len(problems)} identities, first: {problems[0]}")
    return g


def element_to_json(u: AlgebraElement) -> dict:
    return {"coeffs": {n: format_rational(c) for n, c in u.as_dict().items()}}


def element_from_json(doc, g: LieSuperAlgebra) -> AlgebraElement:
    if isinstance(doc, str):
        doc = load_document(doc)
    coeffs = _need(doc, "coeffs", dict)
    unknown = [n for n in coeffs if n not in g.names]
    if unknown:
        raise InputError("unknown_basis", f"unknown basis element {unknown[0]!r}")
    return g.element({n: rational_from_json(c) for n, c in coeffs.items()})


def rep_to_json(rep: Representation) -> dict:
    return {
        "algebra": algebra_to_json(rep.algebra),
        "space": space_to_json(rep.space),
        "action": {n: matrix_to_json(rep.matrix(n)) for n in rep.algebra.names},
    }


def rep_from_json(doc, algebra: Optional[LieSuperAlgebra] = None) -> Representation:
    from .liesuper import validate
    if isinstance(doc, str):
        doc = load_document(doc)
    g = algebra or algebra_from_json(_need(doc, "algebra"))
    space = space_from_json(_need(doc, "space"))
    action = _need(doc, "action", dict)
    missing = [n for n in g.names if n not in action]
    if missing:
        raise InputError("schema", f"no action given for {missing[0]!r}")
    try:
        rep = Representation.from_matrices(g, space, {n: matrix_from_json(action[n], space.dim) for n in g.names})
    except InputError:
        raise
    except ValueError as exc:
        raise InputError("invalid", str(exc)) from None
    problems = validate(rep)
    if problems:
        raise InputError("invalid_representation", f"representation fails {len(problems)} identities, first: {problems[0]}")
    return rep


def operator_from_json(doc) -> OddNilpotent:
    """``{"space": ..., "matrix": ...}`` as an odd nilpotent operator."""
    if isinstance(doc, str):
        doc = load_document(doc)
    space = space_from_json(_need(doc, "space"))
    try:
        return OddNilpotent(HomMap(space, space, Parity.of("odd"), matrix_from_json(_need(doc, "matrix"), space.dim)))
    except InputError:
        raise
    except ValueError as exc:
        raise InputError("invalid_operator", str(exc)) from None


def _vec(v) -> list:
    return [format_rational(c) for c in v]


def blocks_to_json(dec: BlockDecomposition, with_chains: bool = False) -> dict:
    out = {"blocks": [{"length": b.length, "top_parity": b.top_parity.label, "mult": b.mult} for b in dec.blocks]}
    if with_chains and dec.chains is not None:
        out["chains"] = [[_vec(v) for v in ch] for ch in dec.chains]
    return out


def blocks_from_json(doc) -> BlockDecomposition:
    items = [(int(_need(b, "length")), Parity.of(_need(b, "top_parity")), int(_need(b, "mult")))
             for b in _need(doc, "blocks", list)]
    chains = None
    if "chains" in doc:
        chains = tuple(tuple(tuple(rational_from_json(c) for c in v) for v in ch) for ch in doc["chains"])
    return BlockDecomposition.from_blocks(items, chains)


def filtration_to_json(f: Filtration) -> dict:
    return {
        "space": space_to_json(f.space),
        "levels": {str(i): matrix_to_json(f.levels[i]) for i in sorted(f.levels)},
        "gr_dims": {str(i): d for i, d in sorted(f.gr_dims().items())},
    }


def filtration_from_json(doc) -> Filtration:
    space = space_from_json(_need(doc, "space"))
    levels = {}
    for key, m in _need(doc, "levels", dict).items():
        mat = matrix_from_json(m, None)
        levels[int(key)] = mat if mat.rows else Matrix.zeros(space.dim, 0)
    return Filtration(space, levels)


def semisimple_to_json(s: SemisimpleObject) -> dict:
    return {"summands": [{"k": k, "shift": p.label, "mult": m} for k, p, m in s.summands]}


def semisimple_from_json(doc) -> SemisimpleObject:
    return SemisimpleObject(tuple((int(_need(t, "k")), Parity.of(_need(t, "shift")), int(_need(t, "mult")))
                                  for t in _need(doc, "summands", list)))


def ga11_to_json(obj: Ga11Object) -> dict:
    """Summands by module index ``k`` of ``M_k`` (block length ``k + 1``)."""
    return {"summands": [{"k": l - 1, "length": l, "shift": p.label, "mult": m} for l, p, m in obj.summands]}


def ga11_from_json(doc) -> Ga11Object:
    return Ga11Object(tuple((int(_need(t, "k")) + 1, Parity.of(_need(t, "shift")), int(_need(t, "mult")))
                            for t in _need(doc, "summands", list)))


def triple_to_json(t: OspTriple) -> dict:
    return {
        "x": element_to_json(t.x),
        "h": element_to_json(t.h),
        "Y": element_to_json(t.Y),
        "certificates": {
            "relations": all(t.relation_check().values()),
            "spectrum": [{"eigenvalue": e, "mult": m} for e, m in t.spectrum],
        },
    }
