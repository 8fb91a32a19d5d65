"""Command-line front end.  JSON on stdout; exit 0 ok, 1 failed check, 2 bad input."""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import serialize as ser
from .checks import run_suite
from .exact import jordan_chevalley, min_poly
from .functors import ds_algebra, ds_module, ga11_fusion, osp_fusion, phi_general
from .jm import JMError, jm_triple, neat_in_g, neat_cone_scan, support_scan
from .liesuper import adjoint_rep, dual_rep, gl_superalgebra, tensor_rep
from .nilform import OddNilpotent, adapted_basis, block_multiplicities, deligne_filtration, is_neat_on
from .presets import PRESETS, load_preset
from .serialize import InputError
from .superlinalg import ODD, HomMap, Parity

SCAN_PRESETS = ("gl12-neat-cone", "gl11-support")


class Failed(Exception):
    """A computation ran but a check did not pass (exit 1)."""

    def __init__(self, doc: dict):
        super().__init__(doc.get("error", "check failed"))
        self.doc = doc


# --------------------------------------------------------------------------
# input resolution

def _algebra_and_rep(args, need_rep: bool = True):
    if args.preset:
        if args.preset not in PRESETS:
            raise InputError("unknown_preset", f"unknown preset {args.preset!r}")
        kind = args.rep if args.rep in ("defining", "adjoint") else "defining"
        g, rep = load_preset(args.preset, kind)
        if args.rep and args.rep not in ("defining", "adjoint"):
            rep = ser.rep_from_json(args.rep, algebra=g)
        return g, rep
    if args.rep and args.rep not in ("defining", "adjoint"):
        rep = ser.rep_from_json(args.rep)
        return rep.algebra, rep
    if args.algebra:
        g = ser.algebra_from_json(args.algebra)
        if need_rep:
            return g, adjoint_rep(g)
        return g, None
    raise InputError("missing_input", "give --preset, --rep or --algebra")


def _element(args, g):
    if not args.element:
        raise InputError("missing_input", "give --element")
    return ser.element_from_json(args.element, g)


def _operator(args) -> OddNilpotent:
    """Operator from ``--module`` or as ``rho(x)`` from algebra data."""
    if args.module:
        return ser.operator_from_json(args.module)
    g, rep = _algebra_and_rep(args)
    x = _element(args, g)
    if not x.is_odd():
        raise InputError("not_odd", "element must be odd")
    m = rep.rho(x)
    if not m.is_nilpotent():
        raise InputError("not_nilpotent", "element does not act nilpotently")
    return OddNilpotent(HomMap(rep.space, rep.space, ODD, m))


def _index_shift(text: Optional[str], flag: str) -> tuple:
    """``"2"`` or ``"2:odd"`` -> ``(2, Parity)``."""
    if text is None:
        raise InputError("missing_input", f"give {flag}")
    head, _, tail = text.partition(":")
    try:
        k = int(head)
        p = Parity.of(tail or "even")
    except ValueError:
        raise InputError("bad_argument", f"{flag} must look like 2 or 2:odd") from None
    if k < 0:
        raise InputError("bad_argument", f"{flag} must be non-negative")
    return k, p


def _require_seed(args):
    if args.seed is None:
        raise InputError("missing_seed", "sampling needs --seed")
    return args.seed


# --------------------------------------------------------------------------
# subcommands

def cmd_blocks(args) -> dict:
    op = _operator(args)
    if args.chains:
        return ser.blocks_to_json(adapted_basis(op), with_chains=True)
    return ser.blocks_to_json(block_multiplicities(op))


def cmd_neat(args) -> dict:
    if args.module:
        op = ser.operator_from_json(args.module)
        return {"neat": is_neat_on(op), "blocks": ser.blocks_to_json(block_multiplicities(op))["blocks"]}
    g, rep = _algebra_and_rep(args)
    x = _element(args, g)
    try:
        neat = neat_in_g(g, rep, x)
    except ValueError as exc:
        raise InputError("precondition", str(exc)) from None
    m = rep.rho(x)
    doc = {"neat": neat, "nilpotent": m.is_nilpotent(), "quasi_reductive_assumed": True}
    if doc["nilpotent"]:
        doc["blocks"] = ser.blocks_to_json(block_multiplicities(OddNilpotent(HomMap(rep.space, rep.space, ODD, m))))["blocks"]
    return doc


def cmd_deligne(args) -> dict:
    return ser.filtration_to_json(deligne_filtration(_operator(args)))


def cmd_phi(args) -> dict:
    g, rep = _algebra_and_rep(args)
    if args.module:
        rep = ser.rep_from_json(args.module, algebra=g)
    x = _element(args, g)
    if not x.is_odd():
        raise InputError("not_odd", "element must be odd")
    return ser.semisimple_to_json(phi_general(rep, x))


def cmd_jm_triple(args) -> dict:
    g, rep = _algebra_and_rep(args)
    x = _element(args, g)
    try:
        triple = jm_triple(g, rep, x)
    except JMError as exc:
        raise Failed({"ok": False, "error": str(exc)}) from None
    except ValueError as exc:
        raise InputError("precondition", str(exc)) from None
    return ser.triple_to_json(triple)


def cmd_ds(args) -> dict:
    g, rep = _algebra_and_rep(args, need_rep=False)
    x = _element(args, g)
    doc = {}
    try:
        if rep is not None:
            if args.module:
                rep = ser.rep_from_json(args.module, algebra=g)
            mx = ds_module(rep, x)
            doc["module"] = {
                "space": ser.space_to_json(mx.space),
                "sdim": mx.space.sdim,
                "action": {n: ser.hommap_to_json(f) for n, f in mx.action.items()},
            }
        if g.bracket(x, x).is_zero():
            gx = ds_algebra(g, x)
            doc["algebra"] = {"dims": list(gx.dims), **ser.algebra_to_json(gx)}
    except ValueError as exc:
        raise InputError("precondition", str(exc)) from None
    return doc


def cmd_fusion(args) -> dict:
    left = _index_shift(args.left, "--left")
    right = _index_shift(args.right, "--right")
    if args.family == "ga11":
        return ser.ga11_to_json(ga11_fusion(left, right))
    return ser.semisimple_to_json(osp_fusion(left, right))


def cmd_jc(args) -> dict:
    if not args.module:
        raise InputError("missing_input", "give --module with a square matrix")
    doc = ser.load_document(args.module)
    if isinstance(doc, dict):
        doc = doc.get("matrix")
    m = ser.matrix_from_json(doc)
    if m.rows != m.cols:
        raise InputError("invalid", "matrix must be square")
    s, n = jordan_chevalley(m)
    return {
        "s": ser.matrix_to_json(s),
        "n": ser.matrix_to_json(n),
        "min_poly": min_poly(m).to_strings(),
        "min_poly_s": min_poly(s).to_strings(),
    }


def cmd_scan(args) -> dict:
    seed = _require_seed(args)
    if args.preset == "gl12-neat-cone":
        doc = neat_cone_scan(args.samples or 1000, seed)
    elif args.preset == "gl11-support":
        g, v = gl_superalgebra(1, 1)
        vv = tensor_rep(v, dual_rep(v))
        special = [g.zero(), g.element({"E12": 1}), g.element({"E21": 1})]
        report = support_scan(g, v, [("V", v), ("V*V", vv)], samples=args.samples or 20, seed=seed, special=special)
        doc = {
            "preset": "gl11-support",
            "seed": seed,
            "modules": report.modules,
            "quasi_reductive_assumed": report.quasi_reductive,
            "samples": [{
                "x": ser.element_to_json(s["x"]),
                "neat": s["neat"],
                "member": s["member"],
                "laws": s["laws"],
            } for s in report.samples],
            "violations": report.violations,
            "ok": report.ok,
        }
    else:
        raise InputError("unknown_preset", f"scan preset must be one of {', '.join(SCAN_PRESETS)}")
    if not doc["ok"]:
        raise Failed(doc)
    return doc


def cmd_check(args) -> dict:
    seed = _require_seed(args)
    sizes = {}
    if args.samples is not None:
        for key in ("nilpotents", "cone_samples", "triples", "module_pairs", "jc_matrices"):
            sizes[key] = args.samples
    if args.max_index is not None:
        sizes["clebsch_max_index"] = args.max_index
    try:
        results = run_suite(args.suite, seed, sizes)
    except KeyError as exc:
        raise InputError("unknown_suite", str(exc)) from None
    doc = {
        "suite": args.suite,
        "seed": seed,
        "results": [{
            "suite": r.suite,
            "name": r.name,
            "cases": r.cases,
            "passed": r.passed,
            "failures": r.failures[:10],
        } for r in results],
        "passed": sum(r.passed for r in results),
        "failed": sum(not r.passed for r in results),
    }
    if doc["failed"]:
        raise Failed(doc)
    return doc


COMMANDS = {
    "blocks": cmd_blocks,
    "neat": cmd_neat,
    "deligne": cmd_deligne,
    "phi": cmd_phi,
    "jm-triple": cmd_jm_triple,
    "ds": cmd_ds,
    "fusion": cmd_fusion,
    "jc": cmd_jc,
    "scan": cmd_scan,
    "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superjm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--preset")
        p.add_argument("--algebra", help="algebra JSON or path")
        p.add_argument("--rep", help="defining | adjoint | representation JSON or path")
        p.add_argument("--element", help='{"coeffs": {"E12": "1"}}')
        p.add_argument("--module", help="operator, module or matrix JSON, depending on the command")
        p.add_argument("--format", choices=("json", "text"), default="json")
        if name == "blocks":
            p.add_argument("--chains", action="store_true", help="include an adapted basis")
        if name == "fusion":
            p.add_argument("--family", choices=("ga11", "osp"), default="ga11")
            p.add_argument("--left")
            p.add_argument("--right")
        if name in ("scan", "check"):
            p.add_argument("--seed", type=int)
            p.add_argument("--samples", type=int)
        if name == "check":
            p.add_argument("--suite", default="all")
            p.add_argument("--max-index", type=int, dest="max_index")
    return parser


def _text(command: str, doc: dict) -> str:
    if command == "check":
        width = max(len(r["name"]) for r in doc["results"]) if doc["results"] else 4
        lines = [f"{'suite':<8} {'check':<{width}} {'cases':>6}  result"]
        for r in doc["results"]:
            lines.append(f"{r['suite']:<8} {r['name']:<{width}} {r['cases']:>6}  {'pass' if r['passed'] else 'FAIL'}")
        lines.append(f"{doc['passed']} passed, {doc['failed']} failed")
        return "\n".join(lines)
    if command in ("phi", "fusion") and "summands" in doc:
        parts = []
        for s in doc["summands"]:
            tag = ("Π" if s["shift"] == "odd" else "") + f"M{s['k']}"
            parts.append(tag if s["mult"] == 1 else f"{s['mult']}·{tag}")
        return " ⊕ ".join(parts) or "0"
    return ser.dumps(doc)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = COMMANDS[args.command](args)
        status = 0
    except InputError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 2
    except Failed as exc:
        doc, status = exc.doc, 1
    out = ser.dumps(doc) if args.format == "json" else _text(args.command, doc)
    print(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
