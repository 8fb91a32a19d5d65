"""The twelve acceptance criteria, one test each, with a verdict line per criterion.

Criteria 1-11 read the exact-equality suites behind ``superjm check`` at the
default sizes; criterion 12 drives the installed command line twice.
"""
import json
import subprocess
import sys

import pytest

from superjm.checks import DEFAULT_SIZES, run_suite

SEED = 7
VERDICTS: dict = {}


@pytest.fixture(scope="module")
def results():
    return {(r.suite, r.name): r for r in run_suite("all", SEED, DEFAULT_SIZES)}


def _verdict(number, title, checks, minimum_cases=None):
    cases = sum(c.cases for c in checks)
    ok = all(c.passed for c in checks)
    if minimum_cases is not None:
        ok = ok and all(c.cases >= m for c, m in zip(checks, minimum_cases))
    line = f"criterion {number:2d} {title}: {'PASS' if ok else 'FAIL'} ({cases} cases)"
    VERDICTS[number] = line
    print(line)
    failures = [f for c in checks for f in c.failures[:5]]
    assert ok, failures


def test_criterion_01_tensor_decomposition_equals_fusion_rules(results):
    checks = [results["clebsch", "tensor_blocks_equal_fusion_rule"], results["clebsch", "restriction_dims"]]
    _verdict(1, "tensor blocks = ga11_fusion, indices 0..11, both parities", checks, [12 * 12 * 4, 12])


def test_criterion_02_deligne_axioms_and_canonicity(results):
    checks = [results["deligne", "filtration_axioms"], results["deligne", "filtration_canonical_under_random_pivots"]]
    _verdict(2, "Deligne filtration axioms and pivot invariance", checks, [200, 200])


def test_criterion_03_rank_formula_equals_greedy_chains(results):
    checks = [results["deligne", "rank_formula_equals_greedy_chains_and_basis"]]
    _verdict(3, "rank-formula blocks = greedy chains, chains form a basis", checks, [200])


def test_criterion_04_gl12_neat_cone(results):
    checks = [results["jm", "gl12_neat_cone"]]
    _verdict(4, "gl(1|2) nilpotent cone and neat locus", checks, [1000 + 81])


def test_criterion_05_jm_triples(results):
    checks = [
        results["jm", "gl12_triples_relations_and_spectrum"],
        results["jm", "triple_restriction_matches_phi"],
        results["jm", "osp12_self_triple"],
        results["jm", "gl11_e_refused"],
    ]
    _verdict(5, "JM triples: relations, spectrum, osp(1|2), refusal", checks, [100, 100, 2, 1])


def test_criterion_06_phi_monoidal_and_sdim(results):
    checks = [results["functor", "phi_monoidal"], results["functor", "phi_general_preserves_sdim"]]
    _verdict(6, "Phi monoidal and sdim-preserving", checks, [100, 100])


def test_criterion_07_duflo_serganova(results):
    checks = [
        results["ds", "ds_algebra_is_gl_m-1_n-1"],
        results["ds", "ds_module_preserves_sdim"],
        results["ds", "ds_at_zero_is_identity"],
    ]
    _verdict(7, "DS algebra is gl(m-1|n-1), modules keep sdim", checks, [9, 9, 9])


def test_criterion_08_semisimplification_not_exact(results):
    checks = [results["functor", "semisimplification_not_exact_in_middle"]]
    _verdict(8, "semisimplified sequence has dims 0, (2|1), (1|0)", checks, [3])


def test_criterion_09_projective_annihilation(results):
    checks = [results["functor", "gl11_projective_annihilated"]]
    _verdict(9, "gl(1|1) projective support is {0}", checks, [27])


def test_criterion_10_osp_simple_modules(results):
    checks = [results["functor", "osp_simple_modules"]]
    _verdict(10, "osp_simple(k), k <= 6, restricts to one odd-length block", checks, [14])


def test_criterion_11_jordan_chevalley(results):
    checks = [results["jc", "jordan_chevalley_random"]]
    _verdict(11, "Jordan-Chevalley on random rational matrices", checks, [200])


def test_criterion_12_cli_reproducible():
    argv = [sys.executable, "-m", "superjm", "check", "--suite", "all", "--seed", str(SEED)]
    first = subprocess.run(argv, capture_output=True, check=False)
    second = subprocess.run(argv, capture_output=True, check=False)
    ok = first.returncode == 0 and second.returncode == 0 and first.stdout == second.stdout
    doc = json.loads(first.stdout) if first.stdout else {}
    ok = ok and doc.get("failed") == 0
    line = f"criterion 12 check --suite all exits 0, byte-identical reruns: {'PASS' if ok else 'FAIL'}"
    VERDICTS[12] = line
    print(line)
    assert ok, (first.returncode, second.returncode, first.stderr[-500:])


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
