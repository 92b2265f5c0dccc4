"""
End-to-end runs over the shipped corpus. Run with `pytest -m slow`.
"""
import io

import numpy as np
import pytest
from rich.console import Console

from app import main
from data import corpus
from src.algebra import compute_epsilons, m_iso_sweep
from src.cohomology import CochainGroup, check_delta_squared, cohomology, delta
from src.crossed import classify
from src.finalg import zmod
from src.leavitt import lpa_build
from src.skew import build_skew_ring, module_of

pytestmark = pytest.mark.slow

SMALL = 10 ** 4


def _modules():
    out = {name: module_of(act) for name, act in corpus.action_corpus().items()}
    for m, q in ((2, 5), (4, 5), (3, 7)):
        out[f"z{m}_trivial_z{q}"] = module_of(corpus.identity_partial_action(m, zmod(q), "1"))
    return out


def _epsilon_strong_instances():
    out = {
        "group_algebra": corpus.group_algebra(3, 2),
        "morita": corpus.morita_algebra(),
        "matrix_pair": corpus.matrix_algebra_pair(3),
        "lpa_z2": lpa_build(corpus.example_graph(), 2).graded,
        "lpa_z3": lpa_build(corpus.example_graph(), 3).graded,
    }
    for name, act in corpus.action_corpus().items():
        out[f"skew_{name}"] = build_skew_ring(act).graded
    return out


def test_delta_squared_and_homomorphism_suite():
    rng = np.random.default_rng(20240601)
    modules = {k: M for k, M in _modules().items() if len(M.G) <= 6 and max(m.size for m in M.monoids.values()) <= 9}
    assert len(modules) >= 5
    checked = 0
    for name, M in modules.items():
        for n in range(3):
            C, C1 = CochainGroup(M, n), CochainGroup(M, n + 1)
            for _ in range(60):
                f, h = C.random(rng), C.random(rng)
                assert check_delta_squared(M, f), (name, n)
                assert delta(M, C.mul(f, h)) == C1.mul(delta(M, f), delta(M, h)), (name, n)
                checked += 1
    assert checked >= 1000


def test_backend_agreement_on_small_instances():
    compared = 0
    for name, M in _modules().items():
        for n in range(4):
            if CochainGroup(M, n).order > SMALL or (n and CochainGroup(M, n - 1).order > SMALL):
                continue
            a = cohomology(M, n, backend="snf")
            b = cohomology(M, n, backend="enumerate")
            assert (a.order, a.factors) == (b.order, b.factors), (name, n)
            compared += 1
    assert compared >= 20


def test_m_iso_on_every_epsilon_strong_instance():
    for name, S in _epsilon_strong_instances().items():
        eps = compute_epsilons(S)
        for pair, result in m_iso_sweep(S, eps, threads=2).items():
            assert result.passed, (name, pair, result.details)


@pytest.mark.parametrize("build", [
    lambda: corpus.group_algebra(3, 2),
    lambda: lpa_build(corpus.example_graph(), 3).graded,
    corpus.morita_algebra,
])
def test_classification_matches_h2(build):
    S = build()
    report = classify(S, compute_epsilons(S), sample=20)
    assert report["bijective"]
    assert report["classes"] == report["h2"]["order"]
    if S.dim <= 6:
        assert all(c["isomorphic"] == (c["pair"][0] == c["pair"][1]) for c in report["cross_check"])


@pytest.mark.parametrize("argv", [
    ["lpa", "report", "example_graph.json", "-p", "3"],
    ["coh", "compute", "module_z2_trivial_z3.json", "-n", "2"],
    ["skew", "check", "action_partial_pair.json"],
    ["alg", "epsilons", "algebra_morita.json"],
    ["classify", "algebra_z3z2.json"],
])
def test_cli_reports_are_byte_identical(data_path, argv):
    argv = [data_path(a) if a.endswith(".json") else a for a in argv] + ["--json"]
    outputs = []
    for _ in range(2):
        buf = io.StringIO()
        assert main(argv, console=Console(file=buf)) == 0
        outputs.append(buf.getvalue())
    assert outputs[0] == outputs[1]
