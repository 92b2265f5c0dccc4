import numpy as np
import pytest

from data import corpus
from src.algebra import compute_epsilons
from src.cohomology import Cochain, CochainGroup, cohomology, delta
from src.crossed import canonical_module, classify, equivalent, graded_isomorphism_search, retwist, twist
from src.errors import NotCocycle
from src.leavitt import lpa_build


@pytest.fixture(scope="module")
def z3z2():
    S = corpus.group_algebra(3, 2)
    eps = compute_epsilons(S)
    return S, eps, canonical_module(S, eps)


def test_canonical_module_of_group_algebra(z3z2):
    S, eps, canon = z3z2
    M = canon.module
    assert M.monoids["*"].elems == ("0", "e", "2 e")
    assert M.idem["g"] == M.monoids["*"].index("e")
    assert cohomology(M, 2).order == 2


def test_trivial_twist_is_the_algebra(z3z2):
    S, eps, canon = z3z2
    T = twist(S, eps, CochainGroup(canon.module, 2).identity(), canon)
    assert np.array_equal(T.alg.sc, S.alg.sc)
    assert np.array_equal(T.alg.one, S.alg.one)


def test_non_cocycle_is_rejected(z3z2):
    S, eps, canon = z3z2
    M = canon.module
    unit, two = M.monoids["*"].index("e"), M.monoids["*"].index("2 e")
    q = Cochain(2, {("e", "e"): unit, ("e", "g"): two, ("g", "e"): unit, ("g", "g"): unit})
    with pytest.raises(NotCocycle):
        twist(S, eps, q, canon)


def test_twists_compose(z3z2):
    S, eps, canon = z3z2
    M = canon.module
    H = cohomology(M, 2)
    C2 = CochainGroup(M, 2)
    q = H.representatives[1]
    once = twist(S, eps, C2.mul(q, q), canon)
    twice = retwist(twist(S, eps, q, canon), q, canon)
    assert np.array_equal(once.alg.sc, twice.alg.sc)
    assert np.array_equal(once.alg.one, twice.alg.one)


def test_cohomologous_twists_are_equivalent(z3z2):
    S, eps, canon = z3z2
    M = canon.module
    H = cohomology(M, 2)
    C1, C2 = CochainGroup(M, 1), CochainGroup(M, 2)
    q = H.representatives[1]
    c = C1.from_coords([1] * C1.rank)
    shifted = C2.mul(q, delta(M, c))
    found, witness = equivalent(twist(S, eps, q, canon), twist(S, eps, shifted, canon), canon)
    assert found and witness is not None

    trivial = twist(S, eps, H.representatives[0], canon)
    assert not equivalent(trivial, twist(S, eps, q, canon), canon)[0]
    assert not graded_isomorphism_search(trivial, twist(S, eps, q, canon))[0]


def test_equivalence_of_twists_matches_cohomology_classes(z3z2):
    S, eps, canon = z3z2
    M = canon.module
    C1, C2 = CochainGroup(M, 1), CochainGroup(M, 2)
    e3 = CochainGroup(M, 3).identity()
    cocycles = [q for q in map(C2.from_coords, C2.all_coords()) if delta(M, q) == e3]
    coboundaries = {delta(M, c) for c in map(C1.from_coords, C1.all_coords())}
    assert len(cocycles) == 4

    twists = [twist(S, eps, q, canon) for q in cocycles]
    n = len(twists)
    R = [[equivalent(twists[i], twists[j], canon)[0] for j in range(n)] for i in range(n)]
    for i in range(n):
        assert R[i][i]
        for j in range(n):
            assert R[i][j] == R[j][i]
            for k in range(n):
                if R[i][j] and R[j][k]:
                    assert R[i][k]
            quotient = C2.mul(cocycles[i], C2.inv(cocycles[j]))
            assert R[i][j] == (quotient in coboundaries)
    assert len({frozenset(j for j in range(n) if R[i][j]) for i in range(n)}) == 2
    assert C2.identity() in cocycles


def test_classify_group_algebra(z3z2):
    S, eps, _ = z3z2
    steps = []
    report = classify(S, eps, progress_callback=lambda done, total, label: steps.append(label))
    assert report["h2"]["order"] == 2
    assert report["classes"] == 2
    assert report["bijective"]
    assert report["cross_check"] is not None
    assert all(s["equivalent"] and s["same_class"] for s in report["sampled"])
    assert steps


def test_classify_report_is_reproducible(z3z2):
    S, eps, _ = z3z2
    first, second = classify(S, eps, sample=5), classify(S, eps, sample=5)
    assert "elapsed" not in first
    assert first == second


def test_classify_morita_truncation():
    S = corpus.morita_algebra()
    report = classify(S, compute_epsilons(S))
    assert report["h2"]["order"] == report["classes"] == 1
    assert report["bijective"]


@pytest.mark.slow
def test_classify_leavitt_example_over_z3(example_graph):
    S = lpa_build(example_graph, 3).graded
    report = classify(S, compute_epsilons(S), sample=10)
    assert report["bijective"]
    assert report["classes"] == report["h2"]["order"]
    assert report["cross_check"] is None
