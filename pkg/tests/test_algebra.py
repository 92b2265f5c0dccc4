import numpy as np
import pytest

from data import corpus
from src.algebra import (
    center,
    check_center_identity,
    check_epsilon_definition,
    check_epsilon_properties,
    check_m_iso,
    check_transport_identity,
    compute_epsilons,
    epsilon_report,
    gamma_map,
    is_strongly_graded,
    m_iso_sweep,
    strong_by_identity,
    support,
    validate_algebra,
    validate_grading,
)
from src.errors import GradingViolation, InvalidParams, InvalidTable, NotEpsilonStrong, NotPrime
from src.groupoid import composable_tuples, standard_constructions


@pytest.fixture(scope="module")
def z3z2():
    return corpus.group_algebra(3, 2)


@pytest.fixture(scope="module")
def morita():
    return corpus.morita_algebra()


def _dual_numbers():
    """Z/2[x]/(x^2) with x in degree g of Z_2."""
    alg = validate_algebra(2, 2, [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]], [1, 0], ["1", "x"])
    return validate_grading(alg, standard_constructions("one_object_group", {"m": 2}), ["e", "g"])


def test_validate_algebra_rejects_composite_modulus():
    with pytest.raises(NotPrime):
        validate_algebra(4, 1, [[0, 0, 0, 1]], [1])


def test_validate_algebra_rejects_non_associative():
    # e1 e1 = e2 and e1 e2 = e1, but e2 e1 = 0
    sc = [[0, 0, 0, 1], [0, 1, 1, 1], [0, 2, 2, 1], [1, 0, 1, 1], [2, 0, 2, 1], [1, 1, 2, 1], [1, 2, 1, 1]]
    with pytest.raises(InvalidTable) as err:
        validate_algebra(2, 3, sc, [1, 0, 0])
    assert err.value.witness == [1, 1, 1]


def test_validate_algebra_rejects_wrong_identity():
    with pytest.raises(InvalidTable):
        validate_algebra(3, 2, [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]], [0, 1])


def test_sparse_entries_out_of_range():
    with pytest.raises(InvalidParams):
        validate_algebra(2, 1, [[0, 0, 3, 1]], [1])


def test_grading_violation():
    alg = corpus.group_algebra(3, 2).alg
    G = standard_constructions("one_object_group", {"m": 2})
    with pytest.raises(GradingViolation):
        validate_grading(alg, G, ["g", "e"])


def test_unknown_degree():
    alg = corpus.group_algebra(3, 2).alg
    G = standard_constructions("one_object_group", {"m": 2})
    with pytest.raises(InvalidParams):
        validate_grading(alg, G, ["e", "h"])


def test_format(z3z2):
    assert z3z2.alg.format([1, 2]) == "e + 2 g"
    assert z3z2.alg.format([0, 0]) == "0"


def test_group_algebra_is_strong(z3z2):
    assert is_strongly_graded(z3z2).passed
    assert strong_by_identity(z3z2).passed
    eps = compute_epsilons(z3z2)
    assert np.array_equal(eps["g"], [1, 0])


def test_matrix_algebra_over_pair_groupoid_is_strong():
    S = corpus.matrix_algebra_pair(3)
    assert is_strongly_graded(S).passed


def test_morita_truncation_is_epsilon_strong_not_strong(morita):
    strong = is_strongly_graded(morita)
    assert not strong.passed
    assert strong.witness == ["(1,e,2)", "(2,e,1)"]
    assert strong.details["gap"] == 1
    assert not strong_by_identity(morita).passed

    result, eps = epsilon_report(morita)
    assert result.passed
    assert morita.alg.format(eps["(1,g,2)"]) == "e11"
    assert morita.alg.format(eps["(2,g3,1)"]) == "e22"
    assert morita.alg.format(eps["(1,e,2)"]) == "0"
    assert morita.alg.format(eps["(1,e,1)"]) == "e11"


def test_dual_numbers_are_not_epsilon_strong():
    S = _dual_numbers()
    with pytest.raises(NotEpsilonStrong) as err:
        compute_epsilons(S)
    assert err.value.witness[0] == "g"
    result, eps = epsilon_report(S)
    assert not result.passed and eps is None


@pytest.mark.parametrize("build", [lambda: corpus.group_algebra(3, 2), corpus.morita_algebra,
                                   lambda: corpus.matrix_algebra_pair(2)])
def test_epsilon_properties(build):
    S = build()
    eps = compute_epsilons(S)
    assert check_epsilon_properties(S, eps).passed
    assert check_epsilon_definition(S, eps).passed
    assert check_center_identity(S, eps).passed


def test_support(morita):
    live, G_live = support(morita)
    assert live == ["1", "2"]
    assert len(G_live) == len(morita.G)


def test_center_of_diagonal_base():
    S = corpus.matrix_algebra_pair(2)
    Z = center(S, S.alg.one)
    assert Z.shape[0] == 2


def test_gamma_map_on_group_algebra(z3z2):
    eps = compute_epsilons(z3z2)
    gamma = gamma_map(z3z2, eps, "g")
    assert np.array_equal(gamma(np.array([2, 0])), [2, 0])


def test_m_iso_on_morita(morita):
    eps = compute_epsilons(morita)
    result = check_m_iso(morita, eps, "(1,g,2)", "(2,g3,1)")
    assert result.passed
    assert result.details["tensor_dim"] == result.details["target_dim"] == 1
    sweep = m_iso_sweep(morita, eps, threads=2)
    assert all(r.passed for r in sweep.values())
    assert list(sweep) == sorted(sweep)


def test_m_iso_rejects_non_composable():
    S = corpus.matrix_algebra_pair(2)
    eps = compute_epsilons(S)
    with pytest.raises(InvalidParams):
        check_m_iso(S, eps, "(1,2)", "(1,2)")


@pytest.mark.parametrize("build", [corpus.morita_algebra, lambda: corpus.group_algebra(3, 2)])
def test_transport_identity_on_every_composable_pair(build):
    S = build()
    eps = compute_epsilons(S)
    for g, h in composable_tuples(S.G, 2):
        assert check_transport_identity(S, eps, g, h), (g, h)
