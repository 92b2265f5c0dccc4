import numpy as np
import pytest

from src.errors import InvalidParams
from src.partialmaps import (
    FiniteSet,
    PartialBijection,
    all_partial_bijections,
    check_inverse_category,
    compose_pb,
    exhaustive_bij_check,
    identity_pb,
    random_partial_bijection,
    star_pb,
)

A = FiniteSet("A", ("1", "2", "3"))
B = FiniteSet("B", ("x", "y"))


def test_composition_restricts_through_overlap():
    f = PartialBijection(A, A, (("1", "2"), ("2", "3")))
    g = PartialBijection(A, A, (("3", "1"), ("1", "3")))
    fg = compose_pb(f, g)
    assert fg.mapping == {"3": "2"}


def test_mismatched_middle_sets_give_the_empty_morphism():
    f = PartialBijection(A, A, (("1", "1"),))
    g = PartialBijection(A, B, (("1", "x"),))
    h = compose_pb(f, g)
    assert h.is_zero()
    assert h.src == A and h.dst == A


def test_star_and_identity_on_image():
    f = PartialBijection(B, A, (("x", "3"), ("y", "1")))
    fs = star_pb(f)
    assert fs.mapping == {"3": "x", "1": "y"}
    assert compose_pb(f, fs) == identity_pb(A, ["1", "3"])
    assert compose_pb(compose_pb(f, fs), f) == f


def test_rejects_non_injective_pairs():
    with pytest.raises(InvalidParams):
        PartialBijection(A, A, (("1", "2"), ("3", "2")))


def test_count_of_partial_bijections():
    assert len(all_partial_bijections(A, A)) == 34
    assert len(all_partial_bijections(A, B)) == 1 + 6 + 6


def test_exhaustive_check_over_sets_of_one_to_three_elements():
    result = exhaustive_bij_check(3)
    assert result.passed, result.witness
    # hom-set sizes between sets of sizes 1..3: [[2, 3, 4], [3, 7, 13], [4, 13, 34]]
    assert result.details == {"morphisms": 83, "triples": 127711}
    assert result.checked == 83 + 1597 + 127711


def test_random_triples_on_six_element_sets():
    rng = np.random.default_rng(7)
    sets = [FiniteSet(name, tuple(f"{name}{i}" for i in range(6))) for name in "PQ"]
    samples = [random_partial_bijection(rng, sets[i % 2], sets[(i // 2) % 2]) for i in range(60)]
    result = check_inverse_category(samples, trials=10_000, seed=11)
    assert result.passed, result.witness
