from math import gcd

import numpy as np
import pytest

from data.corpus import identity_partial_action, terminal_action
from src.cohomology import (
    CochainGroup,
    check_delta_squared,
    check_h0_condition,
    classical_h2_oracle,
    cochain_group_ops,
    cohomology,
    cut_unit_group,
    delta,
    module_from_action,
)
from src.errors import CapExceeded, InvalidParams
from src.finalg import zmod
from src.formats import load_module
from src.skew import module_of

SMALL = 10 ** 4


@pytest.fixture(scope="module")
def modules():
    from data.corpus import action_corpus
    return {name: module_of(act) for name, act in action_corpus().items()}


def test_shipped_module_has_h2_of_order_two(data_path):
    M = load_module(data_path("module_z2_trivial_z3.json"))
    for backend in ("snf", "enumerate"):
        H = cohomology(M, 2, backend=backend)
        assert H.order == 2
        assert H.factors == [2]


@pytest.mark.parametrize("m, k, expected", [(2, 2, 2), (2, 3, 1), (3, 3, 3), (2, 4, 2), (3, 2, 1)])
def test_classical_oracle(m, k, expected):
    assert classical_h2_oracle(m, k) == expected


@pytest.mark.parametrize("m, q", [(2, 3), (2, 5), (3, 7), (4, 5), (3, 5)])
def test_trivial_global_action_matches_the_classical_group(m, q):
    # units of Z/q are cyclic of order q - 1
    M = module_from_action(identity_partial_action(m, zmod(q), "1"))
    H = cohomology(M, 2, backend="snf")
    assert H.order == gcd(m, q - 1)
    if (q - 1) ** (m * m) <= 10 ** 4:
        assert H.order == classical_h2_oracle(m, q - 1)


def test_terminal_groupoid():
    M = module_of(terminal_action(5))
    assert cohomology(M, 0).order == 4
    for n in (1, 2, 3):
        assert cohomology(M, n).order == 1


def test_h0_of_partial_module(modules):
    H = cohomology(modules["z2_partial_z3z3"], 0, backend="enumerate")
    assert H.order == 4
    for b in H.representatives:
        assert check_h0_condition(modules["z2_partial_z3z3"], b)
    assert cohomology(modules["z2_trivial_z3"], 0).order == 2


def test_delta_squared_on_random_cochains(modules):
    rng = np.random.default_rng(5)
    for name, M in modules.items():
        for n in range(3):
            C = CochainGroup(M, n)
            assert check_delta_squared(M, C.identity()), (name, n)
            for _ in range(10):
                assert check_delta_squared(M, C.random(rng)), (name, n)


def test_delta_is_a_homomorphism(modules):
    rng = np.random.default_rng(9)
    for name, M in modules.items():
        for n in range(2):
            C, C1 = CochainGroup(M, n), CochainGroup(M, n + 1)
            f, h = C.random(rng), C.random(rng)
            assert delta(M, C.mul(f, h)) == C1.mul(delta(M, f), delta(M, h)), (name, n)


def test_backends_agree(modules):
    for name, M in modules.items():
        for n in range(3):
            if CochainGroup(M, n).order > SMALL:
                continue
            a = cohomology(M, n, backend="snf")
            b = cohomology(M, n, backend="enumerate")
            assert (a.order, a.elementary) == (b.order, b.elementary), (name, n)
            assert len({a.class_of(r) for r in a.representatives}) == a.order


def test_inverse_and_identity_in_cochain_group(modules):
    M = modules["z2_swap_z3z3"]
    C = CochainGroup(M, 1)
    f = C.random(np.random.default_rng(2))
    assert C.mul(f, C.inv(f)) == C.identity()
    assert C.contains(f)
    assert C.from_coords(C.to_coords(f)) == f


def test_enumeration_cap(modules):
    with pytest.raises(CapExceeded):
        cohomology(modules["z2_trivial_z3"], 2, backend="enumerate", cap=1)


def test_bad_arguments(modules):
    M = modules["z2_trivial_z3"]
    with pytest.raises(InvalidParams):
        cohomology(M, 1, backend="magic")
    with pytest.raises(InvalidParams):
        cohomology(M, -1)
    with pytest.raises(InvalidParams):
        CochainGroup(M, -1)


def test_cut_unit_groups_of_a_partial_action():
    M = module_of(identity_partial_action(2, zmod(6), "3"))
    e = next(x for x in M.G.ids if M.G.is_identity(x))
    g = next(x for x in M.G.ids if not M.G.is_identity(x))
    assert cut_unit_group(M, (e,)).order == 2
    assert cut_unit_group(M, (g,)).order == 1
    assert cut_unit_group(M, (e, g)).order == 1
    assert cut_unit_group(M, (g, g)).order == 1


def test_cochain_group_ops_form_a_group():
    M = module_of(identity_partial_action(2, zmod(6), "3"))
    C = cochain_group_ops(M, 1)
    assert C.order == 2
    rng = np.random.default_rng(7)
    for _ in range(10):
        f, h = C.random(rng), C.random(rng)
        assert C.mul(f, C.inv(f)) == C.identity()
        assert C.mul(f, h) == C.mul(h, f)
        assert C.contains(f)
