import numpy as np
import pytest

from src.abelian import TableGroup, describe, elementary_divisors, invariant_factors, type_from_torsion_counts


def _cyclic_product(*orders):
    elems = [tuple(x) for x in np.ndindex(*orders)]
    index = {x: i for i, x in enumerate(elems)}
    table = [[index[tuple((a + b) % m for a, b, m in zip(x, y, orders))] for y in elems] for x in elems]
    return TableGroup(table, index[tuple(0 for _ in orders)])


def test_normal_forms():
    assert elementary_divisors([12, 60]) == [3, 3, 4, 4, 5]
    assert invariant_factors([12, 60]) == [12, 60]
    assert invariant_factors([2, 4, 8, 3, 9, 5]) == [2, 12, 360]
    assert invariant_factors([1, 1]) == []
    assert describe([6]) == "C6"
    assert describe([]) == "trivial"


def test_type_from_torsion_counts():
    # Z4 x Z2: 1, 4, 8 elements killed by 1, 2, 4
    assert type_from_torsion_counts(2, [1, 4, 8]) == [2, 1]


@pytest.mark.parametrize("orders, expected", [
    ((6,), [2, 3]),
    ((4, 2), [2, 4]),
    ((2, 2, 3), [2, 2, 3]),
    ((9,), [9]),
])
def test_decomposition_orders(orders, expected):
    G = _cyclic_product(*orders)
    assert sorted(G.cyclic_orders) == expected
    assert int(np.prod(G.cyclic_orders)) == G.order
    assert G.check_axioms() == []


def test_coordinates_are_homomorphic():
    G = _cyclic_product(4, 2)
    orders = G.cyclic_orders
    for a in range(G.order):
        for b in range(G.order):
            ca, cb, cab = G.coords(a), G.coords(b), G.coords(G.mul(a, b))
            assert cab == tuple((x + y) % m for x, y, m in zip(ca, cb, orders))
        assert G.from_coords(G.coords(a)) == a


def test_inverse_and_power():
    G = _cyclic_product(5)
    for a in range(5):
        assert G.mul(a, G.inverse(a)) == G.identity
        assert G.power(a, 5) == G.identity


def test_check_axioms_reports_broken_tables():
    G = TableGroup([[0, 1], [1, 1]], 0)
    assert G.check_axioms()
