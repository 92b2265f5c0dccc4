import pytest

from src.errors import InvalidTable, NotIdempotent
from src.finalg import (
    check_idem_ideal_bijection,
    ideal_of,
    idempotents,
    multiplicative_monoid,
    product_monoid,
    product_ring,
    unital_ideals,
    units,
    validate_monoid,
    validate_ring,
    zmod,
)


def test_z6_idempotents_and_ideals(z6):
    assert idempotents(z6) == ["0", "1", "3", "4"]
    assert len(unital_ideals(z6)) == 4
    assert ideal_of(z6, "3").elems == ("0", "3")
    assert ideal_of(z6, "4").elems == ("0", "2", "4")


def test_non_idempotent_generator(z6):
    with pytest.raises(NotIdempotent):
        ideal_of(z6, "2")


def test_z4_ideal_of_evens_is_not_unital():
    ideals = unital_ideals(zmod(4))
    assert [len(I) for I in ideals] == [1, 4]


@pytest.mark.parametrize("n", range(1, 13))
def test_bijection_by_subset_search(n):
    result = check_idem_ideal_bijection(zmod(n))
    assert result.passed, result.witness
    assert result.details["subset_search"]


@pytest.mark.parametrize("n", [30, 36, 60, 97, 100])
def test_bijection_by_principal_ideals(n):
    result = check_idem_ideal_bijection(zmod(n), cap=12)
    assert result.passed, result.witness
    assert not result.details["subset_search"]


def test_product_ring_labels(z2xz2):
    assert z2xz2.elems == ("(0,0)", "(0,1)", "(1,0)", "(1,1)")
    assert z2xz2.label(z2xz2.one) == "(1,1)"
    assert idempotents(z2xz2) == list(z2xz2.elems)
    assert z2xz2.characteristic_prime() == 2


@pytest.mark.parametrize("n, expected", [(2, 2), (3, 3), (5, 5), (7, 7), (4, None), (6, None), (9, None)])
def test_characteristic_prime_needs_elementary_additive_group(n, expected):
    assert zmod(n).characteristic_prime() == expected


def test_characteristic_prime_of_a_product_of_prime_fields():
    assert product_ring(zmod(3), zmod(3)).characteristic_prime() == 3
    assert product_ring(zmod(2), zmod(3)).characteristic_prime() is None


def test_additive_basis_spans(z2xz2):
    basis = z2xz2.additive_basis()
    assert len(basis) == 2
    for a in range(z2xz2.size):
        assert z2xz2.from_coordinates(z2xz2.coordinates(a)) == a


def test_units_of_z5_are_cyclic_of_order_4():
    U = units(multiplicative_monoid(zmod(5)))
    assert U.order == 4
    assert U.cyclic_orders == [4]
    assert U.check_axioms() == []


def test_units_of_cut_monoid(z6):
    M = multiplicative_monoid(z6)
    U = units(M, identity=z6.index("4"))
    # 4 Z6 = {0, 2, 4}, units {2, 4} with identity 4
    assert sorted(z6.label(x) for x in U.labels) == ["2", "4"]
    assert U.order == 2
    with pytest.raises(NotIdempotent):
        units(M, identity=z6.index("2"))


def test_units_of_z8_are_not_cyclic():
    U = units(multiplicative_monoid(zmod(8)))
    assert U.order == 4
    assert U.cyclic_orders == [2, 2]


def test_product_monoid_identity():
    M = product_monoid(multiplicative_monoid(zmod(2)), multiplicative_monoid(zmod(3)))
    assert M.size == 6
    assert M.label(M.one) == "(1,1)"


def test_validate_ring_round_trip(z6):
    again = validate_ring(z6.to_raw())
    assert again.elems == z6.elems
    assert (again.mul == z6.mul).all()


def test_validate_ring_rejects_broken_distributivity():
    raw = zmod(3).to_raw()
    raw["mul"] = [["0", "0", "0"], ["0", "1", "2"], ["0", "2", "2"]]
    with pytest.raises(InvalidTable):
        validate_ring(raw)


def test_validate_monoid_rejects_non_commutative():
    raw = {"elems": ["1", "a", "b"], "mul": [["1", "a", "b"], ["a", "a", "a"], ["b", "b", "b"]], "one": "1"}
    with pytest.raises(InvalidTable) as err:
        validate_monoid(raw)
    assert err.value.witness == ["a", "b"]
