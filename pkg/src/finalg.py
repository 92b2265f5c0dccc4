"""
Finite commutative monoids and rings given by explicit tables.

Elements are labelled by strings; tables hold element indices. Public
operations take and return labels, the `*_idx` helpers work on indices.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from config import config
from src.abelian import TableGroup
from src.errors import InvalidTable, NotIdempotent
from src.linalg import is_prime
from src.report import CheckResult

logger = logging.getLogger('grograde.finalg')


def _associative(T: np.ndarray) -> bool:
    n = T.shape[0]
    return np.array_equal(T[T], T[np.arange(n)[:, None, None], T[None, :, :]])


def _parse_table(raw_table, index: Dict[str, int], name: str) -> np.ndarray:
    n = len(index)
    if len(raw_table) != n or any(len(row) != n for row in raw_table):
        raise InvalidTable(f"{name} table must be {n}x{n}")
    try:
        return np.array([[index[str(x)] for x in row] for row in raw_table], dtype=np.int64)
    except KeyError as e:
        raise InvalidTable(f"{name} table contains unknown element {e.args[0]}", witness=[e.args[0]])


@dataclass(frozen=True, eq=False)
class FiniteCommMonoid:
    elems: Tuple[str, ...]
    op: np.ndarray
    one: int

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {x: i for i, x in enumerate(self.elems)}

    @property
    def size(self) -> int:
        return len(self.elems)

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise InvalidTable(f"unknown element {label}", witness=[label])

    def label(self, i: int) -> str:
        return self.elems[i]

    def mul(self, a: int, b: int) -> int:
        return int(self.op[a, b])

    def to_raw(self) -> dict:
        return {
            "elems": list(self.elems),
            "mul": [[self.elems[x] for x in row] for row in self.op],
            "one": self.elems[self.one],
        }


@dataclass(frozen=True, eq=False)
class FiniteCommRing:
    elems: Tuple[str, ...]
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {x: i for i, x in enumerate(self.elems)}

    @property
    def size(self) -> int:
        return len(self.elems)

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise InvalidTable(f"unknown element {label}", witness=[label])

    def label(self, i: int) -> str:
        return self.elems[i]

    @property
    def op(self) -> np.ndarray:
        return self.mul

    @cached_property
    def neg(self) -> List[int]:
        return [int(np.nonzero(self.add[a] == self.zero)[0][0]) for a in range(self.size)]

    def scalar(self, k: int, a: int) -> int:
        out = self.zero
        for _ in range(k):
            out = int(self.add[out, a])
        return out

    def additive_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.zero:
            x = int(self.add[x, a])
            k += 1
        return k

    def characteristic_prime(self) -> Optional[int]:
        """p when (A, +) is elementary abelian of exponent p, else None."""
        orders = {self.additive_order(a) for a in range(self.size) if a != self.zero}
        if not orders:
            return None
        if len(orders) == 1:
            p = orders.pop()
            if is_prime(p):
                return p
        return None

    @cached_property
    def _additive_basis(self) -> Tuple[List[int], Dict[int, Tuple[int, ...]]]:
        p = self.characteristic_prime()
        if p is None:
            raise InvalidTable("additive group is not a vector space over a prime field")
        basis: List[int] = []
        coords: Dict[int, Tuple[int, ...]] = {self.zero: ()}
        for a in range(self.size):
            if a in coords:
                continue
            multiples = [self.scalar(k, a) for k in range(p)]
            new = {}
            for x, c in coords.items():
                for k, ka in enumerate(multiples):
                    new[int(self.add[x, ka])] = c + (k,)
            basis.append(a)
            coords = new
        width = len(basis)
        coords = {x: c + (0,) * (width - len(c)) for x, c in coords.items()}
        return basis, coords

    def additive_basis(self, within: Optional[Sequence[int]] = None) -> List[int]:
        """Greedy Z_p-basis of the ring (or of the additive subgroup `within`)."""
        if within is None:
            return list(self._additive_basis[0])
        p = self.characteristic_prime()
        basis: List[int] = []
        span = {self.zero}
        for a in sorted(within):
            if a in span:
                continue
            multiples = [self.scalar(k, a) for k in range(p)]
            span = {int(self.add[x, m]) for x in span for m in multiples}
            basis.append(a)
        return basis

    def coordinates(self, a: int) -> Tuple[int, ...]:
        return self._additive_basis[1][a]

    def from_coordinates(self, coords: Sequence[int]) -> int:
        out = self.zero
        for k, b in zip(coords, self._additive_basis[0]):
            out = int(self.add[out, self.scalar(int(k), b)])
        return out

    def to_raw(self) -> dict:
        return {
            "elems": list(self.elems),
            "add": [[self.elems[x] for x in row] for row in self.add],
            "mul": [[self.elems[x] for x in row] for row in self.mul],
            "zero": self.elems[self.zero],
            "one": self.elems[self.one],
        }


@dataclass(frozen=True)
class UnitalIdeal:
    generator: str
    elems: Tuple[str, ...]


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _check_comm_monoid(elems, T: np.ndarray, one: int, name: str) -> None:
    n = len(elems)
    bad = np.argwhere(T != T.T)
    if bad.size:
        a, b = bad[0]
        raise InvalidTable(f"{name} is not commutative", witness=[elems[a], elems[b]])
    if not _associative(T):
        left = T[T]
        right = T[np.arange(n)[:, None, None], T[None, :, :]]
        a, b, c = np.argwhere(left != right)[0]
        raise InvalidTable(f"{name} is not associative", witness=[elems[a], elems[b], elems[c]])
    wrong = np.nonzero(T[one] != np.arange(n))[0]
    if wrong.size:
        raise InvalidTable(f"{elems[one]} is not an identity for {name}", witness=[elems[wrong[0]]])


def validate_monoid(raw: Mapping) -> FiniteCommMonoid:
    elems = tuple(str(x) for x in raw["elems"])
    if len(set(elems)) != len(elems) or not elems:
        raise InvalidTable("element list must be non-empty without repeats")
    index = {x: i for i, x in enumerate(elems)}
    T = _parse_table(raw["mul"], index, "mul")
    one = index.get(str(raw["one"]))
    if one is None:
        raise InvalidTable("identity is not an element", witness=[raw["one"]])
    _check_comm_monoid(elems, T, one, "multiplication")
    return FiniteCommMonoid(elems, T, one)


def validate_ring(raw: Mapping) -> FiniteCommRing:
    elems = tuple(str(x) for x in raw["elems"])
    if len(set(elems)) != len(elems) or not elems:
        raise InvalidTable("element list must be non-empty without repeats")
    index = {x: i for i, x in enumerate(elems)}
    if raw.get("add") is None:
        raise InvalidTable("ring needs an addition table")
    A = _parse_table(raw["add"], index, "add")
    M = _parse_table(raw["mul"], index, "mul")
    zero, one = index.get(str(raw.get("zero"))), index.get(str(raw.get("one")))
    if zero is None or one is None:
        raise InvalidTable("zero and one must be elements", witness=[raw.get("zero"), raw.get("one")])
    _check_comm_monoid(elems, A, zero, "addition")
    if not np.all((A == zero).any(axis=1)):
        a = int(np.nonzero(~(A == zero).any(axis=1))[0][0])
        raise InvalidTable("element has no additive inverse", witness=[elems[a]])
    _check_comm_monoid(elems, M, one, "multiplication")
    n = len(elems)
    # a(b + c) = ab + ac
    left = M[np.arange(n)[:, None, None], A[None, :, :]]
    right = A[M[:, :, None], M[:, None, :]]
    if not np.array_equal(left, right):
        a, b, c = np.argwhere(left != right)[0]
        raise InvalidTable("multiplication does not distribute", witness=[elems[a], elems[b], elems[c]])
    logger.debug(f"validated ring of order {n}")
    return FiniteCommRing(elems, A, M, zero, one)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def zmod(n: int) -> FiniteCommRing:
    """Z/n with elements labelled "0".."n-1"."""
    r = np.arange(n)
    return FiniteCommRing(tuple(str(i) for i in range(n)), (r[:, None] + r[None, :]) % n,
                          (r[:, None] * r[None, :]) % n, 0, 1 % n)


def _pair_label(parts: Sequence[str]) -> str:
    return "(" + ",".join(parts) + ")"


def product_ring(*rings: FiniteCommRing) -> FiniteCommRing:
    """Componentwise product, elements labelled "(a,b,...)"."""
    tuples = list(itertools.product(*[range(R.size) for R in rings]))
    pos = {t: i for i, t in enumerate(tuples)}
    elems = tuple(_pair_label([R.elems[i] for R, i in zip(rings, t)]) for t in tuples)
    n = len(tuples)
    A = np.zeros((n, n), dtype=np.int64)
    M = np.zeros((n, n), dtype=np.int64)
    for i, s in enumerate(tuples):
        for j, t in enumerate(tuples):
            A[i, j] = pos[tuple(int(R.add[a, b]) for R, a, b in zip(rings, s, t))]
            M[i, j] = pos[tuple(int(R.mul[a, b]) for R, a, b in zip(rings, s, t))]
    return FiniteCommRing(elems, A, M, pos[tuple(R.zero for R in rings)], pos[tuple(R.one for R in rings)])


def multiplicative_monoid(A: FiniteCommRing) -> FiniteCommMonoid:
    return FiniteCommMonoid(A.elems, A.mul, A.one)


def product_monoid(*monoids: FiniteCommMonoid) -> FiniteCommMonoid:
    tuples = list(itertools.product(*[range(M.size) for M in monoids]))
    pos = {t: i for i, t in enumerate(tuples)}
    elems = tuple(_pair_label([M.elems[i] for M, i in zip(monoids, t)]) for t in tuples)
    n = len(tuples)
    T = np.zeros((n, n), dtype=np.int64)
    for i, s in enumerate(tuples):
        for j, t in enumerate(tuples):
            T[i, j] = pos[tuple(M.mul(a, b) for M, a, b in zip(monoids, s, t))]
    return FiniteCommMonoid(elems, T, pos[tuple(M.one for M in monoids)])


# ---------------------------------------------------------------------------
# idempotents, ideals, units
# ---------------------------------------------------------------------------

def idempotent_indices(A) -> List[int]:
    T = A.op
    return [int(x) for x in np.nonzero(T[np.arange(len(A.elems)), np.arange(len(A.elems))]
                                      == np.arange(len(A.elems)))[0]]


def idempotents(A) -> List[str]:
    """All x with x x = x, in element order."""
    return [A.elems[i] for i in idempotent_indices(A)]


def ideal_of(A, x: str) -> UnitalIdeal:
    """The unital ideal A x, whose identity is x."""
    i = A.index(x)
    if A.op[i, i] != i:
        raise NotIdempotent(f"{x} is not idempotent", witness=[x])
    members = sorted(set(int(v) for v in A.op[:, i]))
    return UnitalIdeal(A.elems[i], tuple(A.elems[m] for m in members))


def _ideal_identity(A: FiniteCommRing, members: Sequence[int]) -> Optional[int]:
    arr = np.asarray(members)
    for u in members:
        if np.array_equal(A.mul[u, arr], arr):
            return u
    return None


def _is_ideal(A: FiniteCommRing, members: frozenset) -> bool:
    if A.zero not in members:
        return False
    arr = np.array(sorted(members))
    if not set(A.add[np.ix_(arr, arr)].ravel().tolist()) <= members:
        return False
    return set(A.mul[:, arr].ravel().tolist()) <= members


def unital_ideals(A: FiniteCommRing, cap: Optional[int] = None) -> List[frozenset]:
    """
    Unital ideals of A as index sets. Subset search for |A| <= cap, otherwise
    the principal ideals A x that have an internal identity.
    """
    cap = config.IDEAL_SUBSET_CAP if cap is None else cap
    found = []
    if A.size <= cap:
        others = [a for a in range(A.size) if a != A.zero]
        for k in range(len(others) + 1):
            for extra in itertools.combinations(others, k):
                members = frozenset((A.zero,) + extra)
                if _is_ideal(A, members) and _ideal_identity(A, sorted(members)) is not None:
                    found.append(members)
    else:
        seen = set()
        for a in range(A.size):
            members = frozenset(int(v) for v in A.mul[:, a])
            if members in seen:
                continue
            seen.add(members)
            if _is_ideal(A, members) and _ideal_identity(A, sorted(members)) is not None:
                found.append(members)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _ideal_product(A: FiniteCommRing, I: frozenset, J: frozenset) -> frozenset:
    span = {A.zero}
    products = {int(A.mul[i, j]) for i in I for j in J}
    frontier = list(products)
    span |= products
    while frontier:
        nxt = []
        for x in frontier:
            for y in list(span):
                s = int(A.add[x, y])
                if s not in span:
                    span.add(s)
                    nxt.append(s)
        frontier = nxt
    return frozenset(span)


def check_idem_ideal_bijection(A: FiniteCommRing, cap: Optional[int] = None) -> CheckResult:
    """
    Check that x -> A x is a monoid isomorphism from the idempotents onto the
    unital ideals, with A x . A y = A xy and I n J = IJ.
    """
    idem = idempotent_indices(A)
    theta = {x: frozenset(int(v) for v in A.mul[:, x]) for x in idem}
    ideals = unital_ideals(A, cap)
    details = {
        "idempotents": [A.elems[x] for x in idem],
        "ideals": [[A.elems[i] for i in sorted(I)] for I in ideals],
        "subset_search": A.size <= (config.IDEAL_SUBSET_CAP if cap is None else cap),
    }
    checked = 0

    def fail(law, witness):
        return CheckResult(name="idem_ideal_bijection", passed=False, checked=checked,
                           witness={"law": law, **witness}, details=details)

    images = list(theta.values())
    if len(set(images)) != len(images):
        return fail("not injective", {})
    for I in ideals:
        checked += 1
        if I not in images:
            return fail("not surjective", {"ideal": [A.elems[i] for i in sorted(I)]})
    for x in idem:
        for y in idem:
            checked += 1
            prod_ideal = _ideal_product(A, theta[x], theta[y])
            if prod_ideal != theta[int(A.mul[x, y])]:
                return fail("theta(xy) != theta(x) theta(y)", {"x": A.elems[x], "y": A.elems[y]})
            if prod_ideal != theta[x] & theta[y]:
                return fail("I n J != IJ", {"x": A.elems[x], "y": A.elems[y]})
    logger.info(f"{len(idem)} idempotents <-> {len(ideals)} unital ideals")
    return CheckResult(name="idem_ideal_bijection", passed=True, checked=checked, details=details)


def units(M, identity: Optional[int] = None) -> TableGroup:
    """
    Group of units of M, or of the cut monoid identity*M when an idempotent
    `identity` is given. Group labels are the monoid element indices.
    """
    T = M.op
    e = M.one if identity is None else int(identity)
    if T[e, e] != e:
        raise NotIdempotent(f"{M.elems[e]} is not idempotent", witness=[M.elems[e]])
    cut = sorted(set(int(v) for v in T[e]))
    arr = np.asarray(cut)
    invertible = [x for x in cut if (T[x, arr] == e).any()]
    pos = {x: i for i, x in enumerate(invertible)}
    inv_arr = np.asarray(invertible)
    table = np.vectorize(pos.__getitem__, otypes=[np.int64])(T[np.ix_(inv_arr, inv_arr)]) \
        if invertible else np.zeros((0, 0), dtype=np.int64)
    return TableGroup(table, pos[e], labels=invertible)
