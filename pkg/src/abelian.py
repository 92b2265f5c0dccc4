"""
Finite abelian groups.

`elementary_divisors` / `invariant_factors` normalise a list of cyclic orders
(Z/m_1 x ... x Z/m_k) the way the classification theorem does:

>>> elementary_divisors([12, 60])
[3, 3, 4, 4, 5]
>>> invariant_factors([12, 60])
[12, 60]
>>> invariant_factors([2, 4, 8, 3, 9, 5])
[2, 12, 360]

`TableGroup` is a finite abelian group given by its multiplication table,
with a cached decomposition into cyclic factors and coordinate maps.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from functools import cached_property
from math import prod
from typing import Dict, List, Sequence, Tuple

import numpy as np
from sympy import factorint


def _prime_exponents(orders: Sequence[int]) -> Dict[int, List[int]]:
    ed = defaultdict(list)
    for d in orders:
        d = abs(int(d))
        if d == 0:
            raise ValueError("only finite cyclic factors are supported")
        if d == 1:
            continue
        for p, e in factorint(d).items():
            ed[int(p)].append(int(e))
    return {p: sorted(es, reverse=True) for p, es in sorted(ed.items())}


def elementary_divisors(orders: Sequence[int]) -> List[int]:
    """Prime-power orders of the finest cyclic decomposition, sorted."""
    return sorted(p ** e for p, es in _prime_exponents(orders).items() for e in es)


def invariant_factors(orders: Sequence[int]) -> List[int]:
    """Orders d_1 | d_2 | ... | d_r of the coarsest cyclic decomposition."""
    ed = _prime_exponents(orders)
    length = max((len(es) for es in ed.values()), default=0)
    factors = []
    for k in range(length):
        factors.append(prod(p ** es[k] for p, es in ed.items() if k < len(es)))
    return sorted(factors)


def describe(orders: Sequence[int]) -> str:
    inv = invariant_factors(orders)
    return " x ".join(f"C{d}" for d in inv) if inv else "trivial"


def type_from_torsion_counts(p: int, counts: Sequence[int]) -> List[int]:
    """
    Recover the exponents of a finite abelian p-group from
    counts[j] = #{x : p^j x = 0}, j = 0, 1, ...

    log_p(counts[j] / counts[j-1]) is the number of cyclic factors of
    order at least p^j.
    """
    at_least = []
    for j in range(1, len(counts)):
        ratio = counts[j] // counts[j - 1]
        k = 0
        while ratio > 1:
            ratio //= p
            k += 1
        at_least.append(k)
    exponents = []
    for j, c in enumerate(at_least, start=1):
        nxt = at_least[j] if j < len(at_least) else 0
        exponents.extend([j] * (c - nxt))
    return sorted(exponents, reverse=True)


class TableGroup:
    """
    Finite abelian group on element indices 0..n-1 with a multiplication table.

    `labels[i]` keeps the caller's name for element i (e.g. the index of the
    element inside an ambient monoid).
    """

    def __init__(self, table, identity: int, labels: Sequence = None):
        self.table = np.asarray(table, dtype=np.int64)
        self.identity = int(identity)
        self.n = int(self.table.shape[0])
        self.labels = list(labels) if labels is not None else list(range(self.n))
        self._index_of_label = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def order(self) -> int:
        return self.n

    def index(self, label) -> int:
        return self._index_of_label[label]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def power(self, a: int, k: int) -> int:
        k %= self.exponent
        out, base = self.identity, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    @cached_property
    def inverses(self) -> List[int]:
        inv = [-1] * self.n
        for a in range(self.n):
            row = np.nonzero(self.table[a] == self.identity)[0]
            if row.size == 0:
                raise ValueError(f"element {a} has no inverse")
            inv[a] = int(row[0])
        return inv

    def inverse(self, a: int) -> int:
        return self.inverses[a]

    @cached_property
    def element_orders(self) -> List[int]:
        out = []
        for a in range(self.n):
            k, x = 1, a
            while x != self.identity:
                x = self.mul(x, a)
                k += 1
            out.append(k)
        return out

    @cached_property
    def exponent(self) -> int:
        e = 1
        for o in self.element_orders:
            e = e * o // np.gcd(e, o)
        return int(e)

    def check_axioms(self) -> List[str]:
        """Problems found (empty when the table is an abelian group)."""
        problems = []
        T = self.table
        if not np.array_equal(T, T.T):
            problems.append("not commutative")
        # (ab)c vs a(bc)
        left = T[T]
        right = T[np.arange(self.n)[:, None, None], T[None, :, :]]
        if not np.array_equal(left, right):
            problems.append("not associative")
        if not np.array_equal(T[self.identity], np.arange(self.n)):
            problems.append("identity is not neutral")
        try:
            self.inverses
        except ValueError as e:
            problems.append(str(e))
        return problems

    def _generated(self, gens: Sequence[int]) -> set:
        H = {self.identity}
        for g in gens:
            cyc = [self.identity]
            x = g
            while x != self.identity:
                cyc.append(x)
                x = self.mul(x, g)
            H = {self.mul(h, c) for h in H for c in cyc}
        return H

    @cached_property
    def decomposition(self) -> Tuple[List[int], List[int]]:
        """
        (generators, orders): G is the internal direct product of the cyclic
        subgroups <generators[i]>, each of prime-power order.
        Smallest element index first is preferred when choosing generators.
        """
        gens: List[int] = []
        orders: List[int] = []
        for p, a in sorted(factorint(self.n).items()):
            p, a = int(p), int(a)
            counts = []
            for j in range(a + 1):
                pj = p ** j
                counts.append(sum(1 for o in self.element_orders if pj % o == 0))
            exps = type_from_torsion_counts(p, counts)
            wanted = [p ** e for e in exps]
            chosen = self._pick_independent(wanted)
            gens.extend(chosen)
            orders.extend(wanted)
        return gens, orders

    def _pick_independent(self, wanted: List[int]) -> List[int]:
        by_order = defaultdict(list)
        for x, o in enumerate(self.element_orders):
            by_order[o].append(x)

        def search(k, H, chosen):
            if k == len(wanted):
                return chosen
            for x in by_order[wanted[k]]:
                cyc = self._generated([x])
                if len(cyc & H) != 1:
                    continue
                found = search(k + 1, {self.mul(h, c) for h in H for c in cyc}, chosen + [x])
                if found is not None:
                    return found
            return None

        chosen = search(0, {self.identity}, [])
        if chosen is None:
            raise ValueError("could not decompose the group")
        return chosen

    @property
    def generators(self) -> List[int]:
        return self.decomposition[0]

    @property
    def cyclic_orders(self) -> List[int]:
        return self.decomposition[1]

    @cached_property
    def _coordinate_tables(self):
        gens, orders = self.decomposition
        to_elem = {}
        to_coords = {}
        for coords in itertools.product(*[range(o) for o in orders]):
            x = self.identity
            for g, c in zip(gens, coords):
                x = self.mul(x, self.power(g, c)) if c else x
            to_elem[coords] = x
            to_coords[x] = coords
        if len(to_coords) != self.n:
            raise ValueError("decomposition does not cover the group")
        return to_elem, to_coords

    def coords(self, a: int) -> Tuple[int, ...]:
        return self._coordinate_tables[1][a]

    def from_coords(self, coords: Sequence[int]) -> int:
        orders = self.cyclic_orders
        key = tuple(int(c) % o for c, o in zip(coords, orders))
        return self._coordinate_tables[0][key]

    def invariant_factors(self) -> List[int]:
        return invariant_factors(self.cyclic_orders)

    def __repr__(self):
        return f"TableGroup(order={self.n}, type={describe(self.cyclic_orders)})"
