"""
Unital partial groupoid actions on finite commutative rings and the partial
skew groupoid ring B *_theta G.

An action attaches a ring B_e to every object e, a central idempotent 1_g of
B_c(g) to every morphism g, and a ring isomorphism
theta_g : B_g^-1 -> B_g, where B_g = B_c(g) 1_g.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Tuple

import numpy as np

from src.algebra import EpsilonSystem, GradedAlgebra, compute_epsilons, validate_algebra, validate_grading
from src.errors import (
    AssociativityFailure,
    BaseFieldMismatch,
    G1Violation,
    G2Violation,
    G3Violation,
    InvalidParams,
    InvalidTable,
    NotEpsilonStrong,
    NotIdempotent,
    NotRingIso,
)
from src.finalg import FiniteCommRing, validate_ring
from src.groupoid import FiniteGroupoid, composable_tuples, validate_groupoid
from src.partialmaps import FiniteSet, PartialBijection, compose_pb, identity_pb, star_pb
from src.report import CheckResult

logger = logging.getLogger('grograde.skew')


@dataclass(frozen=True, eq=False)
class PartialAction:
    G: FiniteGroupoid
    rings: Dict[str, FiniteCommRing]
    idem: Dict[str, int]
    theta: Dict[str, Dict[int, int]]

    def ring_of(self, g: str) -> FiniteCommRing:
        return self.rings[self.G.cod(g)]

    def ideal(self, g: str) -> List[int]:
        """B_g as sorted element indices of B_c(g)."""
        R = self.ring_of(g)
        return sorted(set(int(v) for v in R.op[self.idem[g]]))

    def cut(self, obj: str, *idems: int) -> List[int]:
        R = self.rings[obj]
        x = R.one
        for i in idems:
            x = int(R.op[x, i])
        return sorted(set(int(v) for v in R.op[x]))


# ---------------------------------------------------------------------------
# shared validation for ring actions and monoid modules
# ---------------------------------------------------------------------------

def parse_action_tables(G: FiniteGroupoid, comps: Mapping, raw_idem: Mapping, raw_theta: Mapping):
    """Translate label tables into index tables."""
    idem: Dict[str, int] = {}
    theta: Dict[str, Dict[int, int]] = {}
    for g in G.ids:
        if g not in raw_idem:
            raise InvalidParams(f"no idempotent 1_g for {g}", witness=[g])
        if g not in raw_theta:
            raise InvalidParams(f"no table theta_g for {g}", witness=[g])
        src, dst = comps[G.dom(g)], comps[G.cod(g)]
        idem[g] = dst.index(raw_idem[g])
        pairs = raw_theta[g].items() if isinstance(raw_theta[g], Mapping) else raw_theta[g]
        theta[g] = {src.index(x): dst.index(y) for x, y in pairs}
    return idem, theta


def check_action_axioms(G: FiniteGroupoid, comps: Mapping, idem: Mapping[str, int],
                        theta: Mapping[str, Mapping[int, int]], additive: bool) -> None:
    """
    Exhaustive check of the unital partial action axioms on tables.

    Raises:
        NotIdempotent, G1Violation, G2Violation, G3Violation, NotRingIso
    """
    def ideal(obj, x):
        return sorted(set(int(v) for v in comps[obj].op[x]))

    for g in G.ids:
        M = comps[G.cod(g)]
        x = idem[g]
        if M.op[x, x] != x:
            raise NotIdempotent(f"1_{g} is not idempotent", witness=[g, M.label(x)])

    for e in G.objects:
        i = G.identity[e]
        M = comps[e]
        if idem[i] != M.one or any(theta[i].get(x) != x for x in range(M.size)):
            raise G1Violation(f"theta for the identity at {e} is not the identity map", witness=[e])

    for g in G.ids:
        src, dst = comps[G.dom(g)], comps[G.cod(g)]
        gi = G.inverse(g)
        dom, img = ideal(G.dom(g), idem[gi]), ideal(G.cod(g), idem[g])
        t = theta[g]
        if sorted(t) != dom or sorted(t.values()) != img:
            raise NotRingIso(f"theta_{g} is not a bijection B_g^-1 -> B_g", witness=[g])
        if t[idem[gi]] != idem[g]:
            raise NotRingIso(f"theta_{g} does not map 1_g^-1 to 1_g", witness=[g])
        for a in dom:
            for b in dom:
                if t[int(src.op[a, b])] != int(dst.op[t[a], t[b]]):
                    raise NotRingIso(f"theta_{g} is not multiplicative",
                                     witness=[g, src.label(a), src.label(b)])
                if additive and t[int(src.add[a, b])] != int(dst.add[t[a], t[b]]):
                    raise NotRingIso(f"theta_{g} is not additive",
                                     witness=[g, src.label(a), src.label(b)])

    for g, h in composable_tuples(G, 2):
        gh = G.compose(g, h)
        mid, top = comps[G.dom(g)], comps[G.cod(g)]
        left = ideal(G.dom(g), int(mid.op[idem[G.inverse(g)], idem[h]]))
        right = ideal(G.cod(g), int(top.op[idem[g], idem[gh]]))
        if sorted(theta[g][x] for x in left) != right:
            raise G2Violation(f"theta_g(B_g^-1 B_h) != B_g B_gh for ({g}, {h})", witness=[g, h])
        low = comps[G.dom(h)]
        cut = ideal(G.dom(h), int(low.op[idem[G.inverse(h)], idem[G.inverse(gh)]]))
        for x in cut:
            if theta[g][theta[h][x]] != theta[gh][x]:
                raise G3Violation(f"theta_g theta_h != theta_gh for ({g}, {h})",
                                  witness=[g, h, low.label(x)])


# ---------------------------------------------------------------------------
# ring actions
# ---------------------------------------------------------------------------

def validate_action(raw: Mapping) -> PartialAction:
    """
    Build and validate a unital partial action.

    Args:
        raw: mapping with `groupoid` (FiniteGroupoid or its raw form),
            `rings` (object -> FiniteCommRing or raw ring), `idem`
            (morphism -> element label) and `theta` (morphism -> label pairs)
    """
    G = raw["groupoid"]
    if not isinstance(G, FiniteGroupoid):
        G = validate_groupoid(G)
    rings = {}
    for e in G.objects:
        R = raw["rings"].get(e)
        if R is None:
            raise InvalidParams(f"no ring for object {e}", witness=[e])
        rings[e] = R if isinstance(R, FiniteCommRing) else validate_ring(R)
    idem, theta = parse_action_tables(G, rings, raw["idem"], raw["theta"])
    check_action_axioms(G, rings, idem, theta, additive=True)
    logger.debug(f"partial action on {len(rings)} rings validated")
    return PartialAction(G, rings, idem, theta)


def is_global(act: PartialAction) -> bool:
    """1_g = 1 for every g."""
    return all(act.idem[g] == act.ring_of(g).one for g in act.G.ids)


def action_from_tables(G: FiniteGroupoid, rings: Mapping[str, FiniteCommRing],
                       idem: Mapping[str, str], theta: Mapping[str, Mapping[str, str]]) -> PartialAction:
    """Convenience wrapper over validate_action for already-built values."""
    return validate_action({"groupoid": G, "rings": dict(rings), "idem": dict(idem), "theta": dict(theta)})


def partial_functor(act: PartialAction) -> Dict[str, PartialBijection]:
    """g -> theta_g as a partial bijection B_d(g) -> B_c(g)."""
    sets = {e: FiniteSet(e, R.elems) for e, R in act.rings.items()}
    out = {}
    for g in act.G.ids:
        src, dst = act.rings[act.G.dom(g)], act.rings[act.G.cod(g)]
        pairs = tuple((src.label(x), dst.label(y)) for x, y in act.theta[g].items())
        out[g] = PartialBijection(sets[act.G.dom(g)], sets[act.G.cod(g)], pairs)
    return out


def check_partial_functor(act: PartialAction) -> CheckResult:
    """
    The action as a partial functor into partial bijections: identities go to
    identities, F(g^-1) = F(g)*, and
    F(g)F(h) = F(g)F(g^-1)F(gh) = F(gh)F(h^-1)F(h).
    """
    G = act.G
    F = partial_functor(act)
    checked = 0
    for e in G.objects:
        checked += 1
        if F[G.identity[e]] != identity_pb(F[G.identity[e]].src):
            return CheckResult(name="partial_functor", passed=False, checked=checked,
                               witness={"law": "identity", "object": e})
    for g in G.ids:
        checked += 1
        if F[G.inverse(g)] != star_pb(F[g]):
            return CheckResult(name="partial_functor", passed=False, checked=checked,
                               witness={"law": "F(g^-1) = F(g)*", "g": g})
    for g, h in composable_tuples(G, 2):
        checked += 1
        gh = G.compose(g, h)
        base = compose_pb(F[g], F[h])
        mid = compose_pb(compose_pb(F[g], F[G.inverse(g)]), F[gh])
        tail = compose_pb(compose_pb(F[gh], F[G.inverse(h)]), F[h])
        if not base == mid == tail:
            return CheckResult(name="partial_functor", passed=False, checked=checked,
                               witness={"law": "F(g)F(h)", "pair": [g, h]})
    return CheckResult(name="partial_functor", passed=True, checked=checked)


def module_of(act: PartialAction):
    """The multiplicative partial G-module underlying a ring action."""
    from src.cohomology import module_from_action
    return module_from_action(act)


# ---------------------------------------------------------------------------
# the skew ring
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SkewRing:
    graded: GradedAlgebra
    act: PartialAction
    eps: EpsilonSystem
    offsets: Dict[str, int]
    bases: Dict[str, List[int]]
    coords: Dict[str, Dict[int, Tuple[int, ...]]]

    def element(self, g: str, b: int) -> np.ndarray:
        """Vector of b delta_g for b an element index of B_g."""
        v = np.zeros(self.graded.dim, dtype=np.int64)
        c = self.coords[g][b]
        v[self.offsets[g]:self.offsets[g] + len(c)] = c
        return v


def _span_coordinates(R: FiniteCommRing, basis: List[int], p: int) -> Dict[int, Tuple[int, ...]]:
    table = {}
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        x = R.zero
        for k, b in zip(coeffs, basis):
            x = int(R.add[x, R.scalar(k, b)])
        table[x] = coeffs
    return table


def common_prime(rings: Mapping[str, FiniteCommRing]) -> int:
    primes = {e: R.characteristic_prime() for e, R in rings.items()}
    values = set(primes.values())
    if None in values or len(values) != 1:
        raise BaseFieldMismatch("component rings are not vector spaces over one prime field",
                                witness={e: q for e, q in sorted(primes.items())})
    return values.pop()


def build_skew_ring(act: PartialAction) -> SkewRing:
    """
    B *_theta G as a graded algebra over Z/p with basis b delta_g, b running
    over a greedy basis of each B_g, and product
    (b delta_g)(b' delta_h) = b theta_g(b' 1_g^-1) delta_gh.

    Raises:
        BaseFieldMismatch, AssociativityFailure
    """
    G = act.G
    p = common_prime(act.rings)
    offsets, bases, coords = {}, {}, {}
    names, degs = [], []
    for g in G.ids:
        R = act.ring_of(g)
        basis = R.additive_basis(within=act.ideal(g))
        offsets[g] = len(names)
        bases[g] = basis
        coords[g] = _span_coordinates(R, basis, p)
        names.extend(f"{R.label(b)}δ{g}" for b in basis)
        degs.extend([g] * len(basis))
    dim = len(names)

    sc = np.zeros((dim, dim, dim), dtype=np.int64)
    for g in G.ids:
        Rg = act.ring_of(g)
        gi = G.inverse(g)
        src = act.rings[G.dom(g)]
        for h in G.ending_at(G.dom(g)):
            gh = G.compose(g, h)
            for a, b in enumerate(bases[g]):
                for c, b2 in enumerate(bases[h]):
                    x = int(Rg.mul[b, act.theta[g][int(src.mul[b2, act.idem[gi]])]])
                    if x not in coords[gh]:
                        raise AssociativityFailure(f"product leaves B_{gh}", witness=[g, h])
                    sc[offsets[g] + a, offsets[h] + c, offsets[gh]:offsets[gh] + len(bases[gh])] = coords[gh][x]

    one = np.zeros(dim, dtype=np.int64)
    for e in G.objects:
        i = G.identity[e]
        c = coords[i][act.rings[e].one]
        one[offsets[i]:offsets[i] + len(c)] = c

    try:
        alg = validate_algebra(p, dim, sc, one, names)
    except InvalidTable as e:
        raise AssociativityFailure(f"skew ring is not an associative unital algebra: {e.message}",
                                   witness=e.witness)
    S = validate_grading(alg, G, degs)
    eps = compute_epsilons(S)
    ring = SkewRing(S, act, eps, offsets, bases, coords)
    for g in G.ids:
        expected = ring.element(G.identity[G.cod(g)], act.idem[g])
        if not np.array_equal(eps[g], expected):
            raise NotEpsilonStrong(f"epsilon_{g} != 1_g delta_c(g)", witness=[g])
    logger.info(f"skew ring of dimension {dim} over Z/{p} built")
    return ring
