"""
Partial bijections between finite sets, the morphisms of the inverse
category BIJ_cat.

A morphism B -> A is a bijection f: Y -> X with Y a subset of B and X a
subset of A. Composition restricts through the overlap of the middle
subsets; morphisms whose middle sets differ compose to the empty morphism.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from config import config
from src.errors import InvalidParams
from src.report import CheckResult

logger = logging.getLogger('grograde.partialmaps')


@dataclass(frozen=True)
class FiniteSet:
    id: str
    elems: Tuple[str, ...]


@dataclass(frozen=True)
class PartialBijection:
    src: FiniteSet
    dst: FiniteSet
    pairs: Tuple[Tuple[str, str], ...]

    def __post_init__(self):
        pairs = tuple(sorted((str(a), str(b)) for a, b in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        left = [a for a, _ in pairs]
        right = [b for _, b in pairs]
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            raise InvalidParams("partial bijection is not injective", witness=list(pairs))
        if not set(left) <= set(self.src.elems) or not set(right) <= set(self.dst.elems):
            raise InvalidParams("partial bijection leaves its sets", witness=list(pairs))

    @property
    def dom(self) -> frozenset:
        return frozenset(a for a, _ in self.pairs)

    @property
    def img(self) -> frozenset:
        return frozenset(b for _, b in self.pairs)

    @property
    def mapping(self) -> Dict[str, str]:
        return dict(self.pairs)

    def is_zero(self) -> bool:
        return not self.pairs

    def __repr__(self):
        body = ", ".join(f"{a}->{b}" for a, b in self.pairs)
        return f"{self.dst.id}<-{self.src.id}{{{body}}}"


def identity_pb(A: FiniteSet, subset: Optional[Iterable[str]] = None) -> PartialBijection:
    """Identity on `subset` (all of A by default)."""
    X = A.elems if subset is None else sorted(subset)
    return PartialBijection(A, A, tuple((x, x) for x in X))


def zero_pb(src: FiniteSet, dst: FiniteSet) -> PartialBijection:
    return PartialBijection(src, dst, ())


def compose_pb(f: PartialBijection, g: PartialBijection) -> PartialBijection:
    """
    f g (g first). With f: Y -> X and g: Y' -> X', the result is
    f restricted to Y n X' after g restricted to g^-1(Y n X').
    """
    if f.src != g.dst:
        return zero_pb(g.src, f.dst)
    fm = f.mapping
    return PartialBijection(g.src, f.dst, tuple((a, fm[b]) for a, b in g.pairs if b in fm))


def star_pb(f: PartialBijection) -> PartialBijection:
    return PartialBijection(f.dst, f.src, tuple((b, a) for a, b in f.pairs))


def all_partial_bijections(src: FiniteSet, dst: FiniteSet) -> List[PartialBijection]:
    """Every partial bijection src -> dst (sum over k of C(|B|,k) C(|A|,k) k!)."""
    out = []
    for k in range(min(len(src.elems), len(dst.elems)) + 1):
        for Y in itertools.combinations(src.elems, k):
            for X in itertools.combinations(dst.elems, k):
                for perm in itertools.permutations(X):
                    out.append(PartialBijection(src, dst, tuple(zip(Y, perm))))
    return out


def random_partial_bijection(rng: np.random.Generator, src: FiniteSet, dst: FiniteSet) -> PartialBijection:
    k = int(rng.integers(0, min(len(src.elems), len(dst.elems)) + 1))
    Y = rng.choice(len(src.elems), size=k, replace=False)
    X = rng.choice(len(dst.elems), size=k, replace=False)
    return PartialBijection(src, dst, tuple((src.elems[int(a)], dst.elems[int(b)]) for a, b in zip(Y, X)))


def _check_one(f: PartialBijection) -> Optional[str]:
    fs = star_pb(f)
    if compose_pb(compose_pb(f, fs), f) != f:
        return "f f* f != f"
    if compose_pb(compose_pb(fs, f), fs) != fs:
        return "f* f f* != f*"
    if star_pb(fs) != f:
        return "f** != f"
    if compose_pb(f, fs) != identity_pb(f.dst, f.img):
        return "f f* is not the identity on img f"
    return None


def check_inverse_category(samples: Sequence[PartialBijection], trials: int = 10_000,
                           seed: Optional[int] = None) -> CheckResult:
    """
    Check the inverse-category axioms of BIJ_cat on sampled morphisms.

    Every sample is checked for f f* f = f and f* f f* = f*; generalized
    inverse uniqueness is checked against every sample h; associativity on
    `trials` random triples (all triples when there are fewer).

    Returns:
        CheckResult with the first counterexample as witness
    """
    samples = list(samples)
    checked = 0

    for f in samples:
        problem = _check_one(f)
        checked += 1
        if problem:
            return CheckResult(name="inverse_category", passed=False, checked=checked,
                               witness={"law": problem, "f": repr(f)})

    for f in samples:
        fs = star_pb(f)
        for h in samples:
            if h.src != f.dst or h.dst != f.src:
                continue
            checked += 1
            if compose_pb(compose_pb(f, h), f) == f and compose_pb(compose_pb(h, f), h) == h and h != fs:
                return CheckResult(name="inverse_category", passed=False, checked=checked,
                                   witness={"law": "generalized inverse not unique",
                                            "f": repr(f), "h": repr(h)})

    n = len(samples)
    if n == 0:
        return CheckResult(name="inverse_category", passed=True, checked=checked)
    if n ** 3 <= trials:
        triples: Iterable = itertools.product(samples, repeat=3)
    else:
        rng = np.random.default_rng(config.RANDOM_SEED if seed is None else seed)
        idx = rng.integers(0, n, size=(trials, 3))
        triples = ((samples[a], samples[b], samples[c]) for a, b, c in idx)

    logged = False
    for f, g, h in triples:
        checked += 1
        left = compose_pb(compose_pb(f, g), h)
        right = compose_pb(f, compose_pb(g, h))
        if left != right:
            return CheckResult(name="inverse_category", passed=False, checked=checked,
                               witness={"law": "associativity", "f": repr(f), "g": repr(g), "h": repr(h)})
        if not logged and not left.is_zero():
            logger.debug(f"associativity instance: domain {sorted(left.dom)} image {sorted(left.img)} "
                         f"agree for both bracketings of {f!r} {g!r} {h!r}")
            logged = True

    logger.info(f"inverse-category axioms hold on {checked} checks")
    return CheckResult(name="inverse_category", passed=True, checked=checked)


def exhaustive_bij_check(size: int = 3) -> CheckResult:
    """
    Every partial bijection between the sets A1..A_size (|Ak| = k): the
    per-morphism laws and generalized inverse uniqueness on all of them,
    associativity on every composable triple.
    """
    sets = [FiniteSet(f"A{k}", tuple(f"a{k}.{i}" for i in range(1, k + 1))) for k in range(1, size + 1)]
    hom = {(X.id, Y.id): all_partial_bijections(X, Y) for X in sets for Y in sets}
    samples = [f for fs in hom.values() for f in fs]
    result = check_inverse_category(samples, trials=0)
    if not result.passed:
        return result

    checked = result.checked
    triples = 0
    for A, B, C, D in itertools.product(sets, repeat=4):
        for h in hom[(A.id, B.id)]:
            for g in hom[(B.id, C.id)]:
                gh = compose_pb(g, h)
                for f in hom[(C.id, D.id)]:
                    checked += 1
                    triples += 1
                    if compose_pb(compose_pb(f, g), h) != compose_pb(f, gh):
                        return CheckResult(name="inverse_category", passed=False, checked=checked,
                                           witness={"law": "associativity", "f": repr(f), "g": repr(g),
                                                    "h": repr(h)})
    logger.info(f"exhaustive check over {len(samples)} partial bijections and {triples} triples")
    return CheckResult(name="inverse_category", passed=True, checked=checked,
                       details={"morphisms": len(samples), "triples": triples})
