"""
Twisted epsilon-crossed products.

An epsilon-strongly graded algebra S carries its own factor set: the
multiplication maps S_g x S_h -> epsilon_g S_gh. Twisting by a 2-cochain q
of the canonical module (centers of the identity components, transported by
the gamma maps) rescales them to x o y = q_{g,h} (x y). Two twists are
equivalent when some family of central units c_g makes x -> c_g x a graded
ring isomorphism; `classify` checks that cohomology classes and equivalence
classes of twists match one to one.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from config import config
from src.algebra import (
    EpsilonSystem,
    GammaMap,
    GradedAlgebra,
    StructAlgebra,
    center,
    gamma_map,
    validate_algebra,
)
from src.cohomology import (
    Cochain,
    CochainGroup,
    CohomologyGroup,
    PartialGModule,
    cohomology,
    delta,
)
from src.errors import (
    BijectionFailure,
    InvalidParams,
    InvalidTable,
    NotCocycle,
    SearchSpaceExceeded,
)
from src.finalg import FiniteCommMonoid
from src.linalg import nullspace_mod, rank_mod
from src.skew import check_action_axioms
from utils.async_helper import ProgressTracker, run_checks

logger = logging.getLogger('grograde.crossed')


@dataclass(frozen=True, eq=False)
class CanonicalModule:
    """B_e = Z(S_e), 1_g = epsilon_g, theta_g = gamma_g, with element vectors."""
    module: PartialGModule
    vectors: Dict[str, np.ndarray]
    lookup: Dict[str, Dict[Tuple[int, ...], int]]
    gammas: Dict[str, GammaMap]

    def vector(self, obj: str, x: int) -> np.ndarray:
        return self.vectors[obj][x]

    def element(self, obj: str, v) -> int:
        return self.lookup[obj][tuple(int(a) for a in v)]


@dataclass(frozen=True, eq=False)
class TwistedRing:
    base: GradedAlgebra
    q: Cochain
    graded: GradedAlgebra

    @property
    def alg(self) -> StructAlgebra:
        return self.graded.alg


def canonical_module(S: GradedAlgebra, eps: EpsilonSystem) -> CanonicalModule:
    """
    The partial G-module of centers of an epsilon-strong algebra, validated
    against the partial action axioms.

    Raises:
        NoSolution, NotUnique (from gamma_map), G1Violation..G3Violation
    """
    G, p = S.G, S.p
    vectors, lookup, monoids = {}, {}, {}
    for e in G.objects:
        Z = center(S, eps[G.identity[e]])
        coeffs = np.array(list(itertools.product(range(p), repeat=Z.shape[0])), dtype=np.int64)
        elems = (coeffs @ Z) % p if Z.shape[0] else np.zeros((1, S.dim), dtype=np.int64)
        table = {tuple(int(a) for a in v): i for i, v in enumerate(elems)}
        n = elems.shape[0]
        prods = S.alg.mul_sets(elems, elems).reshape(n, n, S.dim)
        op = np.array([[table[tuple(int(a) for a in prods[i, j])] for j in range(n)] for i in range(n)],
                      dtype=np.int64)
        one = table[tuple(int(a) for a in eps[G.identity[e]])]
        labels = tuple(S.alg.format(v) for v in elems)
        monoids[e] = FiniteCommMonoid(labels, op, one)
        vectors[e], lookup[e] = elems, table

    idem, theta, gammas = {}, {}, {}
    for g in G.ids:
        src, dst = G.dom(g), G.cod(g)
        idem[g] = lookup[dst][tuple(int(a) for a in eps[g])]
        gamma = gamma_map(S, eps, g)
        gammas[g] = gamma
        cut = sorted(set(int(v) for v in monoids[src].op[lookup[src][tuple(int(a) for a in eps[G.inverse(g)])]]))
        theta[g] = {x: lookup[dst][tuple(int(a) for a in gamma(vectors[src][x]))] for x in cut}

    check_action_axioms(G, monoids, idem, theta, additive=False)
    logger.info("canonical module: " + ", ".join(f"|B_{e}| = {monoids[e].size}" for e in G.objects))
    return CanonicalModule(PartialGModule(G, monoids, idem, theta), vectors, lookup, gammas)


def _rescale(S: GradedAlgebra, sc: np.ndarray, q: Cochain, canon: CanonicalModule) -> np.ndarray:
    """sc[i, j] -> q_{deg i, deg j} sc[i, j], products taken in S."""
    G, p = S.G, S.p
    out = np.zeros_like(sc)
    for i in range(S.dim):
        g = S.deg[i]
        for j in range(S.dim):
            h = S.deg[j]
            if G.compose(g, h) is None or not sc[i, j].any():
                continue
            qv = canon.vector(G.cod(g), q.values[(g, h)])
            out[i, j] = S.alg.mul(qv, sc[i, j])
    return out % p


def _twisted_identity(S: GradedAlgebra, q: Cochain, canon: CanonicalModule) -> np.ndarray:
    """sum over objects e of q_{e,e}^-1, the inverse taken in its cut unit group."""
    M = canon.module
    one = np.zeros(S.dim, dtype=np.int64)
    for e in S.G.objects:
        i = S.G.identity[e]
        grp = M.unit_group(e, M.cut_idempotent(2, (i, i)))
        inv = grp.labels[grp.inverse(grp.index(q.values[(i, i)]))]
        one = (one + canon.vector(e, inv)) % S.p
    return one


def _make_twist(S: GradedAlgebra, sc: np.ndarray, q: Cochain, canon: CanonicalModule,
                unit_from: Optional[Cochain] = None) -> TwistedRing:
    M = canon.module
    if not CochainGroup(M, 2).contains(q):
        raise InvalidParams("q is not a 2-cochain of the canonical module")
    is_cocycle = delta(M, q) == CochainGroup(M, 3).identity()
    twisted_sc = _rescale(S, sc, q, canon)
    one = _twisted_identity(S, q if unit_from is None else unit_from, canon)
    try:
        alg = validate_algebra(S.p, S.dim, twisted_sc, one, S.alg.names)
    except InvalidTable as e:
        witness = e.witness
        if witness and len(witness) == 3:
            witness = [S.deg[int(k)] for k in witness]
        raise NotCocycle(f"twisted product fails: {e.message}", witness=witness)
    if not is_cocycle:
        bad = next(t for t, v in delta(M, q).values.items() if v != CochainGroup(M, 3).identity().values[t])
        raise NotCocycle("twisted product is associative but delta(q) != e", witness=list(bad))
    return TwistedRing(S, q, GradedAlgebra(alg, S.G, S.deg))


def twist(S: GradedAlgebra, eps: EpsilonSystem, q: Cochain,
          canon: Optional[CanonicalModule] = None) -> TwistedRing:
    """
    The ring with product x o y = q_{g,h} (x y) for x in S_g, y in S_h and
    identity sum_e q_{e,e}^-1.

    Raises:
        NotCocycle: with the failing triple of degrees
    """
    canon = canon or canonical_module(S, eps)
    return _make_twist(S, S.alg.sc, q, canon)


def retwist(T: TwistedRing, q: Cochain, canon: CanonicalModule) -> TwistedRing:
    """Twist an already twisted ring once more; factor sets compose pointwise."""
    C2 = CochainGroup(canon.module, 2)
    combined = C2.mul(T.q, q)
    ring = _make_twist(T.base, T.graded.alg.sc, q, canon, unit_from=combined)
    return TwistedRing(T.base, combined, ring.graded)


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------

def _is_ring_iso(A: np.ndarray, Sa: StructAlgebra, Sb: StructAlgebra) -> bool:
    """x -> x A is multiplicative from Sa to Sb on every basis pair."""
    p = Sa.p
    left = np.einsum("ijk,kl->ijl", Sa.sc, A) % p
    right = np.einsum("ai,bj,ijk->abk", A, A, Sb.sc) % p
    return bool(np.array_equal(left, right))


def _scaling_matrix(S: GradedAlgebra, c: Cochain, canon: CanonicalModule) -> np.ndarray:
    rows = []
    for i in range(S.dim):
        g = S.deg[i]
        rows.append(S.alg.mul(canon.vector(S.G.cod(g), c.values[(g,)]), S.alg.unit(i)))
    return np.array(rows, dtype=np.int64).reshape(S.dim, S.dim)


def equivalent(Sa: TwistedRing, Sb: TwistedRing, canon: CanonicalModule,
               cap: Optional[int] = None) -> Tuple[bool, Optional[Dict[str, str]]]:
    """
    Search families c_g in U(Z(epsilon_g R)) making x -> c_g x a ring
    isomorphism Sa -> Sb.

    Returns:
        (found, witness) with the witness family formatted per morphism

    Raises:
        SearchSpaceExceeded
    """
    cap = config.EQUIVALENCE_CAP if cap is None else cap
    if Sa.base is not Sb.base and Sa.base.deg != Sb.base.deg:
        raise InvalidParams("twists of different algebras cannot be compared")
    C1 = CochainGroup(canon.module, 1)
    if C1.order > cap:
        raise SearchSpaceExceeded(f"{C1.order} candidate families exceed the cap {cap}", witness=[C1.order, cap])
    S = Sa.base
    for x in C1.all_coords():
        c = C1.from_coords(x)
        if _is_ring_iso(_scaling_matrix(S, c, canon), Sa.alg, Sb.alg):
            return True, C1.format(c)
    return False, None


def _bimodule_maps(S: GradedAlgebra, g: str) -> np.ndarray:
    """Basis (rows, flattened d x d matrices) of R-bimodule endomorphisms of S_g."""
    I = S.component(g)
    d = len(I)
    p = S.p
    residuals = []
    for a in range(d):
        for b in range(d):
            U = np.zeros((d, d), dtype=np.int64)
            U[a, b] = 1
            parts = []
            for r in S.base_indices:
                L = S.alg.sc[r][I][:, I] % p          # row i: coords of r e_i
                R = S.alg.sc[:, r][I][:, I] % p       # row i: coords of e_i r
                parts.append((L @ U - U @ L).ravel())
                parts.append((R @ U - U @ R).ravel())
            residuals.append(np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64))
    A = np.array(residuals, dtype=np.int64).T % p
    if A.shape[0] == 0:
        return np.eye(d * d, dtype=np.int64)
    return nullspace_mod(A, p)


def graded_isomorphism_search(Sa: TwistedRing, Sb: TwistedRing,
                              cap: Optional[int] = None) -> Tuple[bool, Optional[np.ndarray]]:
    """
    Exhaustive search over graded linear bijections that are R-bimodule maps
    on every component and ring isomorphisms Sa -> Sb.

    Raises:
        SearchSpaceExceeded
    """
    cap = config.EQUIVALENCE_CAP if cap is None else cap
    S = Sa.base
    p = S.p
    choices = []
    total = 1
    for g in S.G.ids:
        I = S.component(g)
        if not I:
            continue
        d = len(I)
        B = _bimodule_maps(S, g)
        total *= p ** B.shape[0]
        if total > cap:
            raise SearchSpaceExceeded(f"graded isomorphism search exceeds the cap {cap}", witness=[total, cap])
        mats = []
        for coeffs in itertools.product(range(p), repeat=B.shape[0]):
            X = (np.asarray(coeffs, dtype=np.int64) @ B % p).reshape(d, d) if B.shape[0] else np.zeros((d, d), dtype=np.int64)
            if rank_mod(X, p) == d:
                mats.append(X)
        choices.append((I, mats))

    for pick in itertools.product(*[mats for _, mats in choices]):
        A = np.zeros((S.dim, S.dim), dtype=np.int64)
        for (I, _), X in zip(choices, pick):
            A[np.ix_(I, I)] = X
        if _is_ring_iso(A, Sa.alg, Sb.alg):
            return True, A
    return False, None


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def classify(S: GradedAlgebra, eps: EpsilonSystem, sample: Optional[int] = None, cap: Optional[int] = None,
             backend: Optional[str] = None, threads: int = 1, progress_callback=None) -> Dict[str, object]:
    """
    Compare H^2 of the canonical module with the equivalence classes of
    twists of S.

    Checks that cohomologous cocycles give equivalent twists, that distinct
    class representatives give inequivalent twists, and that the number of
    equivalence classes is |H^2|. On small algebras every verdict is
    cross-checked by the exhaustive graded isomorphism search.

    Raises:
        BijectionFailure: with the collected data as witness
    """
    sample = config.CLASSIFY_SAMPLE if sample is None else sample
    tracker = ProgressTracker(5, progress_callback)
    canon = canonical_module(S, eps)
    M = canon.module
    tracker.update("canonical module")

    H: CohomologyGroup = cohomology(M, 2, backend=backend)
    C2 = CochainGroup(M, 2)
    twists = [twist(S, eps, q, canon) for q in H.representatives]
    tracker.update("twists")

    n = len(twists)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    verdicts = run_checks({(i, j): (lambda i=i, j=j: equivalent(twists[i], twists[j], canon, cap))
                           for i, j in pairs}, threads)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for (i, j), (ok, _) in verdicts.items():
        if ok:
            parent[find(j)] = find(i)
    class_ids = [find(i) for i in range(n)]
    distinct = sorted(set(class_ids))
    tracker.update("representatives")

    failures = []
    for (i, j), (ok, witness) in verdicts.items():
        if ok:
            failures.append({"law": "non-cohomologous twists equivalent", "pair": [i, j], "witness": witness})

    rng = np.random.default_rng(config.RANDOM_SEED)
    C1 = CochainGroup(M, 1)
    sampled = []
    for k in range(min(sample, C1.order) if n else 0):
        r = int(rng.integers(0, n))
        c = C1.random(rng)
        q2 = C2.mul(H.representatives[r], delta(M, c))
        same_class = H.class_of(q2) == H.class_of(H.representatives[r])
        ok, witness = equivalent(twists[r], twist(S, eps, q2, canon), canon, cap)
        sampled.append({"representative": r, "equivalent": ok, "same_class": same_class})
        if not (ok and same_class):
            failures.append({"law": "cohomologous twists inequivalent", "representative": r,
                             "c": C1.format(c)})
    tracker.update("cohomologous samples")

    cross_check = None
    if S.dim <= config.FULL_ISO_MAX_DIM:
        cross_check = []
        for i in range(n):
            for j in range(i, n):
                found, _ = graded_isomorphism_search(twists[i], twists[j], cap)
                cross_check.append({"pair": [i, j], "isomorphic": found})
                if found != (i == j):
                    failures.append({"law": "full isomorphism search disagrees", "pair": [i, j]})
    tracker.update("cross-check")

    if len(distinct) != H.order:
        failures.append({"law": "#classes != |H^2|", "classes": len(distinct), "order": H.order})

    table = [{"representative": C2.format(q), "class": class_ids[i]} for i, q in enumerate(H.representatives)]
    report = {
        "h2": H.summary(),
        "classes": len(distinct),
        "table": table,
        "sampled": sampled,
        "cross_check": cross_check,
        "bijective": not failures,
    }
    if failures:
        logger.error(f"classification failed: {failures[0]}")
        raise BijectionFailure("cohomology classes and twist classes do not correspond",
                               witness={"failures": failures, "h2": H.summary(), "classes": len(distinct)})
    logger.info(f"|H^2| = {H.order} = #classes")
    return report
