"""
Finite-dimensional algebras over Z/p given by structure constants, and
groupoid gradings on them.

An algebra has basis e_0..e_{m-1} with e_i e_j = sum_k sc[i, j, k] e_k. A
grading assigns a morphism of a finite groupoid to every basis vector, so
each component S_g is spanned by a subset of the basis and R is the sum of
the components of identity morphisms.

Elements are numpy int64 coefficient vectors; sets of elements are 2-d
arrays whose rows are the vectors.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.errors import (
    GradingViolation,
    IdentityNotInR,
    InvalidParams,
    InvalidTable,
    NoSolution,
    NotEpsilonStrong,
    NotPrime,
    NotUnique,
)
from src.groupoid import FiniteGroupoid, composable_tuples, support_subgroupoid
from src.linalg import (
    coordinates,
    in_span,
    is_prime,
    nullspace_mod,
    rank_mod,
    row_basis,
    solve_mod,
    spans_equal,
)
from src.report import CheckResult
from utils.async_helper import run_checks

logger = logging.getLogger('grograde.algebra')


@dataclass(frozen=True, eq=False)
class StructAlgebra:
    p: int
    dim: int
    sc: np.ndarray
    one: np.ndarray
    names: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{i}" for i in range(self.dim)))

    def mul(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(x), np.asarray(y), self.sc) % self.p

    def mul_sets(self, X, Y) -> np.ndarray:
        """All products x y for rows x of X and y of Y, as rows."""
        X, Y = np.atleast_2d(X), np.atleast_2d(Y)
        if X.shape[0] == 0 or Y.shape[0] == 0:
            return np.zeros((0, self.dim), dtype=np.int64)
        return (np.einsum("ai,bj,ijk->abk", X, Y, self.sc) % self.p).reshape(-1, self.dim)

    def unit(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def format(self, v) -> str:
        """Readable form such as "f1f1* + 2 v1"."""
        terms = []
        for i, c in enumerate(np.asarray(v) % self.p):
            if c:
                terms.append(self.names[i] if c == 1 else f"{int(c)} {self.names[i]}")
        return " + ".join(terms) if terms else "0"

    def to_raw(self) -> dict:
        nz = np.argwhere(self.sc % self.p)
        return {
            "p": self.p,
            "dim": self.dim,
            "sc": [[int(i), int(j), int(k), int(self.sc[i, j, k])] for i, j, k in nz],
            "one": [int(x) for x in self.one],
            "names": list(self.names),
        }


def validate_algebra(p: int, dim: int, sc, one, names: Sequence[str] = ()) -> StructAlgebra:
    """
    Build a StructAlgebra from dense or sparse structure constants and check
    associativity and the identity on all basis triples.

    Args:
        sc: dense (dim, dim, dim) array, or a list of [i, j, k, c] entries
    """
    if not is_prime(int(p)):
        raise NotPrime(f"{p} is not prime", witness=[p])
    p = int(p)
    if isinstance(sc, np.ndarray) and sc.ndim == 3:
        dense = sc.astype(np.int64) % p
    else:
        dense = np.zeros((dim, dim, dim), dtype=np.int64)
        for entry in sc:
            i, j, k, c = (int(x) for x in entry)
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise InvalidParams("structure constant index out of range", witness=[i, j, k])
            dense[i, j, k] = (dense[i, j, k] + c) % p
    one = np.asarray(one, dtype=np.int64) % p
    if dense.shape != (dim, dim, dim) or one.shape != (dim,):
        raise InvalidParams("structure constants and identity must match the dimension", witness=[dim])

    left = np.einsum("ijl,lkm->ijkm", dense, dense) % p
    right = np.einsum("jkl,ilm->ijkm", dense, dense) % p
    bad = np.argwhere((left != right).any(axis=3))
    if bad.size:
        raise InvalidTable("algebra is not associative", witness=[int(x) for x in bad[0]])
    eye = np.eye(dim, dtype=np.int64)
    if not (np.array_equal(np.einsum("i,ijk->jk", one, dense) % p, eye)
            and np.array_equal(np.einsum("j,ijk->ik", one, dense) % p, eye)):
        raise InvalidTable("`one` is not a two-sided identity")
    names = tuple(names) if names else ()
    if names and len(names) != dim:
        raise InvalidParams("basis names must match the dimension", witness=[len(names), dim])
    return StructAlgebra(p, dim, dense, one, names)


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    alg: StructAlgebra
    G: FiniteGroupoid
    deg: Tuple[str, ...]

    @property
    def p(self) -> int:
        return self.alg.p

    @property
    def dim(self) -> int:
        return self.alg.dim

    @cached_property
    def _components(self) -> Dict[str, List[int]]:
        out = {g: [] for g in self.G.ids}
        for i, g in enumerate(self.deg):
            out[g].append(i)
        return out

    def component(self, g: str) -> List[int]:
        """Basis indices of S_g."""
        return self._components[g]

    def basis(self, g: str) -> np.ndarray:
        idx = self.component(g)
        return np.eye(self.dim, dtype=np.int64)[idx] if idx else np.zeros((0, self.dim), dtype=np.int64)

    @cached_property
    def base_indices(self) -> List[int]:
        """Basis indices of R, the sum of the identity components."""
        return [i for i, g in enumerate(self.deg) if self.G.is_identity(g)]

    def base_basis(self) -> np.ndarray:
        idx = self.base_indices
        return np.eye(self.dim, dtype=np.int64)[idx] if idx else np.zeros((0, self.dim), dtype=np.int64)

    def project(self, v, g: str) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        idx = self.component(g)
        out[idx] = np.asarray(v)[idx]
        return out

    def local_identity(self, e: str) -> np.ndarray:
        """(1_S)_e, the identity of the ring S_e."""
        return self.project(self.alg.one, self.G.identity[e])

    def product_span(self, g: str, h: str) -> np.ndarray:
        """Canonical basis of span(S_g S_h)."""
        return row_basis(self.alg.mul_sets(self.basis(g), self.basis(h)), self.p, self.dim)

    def degree_of(self, v) -> Optional[str]:
        """Degree of a nonzero homogeneous vector, None for 0."""
        support = {self.deg[i] for i in np.nonzero(np.asarray(v) % self.p)[0]}
        if len(support) > 1:
            raise InvalidParams("element is not homogeneous", witness=sorted(support))
        return support.pop() if support else None


@dataclass(frozen=True, eq=False)
class EpsilonSystem:
    eps: Dict[str, np.ndarray]

    def __getitem__(self, g: str) -> np.ndarray:
        return self.eps[g]

    def items(self):
        return self.eps.items()


def validate_grading(alg: StructAlgebra, G: FiniteGroupoid, deg: Mapping) -> GradedAlgebra:
    """
    Attach a grading to `alg` and verify S_g S_h within S_gh for composable
    pairs and S_g S_h = 0 otherwise, on every basis pair; then check 1_S lies
    in R.

    Raises:
        GradingViolation, IdentityNotInR, InvalidParams
    """
    if isinstance(deg, Mapping):
        try:
            degrees = tuple(str(deg[str(i)] if str(i) in deg else deg[i]) for i in range(alg.dim))
        except KeyError as e:
            raise InvalidParams(f"basis vector {e.args[0]} has no degree", witness=[e.args[0]])
    else:
        degrees = tuple(str(g) for g in deg)
    if len(degrees) != alg.dim:
        raise InvalidParams("degree map must cover the basis", witness=[len(degrees), alg.dim])
    known = set(G.ids)
    for i, g in enumerate(degrees):
        if g not in known:
            raise InvalidParams(f"basis vector {i} has unknown degree {g}", witness=[i, g])

    for i in range(alg.dim):
        g = degrees[i]
        for j in range(alg.dim):
            h = degrees[j]
            support = np.nonzero(alg.sc[i, j] % alg.p)[0]
            if support.size == 0:
                continue
            gh = G.compose(g, h)
            if gh is None or any(degrees[k] != gh for k in support):
                raise GradingViolation(
                    f"e{i} e{j} leaves S_{gh}" if gh else f"e{i} e{j} != 0 for non-composable ({g}, {h})",
                    witness=[i, j])

    S = GradedAlgebra(alg, G, degrees)
    outside = [i for i in np.nonzero(alg.one % alg.p)[0] if not G.is_identity(degrees[i])]
    if outside:
        raise IdentityNotInR("1_S has a component outside R", witness=[int(outside[0]), degrees[outside[0]]])
    logger.debug(f"grading of a {alg.dim}-dimensional algebra by {len(G)} morphisms verified")
    return S


def is_strongly_graded(S: GradedAlgebra) -> CheckResult:
    """span(S_g S_h) = S_gh for every composable pair."""
    checked = 0
    for g, h in composable_tuples(S.G, 2):
        checked += 1
        got = S.product_span(g, h).shape[0]
        want = len(S.component(S.G.compose(g, h)))
        if got != want:
            return CheckResult(name="strong", passed=False, checked=checked, witness=[g, h],
                               details={"product_dim": got, "target_dim": want, "gap": want - got})
    return CheckResult(name="strong", passed=True, checked=checked)


def strong_by_identity(S: GradedAlgebra) -> CheckResult:
    """Strongness through 1_{S_c(g)} in span(S_g S_g^-1) for every g."""
    for n, g in enumerate(S.G.ids, start=1):
        target = S.local_identity(S.G.cod(g))
        if not in_span(S.product_span(g, S.G.inverse(g)), target, S.p):
            return CheckResult(name="strong_by_identity", passed=False, checked=n, witness=[g])
    return CheckResult(name="strong_by_identity", passed=True, checked=len(S.G))


def support(S: GradedAlgebra) -> Tuple[List[str], FiniteGroupoid]:
    """
    Objects e with (1_S)_e != 0 and the full subgroupoid on them. Every
    nonzero component S_g lies over that subgroupoid.
    """
    live = [e for e in S.G.objects if S.local_identity(e).any()]
    G_live = support_subgroupoid(S.G, live)
    keep = set(G_live.ids)
    stray = [g for g in S.G.ids if S.component(g) and g not in keep]
    if stray:
        raise IdentityNotInR("nonzero component outside the support of 1_S", witness=stray[:1])
    return live, G_live


def _identity_of_span(S: GradedAlgebra, P: np.ndarray) -> Optional[np.ndarray]:
    """The x in span(P) with x v = v = v x for every row v of P."""
    r = P.shape[0]
    if r == 0:
        return S.alg.zero()
    left = S.alg.mul_sets(P, P).reshape(r, r, S.dim)    # P_a P_b
    # sum_a c_a P_a P_b = P_b and sum_a c_a P_b P_a = P_b
    A = np.concatenate([left.transpose(1, 2, 0).reshape(-1, r),
                        left.transpose(0, 2, 1).reshape(-1, r)], axis=0)
    b = np.concatenate([P.reshape(-1), P.reshape(-1)])
    c = solve_mod(A, b, S.p)
    if c is None:
        return None
    return (c @ P) % S.p


def compute_epsilons(S: GradedAlgebra) -> EpsilonSystem:
    """
    For each g find the internal identity epsilon_g of span(S_g S_g^-1) and
    verify epsilon_g s = s = s epsilon_g^-1 on a basis of S_g.

    Raises:
        NotEpsilonStrong: names the failing morphism
    """
    eps: Dict[str, np.ndarray] = {}
    for g in S.G.ids:
        P = S.product_span(g, S.G.inverse(g))
        x = _identity_of_span(S, P)
        if x is None:
            raise NotEpsilonStrong(f"span(S_g S_g^-1) has no identity for g = {g}", witness=[g])
        eps[g] = x
    for g in S.G.ids:
        Sg = S.basis(g)
        right = eps[S.G.inverse(g)]
        for s in Sg:
            if not np.array_equal(S.alg.mul(eps[g], s), s) or not np.array_equal(S.alg.mul(s, right), s):
                raise NotEpsilonStrong(f"epsilon_g s = s = s epsilon_g^-1 fails for g = {g}",
                                       witness=[g, S.alg.format(s)])
    logger.info(f"epsilon system found for {len(eps)} morphisms")
    return EpsilonSystem(eps)


def epsilon_report(S: GradedAlgebra) -> Tuple[CheckResult, Optional[EpsilonSystem]]:
    try:
        eps = compute_epsilons(S)
    except NotEpsilonStrong as e:
        return CheckResult(name="epsilon_strong", passed=False, witness=e.witness,
                           details={"message": e.message}), None
    details = {"epsilons": {g: S.alg.format(v) for g, v in eps.items()}}
    return CheckResult(name="epsilon_strong", passed=True, checked=len(S.G), details=details), eps


def check_epsilon_properties(S: GradedAlgebra, eps: EpsilonSystem) -> CheckResult:
    """epsilon_g idempotent, central in R, and span(S_g S_h) = span(epsilon_g S_gh)."""
    R = S.base_basis()
    checked = 0
    for g, x in eps.items():
        checked += 1
        if not np.array_equal(S.alg.mul(x, x), x):
            return CheckResult(name="epsilon_properties", passed=False, checked=checked,
                               witness={"law": "idempotent", "g": g})
        if R.shape[0] and not np.array_equal(S.alg.mul_sets(x, R), S.alg.mul_sets(R, x)):
            return CheckResult(name="epsilon_properties", passed=False, checked=checked,
                               witness={"law": "central in R", "g": g})
    for g, h in composable_tuples(S.G, 2):
        checked += 1
        target = S.alg.mul_sets(eps[g], S.basis(S.G.compose(g, h)))
        if not spans_equal(S.product_span(g, h), target, S.p):
            return CheckResult(name="epsilon_properties", passed=False, checked=checked,
                               witness={"law": "S_g S_h = epsilon_g S_gh", "pair": [g, h]})
    return CheckResult(name="epsilon_properties", passed=True, checked=checked)


def check_epsilon_definition(S: GradedAlgebra, eps: EpsilonSystem) -> CheckResult:
    """span(S_g S_h) = span(S_g S_g^-1 S_gh) = span(S_gh S_h^-1 S_h) for composable pairs."""
    n = 0
    for g, h in composable_tuples(S.G, 2):
        n += 1
        gh = S.G.compose(g, h)
        middle = S.alg.mul_sets(S.product_span(g, S.G.inverse(g)), S.basis(gh))
        right = S.alg.mul_sets(S.basis(gh), S.product_span(S.G.inverse(h), h))
        base = S.product_span(g, h)
        if not (spans_equal(base, middle, S.p) and spans_equal(base, right, S.p)):
            return CheckResult(name="epsilon_definition", passed=False, checked=n, witness=[g, h])
    return CheckResult(name="epsilon_definition", passed=True, checked=n)


# ---------------------------------------------------------------------------
# centers and the transport maps gamma
# ---------------------------------------------------------------------------

def center(S: GradedAlgebra, x) -> np.ndarray:
    """Canonical basis of Z(xR) for a central idempotent x of R."""
    R = S.base_basis()
    xR = row_basis(S.alg.mul_sets(x, R), S.p, S.dim) if R.shape[0] else np.zeros((0, S.dim), dtype=np.int64)
    r = xR.shape[0]
    if r == 0:
        return xR
    # sum_a c_a (xR_a w - w xR_a) = 0 for every basis w of xR
    lw = S.alg.mul_sets(xR, xR).reshape(r, r, S.dim)
    comm = (lw - lw.transpose(1, 0, 2)) % S.p
    A = comm.transpose(1, 2, 0).reshape(-1, r)
    N = nullspace_mod(A, S.p)
    return row_basis((N @ xR) % S.p, S.p, S.dim)


def check_center_identity(S: GradedAlgebra, eps: EpsilonSystem) -> CheckResult:
    """Z(epsilon_g R) = Z(S_c(g)) epsilon_g for every g."""
    for n, g in enumerate(S.G.ids, start=1):
        local = center(S, S.local_identity(S.G.cod(g)))
        cut = S.alg.mul_sets(local, eps[g])
        if not spans_equal(center(S, eps[g]), cut, S.p):
            return CheckResult(name="center_identity", passed=False, checked=n, witness=[g])
    return CheckResult(name="center_identity", passed=True, checked=len(S.G))


@dataclass(frozen=True, eq=False)
class GammaMap:
    """gamma_g : Z(epsilon_g^-1 R) -> Z(epsilon_g R) in center bases."""
    g: str
    source: np.ndarray
    target: np.ndarray
    matrix: np.ndarray
    p: int

    def __call__(self, v) -> np.ndarray:
        c = coordinates(self.source, v, self.p)
        if c is None:
            raise InvalidParams(f"element is not in the domain of gamma_{self.g}")
        if self.source.shape[0] == 0:
            return np.zeros(self.target.shape[1], dtype=np.int64)
        return (c @ self.matrix @ self.target) % self.p


def gamma_map(S: GradedAlgebra, eps: EpsilonSystem, g: str) -> GammaMap:
    """
    Solve gamma_g(b) s = s b for all s in S_g, for b over a basis of
    Z(epsilon_g^-1 R), and check the result is a bijective ring map.

    Raises:
        NoSolution, NotUnique
    """
    p = S.p
    gi = S.G.inverse(g)
    Zs, Zt = center(S, eps[gi]), center(S, eps[g])
    Sg = S.basis(g)
    k, kt = Zs.shape[0], Zt.shape[0]
    rows = np.zeros((k, kt), dtype=np.int64)
    if kt:
        # (sum_a c_a Zt_a) s = s b  for every s in S_g
        ys = S.alg.mul_sets(Zt, Sg).reshape(kt, -1).T if Sg.shape[0] else np.zeros((0, kt), dtype=np.int64)
        if ys.shape[0] and nullspace_mod(ys, p).shape[0]:
            raise NotUnique(f"gamma_{g} is not determined by S_g", witness=[g])
    for a in range(k):
        b = Zs[a]
        rhs = S.alg.mul_sets(Sg, b).reshape(-1)
        if kt == 0:
            if rhs.any():
                raise NoSolution(f"no gamma_{g} image for a center basis element", witness=[g, a])
            continue
        c = solve_mod(ys, rhs, p) if ys.shape[0] else np.zeros(kt, dtype=np.int64)
        if c is None:
            raise NoSolution(f"no gamma_{g} image for a center basis element", witness=[g, a])
        rows[a] = c
    gamma = GammaMap(g, Zs, Zt, rows % p, p)

    if k != kt or rank_mod(rows, p) != k:
        raise NotUnique(f"gamma_{g} is not bijective", witness=[g])
    if k and not np.array_equal(gamma(eps[gi]), eps[g] % p):
        raise NoSolution(f"gamma_{g} does not map epsilon_g^-1 to epsilon_g", witness=[g])
    for a in range(k):
        for b in range(k):
            if not np.array_equal(gamma(S.alg.mul(Zs[a], Zs[b])), S.alg.mul(gamma(Zs[a]), gamma(Zs[b]))):
                raise NoSolution(f"gamma_{g} is not multiplicative", witness=[g, a, b])
    return gamma


def check_transport_identity(S: GradedAlgebra, eps: EpsilonSystem, g: str, h: str) -> bool:
    """gamma_gh(epsilon_(gh)^-1 epsilon_h^-1) = epsilon_g epsilon_gh."""
    gh = S.G.compose(g, h)
    gamma = gamma_map(S, eps, gh)
    arg = S.alg.mul(eps[S.G.inverse(gh)], eps[S.G.inverse(h)])
    return bool(np.array_equal(gamma(arg), S.alg.mul(eps[g], eps[gh])))


def check_m_iso(S: GradedAlgebra, eps: EpsilonSystem, g: str, h: str) -> CheckResult:
    """
    Multiplication S_g (x)_R S_h -> epsilon_g S_gh is an isomorphism.

    The tensor product is S_g (x) S_h over Z/p modulo the balancing relations
    s r (x) t - s (x) r t for r over a basis of R.
    """
    p = S.p
    gh = S.G.compose(g, h)
    if gh is None:
        raise InvalidParams(f"({g}, {h}) is not composable", witness=[g, h])
    I, J = S.component(g), S.component(h)
    a, b = len(I), len(J)
    rel = []
    R = S.base_indices
    for ii, i in enumerate(I):
        for r in R:
            sr = S.alg.sc[i, r][I] % p
            for jj, j in enumerate(J):
                rt = S.alg.sc[r, j][J] % p
                v = np.zeros((a, b), dtype=np.int64)
                v[:, jj] += sr
                v[ii, :] -= rt
                v %= p
                if v.any():
                    rel.append(v.reshape(-1))
    tensor_dim = a * b - (rank_mod(np.array(rel), p) if rel else 0)

    image = S.product_span(g, h)
    target = row_basis(S.alg.mul_sets(eps[g], S.basis(gh)), p, S.dim)
    other = row_basis(S.alg.mul_sets(S.basis(gh), eps[S.G.inverse(h)]), p, S.dim)
    surjective = spans_equal(image, target, p)
    sides_agree = spans_equal(target, other, p)
    transport = check_transport_identity(S, eps, g, h)
    passed = surjective and sides_agree and tensor_dim == target.shape[0] and transport
    details = {
        "tensor_dim": int(tensor_dim),
        "image_dim": int(image.shape[0]),
        "target_dim": int(target.shape[0]),
        "surjective": bool(surjective),
        "left_right_agree": bool(sides_agree),
        "transport_identity": bool(transport),
        "image": [S.alg.format(v) for v in image],
    }
    return CheckResult(name="m_iso", passed=bool(passed), checked=1,
                       witness=None if passed else [g, h], details=details)


def m_iso_sweep(S: GradedAlgebra, eps: EpsilonSystem, threads: int = 1) -> Dict[Tuple[str, str], CheckResult]:
    """check_m_iso on every composable pair."""
    jobs = {(g, h): (lambda g=g, h=h: check_m_iso(S, eps, g, h)) for g, h in composable_tuples(S.G, 2)}
    return run_checks(jobs, threads)
