"""
Partial groupoid cohomology with values in a unital partial G-module.

An n-cochain assigns to every composable tuple (g_1, ..., g_n) a unit of
the cut ideal B 1_g1 1_g1g2 ... 1_g1...gn of B_c(g1); a 0-cochain is a
global unit b = (b_e). Cochains are stored as monoid element indices and,
for linear algebra, as cyclic coordinates of the product of the cut unit
groups.

Two backends compute H^n:

* ``enumerate`` filters every n-cochain through delta and partitions the
  cocycles into cosets of the coboundaries;
* ``snf`` writes delta as an integer matrix in cyclic coordinates and reads
  kernel, image and quotient off integer diagonalisations.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from math import prod
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from sympy import primefactors
from tqdm import tqdm

from config import config
from src.abelian import TableGroup, elementary_divisors, invariant_factors, type_from_torsion_counts
from src.errors import CapExceeded, InvalidParams, NonHomomorphicDelta
from src.finalg import FiniteCommMonoid, multiplicative_monoid, units, validate_monoid
from src.groupoid import FiniteGroupoid, composable_tuples, validate_groupoid
from src.linalg import Lattice, integer_kernel, quotient_by_columns
from src.skew import PartialAction, check_action_axioms, parse_action_tables

logger = logging.getLogger('grograde.cohomology')

Key = Tuple[str, ...]


@dataclass(eq=False)
class PartialGModule:
    G: FiniteGroupoid
    monoids: Dict[str, FiniteCommMonoid]
    idem: Dict[str, int]
    theta: Dict[str, Dict[int, int]]
    _groups: Dict[Tuple[str, int], TableGroup] = field(default_factory=dict, repr=False)

    def keys(self, n: int) -> List[Key]:
        """Index set of C^n: objects (as 1-tuples) for n = 0, composable n-tuples otherwise."""
        if n == 0:
            return [(e,) for e in self.G.objects]
        return composable_tuples(self.G, n)

    def home(self, n: int, t: Key) -> str:
        return t[0] if n == 0 else self.G.cod(t[0])

    def cut_idempotent(self, n: int, t: Key) -> int:
        """1_g1 1_g1g2 ... 1_g1...gn (the identity for n = 0)."""
        M = self.monoids[self.home(n, t)]
        if n == 0:
            return M.one
        x, partial = M.one, None
        for g in t:
            partial = g if partial is None else self.G.compose(partial, g)
            x = M.mul(x, self.idem[partial])
        return x

    def unit_group(self, obj: str, e: int) -> TableGroup:
        key = (obj, e)
        if key not in self._groups:
            self._groups[key] = units(self.monoids[obj], identity=e)
        return self._groups[key]


@dataclass(frozen=True)
class Cochain:
    n: int
    values: Dict[Key, int]

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.n == other.n and self.values == other.values

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.values.items()))))


@dataclass
class CohomologyGroup:
    degree: int
    order: int
    factors: List[int]
    elementary: List[int]
    representatives: List[Cochain]
    cocycles: int
    coboundaries: int
    backend: str
    classifier: Optional[Callable[[Cochain], Tuple[int, ...]]] = field(default=None, repr=False)

    def class_of(self, f: Cochain) -> Tuple[int, ...]:
        """Label of the class of a cocycle; equal labels mean cohomologous."""
        return self.classifier(f)

    def summary(self) -> dict:
        return {"degree": self.degree, "order": self.order, "factors": self.factors,
                "elementary_divisors": self.elementary, "cocycles": self.cocycles,
                "coboundaries": self.coboundaries, "backend": self.backend}


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------

def validate_module(raw: Mapping) -> PartialGModule:
    """
    Build and validate a unital partial G-module on commutative monoids.

    Args:
        raw: `groupoid`, `monoids` (object -> monoid), `idem`, `theta`; ring
            components given under `rings` are read as their multiplicative
            monoids
    """
    G = raw["groupoid"]
    if not isinstance(G, FiniteGroupoid):
        G = validate_groupoid(G)
    comps = raw.get("monoids") or raw.get("rings")
    if comps is None:
        raise InvalidParams("module needs `monoids` (or `rings`)")
    monoids = {}
    for e in G.objects:
        M = comps.get(e)
        if M is None:
            raise InvalidParams(f"no monoid for object {e}", witness=[e])
        if isinstance(M, FiniteCommMonoid):
            monoids[e] = M
        elif hasattr(M, "mul") and hasattr(M, "add") and not isinstance(M, Mapping):
            monoids[e] = multiplicative_monoid(M)
        else:
            monoids[e] = validate_monoid(M)
    idem, theta = parse_action_tables(G, monoids, raw["idem"], raw["theta"])
    check_action_axioms(G, monoids, idem, theta, additive=False)
    return PartialGModule(G, monoids, idem, theta)


def module_from_action(act: PartialAction) -> PartialGModule:
    """Forget addition."""
    monoids = {e: multiplicative_monoid(R) for e, R in act.rings.items()}
    return PartialGModule(act.G, monoids, dict(act.idem), {g: dict(t) for g, t in act.theta.items()})


def cut_unit_group(M: PartialGModule, t: Key) -> TableGroup:
    """Units of the ideal cut out by the tuple t (n = len(t) >= 1)."""
    n = len(t)
    return M.unit_group(M.home(n, t), M.cut_idempotent(n, t))


# ---------------------------------------------------------------------------
# cochain groups
# ---------------------------------------------------------------------------

class CochainGroup:
    """C^n(G, B) under pointwise multiplication, with cyclic coordinates."""

    def __init__(self, M: PartialGModule, n: int):
        if n < 0:
            raise InvalidParams("cochain degree must be >= 0", witness=[n])
        self.M = M
        self.n = n
        self.keys = M.keys(n)
        self.homes = [M.home(n, t) for t in self.keys]
        self.idempotents = [M.cut_idempotent(n, t) for t in self.keys]
        self.groups = [M.unit_group(obj, e) for obj, e in zip(self.homes, self.idempotents)]
        self.slices = []
        offset = 0
        for grp in self.groups:
            width = len(grp.cyclic_orders)
            self.slices.append(slice(offset, offset + width))
            offset += width
        self.moduli = [m for grp in self.groups for m in grp.cyclic_orders]

    @property
    def order(self) -> int:
        return prod(grp.order for grp in self.groups)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    def identity(self) -> Cochain:
        """e_n: the cut idempotent at every tuple."""
        return Cochain(self.n, dict(zip(self.keys, self.idempotents)))

    def mul(self, f: Cochain, h: Cochain) -> Cochain:
        return Cochain(self.n, {t: self.M.monoids[obj].mul(f.values[t], h.values[t])
                                for t, obj in zip(self.keys, self.homes)})

    def inv(self, f: Cochain) -> Cochain:
        out = {}
        for t, grp in zip(self.keys, self.groups):
            out[t] = grp.labels[grp.inverse(grp.index(f.values[t]))]
        return Cochain(self.n, out)

    def contains(self, f: Cochain) -> bool:
        if f.n != self.n or set(f.values) != set(self.keys):
            return False
        return all(f.values[t] in grp._index_of_label for t, grp in zip(self.keys, self.groups))

    def to_coords(self, f: Cochain) -> List[int]:
        out: List[int] = []
        for t, grp in zip(self.keys, self.groups):
            out.extend(grp.coords(grp.index(f.values[t])))
        return out

    def from_coords(self, v: Sequence[int]) -> Cochain:
        out = {}
        for t, grp, sl in zip(self.keys, self.groups, self.slices):
            out[t] = grp.labels[grp.from_coords(list(v[sl]))]
        return Cochain(self.n, out)

    def generator(self, j: int) -> Cochain:
        v = [0] * self.rank
        v[j] = 1
        return self.from_coords(v)

    def random(self, rng: np.random.Generator) -> Cochain:
        return self.from_coords([int(rng.integers(0, m)) for m in self.moduli])

    def all_coords(self) -> Iterator[Tuple[int, ...]]:
        return itertools.product(*[range(m) for m in self.moduli])

    def format(self, f: Cochain) -> Dict[str, str]:
        out = {}
        for t, obj in zip(self.keys, self.homes):
            out[",".join(t)] = self.M.monoids[obj].label(f.values[t])
        return out


def cochain_group_ops(M: PartialGModule, n: int) -> CochainGroup:
    return CochainGroup(M, n)


def delta(M: PartialGModule, f: Cochain) -> Cochain:
    """
    The coboundary of f.

    delta^0(b)(g) = theta_g(1_g^-1 b_d(g)) b_c(g)^-1, and for n >= 1
    delta^n(f)(g_1..g_n+1) = theta_g1(1_g1^-1 f(g_2..g_n+1))
        prod_i f(.., g_i g_i+1, ..)^((-1)^i) f(g_1..g_n)^((-1)^(n+1)),
    each inverse taken in the unit group of its own cut ideal and the result
    multiplied by the target cut idempotent.

    Raises:
        NonHomomorphicDelta: a value falls outside its cut unit group
    """
    G, n = M.G, f.n
    out: Dict[Key, int] = {}

    def inverse(key: Key, x: int) -> int:
        grp = M.unit_group(M.home(n, key), M.cut_idempotent(n, key))
        return grp.labels[grp.inverse(grp.index(x))]

    for t in M.keys(n + 1):
        g1 = t[0]
        C, D = M.monoids[G.cod(g1)], M.monoids[G.dom(g1)]
        e_t = M.cut_idempotent(n + 1, t)
        if n == 0:
            inner = f.values[(G.dom(g1),)]
            tail = inverse((G.cod(g1),), f.values[(G.cod(g1),)])
            acc = C.mul(M.theta[g1][D.mul(M.idem[G.inverse(g1)], inner)], tail)
        else:
            inner = f.values[t[1:]]
            acc = M.theta[g1][D.mul(M.idem[G.inverse(g1)], inner)]
            for i in range(1, n + 1):
                merged = t[:i - 1] + (G.compose(t[i - 1], t[i]),) + t[i + 1:]
                val = f.values[merged]
                acc = C.mul(acc, inverse(merged, val) if i % 2 else val)
            last = f.values[t[:n]]
            acc = C.mul(acc, last if (n + 1) % 2 == 0 else inverse(t[:n], last))
        acc = C.mul(acc, e_t)
        grp = M.unit_group(G.cod(g1), e_t)
        if acc not in grp._index_of_label:
            raise NonHomomorphicDelta("coboundary value leaves its cut unit group",
                                      witness=[list(t), C.label(acc)])
        out[t] = acc
    return Cochain(n + 1, out)


def check_delta_squared(M: PartialGModule, f: Cochain) -> bool:
    """delta(delta(f)) = e_(n+2)."""
    return delta(M, delta(M, f)) == CochainGroup(M, f.n + 2).identity()


# ---------------------------------------------------------------------------
# H^n
# ---------------------------------------------------------------------------

def _delta_matrix(M: PartialGModule, Cn: CochainGroup, Cn1: CochainGroup, samples: int = 4) -> List[List[int]]:
    """Columns: cyclic coordinates of delta(generator_j)."""
    cols = [Cn1.to_coords(delta(M, Cn.generator(j))) for j in range(Cn.rank)]
    A = [[cols[j][i] for j in range(Cn.rank)] for i in range(Cn1.rank)]

    rng = np.random.default_rng(config.RANDOM_SEED)
    for _ in range(samples if Cn.rank else 0):
        f = Cn.random(rng)
        x = Cn.to_coords(f)
        predicted = [sum(A[i][j] * x[j] for j in range(Cn.rank)) % Cn1.moduli[i] for i in range(Cn1.rank)]
        if predicted != Cn1.to_coords(delta(M, f)):
            raise NonHomomorphicDelta(f"delta^{Cn.n} is not a homomorphism in cyclic coordinates",
                                      witness=Cn.format(f))
    return A


def _snf(M: PartialGModule, n: int, max_representatives: int) -> CohomologyGroup:
    Cn = CochainGroup(M, n)
    Cn1 = CochainGroup(M, n + 1)
    k, k1 = Cn.rank, Cn1.rank
    moduli = Cn.moduli

    if k == 0:
        return CohomologyGroup(n, 1, [], [], [Cn.identity()], 1, 1, "snf", classifier=lambda f: ())

    # Z^n lifted to Z^k: x with D x in diag(moduli') Z^k1
    D = _delta_matrix(M, Cn, Cn1)
    if k1:
        stacked = [D[i] + [-Cn1.moduli[i] if c == i else 0 for c in range(k1)] for i in range(k1)]
        kernel = integer_kernel(stacked, k + k1)
        gens = [v[:k] for v in kernel]
    else:
        gens = [[int(i == j) for i in range(k)] for j in range(k)]
    K = Lattice(gens, k)

    # B^n + diag(moduli) Z^k
    image_cols = [[moduli[i] if i == j else 0 for i in range(k)] for j in range(k)]
    if n >= 1:
        Cp = CochainGroup(M, n - 1)
        if Cp.rank:
            Dp = _delta_matrix(M, Cp, Cn)
            image_cols.extend([[Dp[i][j] for i in range(k)] for j in range(Cp.rank)])
    Y_cols = [K.coords(col) for col in image_cols]
    Y = [[Y_cols[j][i] for j in range(len(Y_cols))] for i in range(k)]
    orders, generators, S = quotient_by_columns(Y, k, len(Y_cols))
    if any(o == 0 for o in orders):
        raise NonHomomorphicDelta("coboundaries do not have finite index in the cocycles")

    live = [i for i, o in enumerate(orders) if o > 1]
    h_order = prod(orders[i] for i in live)
    z_order = prod(moduli) // K.index()
    logger.info(f"H^{n} via snf: |Z| = {z_order}, |H| = {h_order}")

    def classify(f: Cochain) -> Tuple[int, ...]:
        c = K.coords(Cn.to_coords(f))
        return tuple(sum(S[i][j] * c[j] for j in range(k)) % orders[i] for i in live)

    reps = []
    for a in itertools.islice(itertools.product(*[range(orders[i]) for i in live]), max_representatives):
        c = [sum(a[t] * generators[i][r] for t, i in enumerate(live)) for r in range(k)]
        x = K.from_coords(c)
        reps.append(Cn.from_coords([x[r] % moduli[r] for r in range(k)]))

    elementary = elementary_divisors([orders[i] for i in live])
    return CohomologyGroup(n, h_order, invariant_factors(elementary), elementary, reps,
                           z_order, z_order // h_order, "snf", classifier=classify)


def _enumerate(M: PartialGModule, n: int, cap: int, progress: bool) -> CohomologyGroup:
    Cn = CochainGroup(M, n)
    if Cn.order > cap:
        raise CapExceeded(f"|C^{n}| = {Cn.order} exceeds the enumeration cap {cap}", witness=[Cn.order, cap])
    e_next = CochainGroup(M, n + 1).identity()
    moduli = Cn.moduli

    cocycles = []
    for x in tqdm(Cn.all_coords(), total=Cn.order, disable=not progress, desc=f"Z^{n}"):
        f = Cn.from_coords(x)
        if delta(M, f) == e_next:
            cocycles.append(tuple(x))

    boundaries = {tuple(0 for _ in moduli)}
    if n >= 1:
        Cp = CochainGroup(M, n - 1)
        if Cp.order > cap:
            raise CapExceeded(f"|C^{n - 1}| = {Cp.order} exceeds the enumeration cap {cap}",
                              witness=[Cp.order, cap])
        for y in tqdm(Cp.all_coords(), total=Cp.order, disable=not progress, desc=f"B^{n}"):
            boundaries.add(tuple(Cn.to_coords(delta(M, Cp.from_coords(y)))))

    def add(a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, moduli))

    def neg(a):
        return tuple((-x) % m for x, m in zip(a, moduli))

    def value_key(x):
        f = Cn.from_coords(x)
        return tuple(f.values[t] for t in Cn.keys)

    coset_of: Dict[Tuple[int, ...], int] = {}
    reps: List[Tuple[int, ...]] = []
    for x in sorted(cocycles, key=value_key):
        if x in coset_of:
            continue
        label = len(reps)
        reps.append(x)
        for b in boundaries:
            coset_of[add(x, b)] = label

    zero = tuple(0 for _ in moduli)
    element_orders = []
    for r in reps:
        k, y = 1, r
        while coset_of[y] != coset_of[zero]:
            y = add(y, r)
            k += 1
        element_orders.append(k)
    h_order = len(reps)
    elementary: List[int] = []
    for p in sorted({q for o in element_orders for q in primefactors(o)} | set(primefactors(h_order))):
        a = 0
        while h_order % (p ** (a + 1)) == 0:
            a += 1
        counts = [sum(1 for o in element_orders if (p ** j) % o == 0) for j in range(a + 1)]
        elementary.extend(p ** e for e in type_from_torsion_counts(p, counts))
    elementary.sort()
    logger.info(f"H^{n} via enumeration: |Z| = {len(cocycles)}, |B| = {len(boundaries)}, |H| = {h_order}")

    def classify(f: Cochain) -> Tuple[int, ...]:
        return (coset_of[tuple(Cn.to_coords(f))],)

    return CohomologyGroup(n, h_order, invariant_factors(elementary), elementary,
                           [Cn.from_coords(r) for r in reps], len(cocycles), len(boundaries),
                           "enumerate", classifier=classify)


def cohomology(M: PartialGModule, n: int, backend: Optional[str] = None, cap: Optional[int] = None,
               progress: bool = False, max_representatives: Optional[int] = None) -> CohomologyGroup:
    """
    H^n(G, B) = Z^n / B^n.

    Args:
        backend: "enumerate" or "snf" (config.COHOMOLOGY_BACKEND by default)
        cap: bound on |C^n| for enumeration (config.ENUMERATION_CAP)

    Raises:
        CapExceeded, NonHomomorphicDelta, InvalidParams
    """
    backend = backend or config.COHOMOLOGY_BACKEND
    cap = config.ENUMERATION_CAP if cap is None else cap
    if n < 0:
        raise InvalidParams("degree must be >= 0", witness=[n])
    if backend == "enumerate":
        return _enumerate(M, n, cap, progress)
    if backend == "snf":
        return _snf(M, n, max_representatives or cap)
    raise InvalidParams(f"unknown backend {backend!r}", witness=[backend])


def check_h0_condition(M: PartialGModule, b: Cochain) -> bool:
    """theta_g(1_g^-1 b_d(g)) = 1_g b_c(g) for every g."""
    G = M.G
    for g in G.ids:
        C, D = M.monoids[G.cod(g)], M.monoids[G.dom(g)]
        left = M.theta[g][D.mul(M.idem[G.inverse(g)], b.values[(G.dom(g),)])]
        if left != C.mul(M.idem[g], b.values[(G.cod(g),)]):
            return False
    return True


def classical_h2_oracle(m: int, k: int) -> int:
    """|H^2(Z_m, Z_k)| for the trivial action, by brute force over all 2-cochains."""
    pairs = [(a, b) for a in range(m) for b in range(m)]
    if k ** len(pairs) > config.ENUMERATION_CAP:
        raise CapExceeded("classical oracle search space too large", witness=[m, k])
    cocycles = 0
    for values in itertools.product(range(k), repeat=len(pairs)):
        f = dict(zip(pairs, values))
        if all((f[(b, c)] - f[((a + b) % m, c)] + f[(a, (b + c) % m)] - f[(a, b)]) % k == 0
               for a in range(m) for b in range(m) for c in range(m)):
            cocycles += 1
    boundaries = set()
    for c in itertools.product(range(k), repeat=m):
        boundaries.add(tuple((c[b] - c[(a + b) % m] + c[a]) % k for a, b in pairs))
    return cocycles // len(boundaries)
