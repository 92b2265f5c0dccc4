"""
Leavitt path algebras of finite acyclic graphs.

For an acyclic graph every element of L(E) is a combination of monomials
alpha beta* with alpha, beta real paths ending at the same sink, and these
monomials multiply like matrix units: (alpha beta*)(gamma delta*) is
alpha delta* when beta = gamma and 0 otherwise. The algebra is graded by the
groupoid of the graph through deg(alpha beta*) = (s(alpha), s(beta)).
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from config import config
from src.algebra import (
    EpsilonSystem,
    GradedAlgebra,
    compute_epsilons,
    epsilon_report,
    is_strongly_graded,
    validate_algebra,
    validate_grading,
)
from src.errors import CyclicGraph, InvalidParams, NotPrime
from src.groupoid import graph_groupoid
from src.linalg import in_span, is_prime
from src.report import CheckResult
from utils.async_helper import run_checks

logger = logging.getLogger('grograde.leavitt')


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class Graph:
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]

    def s(self, e: str) -> str:
        return self._edge(e).src

    def r(self, e: str) -> str:
        return self._edge(e).dst

    def _edge(self, e: str) -> Edge:
        for edge in self.edges:
            if edge.id == e:
                return edge
        raise InvalidParams(f"unknown edge {e}", witness=[e])

    def out_edges(self, v: str) -> List[Edge]:
        return [edge for edge in self.edges if edge.src == v]

    @property
    def sinks(self) -> List[str]:
        return [v for v in self.vertices if not self.out_edges(v)]

    def to_raw(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in self.edges]}


@dataclass(frozen=True, order=True)
class Path:
    """A real path: its start vertex and its edges (empty for a vertex)."""
    start: str
    edges: Tuple[str, ...] = ()

    def name(self) -> str:
        return "".join(self.edges) if self.edges else self.start

    def is_prefix_of(self, other: "Path") -> bool:
        return self.start == other.start and other.edges[:len(self.edges)] == self.edges


def validate_graph(raw: Mapping) -> Graph:
    """
    Build a Graph and reject directed cycles.

    Raises:
        InvalidParams, CyclicGraph
    """
    vertices = tuple(str(v) for v in raw.get("vertices", []))
    if len(set(vertices)) != len(vertices):
        raise InvalidParams("duplicate vertices")
    edges = []
    for e in raw.get("edges", []):
        edge = Edge(str(e["id"]), str(e["src"]), str(e["dst"]))
        if edge.src not in vertices or edge.dst not in vertices:
            raise InvalidParams(f"edge {edge.id} has an unknown endpoint", witness=[edge.id])
        edges.append(edge)
    ids = [e.id for e in edges]
    if len(set(ids)) != len(ids) or set(ids) & set(vertices):
        raise InvalidParams("edge ids must be distinct from each other and from vertices")

    sorter = TopologicalSorter({v: set() for v in vertices})
    for edge in edges:
        sorter.add(edge.dst, edge.src)
    try:
        sorter.prepare()
    except CycleError as e:
        raise CyclicGraph("graph has a directed cycle", witness=list(e.args[1]))
    return Graph(vertices, tuple(edges))


def paths_from(E: Graph, v: str) -> List[Path]:
    """All real paths starting at v (including v itself)."""
    out = []

    def walk(path: Path, at: str):
        out.append(path)
        for edge in E.out_edges(at):
            walk(Path(path.start, path.edges + (edge.id,)), edge.dst)

    walk(Path(v), v)
    return out


def end_of(E: Graph, path: Path) -> str:
    return E.r(path.edges[-1]) if path.edges else path.start


def monomial_name(alpha: Path, beta: Path) -> str:
    if not beta.edges:
        return alpha.name()
    if not alpha.edges:
        return f"{beta.name()}*"
    return f"{alpha.name()}{beta.name()}*"


@dataclass(frozen=True)
class LPAElement:
    """Coefficients on sink-ended monomials alpha beta*, zero terms pruned."""
    terms: Tuple[Tuple[Tuple[Path, Path], int], ...]
    p: int

    def __str__(self):
        parts = []
        for (a, b), c in self.terms:
            parts.append(monomial_name(a, b) if c == 1 else f"{c} {monomial_name(a, b)}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True, eq=False)
class LeavittAlgebra:
    E: Graph
    p: int
    paths: Tuple[Path, ...]
    basis: Tuple[Tuple[Path, Path], ...]
    graded: GradedAlgebra

    @cached_property
    def _index(self) -> Dict[Tuple[Path, Path], int]:
        return {m: i for i, m in enumerate(self.basis)}

    def to_element(self, v) -> LPAElement:
        v = np.asarray(v) % self.p
        return LPAElement(tuple((self.basis[i], int(v[i])) for i in np.nonzero(v)[0]), self.p)

    def to_vector(self, x: LPAElement) -> np.ndarray:
        v = np.zeros(len(self.basis), dtype=np.int64)
        for m, c in x.terms:
            v[self._index[m]] = (v[self._index[m]] + c) % self.p
        return v

    def format(self, v) -> str:
        return str(self.to_element(v))

    def monomial(self, alpha: Path, beta: Path) -> np.ndarray:
        v = np.zeros(len(self.basis), dtype=np.int64)
        v[self._index[(alpha, beta)]] = 1
        return v

    def sink_paths_from(self, v: str) -> List[Path]:
        return [a for a in self.paths if a.start == v]


def lpa_build(E: Graph, p: int) -> LeavittAlgebra:
    """
    L(E) over Z/p on the sink-ended monomial basis, graded over the graph
    groupoid. dim = sum over sinks w of (number of paths ending at w)^2.

    Raises:
        CyclicGraph, NotPrime
    """
    if not is_prime(int(p)):
        raise NotPrime(f"{p} is not prime", witness=[p])
    E = validate_graph(E.to_raw()) if isinstance(E, Graph) else validate_graph(E)
    sinks = set(E.sinks)
    paths = sorted((a for v in E.vertices for a in paths_from(E, v) if end_of(E, a) in sinks),
                   key=lambda a: (a.name(), a.start))
    basis = [(a, b) for a in paths for b in paths if end_of(E, a) == end_of(E, b)]
    basis.sort(key=lambda m: (m[0].name(), m[1].name()))
    index = {m: i for i, m in enumerate(basis)}
    dim = len(basis)

    sc = np.zeros((dim, dim, dim), dtype=np.int64)
    for i, (a, b) in enumerate(basis):
        for j, (c, d) in enumerate(basis):
            if b == c:
                sc[i, j, index[(a, d)]] = 1
    one = np.zeros(dim, dtype=np.int64)
    for a in paths:
        one[index[(a, a)]] = 1

    names = [monomial_name(a, b) for a, b in basis]
    alg = validate_algebra(p, dim, sc, one, names)
    G = graph_groupoid(E)
    between = {(G.cod(g), G.dom(g)): g for g in G.ids}
    deg = [between[(a.start, b.start)] for a, b in basis]
    graded = validate_grading(alg, G, deg)
    logger.info(f"Leavitt path algebra of dimension {dim} over Z/{p}")
    return LeavittAlgebra(E, int(p), tuple(paths), tuple(basis), graded)


# ---------------------------------------------------------------------------
# generators, involution
# ---------------------------------------------------------------------------

def star(L: LeavittAlgebra, v) -> np.ndarray:
    """The involution alpha beta* -> beta alpha*."""
    v = np.asarray(v)
    out = np.zeros_like(v)
    for i, (a, b) in enumerate(L.basis):
        out[L._index[(b, a)]] = v[i]
    return out


def path_projection(L: LeavittAlgebra, alpha: Path) -> np.ndarray:
    """alpha alpha* in normal form: sum over sink-ended extensions alpha gamma."""
    out = np.zeros(len(L.basis), dtype=np.int64)
    for a in L.paths:
        if alpha.is_prefix_of(a):
            out += L.monomial(a, a)
    return out % L.p


def expand_generator(L: LeavittAlgebra, gen: str) -> np.ndarray:
    """
    Normal form of a vertex v, an edge f or a ghost edge f*:
    v = sum alpha alpha*, f = sum (f alpha) alpha*, f* = sum alpha (f alpha)*,
    the sums over sink-ended alpha starting at v, resp. r(f).
    """
    E = L.E
    ghost = gen.endswith("*")
    name = gen[:-1] if ghost else gen
    if name in E.vertices:
        return path_projection(L, Path(name))
    edge = E._edge(name)
    out = np.zeros(len(L.basis), dtype=np.int64)
    for a in L.sink_paths_from(edge.dst):
        fa = Path(edge.src, (edge.id,) + a.edges)
        out += L.monomial(fa, a)
    out %= L.p
    return star(L, out) if ghost else out


def word(L: LeavittAlgebra, gens: Sequence[str]) -> np.ndarray:
    """Product of generators, e.g. ["f1*", "f1"]."""
    out = L.graded.alg.one.copy()
    for gen in gens:
        out = L.graded.alg.mul(out, expand_generator(L, gen))
    return out


def check_relations(L: LeavittAlgebra) -> CheckResult:
    """The defining relations hold for the generator normal forms."""
    E, mul = L.E, L.graded.alg.mul
    checked = 0
    for u in E.vertices:
        for v in E.vertices:
            checked += 1
            want = expand_generator(L, u) if u == v else np.zeros(len(L.basis), dtype=np.int64)
            if not np.array_equal(mul(expand_generator(L, u), expand_generator(L, v)), want):
                return CheckResult(name="relations", passed=False, checked=checked, witness=["uv", u, v])
    for f in E.edges:
        checked += 1
        fv = expand_generator(L, f.id)
        if not (np.array_equal(mul(expand_generator(L, f.src), fv), fv)
                and np.array_equal(mul(fv, expand_generator(L, f.dst)), fv)):
            return CheckResult(name="relations", passed=False, checked=checked, witness=["s(f)f = f r(f)", f.id])
        for g in E.edges:
            checked += 1
            want = expand_generator(L, f.dst) if f == g else np.zeros(len(L.basis), dtype=np.int64)
            if not np.array_equal(word(L, [f"{f.id}*", g.id]), want):
                return CheckResult(name="relations", passed=False, checked=checked, witness=["f*g", f.id, g.id])
    for v in E.vertices:
        out = E.out_edges(v)
        if not out:
            continue
        checked += 1
        total = sum(word(L, [f.id, f"{f.id}*"]) for f in out) % L.p
        if not np.array_equal(total, expand_generator(L, v)):
            return CheckResult(name="relations", passed=False, checked=checked, witness=["v = sum ff*", v])
    return CheckResult(name="relations", passed=True, checked=checked)


# ---------------------------------------------------------------------------
# epsilons
# ---------------------------------------------------------------------------

def _morphism_ends(S: GradedAlgebra, g: str) -> Tuple[str, str]:
    """(u, v) for the morphism g: v -> u of the graph groupoid."""
    return S.G.cod(g), S.G.dom(g)


def lpa_epsilon(L: LeavittAlgebra, g: str) -> np.ndarray:
    """
    epsilon for the morphism g = (u, v): u itself when u lies in
    span(S_(u,v) S_(v,u)), otherwise the sum of alpha alpha* over the
    prefix-minimal real paths alpha from u that meet some path from v at a
    common range.
    """
    S = L.graded
    u, v = _morphism_ends(S, g)
    u_elem = expand_generator(L, u)
    if in_span(S.product_span(g, S.G.inverse(g)), u_elem, L.p):
        return u_elem
    E = L.E
    from_v_ends = {end_of(E, b) for b in paths_from(E, v)}
    candidates = [a for a in paths_from(E, u) if end_of(E, a) in from_v_ends]
    minimal = [a for a in candidates if not any(b != a and b.is_prefix_of(a) for b in candidates)]
    out = np.zeros(len(L.basis), dtype=np.int64)
    for a in minimal:
        out += path_projection(L, a)
    return out % L.p


def lpa_epsilons(L: LeavittAlgebra, threads: int = 1) -> EpsilonSystem:
    jobs = {g: (lambda g=g: lpa_epsilon(L, g)) for g in L.graded.G.ids}
    return EpsilonSystem(run_checks(jobs, threads))


def lpa_report(E: Graph, p: int, threads: int = 1) -> Dict[str, object]:
    """
    Component dimensions, product spans, epsilons from both constructions,
    the epsilon-strong verdict and the strong verdict with its witness.
    """
    L = lpa_build(E, p)
    S = L.graded
    G = S.G
    eps_result, eps = epsilon_report(S)
    constructed = lpa_epsilons(L, threads)
    agree = eps is not None and all(np.array_equal(eps[g], constructed[g]) for g in G.ids)
    self_adjoint = all(np.array_equal(star(L, constructed[g]), constructed[g]) for g in G.ids)
    strong = is_strongly_graded(S)
    products = {}
    for g in G.ids:
        products[g] = [L.format(x) for x in S.product_span(g, G.inverse(g))]
    return {
        "dimension": S.dim,
        "components": {g: len(S.component(g)) for g in G.ids},
        "products": products,
        "epsilons": {g: L.format(constructed[g]) for g in G.ids},
        "epsilon_strong": eps_result,
        "epsilons_agree": bool(agree),
        "epsilons_self_adjoint": bool(self_adjoint),
        "strong": strong,
        "algebra": L,
    }


# ---------------------------------------------------------------------------
# graph enumeration for sweeps
# ---------------------------------------------------------------------------

def enumerate_acyclic_graphs(max_vertices: int = 5, max_edges: int = 6, sample: Optional[int] = 200,
                             seed: Optional[int] = None) -> List[Graph]:
    """
    Acyclic multigraphs for sweeps. With `sample` a fixed-seed random sample
    (random vertex order, edges drawn with repetition along it, so parallel
    edges occur); with sample=None every multigraph on v1..vn with at most
    `max_edges` edges, all going from lower to higher index.
    """
    if sample is None:
        out = []
        for n in range(1, max_vertices + 1):
            vertices = tuple(f"v{i}" for i in range(1, n + 1))
            pairs = list(itertools.combinations(range(n), 2))
            for k in range(max_edges + 1 if pairs else 1):
                for chosen in itertools.combinations_with_replacement(pairs, k):
                    edges = tuple(Edge(f"f{j + 1}", vertices[a], vertices[b]) for j, (a, b) in enumerate(chosen))
                    out.append(Graph(vertices, edges))
        return out

    rng = np.random.default_rng(config.RANDOM_SEED if seed is None else seed)
    out = []
    for _ in range(sample):
        n = int(rng.integers(1, max_vertices + 1))
        vertices = tuple(f"v{i}" for i in range(1, n + 1))
        order = rng.permutation(n)
        pairs = [(int(order[a]), int(order[b])) for a, b in itertools.combinations(range(n), 2)]
        k = int(rng.integers(0, max_edges + 1)) if pairs else 0
        chosen = sorted(rng.choice(len(pairs), size=k, replace=True).tolist()) if k else []
        edges = tuple(Edge(f"f{j + 1}", vertices[pairs[c][0]], vertices[pairs[c][1]])
                      for j, c in enumerate(chosen))
        out.append(Graph(vertices, edges))
    return out


def export_algebra(L: LeavittAlgebra) -> dict:
    """The algebra file form of L(E), degrees included, with its groupoid."""
    raw = L.graded.alg.to_raw()
    raw["deg"] = {str(i): g for i, g in enumerate(L.graded.deg)}
    raw["groupoid"] = L.graded.G.to_raw()
    return raw
