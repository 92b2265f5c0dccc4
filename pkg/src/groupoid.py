"""
Finite groupoids.

A groupoid is stored with explicit tables: objects, morphisms (id, dom, cod),
the composition of every composable pair, inverses and identities. Nothing is
implied, so files round-trip exactly. Ids are opaque strings and every
enumeration is in lexicographic order of ids.

Composition is written gh for d(g) = c(h), i.e. h first, then g.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.errors import (
    BadIdentity,
    BadInverse,
    InvalidParams,
    MissingComposition,
    NonAssociative,
)

logger = logging.getLogger('grograde.groupoid')

ComposableTuple = Tuple[str, ...]


@dataclass(frozen=True)
class Morphism:
    id: str
    dom: str
    cod: str


@dataclass(frozen=True)
class FiniteGroupoid:
    objects: Tuple[str, ...]
    morphisms: Tuple[Morphism, ...]
    comp: Dict[Tuple[str, str], str] = field(repr=False)
    inv: Dict[str, str] = field(repr=False)
    identity: Dict[str, str] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {m.id: m for m in self.morphisms})

    # lookups
    @property
    def ids(self) -> List[str]:
        return [m.id for m in self.morphisms]

    @property
    def identities(self) -> List[str]:
        return [self.identity[e] for e in self.objects]

    def morphism(self, g: str) -> Morphism:
        return self._by_id[g]

    def dom(self, g: str) -> str:
        return self._by_id[g].dom

    def cod(self, g: str) -> str:
        return self._by_id[g].cod

    def composable(self, g: str, h: str) -> bool:
        return self.dom(g) == self.cod(h)

    def compose(self, g: str, h: str) -> Optional[str]:
        """gh, or None when d(g) != c(h)."""
        return self.comp.get((g, h))

    def inverse(self, g: str) -> str:
        return self.inv[g]

    def is_identity(self, g: str) -> bool:
        return self.identity.get(self.dom(g)) == g

    def starting_at(self, e: str) -> List[str]:
        return [m.id for m in self.morphisms if m.dom == e]

    def ending_at(self, e: str) -> List[str]:
        return [m.id for m in self.morphisms if m.cod == e]

    def __len__(self):
        return len(self.morphisms)

    def to_raw(self) -> dict:
        """Plain description in the groupoid file layout."""
        return {
            "objects": list(self.objects),
            "morphisms": [{"id": m.id, "dom": m.dom, "cod": m.cod} for m in self.morphisms],
            "comp": [[g, h, gh] for (g, h), gh in sorted(self.comp.items())],
            "inv": [[g, self.inv[g]] for g in self.ids],
            "identities": {e: self.identity[e] for e in self.objects},
        }


def validate_groupoid(raw: Mapping) -> FiniteGroupoid:
    """
    Build a FiniteGroupoid from a raw description and check every axiom
    exhaustively.

    Args:
        raw: mapping with keys objects, morphisms (id/dom/cod), comp
            ([g, h, gh] triples), inv ([g, g^-1] pairs), identities
            (object -> morphism)

    Raises:
        InvalidParams, MissingComposition, NonAssociative, BadInverse,
        BadIdentity
    """
    objects = sorted(str(o) for o in raw.get("objects", []))
    if len(set(objects)) != len(objects):
        raise InvalidParams("duplicate object ids")
    object_set = set(objects)

    morphisms = []
    for m in raw.get("morphisms", []):
        mid, dom, cod = str(m["id"]), str(m["dom"]), str(m["cod"])
        if dom not in object_set or cod not in object_set:
            raise InvalidParams(f"morphism {mid} has an unknown endpoint", witness=[mid, dom, cod])
        morphisms.append(Morphism(mid, dom, cod))
    morphisms.sort(key=lambda m: m.id)
    by_id = {m.id: m for m in morphisms}
    if len(by_id) != len(morphisms):
        raise InvalidParams("duplicate morphism ids")

    comp: Dict[Tuple[str, str], str] = {}
    for entry in raw.get("comp", []):
        g, h, gh = (str(x) for x in entry)
        for x in (g, h, gh):
            if x not in by_id:
                raise InvalidParams(f"composition mentions unknown morphism {x}", witness=[g, h, gh])
        if by_id[g].dom != by_id[h].cod:
            raise InvalidParams(f"composition given for non-composable pair ({g}, {h})", witness=[g, h])
        if comp.get((g, h), gh) != gh:
            raise InvalidParams(f"conflicting products for ({g}, {h})", witness=[g, h])
        comp[(g, h)] = gh

    identity = {str(e): str(i) for e, i in dict(raw.get("identities", {})).items()}
    for e in objects:
        i = identity.get(e)
        if i is None or i not in by_id:
            raise BadIdentity(f"object {e} has no identity morphism", witness=[e])
        if by_id[i].dom != e or by_id[i].cod != e:
            raise BadIdentity(f"identity {i} of {e} is not an endomorphism of {e}", witness=[e, i])

    # every composable pair must have a product with the right endpoints
    for g in morphisms:
        for h in morphisms:
            if g.dom != h.cod:
                continue
            gh = comp.get((g.id, h.id))
            if gh is None:
                raise MissingComposition(f"composable pair ({g.id}, {h.id}) has no product",
                                         witness=[g.id, h.id])
            if by_id[gh].dom != h.dom or by_id[gh].cod != g.cod:
                raise InvalidParams(f"product {gh} of ({g.id}, {h.id}) has wrong endpoints",
                                    witness=[g.id, h.id, gh])

    for g in morphisms:
        if comp[(identity[g.cod], g.id)] != g.id or comp[(g.id, identity[g.dom])] != g.id:
            raise BadIdentity(f"identities do not act neutrally on {g.id}", witness=[g.id])

    inv = {str(a): str(b) for a, b in raw.get("inv", [])}
    for g in morphisms:
        gi = inv.get(g.id)
        if gi is None or gi not in by_id:
            raise BadInverse(f"{g.id} has no inverse", witness=[g.id])
        if by_id[gi].dom != g.cod or by_id[gi].cod != g.dom:
            raise BadInverse(f"inverse {gi} of {g.id} has wrong endpoints", witness=[g.id, gi])
        if comp[(g.id, gi)] != identity[g.cod] or comp[(gi, g.id)] != identity[g.dom]:
            raise BadInverse(f"{gi} is not a two-sided inverse of {g.id}", witness=[g.id, gi])

    ending = {e: [m for m in morphisms if m.cod == e] for e in objects}
    for g in morphisms:
        for h in ending[g.dom]:
            gh = comp[(g.id, h.id)]
            for k in ending[h.dom]:
                if comp[(gh, k.id)] != comp[(g.id, comp[(h.id, k.id)])]:
                    raise NonAssociative(f"(gh)k != g(hk) for ({g.id}, {h.id}, {k.id})",
                                         witness=[g.id, h.id, k.id])

    G = FiniteGroupoid(tuple(objects), tuple(morphisms), comp, inv, identity)
    logger.debug(f"validated groupoid with {len(objects)} objects and {len(morphisms)} morphisms")
    return G


def composable_tuples(G: FiniteGroupoid, n: int) -> List[ComposableTuple]:
    """All (g_1, ..., g_n) with d(g_i) = c(g_{i+1}), lexicographic in ids."""
    if n < 1:
        raise InvalidParams("arity must be at least 1", witness=[n])
    ids = G.ids
    ending = {e: sorted(G.ending_at(e)) for e in G.objects}
    tuples: List[ComposableTuple] = [(g,) for g in ids]
    for _ in range(n - 1):
        tuples = [t + (h,) for t in tuples for h in ending[G.dom(t[-1])]]
    return tuples


def support_subgroupoid(G: FiniteGroupoid, live: Iterable[str]) -> FiniteGroupoid:
    """Full subgroupoid on the objects in `live`."""
    live = set(live)
    unknown = live - set(G.objects)
    if unknown:
        raise InvalidParams("live objects must be objects of G", witness=sorted(unknown))
    objects = tuple(e for e in G.objects if e in live)
    morphisms = tuple(m for m in G.morphisms if m.dom in live and m.cod in live)
    keep = {m.id for m in morphisms}
    comp = {(g, h): gh for (g, h), gh in G.comp.items() if g in keep and h in keep}
    inv = {g: G.inv[g] for g in keep}
    identity = {e: G.identity[e] for e in objects}
    return FiniteGroupoid(objects, morphisms, comp, inv, identity)


def graph_groupoid(E) -> FiniteGroupoid:
    """
    Groupoid of a directed graph: objects are vertices and (u, v) is a
    morphism whenever u and v are joined by a walk of edges, ghost edges and
    vertices, i.e. lie in the same weakly connected component.
    """
    parent = {v: v for v in E.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for edge in E.edges:
        a, b = find(edge.src), find(edge.dst)
        if a != b:
            parent[max(a, b)] = min(a, b)

    components: Dict[str, List[str]] = {}
    for v in E.vertices:
        components.setdefault(find(v), []).append(v)

    raw = {"objects": list(E.vertices), "morphisms": [], "comp": [], "inv": [], "identities": {}}
    for members in components.values():
        _add_pair_block(raw, members)
    return validate_groupoid(raw)


def _pair_id(u: str, v: str) -> str:
    return f"({u},{v})"


def _add_pair_block(raw: dict, members: Sequence[str]) -> None:
    for u in members:
        raw["identities"][u] = _pair_id(u, u)
        for v in members:
            raw["morphisms"].append({"id": _pair_id(u, v), "dom": v, "cod": u})
            raw["inv"].append([_pair_id(u, v), _pair_id(v, u)])
            for w in members:
                raw["comp"].append([_pair_id(u, v), _pair_id(v, w), _pair_id(u, w)])


def cyclic_name(a: int) -> str:
    """Name of g^a in a cyclic group: e, g, g2, g3, ..."""
    if a == 0:
        return "e"
    if a == 1:
        return "g"
    return f"g{a}"


def standard_constructions(kind: str, params: Mapping) -> FiniteGroupoid:
    """
    Standard groupoids.

    kinds:
        one_object_group  params {"m": order}             cyclic group Z_m on object "*"
        pair              params {"I": [...]}             pair groupoid I x I
        matrix            params {"I": [...], "m": order} I x Z_m x I with
                          (i, g, j)(j, h, k) = (i, gh, k)
    """
    if kind == "one_object_group":
        m = _order_param(params)
        raw = {"objects": ["*"], "morphisms": [], "comp": [], "inv": [], "identities": {"*": "e"}}
        for a in range(m):
            raw["morphisms"].append({"id": cyclic_name(a), "dom": "*", "cod": "*"})
            raw["inv"].append([cyclic_name(a), cyclic_name((-a) % m)])
            for b in range(m):
                raw["comp"].append([cyclic_name(a), cyclic_name(b), cyclic_name((a + b) % m)])
        return validate_groupoid(raw)

    if kind == "pair":
        index = _index_param(params)
        raw = {"objects": index, "morphisms": [], "comp": [], "inv": [], "identities": {}}
        _add_pair_block(raw, index)
        return validate_groupoid(raw)

    if kind == "matrix":
        index = _index_param(params)
        m = _order_param(params)

        def mid(i, a, j):
            return f"({i},{cyclic_name(a)},{j})"

        raw = {"objects": index, "morphisms": [], "comp": [], "inv": [], "identities": {}}
        for i in index:
            raw["identities"][i] = mid(i, 0, i)
            for j in index:
                for a in range(m):
                    raw["morphisms"].append({"id": mid(i, a, j), "dom": j, "cod": i})
                    raw["inv"].append([mid(i, a, j), mid(j, (-a) % m, i)])
                    for k in index:
                        for b in range(m):
                            raw["comp"].append([mid(i, a, j), mid(j, b, k), mid(i, (a + b) % m, k)])
        return validate_groupoid(raw)

    raise InvalidParams(f"unknown groupoid construction {kind!r}", witness=[kind])


def _order_param(params: Mapping) -> int:
    m = params.get("m")
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise InvalidParams("cyclic order m must be a positive integer", witness=[m])
    return m


def _index_param(params: Mapping) -> List[str]:
    index = [str(i) for i in params.get("I", [])]
    if not index or len(set(index)) != len(index):
        raise InvalidParams("index set I must be non-empty without repeats", witness=index)
    return index
