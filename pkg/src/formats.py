"""
Input file formats.

Every file is JSON checked against a pydantic schema before the algebraic
validators run. Files may reference other files (a groupoid, a component
ring) by a path relative to the referencing file.
"""
from __future__ import annotations

import json
import logging
import os
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.algebra import GradedAlgebra, StructAlgebra, validate_algebra, validate_grading
from src.cohomology import validate_module
from src.errors import InvalidParams
from src.finalg import FiniteCommMonoid, FiniteCommRing, validate_monoid, validate_ring
from src.groupoid import FiniteGroupoid, standard_constructions, validate_groupoid
from src.leavitt import Graph, validate_graph
from src.skew import validate_action

logger = logging.getLogger('grograde.formats')


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class MorphismEntry(_Strict):
    id: str
    dom: str
    cod: str


class StandardSpec(_Strict):
    kind: str
    m: Optional[int] = None
    I: Optional[List[str]] = None

    def params(self) -> Dict[str, Any]:
        return {k: v for k, v in (("m", self.m), ("I", self.I)) if v is not None}


class GroupoidFile(_Strict):
    objects: Optional[List[str]] = None
    morphisms: Optional[List[MorphismEntry]] = None
    comp: Optional[List[List[str]]] = None
    inv: Optional[List[List[str]]] = None
    identities: Optional[Dict[str, str]] = None
    standard: Optional[StandardSpec] = None

    @model_validator(mode="after")
    def _one_form(self):
        explicit = [self.objects, self.morphisms, self.comp, self.inv, self.identities]
        if self.standard is not None:
            if any(x is not None for x in explicit):
                raise ValueError("give either explicit tables or `standard`, not both")
        elif any(x is None for x in explicit):
            raise ValueError("explicit groupoids need objects, morphisms, comp, inv and identities")
        return self

    def build(self) -> FiniteGroupoid:
        if self.standard is not None:
            return standard_constructions(self.standard.kind, self.standard.params())
        raw = self.model_dump()
        raw.pop("standard")
        return validate_groupoid(raw)


class RingFile(_Strict):
    elems: List[str]
    mul: List[List[str]]
    one: str
    add: Optional[List[List[str]]] = None
    zero: Optional[str] = None

    def build(self) -> Union[FiniteCommRing, FiniteCommMonoid]:
        if self.add is None:
            return validate_monoid(self.model_dump())
        return validate_ring(self.model_dump())


class AlgebraFile(_Strict):
    p: int
    dim: int
    sc: List[List[int]]
    one: List[int]
    names: Optional[List[str]] = None
    deg: Optional[Dict[str, str]] = None
    groupoid: Optional[Union[str, GroupoidFile]] = None


class ActionFile(_Strict):
    groupoid: Union[str, GroupoidFile]
    rings: Optional[Dict[str, Union[str, RingFile]]] = None
    monoids: Optional[Dict[str, Union[str, RingFile]]] = None
    idem: Dict[str, str]
    theta: Dict[str, List[List[str]]]

    @model_validator(mode="after")
    def _components(self):
        if (self.rings is None) == (self.monoids is None):
            raise ValueError("give exactly one of `rings` or `monoids`")
        return self


class EdgeEntry(_Strict):
    id: str
    src: str
    dst: str


class GraphFile(_Strict):
    vertices: List[str]
    edges: List[EdgeEntry] = Field(default_factory=list)


# ---------------------------------------------------------------------------
# loaders
# ---------------------------------------------------------------------------

def read_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def write_json(path: str, data: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")


def _resolve(base: str, ref: str) -> str:
    return ref if os.path.isabs(ref) else os.path.join(os.path.dirname(os.path.abspath(base)), ref)


def _groupoid_from(base: str, spec: Union[str, GroupoidFile]) -> FiniteGroupoid:
    if isinstance(spec, str):
        return load_groupoid(_resolve(base, spec))
    return spec.build()


def load_groupoid(path: str) -> FiniteGroupoid:
    return GroupoidFile.model_validate(read_json(path)).build()


def load_ring(path: str) -> Union[FiniteCommRing, FiniteCommMonoid]:
    return RingFile.model_validate(read_json(path)).build()


def load_algebra(path: str, groupoid_path: Optional[str] = None) -> Union[StructAlgebra, GradedAlgebra]:
    """
    The algebra in `path`; graded when a groupoid is available (from
    `groupoid_path` or the file's own `groupoid` entry) together with `deg`.
    """
    spec = AlgebraFile.model_validate(read_json(path))
    alg = validate_algebra(spec.p, spec.dim, spec.sc, spec.one, spec.names or ())
    if groupoid_path is not None:
        G = load_groupoid(groupoid_path)
    elif spec.groupoid is not None:
        G = _groupoid_from(path, spec.groupoid)
    else:
        return alg
    if spec.deg is None:
        raise InvalidParams("a graded algebra file needs a `deg` map")
    return validate_grading(alg, G, spec.deg)


def _components(path: str, entries: Dict[str, Union[str, RingFile]]) -> Dict[str, Any]:
    out = {}
    for obj, entry in entries.items():
        out[obj] = load_ring(_resolve(path, entry)) if isinstance(entry, str) else entry.build()
    return out


def load_action_raw(path: str) -> Dict[str, Any]:
    spec = ActionFile.model_validate(read_json(path))
    raw: Dict[str, Any] = {
        "groupoid": _groupoid_from(path, spec.groupoid),
        "idem": spec.idem,
        "theta": {g: [tuple(pair) for pair in pairs] for g, pairs in spec.theta.items()},
    }
    if spec.rings is not None:
        raw["rings"] = _components(path, spec.rings)
    else:
        raw["monoids"] = _components(path, spec.monoids)
    return raw


def load_action(path: str):
    raw = load_action_raw(path)
    if "rings" not in raw:
        raise InvalidParams("a ring action needs `rings`")
    for e, R in raw["rings"].items():
        if not isinstance(R, FiniteCommRing):
            raise InvalidParams(f"component {e} has no addition table", witness=[e])
    return validate_action(raw)


def load_module(path: str):
    return validate_module(load_action_raw(path))


def load_graph(path: str) -> Graph:
    spec = GraphFile.model_validate(read_json(path))
    return validate_graph(spec.model_dump())
