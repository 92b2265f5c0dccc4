"""
Example instances for development, tests and acceptance runs.

The same instances ship as JSON files next to this module for the CLI.
"""
from typing import Dict, List

import numpy as np

from src.algebra import GradedAlgebra, validate_algebra, validate_grading
from src.finalg import FiniteCommRing, product_ring, zmod
from src.groupoid import cyclic_name, standard_constructions
from src.leavitt import Graph, validate_graph
from src.skew import PartialAction, action_from_tables


# ---------------------------------------------------------------------------
# graphs and algebras
# ---------------------------------------------------------------------------

def example_graph() -> Graph:
    """v1 <-f1- v2 -f2-> v3"""
    return validate_graph({
        "vertices": ["v1", "v2", "v3"],
        "edges": [{"id": "f1", "src": "v2", "dst": "v1"}, {"id": "f2", "src": "v2", "dst": "v3"}],
    })


def _matrix_units(p: int, names: List[str], index: Dict[str, int]) -> np.ndarray:
    dim = len(names)
    sc = np.zeros((dim, dim, dim), dtype=np.int64)
    for a in names:
        for b in names:
            if a[2] == b[1]:
                sc[index[a], index[b], index[f"e{a[1]}{b[2]}"]] = 1
    return sc


def matrix_algebra_pair(p: int = 2) -> GradedAlgebra:
    """M_2(Z/p) with e_ij in degree (i, j) of the pair groupoid on {1, 2}."""
    names = ["e11", "e12", "e21", "e22"]
    index = {n: i for i, n in enumerate(names)}
    alg = validate_algebra(p, 4, _matrix_units(p, names, index), [1, 0, 0, 1], names)
    G = standard_constructions("pair", {"I": ["1", "2"]})
    return validate_grading(alg, G, [f"({n[1]},{n[2]})" for n in names])


def morita_algebra() -> GradedAlgebra:
    """
    M_2(Z/2) graded by the matrix groupoid {1,2} x Z_4 x {1,2}: e11, e22 in
    the identity degrees, e12 at (1,g,2), e21 at (2,g3,1), zero elsewhere.
    """
    names = ["e11", "e22", "e12", "e21"]
    index = {n: i for i, n in enumerate(names)}
    alg = validate_algebra(2, 4, _matrix_units(2, names, index), [1, 1, 0, 0], names)
    G = standard_constructions("matrix", {"I": ["1", "2"], "m": 4})
    return validate_grading(alg, G, ["(1,e,1)", "(2,e,2)", "(1,g,2)", "(2,g3,1)"])


def group_algebra(p: int, m: int) -> GradedAlgebra:
    """Z/p[Z_m] with its natural grading by the one-object group Z_m."""
    names = [cyclic_name(a) for a in range(m)]
    sc = np.zeros((m, m, m), dtype=np.int64)
    for a in range(m):
        for b in range(m):
            sc[a, b, (a + b) % m] = 1
    one = np.zeros(m, dtype=np.int64)
    one[0] = 1
    alg = validate_algebra(p, m, sc, one, names)
    G = standard_constructions("one_object_group", {"m": m})
    return validate_grading(alg, G, names)


def terminal_algebra(p: int = 2) -> GradedAlgebra:
    alg = validate_algebra(p, 1, [[0, 0, 0, 1]], [1], ["1"])
    return validate_grading(alg, standard_constructions("pair", {"I": ["*"]}), ["(*,*)"])


# ---------------------------------------------------------------------------
# actions
# ---------------------------------------------------------------------------

def _identity_table(R: FiniteCommRing, members=None) -> Dict[str, str]:
    members = range(R.size) if members is None else members
    return {R.label(x): R.label(x) for x in members}


def identity_partial_action(m: int, R: FiniteCommRing, idem: str) -> PartialAction:
    """
    Z_m acting on R with 1_g = idem and theta_g the identity of R idem for
    every g != e; global when idem is 1.
    """
    G = standard_constructions("one_object_group", {"m": m})
    x = R.index(idem)
    ideal = sorted(set(int(v) for v in R.mul[x]))
    idems = {g: (R.label(R.one) if G.is_identity(g) else idem) for g in G.ids}
    theta = {g: (_identity_table(R) if G.is_identity(g) else _identity_table(R, ideal)) for g in G.ids}
    return action_from_tables(G, {"*": R}, idems, theta)


def cyclic_shift_action(m: int, base: FiniteCommRing) -> PartialAction:
    """Global action of Z_m on base^m by cyclic shift of coordinates."""
    G = standard_constructions("one_object_group", {"m": m})
    B = product_ring(*([base] * m))
    labels = list(B.elems)
    theta = {}
    for a in range(m):
        table = {}
        for label in labels:
            parts = label[1:-1].split(",")
            shifted = [parts[(i - a) % m] for i in range(m)]
            table[label] = "(" + ",".join(shifted) + ")"
        theta[cyclic_name(a)] = table
    idem = {g: B.label(B.one) for g in G.ids}
    return action_from_tables(G, {"*": B}, idem, theta)


def pair_transport_action(R1: FiniteCommRing, R2: FiniteCommRing, idem_12: str,
                          transport: Dict[str, str]) -> PartialAction:
    """
    Pair groupoid on {1, 2} acting by a ring isomorphism
    `transport` : R2 -> R1 idem_12 (so 1_(2,1) = 1).
    """
    G = standard_constructions("pair", {"I": ["1", "2"]})
    idem = {"(1,1)": R1.label(R1.one), "(2,2)": R2.label(R2.one), "(1,2)": idem_12, "(2,1)": R2.label(R2.one)}
    theta = {
        "(1,1)": _identity_table(R1),
        "(2,2)": _identity_table(R2),
        "(1,2)": dict(transport),
        "(2,1)": {v: k for k, v in transport.items()},
    }
    return action_from_tables(G, {"1": R1, "2": R2}, idem, theta)


def terminal_action(n: int = 5) -> PartialAction:
    G = standard_constructions("pair", {"I": ["*"]})
    R = zmod(n)
    return action_from_tables(G, {"*": R}, {"(*,*)": R.label(R.one)}, {"(*,*)": _identity_table(R)})


def action_corpus() -> Dict[str, PartialAction]:
    """Validated actions, global and partial."""
    z2, z3 = zmod(2), zmod(3)
    z2z2, z3z3 = product_ring(z2, z2), product_ring(z3, z3)
    return {
        "terminal_z5": terminal_action(5),
        "z2_trivial_z3": identity_partial_action(2, z3, "1"),
        "z2_swap_z3z3": cyclic_shift_action(2, z3),
        "z2_swap_z2z2": cyclic_shift_action(2, z2),
        "z3_shift_z2cubed": cyclic_shift_action(3, z2),
        "z2_partial_z2z2": identity_partial_action(2, z2z2, "(1,0)"),
        "z2_partial_z3z3": identity_partial_action(2, z3z3, "(1,0)"),
        "z2_zero_z2z2": identity_partial_action(2, z2z2, "(0,0)"),
        "z3_partial_z2z2": identity_partial_action(3, z2z2, "(1,0)"),
        "pair_global_z2": pair_transport_action(z2, z2, "1", {"0": "0", "1": "1"}),
        "pair_global_z3": pair_transport_action(z3, z3, "1", {"0": "0", "1": "1", "2": "2"}),
        "pair_partial_z2z2": pair_transport_action(z2z2, z2, "(1,0)", {"0": "(0,0)", "1": "(1,0)"}),
    }


GLOBAL_ACTIONS = {"terminal_z5", "z2_trivial_z3", "z2_swap_z3z3", "z2_swap_z2z2", "z3_shift_z2cubed",
                  "pair_global_z2", "pair_global_z3"}
