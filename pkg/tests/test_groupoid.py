import pytest

from src.errors import BadIdentity, BadInverse, InvalidParams, MissingComposition, NonAssociative
from src.groupoid import (
    composable_tuples,
    cyclic_name,
    graph_groupoid,
    standard_constructions,
    support_subgroupoid,
    validate_groupoid,
)


LOOP = [
    "e a b c d".split(),
    "a e c d b".split(),
    "b d e a c".split(),
    "c b d e a".split(),
    "d c a b e".split(),
]


def _loop_raw():
    names = LOOP[0]
    return {
        "objects": ["*"],
        "morphisms": [{"id": x, "dom": "*", "cod": "*"} for x in names],
        "comp": [[x, y, LOOP[i][j]] for i, x in enumerate(names) for j, y in enumerate(names)],
        "inv": [[x, x] for x in names],
        "identities": {"*": "e"},
    }


def test_validate_explicit_z2(z2_raw):
    G = validate_groupoid(z2_raw)
    assert G.objects == ("*",)
    assert G.ids == ["e", "g"]
    assert G.compose("g", "g") == "e"
    assert G.inverse("g") == "g"
    assert G.is_identity("e") and not G.is_identity("g")


def test_to_raw_round_trips(z2_raw):
    G = validate_groupoid(z2_raw)
    again = validate_groupoid(G.to_raw())
    assert again.ids == G.ids
    assert again.comp == G.comp


def test_missing_composition(z2_raw):
    z2_raw["comp"] = [c for c in z2_raw["comp"] if c[:2] != ["g", "g"]]
    with pytest.raises(MissingComposition) as err:
        validate_groupoid(z2_raw)
    assert err.value.witness == ["g", "g"]


def test_bad_inverse(z2_raw):
    z2_raw["inv"] = [["e", "e"], ["g", "e"]]
    with pytest.raises(BadInverse):
        validate_groupoid(z2_raw)


def test_bad_identity(z2_raw):
    z2_raw["identities"] = {"*": "g"}
    with pytest.raises(BadIdentity):
        validate_groupoid(z2_raw)


def test_unknown_endpoint(z2_raw):
    z2_raw["morphisms"][1]["cod"] = "nowhere"
    with pytest.raises(InvalidParams):
        validate_groupoid(z2_raw)


def test_non_associative_loop_is_rejected():
    with pytest.raises(NonAssociative) as err:
        validate_groupoid(_loop_raw())
    assert len(err.value.witness) == 3


def test_standard_one_object_group():
    G = standard_constructions("one_object_group", {"m": 4})
    assert G.ids == ["e", "g", "g2", "g3"]
    assert G.compose("g3", "g2") == "g"
    assert G.inverse("g") == "g3"


def test_standard_pair_conventions(pair12):
    assert pair12.ids == ["(1,1)", "(1,2)", "(2,1)", "(2,2)"]
    assert pair12.dom("(1,2)") == "2"
    assert pair12.cod("(1,2)") == "1"
    assert pair12.compose("(1,2)", "(2,1)") == "(1,1)"
    assert pair12.compose("(1,2)", "(1,2)") is None


def test_standard_matrix():
    G = standard_constructions("matrix", {"I": ["1", "2"], "m": 4})
    assert len(G) == 16
    assert G.compose("(1,g,2)", "(2,g3,1)") == "(1,e,1)"
    assert G.inverse("(1,g,2)") == "(2,g3,1)"


@pytest.mark.parametrize("kind, params", [
    ("one_object_group", {"m": 0}),
    ("pair", {"I": []}),
    ("pair", {"I": ["1", "1"]}),
    ("torus", {}),
])
def test_standard_rejects_bad_params(kind, params):
    with pytest.raises(InvalidParams):
        standard_constructions(kind, params)


def test_composable_tuples_counts(pair12):
    G = standard_constructions("one_object_group", {"m": 3})
    assert len(composable_tuples(G, 3)) == 27
    assert len(composable_tuples(pair12, 2)) == 8
    assert composable_tuples(pair12, 2)[0] == ("(1,1)", "(1,1)")
    for g, h in composable_tuples(pair12, 2):
        assert pair12.dom(g) == pair12.cod(h)


def test_graph_groupoid_components(example_graph):
    G = graph_groupoid(example_graph)
    assert len(G) == 9
    assert G.dom("(v1,v2)") == "v2" and G.cod("(v1,v2)") == "v1"


def test_support_subgroupoid(pair12):
    H = support_subgroupoid(pair12, ["1"])
    assert H.ids == ["(1,1)"]
    with pytest.raises(InvalidParams):
        support_subgroupoid(pair12, ["3"])


def test_cyclic_names():
    assert [cyclic_name(a) for a in range(4)] == ["e", "g", "g2", "g3"]
