import io
import json

import pytest
from rich.console import Console

from app import main
from src.formats import write_json


def run(argv):
    buf = io.StringIO()
    code = main(argv, console=Console(file=buf, width=200))
    return code, buf.getvalue()


def run_json(argv):
    code, out = run(argv + ["--json"])
    return code, json.loads(out)


def test_lpa_report(data_path):
    code, report = run_json(["lpa", "report", data_path("example_graph.json"), "-p", "2"])
    assert code == 0
    assert report["command"] == ["lpa", "report"]
    assert report["verdicts"] == {"relations": True, "epsilon_strong": True,
                                  "epsilons_agree": True, "epsilons_self_adjoint": True}
    assert report["results"]["dimension"] == 8
    assert report["results"]["strong"] is False
    assert report["witnesses"]["strong"] == ["(v1,v3)", "(v3,v1)"]
    assert report["results"]["epsilons"]["(v2,v1)"] == "f1f1*"


def test_json_output_is_deterministic(data_path):
    argv = ["lpa", "report", data_path("example_graph.json"), "-p", "3"]
    assert run(argv + ["--json"]) == run(argv + ["--json"])


def test_timing_only_on_request(data_path):
    _, report = run_json(["groupoid", "validate", data_path("groupoid_pair12.json")])
    assert "timing" not in report
    _, report = run_json(["groupoid", "validate", data_path("groupoid_pair12.json"), "--timing"])
    assert report["timing"]["total"] >= 0


def test_coh_compute(data_path):
    code, report = run_json(["coh", "compute", data_path("module_z2_trivial_z3.json"), "-n", "2", "--backend", "snf"])
    assert code == 0
    assert report["results"]["order"] == 2
    assert report["verdicts"]["delta_squared"]


def test_coh_h0(data_path):
    code, report = run_json(["coh", "compute", data_path("module_z2_trivial_z3.json"), "-n", "0",
                             "--backend", "enumerate"])
    assert code == 0
    assert report["verdicts"]["h0_condition"]
    assert report["results"]["order"] == 2


def test_ring_commands(data_path):
    code, report = run_json(["ring", "idempotents", data_path("ring_z6.json")])
    assert code == 0
    assert report["results"]["idempotents"] == ["0", "1", "3", "4"]
    assert report["results"]["ideals"]["4"] == ["0", "2", "4"]
    code, report = run_json(["ring", "validate", data_path("ring_z3.json")])
    assert report["results"]["units"]["order"] == 2
    assert report["results"]["characteristic_prime"] == 3


def test_alg_commands(data_path):
    code, report = run_json(["alg", "strong", data_path("algebra_morita.json")])
    assert code == 0
    assert report["results"]["strong"] is False
    assert report["witnesses"]["strong"]["pair"] == ["(1,e,2)", "(2,e,1)"]

    code, report = run_json(["alg", "epsilons", data_path("algebra_morita.json")])
    assert code == 0
    assert report["results"]["epsilons"]["(1,g,2)"] == "e11"
    assert report["verdicts"]["m_iso"]

    code, report = run_json(["alg", "check-grading", data_path("algebra_z3z2.json")])
    assert code == 0
    assert report["results"]["components"] == {"e": 1, "g": 1}


def test_not_epsilon_strong_exits_one(tmp_path, data_path):
    path = tmp_path / "dual.json"
    write_json(str(path), {"p": 2, "dim": 2, "sc": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]], "one": [1, 0],
                           "names": ["1", "x"], "deg": {"0": "e", "1": "g"},
                           "groupoid": data_path("groupoid_z2.json")})
    code, report = run_json(["alg", "epsilons", str(path)])
    assert code == 1
    assert report["verdicts"]["epsilon_strong"] is False
    assert report["witnesses"]["epsilon_strong"][0] == "g"


def test_skew_commands(tmp_path, data_path):
    code, report = run_json(["skew", "check", data_path("action_partial_z2.json")])
    assert code == 0
    assert report["results"]["global"] is False
    assert report["results"]["strong"] is False
    assert report["verdicts"]["partial_functor"]

    out = tmp_path / "skew.json"
    code, _ = run_json(["skew", "build", data_path("action_global_swap.json"), "--out", str(out)])
    assert code == 0
    code, report = run_json(["alg", "strong", str(out)])
    assert code == 0 and report["results"]["strong"] is True


def test_lpa_export_then_epsilons(tmp_path, data_path):
    out = tmp_path / "lpa.json"
    code, report = run_json(["lpa", "export", data_path("example_graph.json"), "-p", "3", "--out", str(out)])
    assert code == 0 and report["results"]["dimension"] == 8
    code, report = run_json(["alg", "epsilons", str(out)])
    assert code == 0


def test_classify(data_path):
    code, report = run_json(["classify", data_path("algebra_z3z2.json")])
    assert code == 0
    assert report["results"]["h2_order"] == 2
    assert report["results"]["classes"] == 2
    assert report["verdicts"]["bijective"]


def test_classify_timing_comes_from_the_cli(data_path):
    _, report = run_json(["classify", data_path("algebra_z3z2.json")])
    assert "elapsed" not in report["results"] and "timing" not in report
    _, report = run_json(["classify", data_path("algebra_z3z2.json"), "--timing"])
    assert report["timing"]["total"] >= 0


@pytest.mark.parametrize("argv", [
    ["groupoid", "validate", "missing.json"],
    ["lpa", "report", "{cyclic}"],
    ["ring", "validate", "{garbage}"],
    ["alg", "strong", "{ungraded}"],
])
def test_input_errors_exit_two(tmp_path, argv):
    cyclic = tmp_path / "cyclic.json"
    write_json(str(cyclic), {"vertices": ["a", "b"], "edges": [{"id": "x", "src": "a", "dst": "b"},
                                                               {"id": "y", "src": "b", "dst": "a"}]})
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{not json", encoding="utf-8")
    ungraded = tmp_path / "ungraded.json"
    write_json(str(ungraded), {"p": 2, "dim": 1, "sc": [[0, 0, 0, 1]], "one": [1]})
    paths = {"{cyclic}": str(cyclic), "{garbage}": str(garbage), "{ungraded}": str(ungraded)}
    argv = [paths.get(a, a) for a in argv]

    code, payload = run_json(argv)
    assert code == 2
    assert payload["error"]


def test_text_rendering(data_path):
    code, out = run(["lpa", "report", data_path("example_graph.json")])
    assert code == 0
    assert "Verdicts" in out and "epsilon_strong" in out
