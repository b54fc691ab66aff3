import json
import pathlib

import pytest

from combinorm import graphs, jsonio
from combinorm.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def c5_json(tmp_path):
    path = tmp_path / "c5.json"
    path.write_text(json.dumps(graphs.to_json_dict(graphs.cycle_graph(5))))
    return str(path)


def test_schreier_member(capsys):
    code, out = run(capsys, "schreier", "member", "--alpha", "1", "--set", "3,4,5")
    assert code == 0 and out.strip() == "member"
    code, out = run(capsys, "schreier", "member", "--alpha", "1", "--set", "2,3,4")
    assert code == 1 and out.strip() == "not member"


def test_schreier_enumerate(capsys):
    code, out = run(capsys, "schreier", "enumerate", "--alpha", "1",
                    "--truncation", "4", "--json")
    assert code == 0
    assert json.loads(out)["sets"] == [[], [1], [2], [3], [2, 3], [4], [2, 4], [3, 4]]


def test_norm_and_dual_norm(capsys):
    fam = json.dumps({"kind": "schreier", "universe": {"bound": 3}, "alpha": "1"})
    vec = json.dumps({"1": "1", "2": "1", "3": "1"})
    code, out = run(capsys, "norm", "--family", fam, "--vector", vec)
    assert code == 0 and out.strip() == "2"
    code, out = run(capsys, "dual-norm", "--family", fam, "--vector", vec)
    assert code == 0 and out.strip() == "2"


def test_perfect_check_c5(capsys, tmp_path):
    code, out = run(capsys, "perfect-check", "--graph", c5_json(tmp_path),
                    "--method", "both")
    assert code == 1
    assert out.strip() == "imperfect: odd hole (1 2 3 4 5)"


def test_perfect_check_dimacs(capsys, tmp_path):
    path = tmp_path / "c6.col"
    path.write_text(graphs.write_dimacs(graphs.cycle_graph(6)))
    code, out = run(capsys, "perfect-check", "--graph", str(path))
    assert code == 0 and out.strip() == "perfect"


def test_duality_report_cli(capsys, tmp_path):
    code, out = run(capsys, "duality-report", "--graph", c5_json(tmp_path), "--json")
    assert code == 0
    assert json.loads(out) == {"perfect_spgt": False, "perfect_chi_omega": False,
                               "chvatal": False, "c0V_all": False, "c2V_all": False}


def test_perp_and_graphgen_and_max_elements(capsys):
    fam = json.dumps({"kind": "schreier", "universe": {"bound": 6}, "alpha": "1"})
    code, out = run(capsys, "perp", "--family", fam, "--set", "1,7".replace("7", "5"))
    assert code == 0 and out.strip() == "member"
    code, out = run(capsys, "perp", "--family", fam, "--set", "2,3")
    assert code == 1

    code, out = run(capsys, "graphgen-check", "--family", fam)
    assert code == 1 and "witness [2, 3, 4]" in out

    code, out = run(capsys, "max-elements", "--family", fam, "--ground", "1,2,3,4",
                    "--json")
    assert code == 0
    assert json.loads(out)["max_elements"] == [[1], [2, 3], [2, 4], [3, 4]]


def test_extreme_verify_and_construct(capsys, tmp_path):
    vec = json.dumps({str(v): "1/2" for v in range(1, 6)})
    code, out = run(capsys, "extreme", "--graph", c5_json(tmp_path), "--vector", vec)
    assert code == 0 and out.startswith("extreme")

    code, out = run(capsys, "extreme", "--construct", "rational", "--q", "2/3", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["extreme"] and data["vector"][str(data["vertex"])] == "2/3"

    code, out = run(capsys, "extreme", "--construct", "antihole", "--n", "3")
    assert code == 0

    code, out = run(capsys, "extreme", "--construct", "hole", "--graph",
                    c5_json(tmp_path), "--hole", "1,2,3,4,5", "--json")
    assert code == 0
    assert json.loads(out)["extreme"]


def test_emulate_and_verify(capsys):
    code, out = run(capsys, "emulate", "--op", "schreier", "--times", "1",
                    "--labels", "6")
    assert code == 0
    emu = out.strip()
    fam = json.dumps({"kind": "schreier", "universe": {"bound": 6}, "alpha": "1"})
    code, out = run(capsys, "verify-emulation", "--emulation", emu,
                    "--family", fam, "--max-size", "6")
    assert code == 0 and out.strip() == "verified"

    wrong = json.dumps({"kind": "bounded-card", "universe": [1, 2, 3, 4, 5, 6], "k": 1})
    code, out = run(capsys, "verify-emulation", "--emulation", emu,
                    "--family", wrong, "--max-size", "6")
    assert code == 1 and out.startswith("counterexample")


def test_search_emulation_cli(capsys):
    fam = json.dumps({"kind": "bounded-card", "universe": [1, 2, 3], "k": 1})
    code, out = run(capsys, "search-emulation", "--family", fam)
    assert code == 0
    found = json.loads(out)
    assert found["blocks"]


def test_sierpinski_cli(capsys):
    inj = json.dumps({"values": ["0", "-1", "1"]})
    vec = json.dumps({"1": "1", "2": "1", "3": "1"})
    code, out = run(capsys, "sierpinski", "norm", "--injection", inj, "--vector", vec)
    assert code == 0 and out.strip() == "2"

    code, out = run(capsys, "sierpinski", "graph", "--injection", inj, "--n", "3",
                    "--dimacs")
    assert code == 0
    assert "p edge 3 2" in out

    guest = json.dumps({"values": ["5", "3", "4"]})
    code, out = run(capsys, "sierpinski", "embed", "--guest", guest, "--n", "3",
                    "--json")
    assert code == 0
    mapping = json.loads(out)
    assert sorted(int(k) for k in mapping) == [1, 2, 3]


def test_corpus_sweep_cli(capsys):
    code, out = run(capsys, "corpus", "sweep", "--max-n", "4", "--json")
    assert code == 0
    data = json.loads(out)
    assert data == {"graphs": 18, "perfect": 18, "imperfect": 0,
                    "first_disagreement": None}


def test_input_error_exit_code(capsys):
    code = main(["norm", "--family", "{bad json", "--vector", "{}"])
    assert code == 2


def test_golden_duality_report(capsys, tmp_path):
    code, out = run(capsys, "duality-report", "--graph", c5_json(tmp_path), "--json")
    golden = (GOLDEN / "duality_report_c5.json").read_text()
    assert json.loads(out) == json.loads(golden)


def test_golden_emulation_s1(capsys):
    code, out = run(capsys, "emulate", "--op", "schreier", "--times", "1",
                    "--labels", "4")
    golden = (GOLDEN / "emulation_s1_labels4.json").read_text()
    assert json.loads(out) == json.loads(golden)
    # and the golden file round-trips through the reader
    jsonio.emulation_from_json(json.loads(golden))
