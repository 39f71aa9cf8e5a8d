import json

import pytest

from nilcrystal.cli import main
from nilcrystal.fields import default_field
from nilcrystal.prepmod import simple, zero_module
from nilcrystal.rootsys import a_n


@pytest.fixture
def a2_graph(tmp_path):
    path = tmp_path / "a2.json"
    path.write_text(json.dumps(a_n(2).to_dict()))
    return str(path)


def run(args):
    return main(args)


def test_roots_table(a2_graph, capsys):
    assert run(["--graph", a2_graph, "roots", "1", "2", "1"]) == 0
    out = capsys.readouterr().out
    assert "[1, 0]" in out and "[1, 1]" in out and "[0, 1]" in out


def test_roots_json_config_embedded(a2_graph, capsys):
    code = run(["--graph", a2_graph, "--json", "--no-timestamp",
                "roots", "1", "2", "1"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["betas"] == [[1, 0], [1, 1], [0, 1]]
    assert payload["config"]["seed"] == 0
    assert "timestamp" not in payload["config"]


def test_roots_non_reduced_exits_2(a2_graph):
    assert run(["--graph", a2_graph, "roots", "1", "1"]) == 2


def test_paper_order_flag(a2_graph, capsys):
    run(["--graph", a2_graph, "--json", "--no-timestamp", "--paper-order",
         "roots", "1", "2", "1"])
    payload = json.loads(capsys.readouterr().out)
    assert payload["word"] == [1, 2, 1]  # palindrome; flag accepted


def test_modules_summary(a2_graph, capsys):
    assert run(["--graph", a2_graph, "modules", "V", "1", "2", "1"]) == 0
    out = capsys.readouterr().out
    assert "(1, 0)" in out and "(1, 1)" in out


def test_modules_empty_word(a2_graph, capsys):
    assert run(["--graph", a2_graph, "--json", "--no-timestamp",
                "modules", "M"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["modules"] == []


def test_extract_simple(a2_graph, tmp_path, capsys):
    mpath = tmp_path / "s2.json"
    simple(a_n(2), 2, field=default_field()).dump(str(mpath))
    assert run(["--graph", a2_graph, "extract", str(mpath), "1", "2", "1"]) == 0
    assert "[0, 0, 1]" in capsys.readouterr().out


def test_extract_zero_module(a2_graph, tmp_path, capsys):
    mpath = tmp_path / "z.json"
    zero_module(a_n(2), default_field()).dump(str(mpath))
    assert run(["--graph", a2_graph, "extract", str(mpath), "1", "2", "1"]) == 0
    assert "[0, 0, 0]" in capsys.readouterr().out


def test_extract_corrupt_file_exits_3(a2_graph, tmp_path):
    mpath = tmp_path / "bad.json"
    mpath.write_text('{"nonsense": 1}')
    assert run(["--graph", a2_graph, "extract", str(mpath), "1", "2", "1"]) == 3


def test_extract_off_stratum_exits_1(a2_graph, tmp_path):
    mpath = tmp_path / "s1.json"
    simple(a_n(2), 1, field=default_field()).dump(str(mpath))
    assert run(["--graph", a2_graph, "extract", str(mpath), "2"]) == 1


def test_missing_graph_exits_4(tmp_path):
    assert run(["--graph", str(tmp_path / "nope.json"), "roots", "1"]) == 4


def test_small_prime_rejected(a2_graph):
    assert run(["--graph", a2_graph, "--field", "prime:97",
                "modules", "M", "1"]) == 2


def test_verify_exit_codes(a2_graph, tmp_path):
    out = tmp_path / "rep.json"
    code = run(["--graph", a2_graph, "--seed", "7", "--out", str(out),
                "verify", "all", "--word", "1", "2", "1",
                "--bound", "1", "--corpus", "5", "--maxlen", "2"])
    assert code == 0
    payload = json.loads(out.read_text())
    assert {r["check_id"] for r in payload["reports"]} >= {
        "reflection-contracts", "modules", "cross-model", "transitions"}


def test_verify_needs_word(a2_graph):
    assert run(["--graph", a2_graph, "verify", "cross-model"]) == 4


def test_byte_identical_reruns(a2_graph, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    for p in (p1, p2):
        run(["--graph", a2_graph, "--json", "--no-timestamp", "--out", str(p),
             "modules", "M", "1", "2", "1"])
    assert p1.read_bytes() == p2.read_bytes()
