import json

import pytest

from lptrans import __version__
from lptrans.cli import main
from lptrans.generators import fixture_text, gen_interval
from lptrans.graph import format_edge_list, parse_edge_list
from lptrans.hgraph import dump_representation
from lptrans.recognizers import complete_graph, cycle_graph, path_graph
from lptrans.treewidth import exact_decomposition, format_pace


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def fields(text: str) -> dict[str, str]:
    return dict(line.split(": ", 1) for line in text.splitlines())


@pytest.fixture
def wz(tmp_path):
    path = tmp_path / "wz.el"
    path.write_text(fixture_text())
    return path


def test_oracle_report(capsys, wz):
    code, out, _ = run(capsys, "oracle", str(wz))
    report = fields(out)
    assert code == 0
    assert report["tool"] == f"lptrans {__version__}"
    assert report["lpt"] == "2"
    assert report["longest_path_length"] == "9"
    assert report["seed"] == "none"
    assert len(report["input_sha256"]) == 64


def test_oracle_json(capsys, wz):
    code, out, _ = run(capsys, "oracle", str(wz), "--json")
    data = json.loads(out)
    assert code == 0 and data["lpt"] == 2 and len(data["witness"]) == 2
    assert list(data)[:4] == ["tool", "command", "input_sha256", "seed"]


def test_pipeline_chordal_end_to_end(capsys, tmp_path):
    out_path = tmp_path / "g.el"
    code, _, _ = run(capsys, "gen", "chordal", "--seed", "4", "-n", "12", "--out", str(out_path))
    assert code == 0
    code, out, _ = run(capsys, "pipeline", "--class", "chordal", str(out_path))
    report = fields(out)
    assert code == 0 and report["verified"] == "true"
    assert int(report["size"]) <= int(report["matched_clique_index"]) - 1


@pytest.mark.parametrize(
    "cls, graph",
    [("p5free", cycle_graph(5)), ("p6free", complete_graph(5)), ("bullchair", path_graph(8))],
)
def test_pipeline_classes(capsys, tmp_path, cls, graph):
    path = tmp_path / "g.el"
    path.write_text(format_edge_list(graph))
    code, out, _ = run(capsys, "pipeline", "--class", cls, str(path))
    assert code == 0 and fields(out)["verified"] == "true"


def test_class_failure_exit_code(capsys, tmp_path):
    path = tmp_path / "c5.el"
    path.write_text(format_edge_list(cycle_graph(5)))
    code, out, err = run(capsys, "pipeline", "--class", "chordal", str(path))
    assert code == 2 and out == "" and "class membership" in err


def test_parse_error_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.el"
    path.write_text("3 1\n0 7\n")
    code, _, err = run(capsys, "oracle", str(path))
    assert code == 1 and "line 2" in err
    code, _, err = run(capsys, "oracle", str(tmp_path / "missing.el"))
    assert code == 1 and "cannot read" in err


def test_size_limit_exit_code(capsys, tmp_path):
    path = tmp_path / "p22.el"
    path.write_text(format_edge_list(path_graph(22)))
    code, _, err = run(capsys, "oracle", str(path))
    assert code == 3 and "20" in err


def test_fixture_is_byte_identical(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "fixture", "walther-zamfirescu")
    assert code == 0 and out == fixture_text()
    target = tmp_path / "copy.el"
    run(capsys, "gen", "fixture", "walther-zamfirescu", "--out", str(target))
    assert target.read_bytes() == fixture_text().encode()
    code, _, err = run(capsys, "gen", "fixture", "nope")
    assert code == 1 and "unknown fixture" in err


def test_gen_kinds(capsys, tmp_path):
    for kind in ("interval", "circular-arc", "hgraph"):
        rep_path = tmp_path / f"{kind}.json"
        code, out, _ = run(capsys, "gen", kind, "--seed", "3", "-n", "7", "--rep-out", str(rep_path))
        assert code == 0 and parse_edge_list(out).n == 7 and rep_path.exists()
    code, out, _ = run(capsys, "gen", "filtered", "--seed", "1", "-n", "8", "--forbid", "bull,chair", "--p", "0.6")
    assert code == 0 and parse_edge_list(out).n == 8
    code, _, err = run(capsys, "gen", "filtered", "--seed", "1", "--forbid", "P99")
    assert code == 1 and "unknown patterns" in err
    code, _, err = run(capsys, "gen", "filtered", "--seed", "1", "-n", "12", "--p", "0.1", "--forbid", "P4", "--budget", "3")
    assert code == 1 and "3 attempts" in err
    code, _, err = run(capsys, "gen", "chordal")
    assert code == 1 and "--seed" in err


def test_hgraph_extract(capsys, tmp_path):
    inst = gen_interval(2, 9)
    rep_path = tmp_path / "rep.json"
    rep_path.write_text(dump_representation(inst.rep))
    code, out, _ = run(capsys, "hgraph", "extract", str(rep_path))
    report = fields(out)
    assert code == 0
    assert report["claims_ok"] == "true" and report["verified"] == "true"
    assert int(report["q_size"]) <= int(report["s2_bound"])
    td_path = tmp_path / "rep.td"
    td_path.write_text(format_pace(exact_decomposition(inst.rep.h_phi), inst.rep.h_phi.n))
    code, out, _ = run(capsys, "hgraph", "extract", str(rep_path), "--td", str(td_path), "--json")
    assert code == 0 and json.loads(out)["exact_width"] is True


def test_hgraph_extract_needs_nice_input(capsys, tmp_path):
    text = json.dumps(
        {"h": {"n": 3, "edges": [[0, 1], [0, 2], [1, 2]]}, "subdivision": {"0-1": 3},
         "phi": {"0": ["v0", "e0-1/1"], "1": ["e0-1/2", "v1", "v2", "v0"]}}
    )
    path = tmp_path / "rep.json"
    path.write_text(text)
    code, _, err = run(capsys, "hgraph", "extract", str(path))
    assert code == 1 and "--normalize" in err
    code, out, _ = run(capsys, "hgraph", "extract", str(path), "--normalize")
    assert code == 0 and fields(out)["normalized"] == "true"


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "oracle", "--trials", "5", "--seed", "3")
    report = fields(out)
    assert code == 0 and report["violations"] == "0" and report["seed"] == "3"
    assert out.count("seed: ") == 1


def test_reports_are_reproducible(capsys, wz):
    first = run(capsys, "oracle", str(wz))[1]
    second = run(capsys, "oracle", str(wz))[1]
    assert first == second
