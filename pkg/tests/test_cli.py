import json

import pytest

from vh2kg.cli import main
from vh2kg.fixtures import fixture_path

SCRIPT = str(fixture_path("scripts", "carry_box.txt"))
ENV = str(fixture_path("environment.json"))
AFF = str(fixture_path("affordances.csv"))
PROPS = str(fixture_path("properties.json"))
GT = str(fixture_path("ground_truth.csv"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_parse(capsys):
    code, out = run(capsys, "parse", SCRIPT)
    assert code == 0
    payload = json.loads(out)
    assert payload["name"] == "Carry box"
    assert payload["steps"] == 5


def test_parse_echo_round_trip(capsys, tmp_path):
    code, out = run(capsys, "parse", SCRIPT, "--echo")
    assert code == 0
    assert "[GRAB] <box> (194)" in out


def test_check_executable(capsys):
    code, out = run(capsys, "check", SCRIPT, ENV,
                    "--affordances", AFF, "--properties", PROPS)
    assert code == 0
    assert json.loads(out)["executable"] is True


def test_simulate(capsys):
    code, out = run(capsys, "simulate", SCRIPT, ENV,
                    "--affordances", AFF, "--properties", PROPS)
    assert code == 0
    payload = json.loads(out)
    assert len(payload["transitions"]) == 5


def test_build_detect_evaluate_chain(capsys, tmp_path):
    code, out = run(capsys, "build-kg", SCRIPT, ENV,
                    "--affordances", AFF, "--properties", PROPS)
    assert code == 0
    graph = tmp_path / "g.nt"
    graph.write_text(out)

    code, out = run(capsys, "stats", str(graph))
    assert code == 0
    assert json.loads(out)["triples"] > 500

    code, out = run(capsys, "detect-risk", str(graph))
    assert code == 0
    findings = tmp_path / "f.json"
    findings.write_text(out)
    parsed = json.loads(out)
    assert len(parsed) == 1
    assert parsed[0]["rule"] == "R2"

    gt = tmp_path / "gt.csv"
    gt.write_text("event_iri,risk_type\n"
                  f"{parsed[0]['event']},R2\n")
    code, out = run(capsys, "evaluate", str(graph), str(findings), str(gt))
    assert code == 0
    scores = json.loads(out)
    assert scores["precision"] == 1.0
    assert scores["recall"] == 1.0

    code, out = run(capsys, "explain", str(graph), str(findings),
                    parsed[0]["event"])
    assert code == 0
    assert out.startswith("R2:")


def test_explain_unknown_event(capsys, tmp_path):
    code, out = run(capsys, "build-kg", SCRIPT, ENV,
                    "--affordances", AFF, "--properties", PROPS)
    graph = tmp_path / "g.nt"
    graph.write_text(out)
    code, out = run(capsys, "detect-risk", str(graph))
    findings = tmp_path / "f.json"
    findings.write_text(out)
    code, _ = run(capsys, "explain", str(graph), str(findings), "http://nope")
    assert code == 1


def test_embed_and_cluster(capsys, tmp_path):
    code, out = run(capsys, "build-kg", SCRIPT, ENV,
                    "--affordances", AFF, "--properties", PROPS)
    graph = tmp_path / "g.nt"
    graph.write_text(out)
    code, out = run(capsys, "embed", str(graph), "--depth", "2", "--walks", "5",
                    "--dims", "8", "--epochs", "2")
    assert code == 0
    vectors = tmp_path / "v.tsv"
    vectors.write_text(out)
    code, out = run(capsys, "cluster", str(vectors), "-k", "3")
    assert code == 0
    assert all("," in line for line in out.splitlines())


def test_missing_file_is_exit_1(capsys):
    code, _ = run(capsys, "parse", "/nonexistent/script.txt")
    assert code == 1


def test_bad_usage_is_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_pipeline_subcommand(capsys, tmp_path):
    code, out = run(capsys, "pipeline",
                    "--scripts", str(fixture_path("scripts")),
                    "--environment", ENV,
                    "--affordances", AFF,
                    "--ground-truth", GT,
                    "-o", str(tmp_path / "out"),
                    "--seed", "3")
    assert code == 0
    manifest = json.loads(out)
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    assert report["evaluation"]["recall"] == 1.0
    assert (tmp_path / "out" / "corpus.nt").exists()
    assert (tmp_path / "out" / "vectors.tsv").exists()
