import json

import pytest

from conftest import fixture_path
from leavitt import corpus
from leavitt.cli import main
from leavitt.graph import OMEGA
from leavitt.graphio import (
    GraphFormatError,
    GraphSyntaxError,
    GraphValidationError,
    canonical_document,
    parse_graph_document,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- document format ---------------------------------------------------------

def test_parse_clock3_fixture():
    with open(fixture_path("clock3")) as fh:
        g = parse_graph_document(fh.read())
    assert len(g.vertices) == 4 and len(g.bundles) == 3


def test_parse_omega_mult():
    g = parse_graph_document(
        '{"vertices": ["u", "w"],'
        ' "edges": [{"id": "a", "src": "u", "dst": "w", "mult": "omega"}]}')
    assert g.bundle("a").mult is OMEGA


def test_parse_defaults_mult_to_one():
    g = parse_graph_document(
        '{"vertices": ["u"], "edges": [{"id": "a", "src": "u", "dst": "u"}]}')
    assert g.bundle("a").mult == 1


def test_parse_unknown_dst_is_validation_error():
    with pytest.raises(GraphValidationError) as err:
        parse_graph_document(
            '{"vertices": ["u"],'
            ' "edges": [{"id": "a", "src": "u", "dst": "zz"}]}')
    assert "'a'" in str(err.value)


def test_parse_syntax_error_has_position():
    with pytest.raises(GraphSyntaxError) as err:
        parse_graph_document('{"vertices": [,]}')
    assert "line 1" in str(err.value)


def test_parse_schema_errors():
    with pytest.raises(GraphFormatError):
        parse_graph_document('[1, 2]')
    with pytest.raises(GraphFormatError):
        parse_graph_document('{"vertices": "v"}')
    with pytest.raises(GraphFormatError):
        parse_graph_document(
            '{"vertices": ["u"], "edges": [{"id": "a", "src": "u",'
            ' "dst": "u", "mult": 0}]}')


def test_round_trip_all_fixtures():
    for name, build in corpus.CORPUS.items():
        g = build()
        doc = canonical_document(g)
        assert parse_graph_document(doc) == g, name
        with open(fixture_path(name)) as fh:
            assert fh.read() == doc, name  # shipped fixtures stay in sync


# -- commands ------------------------------------------------------------------

def test_index_text(capsys):
    code, out, _ = run(capsys, "index", fixture_path("clock5"))
    assert code == 0
    assert out.splitlines()[0] == "Bounded n=2"

    code, out, _ = run(capsys, "index", fixture_path("graph_f"))
    assert code == 0
    assert out.startswith("Unbounded: cycle a1.a2.a3.a4 has exit f")


def test_decompose_text(capsys):
    code, out, _ = run(capsys, "decompose", fixture_path("line4"))
    assert code == 0 and out.strip() == "M_4(K)"
    code, out, _ = run(capsys, "decompose", fixture_path("clock5"))
    assert out.strip() == "M_2(K) x5"
    code, out, _ = run(capsys, "decompose", fixture_path("loop_with_tail"))
    assert out.strip() == "M_2(K[x,x^-1])"
    code, out, _ = run(capsys, "decompose", fixture_path("omega_gadget"))
    assert code == 0 and "Not row-finite" in out
    code, out, _ = run(capsys, "decompose", fixture_path("graph_f"))
    assert code == 0 and out.startswith("Unbounded")


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", fixture_path("graph_f"),
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["no_exit_cycles"] is False
    assert doc["condition_L"] is False and doc["condition_K"] is False
    assert doc["downward_directed"] is True
    assert len(doc["cycles"]) == 2


def test_analyze_omega_cycle_marker(capsys, tmp_path):
    doc_text = ('{"vertices": ["u", "w"], "edges": ['
                '{"id": "a", "src": "u", "dst": "w", "mult": "omega"},'
                '{"id": "r", "src": "w", "dst": "u", "mult": 1}]}')
    path = tmp_path / "omega_cycle.graph"
    path.write_text(doc_text)
    code, out, _ = run(capsys, "analyze", str(path), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["cycles"]["error"] == "cycle_through_omega_bundle"
    assert doc["no_exit_cycles"] is False


def test_ideals(capsys):
    code, out, _ = run(capsys, "ideals", fixture_path("clock3"))
    assert code == 0
    assert all("M_" in line for line in out.strip().splitlines())
    code, out, _ = run(capsys, "ideals", fixture_path("graph_f"))
    assert code == 0 and out.startswith("Unbounded")


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", fixture_path("clock3"), "e1* e1")
    assert code == 0
    assert out.splitlines()[0] == "1 * w1 . w1^*"

    code, out, _ = run(capsys, "eval", fixture_path("line2"), "e1",
                       "--format", "json")
    doc = json.loads(out)
    assert doc["nilpotence"] == {"kind": "nilpotent", "index": 2}


def test_eval_bad_expr_exit_code(capsys):
    code, _, err = run(capsys, "eval", fixture_path("clock3"), "e1 +")
    assert code == 1 and "error" in err


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", fixture_path("clock5"))
    assert code == 0
    assert "verified: True" in out and "index: 2" in out

    code, out, _ = run(capsys, "witness", fixture_path("graph_f"),
                       "--size", "4", "--format", "json")
    doc = json.loads(out)
    assert doc["n"] == 4 and doc["verified"] and doc["jordan_index"] == 4
    assert doc["provenance"]["kind"] == "cycle_exit_powers"


def test_check(capsys):
    code, out, _ = run(capsys, "check", fixture_path("loop_with_tail"),
                       "--trials", "50")
    assert code == 0 and out.strip().endswith("ok")


def test_missing_file_exit_code(capsys):
    code, _, err = run(capsys, "index", "/no/such/file.graph")
    assert code == 1 and "error" in err


def test_cap_exceeded_exit_code(capsys):
    code, _, err = run(capsys, "ideals", fixture_path("clock5"), "--cap", "3")
    assert code == 2 and "resource limit" in err


def test_json_outputs_are_byte_stable(capsys):
    for args in (
        ["index", fixture_path("clock5")],
        ["analyze", fixture_path("graph_f")],
        ["decompose", fixture_path("clock5")],
        ["ideals", fixture_path("clock3")],
        ["eval", fixture_path("clock3"), "e1 e1*"],
        ["witness", fixture_path("line4")],
        ["check", fixture_path("line2"), "--trials", "20", "--seed", "5"],
    ):
        _, first, _ = run(capsys, *args, "--format", "json")
        _, second, _ = run(capsys, *args, "--format", "json")
        assert first == second, args
