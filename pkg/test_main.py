# test_main.py
from __future__ import annotations
import json

import pytest

from families import FamilyParams, build_family_gpp
from graph6 import decode_graph6, encode_graph6
from graphcore import cycle_graph, is_isomorphic, path_graph, star_graph
from main import EXIT_OK, EXIT_PARSE, EXIT_USAGE, EXIT_VIOLATION, cli_dispatch


def run(capsys, *argv):
    code = cli_dispatch(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_five(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--n", "5", "--out", str(report))
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["command"] == "verify"
    assert doc["payload"]["max_pairs"] == 5
    assert report.read_text(encoding="utf-8") == out


def test_verify_output_is_repeatable(capsys):
    _, first, _ = run(capsys, "verify", "--n", "6")
    _, second, _ = run(capsys, "verify", "--n", "6", "--jobs", "2")
    assert first == second


def test_verify_long_gate_is_a_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--n", "11")
    assert code == EXIT_USAGE
    assert "ceiling" in err


def test_claims(capsys):
    code, out, _ = run(capsys, "claims", "--n", "4")
    assert code == EXIT_OK
    claims = {c["claim"]: c for c in json.loads(out)["payload"]["claims"]}
    assert claims["MOVE_PRESERVES_TFREE"]["violations"] == 1
    assert run(capsys, "claims", "--n", "10")[0] == EXIT_USAGE


def test_check_triangle(capsys):
    code, out, _ = run(capsys, "check", "Bw")
    assert code == EXIT_OK
    facts = json.loads(out)
    assert facts["diameter"] == 1
    assert facts["g2_pairs"] == 0
    assert facts["g2_triangle_free"] is True
    assert facts["claw"] is None
    assert facts["hypothesis_vertex"] == 0


def test_check_file(capsys, tmp_path):
    path = tmp_path / "g.g6"
    path.write_text(encode_graph6(star_graph(3)) + "\n" + encode_graph6(cycle_graph(6)) + "\n", encoding="ascii")
    code, out, _ = run(capsys, "check", "--file", str(path))
    assert code == EXIT_OK
    first, second = [json.loads(line) for line in out.splitlines()]
    assert first["claw"] == [0, 1, 2, 3]
    assert first["g2_triangle_free"] is False
    assert second["c6_variants"]["C6"] == [0, 1, 2, 3, 4, 5]


def test_check_parse_errors(capsys):
    assert run(capsys, "check", "B")[0] == EXIT_PARSE
    assert run(capsys, "check", "B!")[0] == EXIT_PARSE
    assert run(capsys, "check")[0] == EXIT_USAGE


def test_unsupported_size_bytes_are_parse_errors(capsys, tmp_path):
    assert run(capsys, "check", "~??")[0] == EXIT_PARSE
    assert run(capsys, "check", "?")[0] == EXIT_PARSE
    path = tmp_path / "big.g6"
    path.write_text("~??\n", encoding="ascii")
    assert run(capsys, "verify", "--n", "5", "--from-file", str(path))[0] == EXIT_PARSE


def test_construct(capsys):
    code, out, _ = run(capsys, "construct", "--family", "gpp", "--x", "1", "--y", "1", "--g6")
    assert code == EXIT_OK
    assert is_isomorphic(decode_graph6(out.strip()), cycle_graph(5))
    _, out, _ = run(capsys, "construct", "--family", "gpp", "--x", "2", "--y", "2")
    assert out.strip() == encode_graph6(build_family_gpp(FamilyParams(2, 2)))
    _, out, _ = run(capsys, "construct", "--family", "gp", "--x", "1", "--y", "2", "--dot")
    assert out.startswith("graph ")


def test_transform_move(capsys):
    p4 = encode_graph6(path_graph(4))
    code, out, _ = run(capsys, "transform", "move", "--input", p4)
    assert code == EXIT_OK
    moved = json.loads(out)
    assert moved["spindle"] == [0, 1, 2, 3]
    assert (moved["before"], moved["after"]) == (2, 3)

    _, out, _ = run(capsys, "transform", "move", "--input", encode_graph6(path_graph(5)), "--trace")
    trace = json.loads(out)
    assert trace["pairs"] == [3, 4, 6]
    assert is_isomorphic(decode_graph6(trace["graph6"]), star_graph(4))


def test_dist_graph(capsys):
    code, out, _ = run(capsys, "dist-graph", "--k", "2", "--input", encode_graph6(path_graph(4)))
    assert code == EXIT_OK
    assert decode_graph6(out.strip()).edges() == [(0, 2), (1, 3)]


def test_anneal(capsys):
    code, out, _ = run(capsys, "anneal", "--n", "5", "--steps", "200", "--seed", "3")
    assert code == EXIT_OK
    payload = json.loads(out)["payload"]
    assert payload["mode"] == "ANNEAL"
    assert payload["max_pairs"] <= 5


def test_usage_errors(capsys):
    assert run(capsys)[0] == EXIT_USAGE
    assert run(capsys, "nope")[0] == EXIT_USAGE
    assert run(capsys, "verify", "--n", "zero")[0] == EXIT_USAGE
    assert run(capsys, "construct", "--family", "gpp", "--x", "0", "--y", "1")[0] == EXIT_USAGE


@pytest.mark.slow
def test_claims_at_seven_report_the_failed_split(capsys):
    code, out, _ = run(capsys, "claims", "--n", "7")
    assert code == EXIT_VIOLATION
    claims = {c["claim"]: c for c in json.loads(out)["payload"]["claims"]}
    assert claims["SUBCASE_2_2_SPLIT_EXISTS"]["violations"] == 6
