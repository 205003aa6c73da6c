import json

import pytest

from ringlat import cli


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, _ = run(capsys, argv)
    return code, json.loads(out)


def test_count_bell(capsys):
    code, out, _ = run(capsys, ["count", "bell", "4"])
    assert code == 0
    assert out.strip() == "15"


def test_count_stirling(capsys):
    code, out, _ = run(capsys, ["count", "stirling", "5", "3"])
    assert code == 0
    assert out.strip() == "25"


def test_count_exal(capsys):
    code, out, _ = run(capsys, ["count", "exal", "Z/4", "2", "3"])
    assert code == 0
    assert out.strip() == "3"


def test_count_usage_error(capsys):
    code, _, err = run(capsys, ["count", "bell"])
    assert code == 2
    assert "usage: count bell" in err


def test_lattice_diagonal(capsys):
    code, doc = run_json(capsys, ["lattice", "Z/4", "Z/4 x Z/4", "--embed", "diagonal"])
    assert code == 0
    assert doc["schema"] == 1
    assert doc["count"] == 3


def test_lattice_dot_output(capsys, tmp_path):
    target = tmp_path / "hasse.dot"
    code, doc = run_json(capsys, ["lattice", "Z/4", "Z/4 x Z/4", "--dot", str(target)])
    assert code == 0
    assert doc["count"] == 3
    assert "digraph" in target.read_text()


def test_classify_inert(capsys):
    code, doc = run_json(capsys, ["classify", "GF(2)", "GF(2^2)"])
    assert code == 0
    assert doc["minimal"] is True
    assert doc["classification"]["class"] == "inert"
    assert doc["classification"]["residue_degree"] == 2
    assert doc["predicates"]["pointwise_minimal"] is True
    assert doc["predicates"]["subintegral"] is False


def test_closures_diagonal_square(capsys):
    code, doc = run_json(capsys, ["closures", "Z/4", "Z/4 x Z/4"])
    assert code == 0
    assert doc["kind"] == "canonical_decomposition"
    assert doc["base"] == [0, 5, 10, 15]
    assert doc["seminormalization"] == [0, 2, 5, 7, 8, 10, 13, 15]
    assert len(doc["t_closure"]) == 16
    assert len(doc["top"]) == 16


def test_crt_three_ideals(capsys):
    code, doc = run_json(capsys, ["crt", "Z/12", "--ideals", "(4);(3);(3)"])
    assert code == 0
    assert doc["quotient_orders"] == [4, 3, 3]
    assert doc["conductor"] == [0, 3, 6, 9]
    assert doc["crt_isomorphism"] is False
    assert doc["minimal"] == {"minimal": True, "witness_pair": [1, 2]}
    assert doc["reduction"]["dropped_factors"] == [0]
    assert doc["reduction"]["base_order"] == 3


def test_crt_two_ideals(capsys):
    code, doc = run_json(capsys, ["crt", "Z/8", "--ideals", "(4);(0)"])
    assert code == 0
    assert doc["conductor"] == [0, 4]
    assert doc["minimal"] == {
        "minimal": False,
        "quotient_is_field": False,
        "predicted_count": 3,
    }
    assert doc["reduction"] == {
        "crt_isomorphism": False,
        "dropped_factors": [],
        "base_order": 4,
    }


def test_idealize_report(capsys):
    code, doc = run_json(capsys, ["idealize", "Z/4", "--module", "(2) + ()"])
    assert code == 0
    assert doc == {
        "schema": 1,
        "kind": "idealize",
        "ring": "Z/4",
        "module_order": 8,
        "idealization_order": 32,
        "nu": 8,
        "module_length": 3,
        "cyclic": False,
        "uniserial": False,
        "faithful": True,
        "lattice_bijection": True,
        "extension_lattice_count": 8,
    }


def test_verify_suite(capsys):
    code, doc = run_json(capsys, ["verify", "--suite", "s4"])
    assert code == 0
    assert doc["passed"] is True
    assert doc["suite"] == "s4"
    assert all(r["passed"] for r in doc["results"])
    assert all({"name", "passed", "detail"} <= set(r) for r in doc["results"])


def test_explicit_embedding(capsys):
    code, doc = run_json(capsys, ["lattice", "Z/2", "Z/2 x Z/2", "--embed", "explicit:0,3"])
    assert code == 0
    assert doc["count"] == 2


def test_exit_code_no_embedding(capsys):
    code, _, err = run(capsys, ["classify", "Z/6", "GF(2^2)"])
    assert code == 2
    assert "cannot infer an embedding" in err


def test_exit_code_parse_error(capsys):
    code, _, err = run(capsys, ["lattice", "Z/2[t]/(t@)", "Z/4"])
    assert code == 2
    assert "unexpected character" in err


def test_exit_code_bad_explicit_length(capsys):
    code, _, err = run(capsys, ["lattice", "Z/2", "Z/2 x Z/2", "--embed", "explicit:0,1,2"])
    assert code == 2
    assert "3 images for a base of order 2" in err


def test_exit_code_unknown_embedding(capsys):
    code, _, err = run(capsys, ["lattice", "Z/2", "Z/2 x Z/2", "--embed", "wat"])
    assert code == 2
    assert "unknown embedding" in err


def test_exit_code_first_factor_needs_product(capsys):
    code, _, err = run(capsys, ["lattice", "Z/2", "Z/4", "--embed", "first-factor"])
    assert code == 2
    assert "no compatible identity" in err


def test_exit_code_composite_field_order(capsys):
    code, _, err = run(capsys, ["classify", "Z/6", "GF(4)"])
    assert code == 2
    assert "invalid characteristic" in err


def test_exit_code_size_limit(capsys):
    code, _, err = run(capsys, ["lattice", "GF(2)", "GF(2^44)"])
    assert code == 3
    assert "size limit" in err
