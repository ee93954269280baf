"""CLI behavior: exit codes, golden outputs, JSON schema, content parity."""

import json
import pathlib

import jsonschema
import pytest

from finfock.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"
SCHEMA = json.loads(
    (pathlib.Path(__file__).parent.parent / "schema" / "output.json").read_text()
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc, err


# ---------------------------------------------------------------------------
# exit codes


def test_success_exit_zero(capsys):
    code, out, err = run(capsys, "coeff", "E", "--terms", "4")
    assert code == 0
    assert err == ""
    assert out.splitlines()[1:] == ["0: 1", "1: 1", "2: 1", "3: 1"]


def test_parse_error_exit_two(capsys):
    code, out, err = run(capsys, "coeff", "E(")
    assert code == 2
    assert out == ""
    assert "UnbalancedParen" in err


def test_unknown_name_exit_two(capsys):
    code, _, err = run(capsys, "eval", "Q", "--at", "1")
    assert code == 2
    assert "UnknownName" in err


def test_bad_cycle_exit_two(capsys):
    code, _, err = run(capsys, "quotient", "--size", "4", "--gens", "(1 9)")
    assert code == 2
    assert "parse error" in err


def test_bad_rational_exit_two(capsys):
    code, _, err = run(capsys, "eval", "E", "--at", "one")
    assert code == 2


def test_domain_error_exit_one(capsys):
    code, _, err = run(capsys, "feynman", "--valences", "10,5", "--out", "1", "--in", "1")
    assert code == 1
    assert "error" in err

    code, _, err = run(capsys, "wick", "--power", "13")
    assert code == 1

    code, _, err = run(capsys, "oracle", "E(E+)", "--nmax", "4")
    assert code == 1

    code, _, err = run(capsys, "eval", "E", "--at", "-1")
    assert code == 1


def test_diverged_is_still_success(capsys):
    code, out, _ = run(capsys, "eval", "B", "--at", "1", "--terms", "60")
    assert code == 0
    assert "status: diverged" in out


def test_stdout_carries_only_the_document(capsys):
    code, out, err = run(capsys, "homotopy", "--components", "2")
    assert code == 0
    assert err == ""
    assert out.startswith("homotopy")


# ---------------------------------------------------------------------------
# golden files


@pytest.mark.parametrize(
    "name,argv",
    [
        ("coeff_trees_egf", ["coeff", "B", "--terms", "6", "--egf"]),
        ("eval_sets_at_one", ["eval", "E", "--at", "1", "--terms", "30"]),
        ("eval_trees_at_one", ["eval", "B", "--at", "1", "--terms", "60"]),
        (
            "quotient_free_fold",
            ["quotient", "--size", "6", "--gens", "(1 4)(2 5)(3 6)"],
        ),
        ("wick_cube", ["wick", "--power", "3"]),
    ],
)
def test_golden(capsys, name, argv):
    code, out, err = run(capsys, *argv)
    assert code == 0 and err == ""
    expected = (GOLDEN / (name + ".txt")).read_text()
    assert out == expected


# ---------------------------------------------------------------------------
# JSON documents


def test_json_coeff(capsys):
    code, doc, _ = run_json(capsys, "coeff", "E(E+)", "--terms", "6")
    assert code == 0
    counts = [row["count"] for row in doc["result"]["sequence"]]
    assert counts == ["1", "1", "2", "5", "15", "52"]


def test_json_eval_with_continuation(capsys):
    code, doc, _ = run_json(capsys, "eval", "B", "--at", "1", "--terms", "60")
    assert code == 0
    result = doc["result"]
    assert result["status"] == "diverged"
    assert abs(result["continuation"]["real"] - 0.5) < 1e-9
    assert abs(result["continuation"]["imag"] + 0.8660254037844386) < 1e-9


def test_json_quotient(capsys):
    code, doc, _ = run_json(
        capsys, "quotient", "--size", "5", "--gens", "(1 5)(2 4)"
    )
    assert code == 0
    assert doc["result"]["cardinality"] == "5/2"
    assert [o["stabilizer_order"] for o in doc["result"]["orbits"]] == [1, 1, 2]


def test_json_homotopy(capsys):
    code, doc, _ = run_json(capsys, "homotopy", "--components", "6,2;3")
    assert code == 0
    assert doc["result"]["cardinality"] == "2/3"


def test_json_wick_normal(capsys):
    code, doc, _ = run_json(capsys, "wick", "--normal", "A A*")
    assert code == 0
    assert doc["result"]["normal_form"] == "1 + A*A"


def test_json_feynman(capsys):
    code, doc, _ = run_json(
        capsys, "feynman", "--valences", "2,2", "--out", "0", "--in", "0", "--oracle"
    )
    assert code == 0
    assert doc["result"] == {"algebraic": "2", "oracle": 2, "verdict": "agree"}


def test_json_oracle(capsys):
    code, doc, _ = run_json(capsys, "oracle", "E*E", "--nmax", "7")
    assert code == 0
    assert doc["result"]["verdict"] == "agree"
    assert [row["engine"] for row in doc["result"]["rows"]] == [
        str(2**n) for n in range(8)
    ]


def test_json_inner(capsys):
    code, doc, _ = run_json(capsys, "inner", "E", "E")
    assert code == 0
    assert doc["result"]["status"] == "converged"
    assert doc["result"]["value_decimal"].startswith("2.718281828")


# ---------------------------------------------------------------------------
# plain text and JSON agree on the numbers


def test_plain_json_numeric_parity_coeff(capsys):
    _, plain, _ = run(capsys, "coeff", "B", "--terms", "6")
    _, doc, _ = run_json(capsys, "coeff", "B", "--terms", "6")
    plain_counts = [line.split(": ")[1] for line in plain.splitlines()[1:]]
    assert plain_counts == [row["count"] for row in doc["result"]["sequence"]]


def test_plain_json_numeric_parity_eval(capsys):
    _, plain, _ = run(capsys, "eval", "E", "--at", "1", "--terms", "30")
    _, doc, _ = run_json(capsys, "eval", "E", "--at", "1", "--terms", "30")
    value_line = [ln for ln in plain.splitlines() if ln.startswith("value: ")][0]
    assert value_line.split(": ")[1] == doc["result"]["value"]


def test_plain_json_numeric_parity_quotient(capsys):
    args = ["quotient", "--size", "6", "--gens", "(1 4)(2 5)(3 6)"]
    _, plain, _ = run(capsys, *args)
    _, doc, _ = run_json(capsys, *args)
    card = [ln for ln in plain.splitlines() if ln.startswith("cardinality")][0]
    assert card.split(": ")[1] == doc["result"]["cardinality"]


def test_coeff_impossible_structure(capsys):
    code, out, _ = run(capsys, "coeff", "0", "--terms", "3")
    assert code == 0
    assert out.splitlines()[1:] == ["0: 0", "1: 0", "2: 0"]


def test_eval_polynomial_exact(capsys):
    code, doc, _ = run_json(capsys, "eval", "X^3", "--at", "2", "--terms", "16")
    assert code == 0
    assert doc["result"]["status"] == "converged"
    assert doc["result"]["value"] == "8"
    assert doc["result"]["tail_bound"] == "0"


def test_quotient_trivial_group(capsys):
    code, doc, _ = run_json(capsys, "quotient", "--size", "4", "--gens", "")
    assert code == 0
    assert doc["result"]["cardinality"] == "4"
    assert doc["result"]["group_order"] == 1


def test_wick_already_normal(capsys):
    code, doc, _ = run_json(capsys, "wick", "--normal", "A* A")
    assert code == 0
    assert doc["result"]["normal_form"] == "A*A"


def test_feynman_odd_parity(capsys):
    code, doc, _ = run_json(capsys, "feynman", "--valences", "3")
    assert code == 0
    assert doc["result"]["algebraic"] == "0"


def test_feynman_oracle_mismatch_exit(capsys, monkeypatch):
    import finfock.cli as cli_mod

    monkeypatch.setattr(cli_mod.fock, "feynman_oracle", lambda p: (99, []))
    code, out, _ = run(capsys, "feynman", "--valences", "2,2", "--oracle")
    assert code == 1
    assert "mismatch" in out
