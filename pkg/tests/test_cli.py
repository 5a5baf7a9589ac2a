"""Command-line interface: outputs, exit codes, determinism."""

import json

import pytest

from bpsing.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_describe(capsys):
    code, out, err = run(capsys, "describe", "-p", "2")
    data = json.loads(out)
    assert code == 0
    assert data["cuboid_size"] == 1
    assert data["specials"]["delta"] == {"coeffs": [0], "level": 0}


def test_tilt_listing(capsys):
    code, out, _ = run(capsys, "tilt", "-p", "3,4", "--kind", "koszul")
    assert code == 0
    assert len(json.loads(out)["summands"]) == 6


def test_endo_pass(capsys):
    code, out, _ = run(capsys, "endo", "-p", "3,4", "--kind", "cuboid")
    assert code == 0
    data = json.loads(out)
    assert data["equal"] is True
    assert data["hom_matrix"] == data["predicted_cartan"]


def test_endo_replicated_kind_parsing(capsys):
    code, out, _ = run(capsys, "endo", "-p", "3,4", "--kind", "replicated:2")
    assert code == 0 and json.loads(out)["equal"]


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "-p", "3,4", "--kind", "cuboid", "--window", "4")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_ladder(capsys):
    code, out, _ = run(capsys, "ladder", "-p", "3,4", "--split", "3")
    assert code == 0
    assert json.loads(out)["composite_zero"] is True


def test_glue(capsys):
    code, out, _ = run(capsys, "glue", "-p", "3,4", "--variant", "both")
    assert code == 0
    data = json.loads(out)
    assert data["cuboid"]["equals_cuboid"] and data["koszul"]["equals_koszul"]


@pytest.mark.parametrize("suite", ["happel-seidel", "replicated", "dynkin"])
def test_coxeter_suites(capsys, suite):
    code, out, _ = run(capsys, "coxeter", "--suite", suite)
    assert code == 0
    assert json.loads(out)["all_equal"] is True


def test_oracle_check_small(capsys):
    code, out, _ = run(capsys, "oracle-check", "-p", "2,2", "--shift-window", "1")
    assert code == 0
    data = json.loads(out)
    assert data["disagreements"] == 0


def test_quiver_dot(capsys):
    code, out, _ = run(capsys, "quiver", "-p", "3,4", "--algebra", "lambda:2,2", "--dot")
    assert code == 0
    assert out.startswith("digraph")


def test_quiver_csv(capsys):
    code, out, _ = run(capsys, "quiver", "--algebra", "nakayama:3,2", "--csv")
    assert code == 0
    assert out.splitlines()[0] == ",1,2,3"


def test_bad_arguments_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["describe"])
    assert exc.value.code == 2


def test_weight_cap():
    with pytest.raises(SystemExit):
        main(["describe", "-p", "100,100"])


def test_deterministic_output(capsys):
    _, out1, _ = run(capsys, "endo", "-p", "3,3", "--kind", "cuboid")
    _, out2, _ = run(capsys, "endo", "-p", "3,3", "--kind", "cuboid")
    assert out1 == out2


def test_oracle_check_single_pair(capsys):
    code, out, _ = run(capsys, "oracle-check", "-p", "3,4", "--pair", "U[2,3]", "U[1,1]")
    assert code == 0
    data = json.loads(out)
    assert data["calculus"] == data["oracle"] == 1
