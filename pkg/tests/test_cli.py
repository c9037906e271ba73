import json
import subprocess
import sys
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blackwell import reference
from blackwell.cli import main
from blackwell.fileformat import MatrixFileError, format_matrix, parse_matrix
from blackwell.polytope import binary_meet
from blackwell.channel import make_channel


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return {
        "kappa": write("kappa.txt", reference.NESTED_KAPPA_TEXT),
        "mu": write("mu.txt", reference.NESTED_MU_TEXT),
        "u": write("u.txt", reference.PENALTY_REWARD_TEXT),
        "uniform": write("uniform.txt", "1/3 1/3 1/3\n"),
        "point": write("point.txt", "0\n1\n0\n"),
        "bad": write("bad.txt", "1/2 0.5\n"),
        "ragged": write("ragged.txt", "1 0\n1\n"),
        "notstoch": write("ns.txt", "1/2 1/3\n"),
        "bin_k": write("bk.txt", "1 0\n1/2 1/2\n"),
        "bin_m": write("bm.txt", "1/2 1/2\n0 1\n"),
        "ident2": write("i2.txt", "1 0\n0 1\n"),
    }


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compare_garbling_fails(files, capsys):
    code, out, _ = run(capsys, "compare", files["kappa"], files["mu"], "--order", "garbling")
    assert code == 1 and "does not hold" in out


def test_compare_zonotope_holds(files, capsys):
    code, out, _ = run(capsys, "compare", files["kappa"], files["mu"], "--order", "zonotope")
    assert code == 0 and "holds" in out


def test_compare_self_gives_identity_witness(files, capsys):
    code, out, _ = run(capsys, "compare", files["kappa"], files["kappa"], "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["holds"]
    assert report["witness"] == [["1" if i == j else "0" for j in range(4)] for i in range(4)]


def test_compare_k_decision(files, capsys):
    assert run(capsys, "compare", files["kappa"], files["mu"], "--order", "k-decision", "--k", "2")[0] == 0
    code, out, _ = run(capsys, "compare", files["kappa"], files["mu"], "--order", "k-decision", "--k", "3")
    assert code == 1 and "unrealizable_tuple" in out


def test_reward(files, capsys):
    code, out, _ = run(capsys, "reward", files["mu"], files["uniform"], files["u"], "--format", "json")
    assert code == 0 and json.loads(out)["values"]["value"] == "1"
    code, out, _ = run(capsys, "reward", files["kappa"], files["point"], files["u"], "--format", "json")
    assert json.loads(out)["values"]["value"] == "1"
    code, out, _ = run(capsys, "reward", files["kappa"], files["uniform"], files["u"], "--format", "json")
    values = json.loads(out)["values"]
    assert values["value"] == values["brute_force_value"]
    assert F(values["value"]) < 1


def test_zonotope_command(files, capsys):
    code, out, _ = run(capsys, "zonotope", files["mu"], "--format", "json")
    assert code == 0 and len(json.loads(out)["values"]["vertices"]) == 8


def test_meet_and_join(files, capsys):
    code, out, _ = run(capsys, "meet", files["ident2"], files["bin_m"])
    assert code == 0 and parse_matrix(out) == parse_matrix("1/2 1/2\n0 1\n")
    code, out, _ = run(capsys, "meet", files["bin_k"], files["bin_m"])
    want = binary_meet(make_channel(parse_matrix("1 0\n1/2 1/2\n")), make_channel(parse_matrix("1/2 1/2\n0 1\n")))
    assert parse_matrix(out) == want.matrix
    code, out, _ = run(capsys, "join", files["bin_k"], files["bin_k"])
    assert code == 0 and parse_matrix(out) == parse_matrix("1 0\n1/2 1/2\n")


def test_usage_errors(files, capsys):
    assert run(capsys, "compare", files["bad"], files["mu"])[0] == 2
    assert run(capsys, "compare", files["ragged"], files["mu"])[0] == 2
    assert run(capsys, "compare", files["notstoch"], files["mu"])[0] == 2
    assert run(capsys, "compare", files["kappa"], files["ident2"])[0] == 2
    assert run(capsys, "meet", files["kappa"], files["kappa"])[0] == 2
    assert run(capsys, "compare", files["kappa"], "/nonexistent/file")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["compare", files["kappa"]])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["compare", files["kappa"], files["mu"], "--k", "0"])
    assert exc.value.code == 2


def test_parse_error_location():
    with pytest.raises(MatrixFileError) as exc:
        parse_matrix("# header\n1 0\n1/0 1\n", "m.txt")
    assert (exc.value.line, exc.value.column) == (3, 1)


def test_verify_paper(capsys):
    code, out, err = run(capsys, "verify-paper")
    assert code == 0 and "FAIL" not in out
    assert str(reference.STATED_KAPPA_REWARD) in out


def test_verify_paper_corrupted(capsys):
    code, _, err = run(capsys, "verify-paper", "--corrupt-kappa1")
    assert code == 1 and "intersection vertices match" in err


def test_reports_have_no_floats(files, capsys):
    for argv in (["compare", files["kappa"], files["mu"], "--order", "blackwell"],
                 ["reward", files["kappa"], files["uniform"], files["u"]],
                 ["zonotope", files["kappa"]]):
        _, out, _ = run(capsys, *argv, "--format", "json")

        def walk(v):
            assert not isinstance(v, float)
            if isinstance(v, dict):
                for x in v.values():
                    walk(x)
            elif isinstance(v, list):
                for x in v:
                    walk(x)

        walk(json.loads(out))


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "blackwell.cli", "verify-paper", "--format", "json"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert all(c["passed"] for c in json.loads(res.stdout))


entries = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_parse_print_round_trip(rows, cols, data):
    m = tuple(tuple(data.draw(entries) for _ in range(cols)) for _ in range(rows))
    text = format_matrix(m)
    assert parse_matrix(text) == m
    assert format_matrix(parse_matrix(text)) == text
