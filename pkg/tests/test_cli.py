import json
import subprocess
import sys

import pytest

from formwitt.cli import main
from formwitt.forms import parse_form, parse_vector
from formwitt.rings import parse_ring


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_isotropy_example(capsys):
    code, out = run(capsys, "isotropy", "--ring", "GF(5)", "--form", "rank=3;c[1][2]=1;c[3][3]=1")
    assert code == 0 and out["schema"] == 1 and out["status"] == "isotropic"
    x, y, z = (int(t) for t in out["witness"])
    assert (x * y + z * z) % 5 == 0 and (x, y, z) != (0, 0, 0)


def test_form_check_example(capsys):
    code, out = run(capsys, "form", "check", "--ring", "GF(2)", "--form", "rank=1;c[1][1]=1")
    assert code == 0
    assert out["regular"] is False and out["nonsingular"] is True


def test_descend_example(capsys):
    code, out = run(capsys, "descend", "--ring", "GF(5)", "--ext", "X^3+X+1", "--form", "rank=3;c[1][2]=1;c[3][3]=1",
                    "--witness", "(4, 4*X^2+4*X, X^2)")
    assert code == 0 and out["degrees"] == [3, 1]
    x, y, z = (int(t) for t in out["witness"])
    assert (x * y + z * z) % 5 == 0


def test_witnesses_re_verify(capsys):
    R = parse_ring("GF(3) x GF(3)")
    form = "rank=3;c[1][1]=(1,1);c[2][2]=(1,2);c[3][3]=(1,1)"
    code, out = run(capsys, "descend", "--ring", "GF(3) x GF(3)", "--ext", "X^3+X+1", "--form", form)
    assert code == 0 and out["degrees"] == [3, 1]
    q = parse_form(R, form)
    w = parse_vector(R, "(" + ",".join(out["witness"]) + ")")
    assert q.value(w.v) == R.zero


def test_unknown_exit_code(capsys):
    code, out = run(capsys, "isotropy", "--ring", "Q", "--form", "rank=5;c[1][1]=1;c[2][2]=1;c[3][3]=1;c[4][4]=1;c[5][5]=-7", "--bound", "2")
    assert code == 2 and out["status"] == "unknown"


def test_usage_errors(capsys):
    assert main(["isotropy", "--ring", "GF(4)", "--form", "rank=1"]) == 1
    assert main(["isotropy", "--ring", "GF(5)", "--form", "rank=2;c[3][3]=1"]) == 1
    assert main(["nonsense"]) == 1
    err = capsys.readouterr().err
    assert "position" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["witt", "--ring", "GF(5)", "--form", "rank=3;c[1][1]=1;c[2][2]=1;c[3][3]=2"],
        ["hyperbolic", "--ring", "GF(3)", "--form", "rank=2;c[1][1]=1;c[2][2]=2"],
        ["isometric", "--ring", "GF(5)", "--form", "rank=2;c[1][1]=1;c[2][2]=1", "--form2", "rank=2;c[1][2]=1"],
        ["represents", "--ring", "GF(3)", "--form", "rank=1;c[1][1]=1", "--value", "2"],
        ["represents", "--ring", "GF(3)", "--form", "rank=2;c[1][2]=1", "--value", "2", "--ext", "X^3+2*X+1", "--witness", "(1,2)"],
        ["clifford", "--ring", "GF(5)", "--form", "rank=2;c[1][1]=1;c[2][2]=1"],
        ["lift", "--ring", "GF(5)[X]/(X^2+2*X+1)", "--form", "rank=3;c[1][2]=1;c[3][3]=X", "--target", "(1,1,1)"],
    ],
)
def test_subcommands_succeed(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 0 and out["schema"] == 1


def test_output_is_byte_stable():
    argv = [sys.executable, "-m", "formwitt.cli", "witt", "--ring", "GF(7)", "--form", "rank=4;c[1][1]=1;c[2][2]=2;c[3][3]=3;c[4][4]=4"]
    a = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    assert a == b and "seconds" not in a


def test_selftest_quick_subset(capsys):
    code, out = run(capsys, "selftest", "--quick", "--criteria", "3,6")
    assert code == 0 and out["passed"] and [c["number"] for c in out["criteria"]] == [3, 6]
