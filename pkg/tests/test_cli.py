import shutil
import subprocess
import sys

import pytest

from desc3d import cli
from desc3d.nzdata import builtin, write_triangulation
from desc3d.qseries import QSeries


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_machine(text):
    lines = text.splitlines()
    assert lines[0] == "desc3d-output 1" and lines[-1] == "[end]"
    sections, cur, i = [], None, 2
    while i < len(lines) - 1:
        ln = lines[i]
        if ln.startswith("["):
            cur = (ln[1:-1], {})
            sections.append(cur)
        elif " <<" in ln:
            key, n = ln.split(" <<")
            cur[1][key] = "\n".join(lines[i + 1:i + 1 + int(n)])
            i += int(n)
        else:
            key, _, val = ln.partition(" = ")
            cur[1][key] = val
        i += 1
    return lines[1], sections


def test_index_text(capsys):
    code, out, _ = run(capsys, "index", "4_1", "--trunc", "3")
    assert code == 0
    assert out.strip() == "1 - 8*q - 9*q^2 + O(q^3)"


def test_index_machine_round_trips_series(capsys):
    code, out, _ = run(capsys, "--format", "machine", "index", "4_1", "0", "1", "--trunc", "5")
    assert code == 0
    cmd, secs = parse_machine(out)
    assert cmd == "command index"
    name, fields = secs[0]
    assert name == "index" and fields["n"] == "0" and fields["np"] == "1"
    s = QSeries.from_text(fields["series"])
    assert s.trunc == 10 and s.valuation == -1


def test_index_window_and_threads(capsys):
    code, out, _ = run(capsys, "--threads", "2", "index", "4_1", "--window", "2", "--trunc", "4")
    assert code == 0
    assert out.splitlines()[0].startswith("I(0,0) = 1 - 8*q")
    assert len(out.splitlines()) == 4


def test_index_from_file(tmp_path, capsys):
    path = tmp_path / "fig8.tri"
    path.write_text(write_triangulation(builtin("4_1")))
    code, out, _ = run(capsys, "index", str(path), "--trunc", "3")
    assert code == 0 and out.strip() == "1 - 8*q - 9*q^2 + O(q^3)"


def test_bad_file_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.tri"
    path.write_text("N 2\nG\n1\n")
    code, _, err = run(capsys, "index", str(path))
    assert code == 1 and "line" in err


def test_insert_builtin(capsys):
    code, out, _ = run(capsys, "insert", "4_1", "--builtin", "O1", "--trunc", "2")
    assert code == 0 and out.strip() == "-3 + 15*q + O(q^2)"


def test_insert_expression(capsys):
    code, out, _ = run(capsys, "insert", "4_1", "--insertion", "z1^-1", "--trunc", "2")
    code2, out2, _ = run(capsys, "insert", "4_1", "--builtin", "O2", "--trunc", "2")
    assert code == code2 == 0 and out == out2


def test_insert_requires_an_insertion(capsys):
    code, _, _ = run(capsys, "insert", "4_1")
    assert code == 1


def test_qmatrix(capsys):
    code, out, _ = run(capsys, "--format", "machine", "qmatrix", "4_1", "--builtin", "O1", "--trunc", "40")
    assert code == 0
    _, secs = parse_machine(out)
    fields = secs[0][1]
    assert fields["size"] == "2"
    from desc3d.ratfun import RatFun
    assert RatFun.from_text(fields["det"]) == RatFun.from_text("(2*q^-1 + 1)/(1)")


def test_qmatrix_no_reconstruction_exit_code(capsys):
    code, _, err = run(capsys, "qmatrix", "m237", "--builtin", "O", "--window", "2", "--trunc", "12",
                       "--max-deg", "2")
    assert code == 2 and "NoReconstruction" in err


def test_guess_block_family(capsys):
    code, out, _ = run(capsys, "guess", "4_1", "--family", "block", "--order", "2", "--xdeg", "6",
                       "--udeg", "6", "--trunc", "100")
    assert code == 0
    from desc3d.qdiff import QDiffOperator, known_operator
    assert QDiffOperator.from_text(out) == known_operator("4_1").canonical()


def test_guess_insufficient_data_exit_code(capsys):
    code, _, err = run(capsys, "guess", "4_1", "--order", "2", "--trunc", "2")
    assert code == 2


def test_blocks(capsys):
    code, out, _ = run(capsys, "blocks", "--knot", "4_1", "--alpha", "0", "--n", "0", "--trunc", "3")
    assert code == 0 and out.strip() == "1 - q - 2*q^2 + O(q^3)"


def test_blocks_rejects_bad_alpha(capsys):
    code, _, _ = run(capsys, "blocks", "--knot", "4_1", "--alpha", "2")
    assert code == 1


def test_verify_passing_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lagrangian", "--knot", "4_1", "--trunc", "6")
    assert code == 0
    assert out.splitlines()[-1] == "8/8 passed"


def test_verify_failing_suite_exit_code(capsys):
    # the printed operators do not give the printed classical ratios
    code, out, _ = run(capsys, "verify", "--suite", "aj")
    assert code == 2 and "FAIL" in out


@pytest.mark.parametrize("argv", [[], ["nonsense"], ["index"], ["index", "4_1", "--trunc", "-1"],
                                  ["--threads", "0", "index", "4_1"], ["index", "9_9"]])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 1


def test_console_script():
    exe = shutil.which("desc3d")
    cmd = [exe] if exe else [sys.executable, "-m", "desc3d.cli"]
    res = subprocess.run(cmd + ["index", "4_1", "--trunc", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "1 - 8*q + O(q^2)"
    res = subprocess.run(cmd + ["index"], capture_output=True, text=True)
    assert res.returncode == 1
