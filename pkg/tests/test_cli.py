import numpy as np
import pytest

from hypercube_decomp import read_decomposition
from hypercube_decomp.cli import run_cli
from hypercube_decomp.fileformat import dumps


def test_params_main(capsys):
    assert run_cli(["params", "--n", "14", "--mode", "main"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3
    assert lines[1].split()[:7] == ["14", "1", "1", "7", "2", "3", "6"]
    assert "{7*2^m : 4 <= m <= 10}" in lines[1] and "{2^14}" in lines[2]


def test_params_cbgen(capsys):
    assert run_cli(["params", "--n", "180", "--mode", "cbgen"]) == 0
    out = capsys.readouterr().out
    assert "{2^q : 9 <= q <= 178}" in out and "{45*2^m : 3 <= m <= 172}" in out


def test_construct_then_verify(tmp_path, capsys):
    out = tmp_path / "q6.hcd"
    assert run_cli(["construct", "--n", "6", "--x", "1", "--y", "3", "--q", "0", "--out", str(out)]) == 0
    assert run_cli(["verify", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "OK n=6 pieces=4 length=48"
    doc = read_decomposition(out)
    assert doc.certificate is not None and doc.certificate.a == 2


def test_construct_is_byte_stable(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for p in (a, b):
        assert run_cli(["construct", "--n", "10", "--q", "2", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_construct_stdout(capsysbinary):
    assert run_cli(["construct", "--n", "4", "--mode", "cbgen", "--no-certificate"]) == 0
    out = capsysbinary.readouterr().out
    assert out.startswith(b"HCD 1\nn 4\nkind cycles\ncount 2\n") and b"certificate" not in out


def test_paths(tmp_path, capsys):
    out = tmp_path / "p.hcd"
    assert run_cli(["paths", "--n", "6", "--len", "8", "--out", str(out)]) == 0
    assert run_cli(["verify", "--threads", "2", str(out)]) == 0
    assert "OK n=6 pieces=24 length=8" in capsys.readouterr().out
    assert run_cli(["paths", "--n", "6", "--len", "5"]) == 2


def test_exit_codes(tmp_path, capsys):
    assert run_cli(["construct", "--n", "30", "--x", "3", "--q", "0"]) == 3
    assert "PARAMS-ONLY n=30 count=24 length=671088640" in capsys.readouterr().err
    assert run_cli(["construct", "--n", "6", "--q", "9"]) == 2
    assert run_cli(["construct", "--n", "14", "--x", "7"]) == 2
    assert run_cli(["bogus"]) == 2
    bad = tmp_path / "bad.hcd"
    bad.write_bytes(dumps(4, "cycles", np.array([[0, 1, 3, 2]])))
    assert run_cli(["verify", str(bad)]) == 1
    assert capsys.readouterr().out.startswith("FAIL coverage")
    (tmp_path / "junk").write_bytes(b"nope\n")
    assert run_cli(["verify", str(tmp_path / "junk")]) == 1


def test_certificate_failure_is_reported(tmp_path, q4_pair, capsys):
    reps = q4_pair.reps.copy()
    reps[0, 0] = 1
    q4_pair.reps = reps
    path = tmp_path / "f.hcd"
    path.write_bytes(dumps(4, "cycles", q4_pair.cycles, q4_pair))
    assert run_cli(["verify", str(path)]) == 1
    assert capsys.readouterr().out.startswith("FAIL certificate")


def test_base_commands(tmp_path, capsys):
    out = tmp_path / "b3.hcd"
    assert run_cli(["base-search", "--x", "3", "--out", str(out)]) == 0
    assert run_cli(["base-import", str(out)]) == 0
    assert run_cli(["base-search", "--x", "3", "--budget", "10"]) == 3
    doc = read_decomposition(out)
    pieces = doc.pieces.copy()
    pieces[1] = pieces[0]
    corrupt = tmp_path / "c.hcd"
    corrupt.write_bytes(dumps(6, "cycles", pieces))
    assert run_cli(["base-import", str(corrupt)]) == 1
    assert run_cli(["construct", "--n", "12", "--x", "3", "--q", "2", "--out", str(tmp_path / "q12")]) == 0
    assert run_cli(["verify", str(tmp_path / "q12")]) == 0
