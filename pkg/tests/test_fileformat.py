import io

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypercube_decomp import binary_decomposition, read_decomposition, write_decomposition
from hypercube_decomp.fileformat import FormatError, dumps, format_rows, hex_width, loads


def test_roundtrip_with_certificate(q4_quad):
    data = dumps(4, "cycles", q4_quad.cycles, q4_quad)
    doc = loads(data)
    assert doc.count == 4 and doc.length == 8 and doc.kind == "cycles"
    assert np.array_equal(doc.pieces, q4_quad.cycles)
    c = doc.certificate
    assert (c.a, c.b, c.dr) == (4, 2, True)
    assert np.array_equal(c.reps, q4_quad.reps) and np.array_equal(c.subset_of, q4_quad.subset_of)
    assert dumps(4, "cycles", doc.pieces, c) == data


def test_layout():
    text = dumps(6, "paths", np.array([[0, 1, 3]])).decode()
    assert text == "HCD 1\nn 6\nkind paths\ncount 1\nlength 2\npieces\n00 01 03\nend\n"
    assert hex_width(1) == 1 and hex_width(9) == 3
    assert format_rows(np.array([[10, 255]]), 2) == b"0a ff\n"


@given(st.integers(1, 20), st.integers(1, 6), st.integers(2, 9), st.integers(0, 2**31))
def test_roundtrip_random(n, rows, cols, seed):
    rng = np.random.default_rng(seed)
    pieces = rng.integers(0, 1 << n, size=(rows, cols))
    doc = loads(dumps(n, "cycles", pieces))
    assert doc.n == n and np.array_equal(doc.pieces, pieces)


def test_streaming_blocks():
    d = binary_decomposition(6, 1)
    buf = io.BytesIO()
    write_decomposition(buf, 6, "cycles", iter([d.cycles[:3], d.cycles[3:]]), count=d.count)
    assert buf.getvalue() == dumps(6, "cycles", d.cycles)
    with pytest.raises(FormatError):
        write_decomposition(io.BytesIO(), 6, "cycles", iter([d.cycles[:3]]), count=d.count)


BASE = "HCD 1\nn 3\nkind cycles\ncount 1\nlength 4\npieces\n0 1 3 2\nend\n"


def test_base_text_parses():
    assert loads(BASE.encode()).pieces.tolist() == [[0, 1, 3, 2]]


@pytest.mark.parametrize(
    "old, new",
    [
        ("HCD 1", "HCD 2"),
        ("\n", "\r\n"),
        ("count 1", "count 2"),
        ("0 1 3 2", "0 g 3 2"),
        ("0 1 3 2", "0 01 3 2"),
        ("0 1 3 2", "0 1 9 2"),
        ("length 4", "length 5"),
        ("kind cycles", "kind trees"),
        ("end\n", ""),
        ("0 1 3 2", "0  1 3 2"),
        ("pieces\n", "body\n"),
    ],
)
def test_strict_reader(old, new):
    with pytest.raises(FormatError):
        loads(BASE.replace(old, new).encode())


def test_file_paths(tmp_path, q4_pair):
    p = tmp_path / "x.hcd"
    write_decomposition(p, 4, "cycles", q4_pair.cycles, q4_pair)
    assert read_decomposition(p).certificate.a == 2
