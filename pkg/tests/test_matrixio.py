import io
import json
from fractions import Fraction

import pytest

from eigenwedge import Matrix, ParseError, ShapeError, parse_matrix_file, parse_matrix_text, serialize_matrix
from eigenwedge.suite import random_int_matrix

from conftest import mat


def test_json_float():
    doc = '{"mode":"float","rows":2,"cols":2,"entries":[[1,0],[2,0],[3,0],[4,0]]}'
    A = parse_matrix_text(doc)
    assert A.mode == "float" and A == mat([[1, 2], [3, 4]], "float")


def test_json_exact_fraction():
    A = parse_matrix_text('{"mode":"exact","rows":1,"cols":2,"entries":["1/2","3-i"]}')
    assert A[0, 0] == Fraction(1, 2)
    assert complex(A[0, 1]) == 3 - 1j


def test_json_shape_error():
    with pytest.raises(ShapeError):
        parse_matrix_text('{"mode":"float","rows":2,"cols":2,"entries":[[1,0],[2,0],[3,0]]}')


def test_json_syntax_error_has_position():
    with pytest.raises(ParseError) as info:
        parse_matrix_text('{"mode": "float",\n "rows": 2,,}')
    assert info.value.line == 2


def test_plain_text():
    A = parse_matrix_text("2 2\n1 1/2\n-i 3+2i\n")
    assert A.mode == "exact"
    assert A[0, 1] == Fraction(1, 2) and complex(A[1, 0]) == -1j
    B = parse_matrix_text("2 2\n1 0.5\n0 1\n")
    assert B.mode == "float" and B[0, 1] == 0.5


def test_plain_text_errors():
    with pytest.raises(ParseError) as info:
        parse_matrix_text("2 2\n1 2\n3 x\n")
    assert info.value.line == 3 and info.value.column == 3
    with pytest.raises(ShapeError):
        parse_matrix_text("2 2\n1 2\n3\n")


def test_stream_and_path(tmp_path):
    text = "1 2\n5 6\n"
    assert parse_matrix_file(io.StringIO(text)) == mat([[5, 6]])
    path = tmp_path / "m.txt"
    path.write_text(text)
    assert parse_matrix_file(str(path)) == mat([[5, 6]])


@pytest.mark.parametrize("fmt", ["json", "text"])
def test_round_trip(rng, fmt):
    for _ in range(20):
        A = random_int_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        A = A.scale(Fraction(1, 3)) + A.scale(parse_matrix_text("1 1\ni\n")[0, 0])
        assert parse_matrix_text(serialize_matrix(A, fmt)) == A
        F = A.to_mode("float").scale(0.1)
        assert parse_matrix_text(serialize_matrix(F, fmt)) == F


def test_serialized_json_is_valid():
    doc = json.loads(serialize_matrix(Matrix.identity(2)))
    assert doc["rows"] == 2 and doc["mode"] == "exact"
