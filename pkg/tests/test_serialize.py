import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pucodes.errors import InvalidPermutation, InvalidSpec, KindMismatch
from pucodes.generator import SequenceSet
from pucodes.rings import COMPLEX, EISENSTEIN, GAUSS, Scalar, cyclotomic
from pucodes.serialize import (ParseError, format_scalar, load_spec, parse_scalar, parse_spec,
                               read_samples, read_sequences, write_sequences)

C3, C5, C8 = cyclotomic(3), cyclotomic(5), cyclotomic(8)


@pytest.mark.parametrize("text,ring,expected", [
    ("3", GAUSS, Scalar.gauss(3)),
    ("2+2i", GAUSS, Scalar.gauss(2, 2)),
    ("-1-1i", GAUSS, Scalar.gauss(-1, -1)),
    ("-i", GAUSS, Scalar.gauss(0, -1)),
    ("3i", GAUSS, Scalar.gauss(0, 3)),
    ("-2+1w", EISENSTEIN, Scalar.eisenstein(-2, 1)),
    ("w", EISENSTEIN, Scalar.eisenstein(0, 1)),
    ("w3^2", C3, C3.root_of_unity(2)),
    ("-w5^1", C5, -C5.root_of_unity(1)),
    ("w4^1", C8, C8.root_of_unity(2)),
    ("c5[1 0 -1 2]", C5, Scalar.cyclo(5, [1, 0, -1, 2])),
    ("(0.5,-1.25)", COMPLEX, Scalar.complex(0.5, -1.25)),
])
def test_parse_examples(text, ring, expected):
    assert parse_scalar(text, ring) == expected


def test_parse_errors():
    with pytest.raises(KindMismatch):
        parse_scalar("w3^1", C5)
    with pytest.raises(KindMismatch):
        parse_scalar("(1,2)", GAUSS)
    with pytest.raises(ValueError):
        parse_scalar("", GAUSS)
    with pytest.raises(ValueError):
        parse_scalar("2+zz", GAUSS)


def test_format_examples():
    assert format_scalar(Scalar.gauss(0, -1)) == "-1i"
    assert format_scalar(Scalar.gauss(2, -3)) == "2-3i"
    assert format_scalar(C3.root_of_unity(2)) == "w3^2"
    assert format_scalar(-C5.root_of_unity(0)) == "-1"


small = st.integers(-50, 50)


@given(small, small)
def test_roundtrip_quadratic(a, b):
    for x in (Scalar.gauss(a, b), Scalar.eisenstein(a, b)):
        assert parse_scalar(format_scalar(x), x.ring) == x


@given(st.sampled_from([3, 4, 5, 6, 7, 8, 12]), st.data())
def test_roundtrip_cyclo(n, data):
    ring = cyclotomic(n)
    coeffs = data.draw(st.lists(small, min_size=ring.dim, max_size=ring.dim))
    x = Scalar(ring, tuple(coeffs))
    assert parse_scalar(format_scalar(x), ring) == x


@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_roundtrip_complex(re_, im):
    x = Scalar.complex(re_, im)
    assert parse_scalar(format_scalar(x), COMPLEX) == x


def test_sequence_file_roundtrip(tmp_path):
    s = SequenceSet.from_sequences([[Scalar.gauss(1, 2), Scalar.gauss(0, -1)],
                                    [Scalar.gauss(3), Scalar.gauss(-1, -1)]])
    for name in ("a.csv", "a.json"):
        write_sequences(tmp_path / name, s)
        back = read_sequences(tmp_path / name)
        assert back.ring == GAUSS and back.sequences == s.sequences


def test_headerless_kind_guess(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("1,-1\n1,1\n")
    assert read_sequences(p).ring == cyclotomic(2)
    p.write_text("w3^1,w4^1\n1,1\n")
    assert read_sequences(p).ring == cyclotomic(12)
    p.write_text("1+1i,2w\n")
    with pytest.raises(ParseError):
        read_sequences(p)


def test_csv_diagnostics(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("#kind=gauss\n1,2\n1,zz\n")
    with pytest.raises(ParseError, match=r"bad.csv:3: column 2"):
        read_sequences(p)
    p.write_text("1,2\n1\n")
    with pytest.raises(ParseError, match="equal length"):
        read_sequences(p)
    p.write_text("#kind=nope\n1\n")
    with pytest.raises(ParseError):
        read_sequences(p)


def test_read_samples(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("1,2\n3\n")
    assert [v.as_int() for v in read_samples(p, C3)] == [1, 2, 3]
    p.write_text("# nothing\n")
    assert read_samples(p, C3) == []


def test_spec_examples():
    sp = parse_spec({"m": 3, "k": 2, "kind": "cyclo3", "unitaries": ["dft"],
                     "delays": {"standard": {"pi": [0, 1]}}})
    g = sp.generator
    assert (g.m, g.k, g.length) == (3, 2, 9) and g.constant.as_int() == 27
    sp = parse_spec({"unitaries": [[[1, 1], [1, -1]], [[1, 1], [1, -1]]],
                     "kind": "cyclo2", "delays": {"explicit": [[0, 1]]},
                     "set_index": 1, "orientation": "column"})
    assert sp.set_index == 1 and sp.orientation == "column" and sp.generator.length == 2


@pytest.mark.parametrize("doc,exc,msg", [
    ({"unitaries": ["dft"], "m": 3, "k": 2, "delays": {"standard": {"pi": [0, 0]}}},
     InvalidPermutation, "invalid permutation"),
    ({"unitaries": ["dft"], "m": 3, "delays": {"standard": {"pi": []}}, "extra": 1},
     InvalidSpec, "unknown field"),
    ({"unitaries": ["dft"], "m": 3}, InvalidSpec, "missing field"),
    ({"unitaries": [[[1, 1], [1, 1]]], "kind": "cyclo2", "delays": {"explicit": []}},
     InvalidSpec, None),
    ({"unitaries": ["dft"], "m": 3, "k": 1, "delays": {"sideways": {}}}, InvalidSpec, "delay mode"),
    ({"unitaries": [[[1, 1], [1, -1]]], "delays": {"explicit": []}}, InvalidSpec, "kind"),
])
def test_spec_errors(doc, exc, msg):
    with pytest.raises(exc, match=msg):
        parse_spec(doc)


def test_load_spec_bad_json(tmp_path):
    p = tmp_path / "s.json"
    p.write_text("{not json")
    with pytest.raises(ParseError, match=r"s.json:1"):
        load_spec(p)
    p.write_text(json.dumps({"unitaries": ["hadamard"], "m": 2, "k": 1,
                             "delays": {"standard": {"pi": [0]}}}))
    assert load_spec(p).generator.constant.as_int() == 4


def test_unquoted_complex_pairs(tmp_path):
    p = tmp_path / "f.csv"
    p.write_text('#kind=complex\n(1.0,0.0), "(0.5,-1)"\n(2,3),(1e-3,4)\n')
    s = read_sequences(p)
    assert s.sequences[0][1] == Scalar.complex(0.5, -1.0)
    assert s.sequences[1][0] == Scalar.complex(2.0, 3.0)
    p.write_text("#kind=complex\n1,(2\n")
    with pytest.raises(ParseError, match="f.csv:2"):
        read_sequences(p)
