"""Ring files and polynomial expressions."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobtool.errors import BadExponent, BadOrder, DuplicateVar, FrobError, NotPrime, ParseError, UnknownVar
from frobtool.parser import parse_poly, parse_ring_file, parse_ring_spec
from frobtool.poly import Polynomial
from frobtool.ring import RingSpec

from conftest import polys, ring_of

EX = RingSpec(7, ("x0", "x1", "x2", "x3"))


def test_ring_spec_example():
    ring = parse_ring_spec("p=7\nvars=x0 x1 x2 x3\norder=grevlex")
    assert ring == RingSpec(7, ("x0", "x1", "x2", "x3"), "grevlex")


def test_single_line_and_comments():
    rf = parse_ring_file("# quartic\np=7 vars=x y order=lex  # trailing\nf = x^2 - y^3\n")
    assert rf.ring == RingSpec(7, ("x", "y"), "lex")
    assert rf.polys["f"] == parse_poly("x^2-y^3", rf.ring)


def test_default_order():
    assert parse_ring_spec("p=3\nvars=a b").order == "grevlex"


@pytest.mark.parametrize("text,exc", [
    ("p=4\nvars=x\norder=lex", NotPrime),
    ("p=2\nvars=x x\norder=lex", DuplicateVar),
    ("p=2\nvars=x\norder=revlex", BadOrder),
    ("p=2", ParseError),
    ("vars=x y", ParseError),
    ("p=2\nvars=x\nbogus line", ParseError),
])
def test_ring_spec_errors(text, exc):
    with pytest.raises(exc):
        parse_ring_spec(text)


def test_error_position():
    with pytest.raises(ParseError) as info:
        parse_ring_file("p=5\nvars=x y\nf=x + * y\n")
    assert (info.value.line, info.value.column) == (3, 7)


def test_example_polynomial():
    f = parse_poly("x0^2 - x1^6*x2^2 + x3^3", EX)
    assert f.terms == {(2, 0, 0, 0): 1, (0, 6, 2, 0): 6, (0, 0, 0, 3): 1}


@pytest.mark.parametrize("text,expected", [
    ("7*x0", "0"),
    ("-1", "6"),
    ("(x0+x1)^7", "x0^7 + x1^7"),
    ("2*x0^2*3", "6*x0^2"),
    ("-(x0 - x1)", "x1 - x0"),
    ("x0^0", "1"),
])
def test_parse_values(text, expected):
    assert parse_poly(text, EX) == parse_poly(expected, EX)


@pytest.mark.parametrize("text,exc", [
    ("x^(2)", ParseError),
    ("x0^(2)", ParseError),
    ("x0^2^3", ParseError),
    ("x0^-1", BadExponent),
    ("x4", UnknownVar),
    ("x0x1", UnknownVar),
    ("x0 x1", ParseError),
    ("", ParseError),
    ("(x0", ParseError),
    ("x0^99999999999", BadExponent),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc) as info:
        parse_poly(text, EX)
    assert info.value.line >= 1 and info.value.column >= 1


def test_caret_binds_tighter():
    r = ring_of(5, 2)
    assert parse_poly("2*x^2", r) == parse_poly("2*(x^2)", r)
    assert parse_poly("x + y*x", r) == parse_poly("x + (y*x)", r)


@settings(max_examples=300)
@given(st.sampled_from([2, 3, 7, 65521]), st.sampled_from(["lex", "grlex", "grevlex"]), st.data())
def test_print_parse_roundtrip(p, order, data):
    ring = ring_of(p, 3, order)
    f = data.draw(polys(ring, max_terms=8, max_exp=9))
    assert parse_poly(str(f), ring) == f


@settings(max_examples=1000)
@given(st.binary(max_size=40))
def test_fuzz_bytes_never_crash(raw):
    text = raw.decode("utf-8", errors="replace")
    try:
        parse_poly(text, EX)
    except ParseError as exc:
        assert exc.line >= 1 and exc.column >= 1
    try:
        parse_ring_file(text)
    except FrobError:
        pass


@settings(max_examples=500)
@given(st.text(alphabet="x0123^*+-() ", max_size=30))
def test_fuzz_grammar_alphabet(text):
    try:
        result = parse_poly(text, EX)
    except ParseError as exc:
        assert exc.line >= 1 and exc.column >= 1
    else:
        assert isinstance(result, Polynomial)
