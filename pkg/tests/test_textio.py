import pytest
from hypothesis import given
from hypothesis import strategies as st

from codetower.bincodes import BinaryCode, named_code
from codetower.corpus import even_kleinian, small_lattices
from codetower.errors import ParseError
from codetower.kleinian import KleinianCode
from codetower.textio import format_code, format_lattice, parse_code, parse_lattice


def test_kleinian_roundtrip_corpus():
    for K in even_kleinian().values():
        assert parse_code(format_code(K)) == K


def test_binary_roundtrip_named():
    for name in ("e8", "e8^2", "d16plus"):
        C = named_code(name)
        assert parse_code(format_code(C)) == C


def test_lattice_roundtrip_corpus():
    for L in small_lattices().values():
        assert parse_lattice(format_lattice(L)) == L


def test_comments_and_blank_lines():
    text = "# header comment\nkleinian 2\n\naa  # first\nbb\n"
    K = parse_code(text)
    assert isinstance(K, KleinianCode) and K.length == 2 and K.rank == 2


def test_lattice_form_line():
    L = parse_lattice("lattice 2 1\n1 0\n0 1\nform 2 4\n")
    assert L.form == (2, 4)
    assert "form 2 4" in format_lattice(L)


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("kleinian 3\naxb\n", 2, 2),
        ("binary 4\n1100\n101\n", 3, 4),
        ("lattice 2 1\n1 0\n0 x\n", 3, 3),
        ("matrix 3\n", 1, 1),
        ("binary q\n", 1, 8),
    ],
)
def test_parse_error_positions(text, line, col):
    with pytest.raises(ParseError) as exc:
        (parse_lattice if text.startswith("lattice") else parse_code)(text)
    assert exc.value.line == line and exc.value.column == col
    assert "line %d" % line in str(exc.value)


def test_truncated_lattice():
    with pytest.raises(ParseError) as exc:
        parse_lattice("lattice 3 1\n1 0 0\n0 1 0\n")
    assert exc.value.line == 3


def test_empty_input():
    with pytest.raises(ParseError):
        parse_code("# only a comment\n\n")


@given(st.integers(1, 10).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, 2 ** n - 1), max_size=6))))
def test_binary_roundtrip_random(data):
    from codetower import f2

    n, rows = data
    C = BinaryCode(n, f2.rref(rows))
    assert parse_code(format_code(C)) == C


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, 4 ** n - 1), max_size=6))))
def test_kleinian_roundtrip_random(data):
    from codetower import f2

    n, rows = data
    K = KleinianCode(n, f2.rref(rows))
    assert parse_code(format_code(K)) == K
