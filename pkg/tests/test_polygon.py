import pytest

from l00p3r.core.errors import InvalidPolygonError, InvalidWordError
from l00p3r.core.polygon import (
    canonicalize,
    check_polygon,
    dihedral_images,
    is_canonical,
    is_polygon,
    parse_word,
    rerootings,
    reverse_word,
    square_word,
    word_vertices,
)


def test_parse_word_names_alphabet():
    assert parse_word("RULD") == "RULD"
    with pytest.raises(InvalidWordError) as info:
        parse_word("RUXL")
    assert "D, L, R, U" in str(info.value)


def test_word_vertices():
    assert word_vertices("RULD") == [(1, 0), (1, 1), (0, 1), (0, 0)]


@pytest.mark.parametrize(
    "word, expected",
    [("RULD", True), ("RL", True), ("RRLL", False), ("RU", False), ("RRUULDLD", True)],
)
def test_is_polygon(word, expected):
    assert is_polygon(word) is expected


def test_check_polygon_rejects():
    with pytest.raises(InvalidPolygonError):
        check_polygon("RR")
    with pytest.raises(InvalidWordError):
        check_polygon("RZ")


@pytest.mark.parametrize(
    "word, expected",
    [
        ("RL", True),
        ("LR", False),
        ("RULD", True),
        ("URDL", False),
        ("RDLU", False),
        ("RRULLD", True),
        ("RUULDD", True),
        ("RULLDR", False),
        ("RUULLDRD", True),
    ],
)
def test_is_canonical(word, expected):
    assert is_canonical(word) is expected


def test_reverse_word():
    assert reverse_word("RULD") == "URDL"


def test_rerootings_trace_the_same_polygon():
    word = "RUULLDRD"
    images = rerootings(word)
    assert len(images) == 2 * len(word)
    assert len(set(images)) == 2 * len(word)
    assert all(is_polygon(_image) for _image in images)
    assert sum(is_canonical(_image) for _image in images) == 1


@pytest.mark.parametrize("word", ["URDL", "LURD", "DRUL", "RULD"])
def test_canonicalize_unit_square(word):
    assert canonicalize(word) == "RULD"


def test_canonicalize_images():
    for _image in dihedral_images("RUULLDRD"):
        assert is_canonical(canonicalize(_image))
    assert len(dihedral_images("RULD")) == 8


def test_square_word():
    assert square_word(2) == "RRUULLDD"
    assert is_canonical(square_word(3))
