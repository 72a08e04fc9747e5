import numpy as np
from numpy.random import default_rng
import pytest

from l00p3r.core.enumeration import collect_polygons
from l00p3r.core.errors import DomainError, InvalidPolygonError, TableTooSmallError
from l00p3r.core.fraction import (
    FpEvaluator,
    NeighborhoodGraph,
    build_neighborhood,
    extract_Cp,
    extract_Cp_float,
    fp_exact,
    fp_numeric,
    square_family,
)
from l00p3r.core.green import build_ctable
from l00p3r.core.numerics import pilinear_to_float
from l00p3r.core.polygon import dihedral_images, rerootings, square_word
from l00p3r.core.reference import CORNER_WORD, POLYGON_TABLE, SQUARE_TABLE, corner_polynomial
from l00p3r.utils.random import sample_words


def test_neighborhood_of_unit_square():
    graph = build_neighborhood("RULD")
    assert len(graph) == 12
    assert graph.vertices[:4] == [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert list(graph.degrees[:4]) == [4, 4, 4, 4]
    assert np.array_equal(graph.adjacency, graph.adjacency.T)
    assert graph.spread() == 3


def test_neighbor_block_is_empty():
    word = "RULD"
    graph = build_neighborhood(word)
    assert not graph.adjacency[len(word):, len(word):].any()
    assert list(graph.degrees[len(word):]) == [1] * 8
    assert np.array_equal(graph.degrees, graph.adjacency.sum(axis=1))


def test_neighborhood_of_doubled_edge():
    graph = NeighborhoodGraph("RL")
    assert len(graph) == 8
    assert graph.word == "RL"


def test_neighborhood_bound():
    for _word in collect_polygons(10):
        assert len(build_neighborhood(_word)) <= 30


def test_neighborhood_rejects_open_words():
    with pytest.raises(InvalidPolygonError):
        build_neighborhood("RRU")


def test_float_extraction_matches_exact(small_table):
    graph = build_neighborhood(CORNER_WORD)
    exact = extract_Cp(small_table, graph)
    floats = extract_Cp_float(small_table, graph)
    expected = np.array([[pilinear_to_float(_v) for _v in _row] for _row in exact])
    assert np.array_equal(floats, expected)


def test_doubled_edge_value(small_table):
    assert fp_numeric("RL", small_table) == pytest.approx(POLYGON_TABLE[2][1] / 4, rel=1e-12)


def test_unit_square_value(small_table):
    assert fp_numeric("RULD", small_table) == pytest.approx(SQUARE_TABLE[1], rel=1e-12)


@pytest.mark.parametrize(
    "word, scaled",
    [("RL", 8.0), ("RULD", 18.85087), ("RRUULLDD", 116.9776), (CORNER_WORD, 88.131)],
)
def test_scaled_values(small_table, word, scaled):
    value = fp_numeric(word, small_table)
    assert 4 ** (len(word) + 1) * value == pytest.approx(scaled, rel=1e-5)


def test_corner_polygon_exact(small_table):
    exact = fp_exact(CORNER_WORD, small_table)
    assert exact.polynomial == corner_polynomial()
    assert exact.to_float() == pytest.approx(fp_numeric(CORNER_WORD, small_table), rel=1e-12)
    assert exact.to_float() == pytest.approx(3.362e-4, rel=1e-3)
    assert exact.to_dict()["word"] == CORNER_WORD


@pytest.mark.parametrize("word", ["RL", "RULD", "RRULLD", "RUULDD"])
def test_exact_agrees_with_numeric(small_table, word):
    exact = fp_exact(word, small_table)
    assert exact.to_float() == pytest.approx(fp_numeric(word, small_table), rel=1e-12)


def test_exact_length_limit(table):
    with pytest.raises(DomainError):
        fp_exact(square_word(4), table)


def test_table_too_small(small_table):
    with pytest.raises(TableTooSmallError):
        fp_numeric(square_word(8), small_table)
    with pytest.raises(TableTooSmallError):
        fp_exact(CORNER_WORD, build_ctable(2))


def test_invariance_under_relabelling(small_table):
    word = "RRUULDLD"
    reference = fp_numeric(word, small_table)
    for _image in rerootings(word) + dihedral_images(word):
        assert fp_numeric(_image, small_table) == pytest.approx(reference, rel=1e-11)


def test_values_lie_in_unit_interval(small_table):
    values = [fp_numeric(_word, small_table) for _word in collect_polygons(10)]
    assert all(0.0 < _v < 1.0 for _v in values)
    assert 20 * sum(values) == pytest.approx(POLYGON_TABLE[10][1], rel=1e-10)


@pytest.mark.parametrize("side", [1, 2, 3, 4, 5])
def test_square_family(table, side):
    [(reported_side, value)] = square_family([side], table)
    assert reported_side == side
    assert value == pytest.approx(SQUARE_TABLE[side], rel=1e-9)


@pytest.mark.slow
@pytest.mark.parametrize("side", [6, 7, 8, 9, 10])
def test_square_family_slow(table, side):
    assert fp_numeric(square_word(side), table) == pytest.approx(SQUARE_TABLE[side], rel=1e-8)


def test_evaluator_modes(small_table):
    numeric = FpEvaluator(small_table)
    exact = FpEvaluator(small_table, exact=True)
    assert exact("RRULLD") == pytest.approx(numeric("RRULLD"), rel=1e-12)
    info = exact.describe(CORNER_WORD)
    assert info["neighborhood"] == len(build_neighborhood(CORNER_WORD))
    assert len(info["coefficients"]) == 7
    assert "coefficients" not in numeric.describe(CORNER_WORD)


@pytest.mark.parametrize("length", [2, 4, 6, 8])
def test_exact_agrees_on_every_short_polygon(small_table, length):
    for _word in collect_polygons(length):
        exact = fp_exact(_word, small_table)
        assert exact.to_float() == pytest.approx(fp_numeric(_word, small_table), rel=1e-12)


@pytest.mark.slow
def test_exact_agrees_on_every_length_ten_polygon(small_table):
    for _word in collect_polygons(10):
        exact = fp_exact(_word, small_table)
        assert exact.to_float() == pytest.approx(fp_numeric(_word, small_table), rel=1e-12)


@pytest.mark.slow
def test_invariance_on_sampled_polygons(table):
    rng = default_rng(7)
    words = [_w for _length in range(8, 16, 2) for _w in collect_polygons(_length)]
    for _word in sample_words(rng, words, 50):
        reference = fp_numeric(_word, table)
        images = rerootings(_word) + dihedral_images(_word)
        values = np.array([fp_numeric(_image, table) for _image in images])
        assert np.max(np.abs(values - reference)) <= 1e-11 * reference, _word
