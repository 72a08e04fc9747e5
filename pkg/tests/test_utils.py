import math

import pytest
from numpy.random import default_rng

from l00p3r.utils.misc import CompensatedSum, common_prefix_length, datetime_to_string, utcnow
from l00p3r.utils.random import sample_words


def test_common_prefix_length():
    assert common_prefix_length("RRULLD", "RUULDD") == 1
    assert common_prefix_length("RUL", "RULD") == 3
    assert common_prefix_length("", "R") == 0


def test_compensated_sum_keeps_small_terms():
    partial = CompensatedSum()
    for _value in [1.0, 1e-16, 1e-16, -1.0]:
        partial.add(_value)
    assert partial.value == 2e-16


def test_compensated_merge_is_deterministic():
    left, right = CompensatedSum(), CompensatedSum()
    for _i in range(100):
        (left if _i % 2 else right).add(1.0 / (_i + 1))
    merged = CompensatedSum().merge(right).merge(left)
    again = CompensatedSum().merge(right).merge(left)
    assert merged.to_tuple() == again.to_tuple()
    assert merged.value == pytest.approx(math.fsum(1.0 / (_i + 1) for _i in range(100)), rel=1e-15)


def test_sample_words_keeps_order():
    words = [f"W{_i:02d}" for _i in range(20)]
    picked = sample_words(default_rng(0), words, 5)
    assert len(set(picked)) == 5
    assert picked == sorted(picked)
    assert sample_words(default_rng(0), words, 50) == words


def test_datetime_to_string():
    assert datetime_to_string(utcnow()).endswith("+0000")
