"""
Named property checks run as one suite.
"""
import io
import itertools
from fractions import Fraction

import numpy as np
from numpy.random import default_rng
from tqdm import tqdm
from wrappy import guard

from l00p3r.core import Loggable
from l00p3r.core.enumeration import collect_polygons, enumerate_prefix, partition
from l00p3r.core.fraction import fp_exact, fp_numeric
from l00p3r.core.green import build_ctable, harmonicity_check, quadrature_oracle, recurrence_check
from l00p3r.core.numerics import PiLinear, pilinear_to_float
from l00p3r.core.polygon import STEPS, dihedral_images, is_canonical, rerootings, square_word
from l00p3r.core.reference import CORNER_WORD, POLYGON_TABLE, SQUARE_TABLE, corner_polynomial
from l00p3r.core.store import read_stream, write_stream
from l00p3r.core.sweep import SweepAccumulator
from l00p3r.core.triangular import tri_asymptotic, tri_closed_form, tri_integral_oracle, tri_recurrence
from l00p3r.utils.random import sample_words


class NamedCheck(Loggable):
    def __init__(self, f, name):
        self._f = f
        self.name = name

    def __call__(self, *args, **kwargs):
        guarded = guard(fallback_retval=False, print_traceback=True)(self._f)
        return bool(guarded(*args, **kwargs))

    def __repr__(self):
        return self.name


class VerificationSuite(Loggable):
    """
    Ordered collection of checks; a failing or crashing check never stops the rest.
    """

    def __init__(self, checks=None):
        self._checks = list(checks or [])

    def add(self, f, name):
        self._checks.append(NamedCheck(f, name))
        return self

    @property
    def names(self):
        return [_check.name for _check in self._checks]

    def run(self):
        outcome = {}
        for _check in tqdm(self._checks, desc="Verification"):
            passed = _check()
            outcome[_check.name] = passed
            if passed:
                self._good(f"{_check}")
            else:
                self._fail(f"{_check}")
        failed = [_name for _name, _ok in outcome.items() if not _ok]
        if failed:
            self._fail(f"{len(failed)} of {len(outcome)} checks failed")
        else:
            self._good(f"all {len(outcome)} checks passed")
        return outcome


def brute_force_polygons(length):
    """
    Canonical words found by filtering every R-prefixed word.
    """
    return [
        "R" + "".join(_tail)
        for _tail in itertools.product(STEPS, repeat=length - 1)
        if is_canonical("R" + "".join(_tail))
    ]


def relative_gap(x, y):
    return abs(x - y) / max(abs(x), abs(y))


def check_quoted_coefficients(table):
    expected = {
        (0, 0): PiLinear(0, 0),
        (0, 1): PiLinear(-1, 0),
        (1, 1): PiLinear(0, -4),
        (2, 2): PiLinear(0, Fraction(-16, 3)),
        (1, 2): PiLinear(1, -8),
        (0, 2): PiLinear(-4, 8),
    }
    return all(table.coefficient(*_key) == _value for _key, _value in expected.items())


def check_oracle(table, grid=4096):
    return all(
        abs(pilinear_to_float(table.coefficient(_i, _j)) - quadrature_oracle(_i, _j, grid)) <= 1e-5
        for _j in range(5)
        for _i in range(_j + 1)
    )


def check_triangular_exact(n_max=100):
    recurrence = tri_recurrence(n_max)
    return all(recurrence[_n] == tri_closed_form(_n) for _n in range(n_max + 1))


def check_triangular_numeric():
    values = [_r.to_float() for _r in tri_recurrence(200)]
    if abs(tri_integral_oracle(1) - 1.0 / 3.0) > 1e-6:
        return False
    if any(_b <= _a for _a, _b in zip(values[:101], values[1:101])):
        return False
    remainders = [_n * abs(values[_n] - tri_asymptotic(_n)) for _n in range(10, 201)]
    return max(remainders) <= remainders[0]


def check_counts(max_length):
    return all(
        len(collect_polygons(_length)) == POLYGON_TABLE[_length][0]
        for _length in range(2, max_length + 1, 2)
    )


def check_brute_force(max_length):
    return all(
        collect_polygons(_length) == brute_force_polygons(_length)
        for _length in range(2, max_length + 1, 2)
    )


def check_partition(length):
    words = collect_polygons(length)
    for _depth in range(1, length // 2 + 1):
        pieces = []
        for _prefix in partition(length, _depth):
            enumerate_prefix(length, _prefix, pieces.append)
        if pieces != words:
            return False
    return True


def check_store(max_length):
    for _length in range(2, max_length + 1, 2):
        words = collect_polygons(_length)
        for _compress in (False, True):
            buffer = io.BytesIO()
            write_stream(words, buffer, _length, compress=_compress)
            buffer.seek(0)
            _, decoded = read_stream(buffer)
            if list(decoded) != words:
                return False
    return True


def check_corner(table):
    exact = fp_exact(CORNER_WORD, table)
    if exact.polynomial != corner_polynomial():
        return False
    return relative_gap(fp_numeric(CORNER_WORD, table), exact.to_float()) <= 1e-12


def check_squares(table, max_side):
    return all(
        relative_gap(fp_numeric(square_word(_side), table), SQUARE_TABLE[_side]) <= 1e-9
        for _side in range(1, max_side + 1)
    )


def check_sweep(table, max_length):
    accumulator = SweepAccumulator()
    for _length in range(2, max_length + 1, 2):
        result = accumulator.sweep_words(_length, table, collect_polygons(_length))
        _, total, running_total = POLYGON_TABLE[_length]
        if abs(result.total - total) > 1e-9 or abs(result.running_total - running_total) > 1e-9:
            return False
    return True


def check_symmetry(table, length, count=5, seed=0):
    for _word in sample_words(default_rng(seed), collect_polygons(length), count):
        reference = fp_numeric(_word, table)
        images = rerootings(_word) + dihedral_images(_word)
        values = np.array([fp_numeric(_image, table) for _image in images])
        if np.max(np.abs(values - reference)) > 1e-11 * abs(reference):
            return False
        if not 0.0 < reference < 1.0:
            return False
    return True


def default_suite(max_length=10):
    """
    Checks over every module, sized by the largest enumerated length.
    """
    table = build_ctable(max(20, max_length // 2 + 2))
    max_side = max(1, min(4, max_length // 4))
    suite = VerificationSuite()
    suite.add(lambda: check_quoted_coefficients(table), "green: quoted coefficients")
    suite.add(lambda: not harmonicity_check(table), "green: harmonicity")
    suite.add(lambda: not recurrence_check(table), "green: recurrences")
    suite.add(lambda: check_oracle(table), "green: quadrature oracle")
    suite.add(check_triangular_exact, "triangular: recurrence vs closed form")
    suite.add(check_triangular_numeric, "triangular: oracle and asymptotics")
    suite.add(lambda: check_counts(max_length), "enumeration: published counts")
    suite.add(lambda: check_brute_force(min(max_length, 12)), "enumeration: brute force")
    suite.add(lambda: check_partition(min(max_length, 12)), "enumeration: partition")
    suite.add(lambda: check_store(max_length), "store: roundtrip")
    suite.add(lambda: check_corner(table), "fp: corner polygon")
    suite.add(lambda: check_squares(table, max_side), "fp: squares")
    suite.add(lambda: check_sweep(table, max_length), "fp: sweep")
    suite.add(lambda: check_symmetry(table, min(max_length, 12)), "fp: symmetry")
    return suite


def is_success(outcome):
    return bool(outcome) and all(outcome.values())
