"""
Per-length totals F(ell), running sums S(ell), extrema and conjecture fits.
"""
import math

import dill as pickle
import numpy as np
import pandas as pd

from l00p3r.core import Loggable
from l00p3r.core.enumeration import default_depth, enumerate_polygons, enumerate_prefix, partition
from l00p3r.core.errors import StreamMismatchError
from l00p3r.core.fraction import fp_numeric
from l00p3r.core.green import table_index_for_length
from l00p3r.core.store import ShardSet
from l00p3r.utils.misc import CompensatedSum

CSV_FLOAT_FORMAT = "%.14f"
SWEEP_COLUMNS = ["ell", "pi", "F_ell", "S_ell"]
CONJECTURE_EXPONENT = -3.0 / 5.0
SQUARE_LIMIT = float(np.log(np.sqrt(2.0) - 1.0))


class SweepResult:
    """
    Totals for one length: canonical count and sum, F(ell) = 2 ell sum, S(ell).
    """

    def __init__(self, length, count, canonical_sum, previous_total=0.0):
        assert length % 2 == 0 and length >= 2, f"Expected even length >= 2, got {length}"
        self.length = length
        self.count = count
        self.canonical_sum = canonical_sum
        self.previous_total = previous_total

    @property
    def total(self):
        return 2 * self.length * self.canonical_sum

    @property
    def running_total(self):
        return self.previous_total + self.total

    def to_dict(self):
        return {
            "class": self.__class__.__name__,
            "length": self.length,
            "count": self.count,
            "canonical_sum": self.canonical_sum,
            "previous_total": self.previous_total,
        }

    @classmethod
    def from_dict(cls, data_dict):
        burner_dict = data_dict.copy()
        class_name = burner_dict.pop("class")
        assert class_name == cls.__name__, f"Class name mismatch: {class_name} vs. {cls.__name__}"
        return cls(**burner_dict)

    def row(self):
        return {
            "ell": self.length,
            "pi": self.count,
            "F_ell": self.total,
            "S_ell": self.running_total,
        }

    def __repr__(self):
        return (
            f"SweepResult(ell={self.length}, pi={self.count}, "
            f"F={self.total:.14f}, S={self.running_total:.14f})"
        )


def accumulate(length, table, words):
    """
    Compensated sum of F_p over a word stream of one length.
    """
    partial = CompensatedSum()
    count = 0
    for _word in words:
        if len(_word) != length:
            raise StreamMismatchError(f"Word {_word!r} in a stream of length {length}")
        partial.add(fp_numeric(_word, table))
        count += 1
    return count, partial


def sweep(length, table, words, previous_total=0.0):
    count, partial = accumulate(length, table, words)
    return SweepResult(length, count, partial.value, previous_total)


# table installed once per worker process
_worker_state = {}


def install_table(table):
    """
    Pool initializer: keep the table and its float grid for every later task.
    """
    table.float_grid()
    _worker_state["table"] = table


def installed_table():
    table = _worker_state.get("table")
    assert table is not None, "No table installed in this process"
    return table


def sweep_prefix(task):
    """
    Worker: (length, prefix) -> (count, total, compensation).
    """
    length, prefix = task
    words = []
    enumerate_prefix(length, prefix, words.append)
    count, partial = accumulate(length, installed_table(), words)
    return (count, *partial.to_tuple())


def sweep_shard(task):
    """
    Worker: (length, directory, prefix) -> (count, total, compensation).
    """
    length, directory, prefix = task
    count, partial = accumulate(length, installed_table(), ShardSet(directory, length).read(prefix))
    return (count, *partial.to_tuple())


class SweepAccumulator(Loggable):
    """
    Ascending SweepResults with the running S; checkpointable with dill.
    """

    def __init__(self, results=None):
        self._results = list(results or [])

    @property
    def results(self):
        return list(self._results)

    @property
    def last_length(self):
        return self._results[-1].length if self._results else 0

    @property
    def running_total(self):
        return self._results[-1].running_total if self._results else 0.0

    def add(self, result):
        assert (
            result.length > self.last_length
        ), f"Lengths must ascend: {result.length} after {self.last_length}"
        self._results.append(result)
        return result

    def sweep_words(self, length, table, words):
        return self.add(sweep(length, table, words, self.running_total))

    def sweep_length(self, length, table, runner, depth=None, store_directory=None):
        """
        F(ell) from fixed prefix subtrees, merged in prefix order.

        With the same depth the bits of the result do not depend on the runner.
        """
        needed = table_index_for_length(length)
        assert table.max_index >= needed, f"Table index {table.max_index} < {needed} for ell={length}"
        if store_directory is not None and ShardSet(store_directory, length).exists():
            shards = ShardSet(store_directory, length)
            tasks = [(length, str(store_directory), _p) for _p in shards.prefixes()]
            worker = sweep_shard
        else:
            depth = default_depth(length) if depth is None else depth
            tasks = [(length, _p) for _p in partition(length, depth)]
            worker = sweep_prefix

        merged = CompensatedSum()
        count = 0
        partials = runner.map(
            worker, tasks, desc=f"Sweeping ell={length}", initializer=install_table, initargs=(table,)
        )
        for _count, _total, _compensation in partials:
            count += _count
            merged.merge(CompensatedSum(_total, _compensation))
        result = self.add(SweepResult(length, count, merged.value, self.running_total))
        self._good(f"{result}")
        return result

    def to_frame(self):
        return pd.DataFrame([_r.row() for _r in self._results], columns=SWEEP_COLUMNS)

    def write_csv(self, path):
        self.to_frame().to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)

    def to_dict(self):
        return {
            "class": self.__class__.__name__,
            "results": [_r.to_dict() for _r in self._results],
        }

    @classmethod
    def from_dict(cls, data_dict):
        burner_dict = data_dict.copy()
        class_name = burner_dict.pop("class")
        assert class_name == cls.__name__, f"Class name mismatch: {class_name} vs. {cls.__name__}"
        return cls([SweepResult.from_dict(_r) for _r in burner_dict["results"]])

    def dump_pickle(self, path):
        with open(path, "wb") as f:
            pickle.dump(self.to_dict(), f)

    @classmethod
    def load_pickle(cls, path):
        with open(path, "rb") as f:
            return cls.from_dict(pickle.load(f))


def extrema(length, table):
    """
    (argmax word, max F_p, argmin word, min F_p); ties keep the first word.
    """
    best = {"max": (None, -math.inf), "min": (None, math.inf)}

    def visit(word):
        value = fp_numeric(word, table)
        if value > best["max"][1]:
            best["max"] = (word, value)
        if value < best["min"][1]:
            best["min"] = (word, value)

    enumerate_polygons(length, visit)
    return (*best["max"], *best["min"])


def fit_report(results, squares):
    """
    Plot data for S(ell) = 1 - ell^(-3/5) + O(1/ell) and F_Sq = (sqrt(2) - 1)^(4L).
    """
    lengths = [_r.length for _r in results]
    assert lengths == sorted(lengths), f"Results must ascend in length, got {lengths}"
    sweep_frame = pd.DataFrame(
        {
            "ell": lengths,
            "S": [_r.running_total for _r in results],
        }
    )
    sweep_frame["eps"] = sweep_frame["S"] - (1.0 - sweep_frame["ell"].astype(float) ** CONJECTURE_EXPONENT)
    sweep_frame["eps_times_ell"] = sweep_frame["eps"] * sweep_frame["ell"]

    square_frame = pd.DataFrame(squares, columns=["L", "F"])
    square_frame["logF_over_4L"] = np.log(square_frame["F"].astype(float)) / (4.0 * square_frame["L"])
    return sweep_frame, square_frame

