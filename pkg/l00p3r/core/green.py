"""
Square-lattice C-matrix coefficients c_{i,j} = C_{O,(i,j)} in Q + Q/pi.
"""
import time
from fractions import Fraction

import numpy as np
from scipy.special import roots_legendre

from l00p3r.core import Loggable
from l00p3r.core.errors import TableFormatError, TableTooSmallError, InvalidInputError
from l00p3r.core.numerics import (
    PiLinear,
    pilinear_to_float,
    rational_from_string,
    rational_to_string,
)

TABLE_MAGIC = "SQCT"
TABLE_VERSION = 1


def table_index_for_length(length):
    """
    Largest coordinate offset met inside the neighborhood of a length-ell polygon.
    """
    return length // 2 + 2


def diagonal_coefficient(i):
    """
    c_{i,i} = -(4/pi) * sum_{k<i} 1/(2k+1).
    """
    return PiLinear(0, -4 * sum(Fraction(1, 2 * _k + 1) for _k in range(i)))


class CTable(Loggable):
    """
    Exact c_{i,j} for 0 <= i <= j <= max_index.

    Lookups by signed offsets use the full dihedral symmetry of the lattice.
    """

    def __init__(self, max_index, entries):
        assert max_index >= 1, f"Expected max_index >= 1, got {max_index}"
        expected = (max_index + 1) * (max_index + 2) // 2
        assert len(entries) == expected, f"Expected {expected} entries, got {len(entries)}"
        self._max_index = max_index
        self._entries = dict(entries)
        self._float_grid = None

    @property
    def max_index(self):
        return self._max_index

    @property
    def entries(self):
        return self._entries

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if not isinstance(other, CTable):
            return NotImplemented
        return self._max_index == other.max_index and self._entries == other.entries

    def __getstate__(self):
        # the float grid is rebuilt on demand in worker processes
        return {"max_index": self._max_index, "entries": self._entries}

    def __setstate__(self, state):
        self._max_index = state["max_index"]
        self._entries = state["entries"]
        self._float_grid = None

    def coefficient(self, i, j):
        """
        c_{i,j} for non-negative indices in either order.
        """
        low, high = (i, j) if i <= j else (j, i)
        if high > self._max_index:
            raise TableTooSmallError(required_index=high, max_index=self._max_index)
        return self._entries[(low, high)]

    def lookup(self, dx, dy):
        return self.coefficient(abs(dx), abs(dy))

    def float_grid(self):
        """
        (n+1) x (n+1) symmetric numpy array of float coefficients.
        """
        if self._float_grid is None:
            size = self._max_index + 1
            grid = np.zeros((size, size))
            for (_i, _j), _value in self._entries.items():
                grid[_i, _j] = grid[_j, _i] = pilinear_to_float(_value)
            grid.setflags(write=False)
            self._float_grid = grid
        return self._float_grid

    @classmethod
    def build(cls, max_index):
        """
        Fill the table column by column (j ascending).

        For each column j: the diagonal, then row 0, then the interior rows,
        then the near-diagonal entry (j-1, j).
        """
        assert max_index >= 1, f"Expected max_index >= 1, got {max_index}"
        c = {
            (0, 0): PiLinear(0, 0),
            (0, 1): PiLinear(-1, 0),
            (1, 1): diagonal_coefficient(1),
        }
        for _j in range(2, max_index + 1):
            c[(_j, _j)] = diagonal_coefficient(_j)
            c[(0, _j)] = 4 * c[(0, _j - 1)] - c[(0, _j - 2)] - 2 * c[(1, _j - 1)]
            for _i in range(1, _j - 1):
                c[(_i, _j)] = (
                    4 * c[(_i, _j - 1)]
                    - c[(_i, _j - 2)]
                    - c[(_i - 1, _j - 1)]
                    - c[(_i + 1, _j - 1)]
                )
            # 2 c_{j-1,j} = 4 c_{j-1,j-1} - 2 c_{j-2,j-1}
            c[(_j - 1, _j)] = 2 * c[(_j - 1, _j - 1)] - c[(_j - 2, _j - 1)]
        return cls(max_index, c)

    def save(self, destination):
        lines = [f"{TABLE_MAGIC},{TABLE_VERSION},{self._max_index}"]
        for _j in range(self._max_index + 1):
            for _i in range(_j + 1):
                value = self._entries[(_i, _j)]
                lines.append(
                    f"{_i},{_j},{rational_to_string(value.a)},{rational_to_string(value.b)}"
                )
        with open(destination, "w") as f:
            f.write("\n".join(lines) + "\n")

    @classmethod
    def load(cls, source):
        with open(source, "r") as f:
            lines = f.read().splitlines()
        if not lines:
            raise TableFormatError("missing header", line_number=1)

        header = lines[0].split(",")
        if len(header) != 3 or header[0] != TABLE_MAGIC:
            raise TableFormatError(f"bad header {lines[0]!r}", line_number=1)
        if header[1] != str(TABLE_VERSION):
            raise TableFormatError(f"unsupported version {header[1]!r}", line_number=1)
        try:
            max_index = int(header[2])
        except ValueError:
            raise TableFormatError(f"bad max_index {header[2]!r}", line_number=1)
        if max_index < 1:
            raise TableFormatError(f"max_index must be >= 1, got {max_index}", line_number=1)

        expected_keys = [(_i, _j) for _j in range(max_index + 1) for _i in range(_j + 1)]
        body = lines[1:]
        if len(body) != len(expected_keys):
            raise TableFormatError(
                f"expected {len(expected_keys)} entries, found {len(body)}",
                line_number=len(lines) + 1,
            )

        entries = {}
        for _line_number, (_line, _key) in enumerate(zip(body, expected_keys), start=2):
            fields = _line.split(",")
            if len(fields) != 4:
                raise TableFormatError(f"expected 4 fields, got {_line!r}", _line_number)
            if (fields[0], fields[1]) != (str(_key[0]), str(_key[1])):
                raise TableFormatError(f"expected entry {_key}, got {_line!r}", _line_number)
            try:
                value = PiLinear(
                    rational_from_string(fields[2]), rational_from_string(fields[3])
                )
            except InvalidInputError as e:
                raise TableFormatError(str(e), _line_number) from e
            entries[_key] = value
        return cls(max_index, entries)


def build_ctable(max_index):
    start = time.perf_counter()
    table = CTable.build(max_index)
    CTable._cls_info(
        f"built {len(table)} coefficients up to index {max_index} in {time.perf_counter() - start:.2f}s"
    )
    return table


def ctable_lookup(table, dx, dy):
    return table.lookup(dx, dy)


def ctable_save(table, destination):
    table.save(destination)


def ctable_load(source):
    return CTable.load(source)


def quadrature_oracle(i, j, grid=4096):
    """
    Numeric c_{i,j} = -2 R(i, j), R the unit-resistor lattice resistance.

    Integrating the standard double integral once in closed form leaves
    R(m, n) = (1/pi) int_0^pi (1 - exp(-|n| beta) cos(m x)) / sinh(beta) dx
    with cosh(beta) = 2 - cos(x), evaluated by Gauss-Legendre.
    """
    assert grid >= 64, f"Expected grid >= 64, got {grid}"
    if i == 0 and j == 0:
        return 0.0
    nodes, weights = roots_legendre(grid)
    x = 0.5 * np.pi * (nodes + 1.0)
    w = 0.5 * np.pi * weights
    half_sine = np.sin(0.5 * x)
    beta = 2.0 * np.arcsinh(half_sine)
    sinh_beta = 2.0 * half_sine * np.sqrt(1.0 + half_sine**2)
    integrand = (1.0 - np.exp(-abs(j) * beta) * np.cos(i * x)) / sinh_beta
    resistance = float(np.dot(w, integrand)) / np.pi
    return -2.0 * resistance


def harmonicity_check(table):
    """
    Violations of sum_{neighbors} c = 4 c_{i,j} - 4 delta_{(i,j),O}.

    Checked exactly at every 0 <= i <= j <= max_index - 1.
    """
    assert table.max_index >= 2, f"Expected max_index >= 2, got {table.max_index}"
    violations = []
    for _j in range(table.max_index):
        for _i in range(_j + 1):
            neighbors = (
                table.lookup(_i + 1, _j)
                + table.lookup(_i - 1, _j)
                + table.lookup(_i, _j + 1)
                + table.lookup(_i, _j - 1)
            )
            expected = 4 * table.lookup(_i, _j) - (4 if (_i, _j) == (0, 0) else 0)
            if neighbors != expected:
                violations.append((_i, _j))
    return violations


def recurrence_check(table):
    """
    Violations of the construction recurrences, re-substituted into the table.
    """
    c = table.coefficient
    violations = []
    if c(0, 0) != 0 or c(0, 1) != -1:
        violations.append((0, 1))
    for _j in range(1, table.max_index + 1):
        value = c(_j, _j)
        if value.a != 0 or value != diagonal_coefficient(_j):
            violations.append((_j, _j))
        if _j >= 2:
            if c(0, _j) != 4 * c(0, _j - 1) - c(0, _j - 2) - 2 * c(1, _j - 1):
                violations.append((0, _j))
            for _i in range(1, _j):
                if c(_i, _j) != 4 * c(_i, _j - 1) - c(_i, _j - 2) - c(_i - 1, _j - 1) - c(
                    _i + 1, _j - 1
                ):
                    violations.append((_i, _j))
    return violations
