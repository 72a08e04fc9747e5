"""
Fraction F_p of closed walks whose last erased loop is the polygon p.

F_p = 4^-(ell+1) * deg^T adj(I + C_p B_p / 4) 1 over the distance-one
neighborhood of p.
"""
import math
from fractions import Fraction

import mpmath
import numpy as np
from scipy.linalg import lu_factor, lu_solve

from l00p3r.core import Loggable
from l00p3r.core.errors import (
    DomainError,
    IllConditionedError,
    InterpolationError,
    TableTooSmallError,
)
from l00p3r.core.numerics import (
    bareiss_solve,
    lcm_of,
    upoly_eval_inv_pi,
    upoly_interpolate,
)
from l00p3r.core.polygon import STEP_OFFSETS, check_polygon, square_word, word_vertices

LAMBDA = 4
EXACT_MAX_LENGTH = 12
LOG_DET_LIMIT = 600.0
PIVOT_TOLERANCE = 1e-12


class NeighborhoodGraph:
    """
    Polygon vertices (path order from the origin), then their lattice
    neighbors sorted by (y, x). Only edges with at least one end on the
    polygon enter the adjacency; the neighbor block stays zero.
    """

    def __init__(self, word):
        check_polygon(word)
        self._word = word
        path = [(0, 0)] + word_vertices(word)[:-1]
        on_path = set(path)
        outside = {
            (_x + _dx, _y + _dy)
            for _x, _y in path
            for _dx, _dy in STEP_OFFSETS.values()
            if (_x + _dx, _y + _dy) not in on_path
        }
        self._vertices = path + sorted(outside, key=lambda _p: (_p[1], _p[0]))
        index = {_v: _i for _i, _v in enumerate(self._vertices)}

        size = len(self._vertices)
        adjacency = np.zeros((size, size), dtype=np.int64)
        for _i, (_x, _y) in enumerate(self._vertices):
            for _dx, _dy in STEP_OFFSETS.values():
                _j = index.get((_x + _dx, _y + _dy))
                if _j is not None and (_i < len(path) or _j < len(path)):
                    adjacency[_i, _j] = 1
        adjacency.setflags(write=False)
        self._adjacency = adjacency
        self._degrees = adjacency.sum(axis=1)

        assert np.array_equal(adjacency, adjacency.T), "Adjacency must be symmetric"
        assert np.array_equal(
            self._degrees, np.diag(adjacency @ adjacency)
        ), "Degrees must equal diag(B^2)"
        # the doubled edge has no interior and exceeds the 3*ell bound
        assert len(word) == 2 or size <= (LAMBDA - 1) * len(word), (
            f"Neighborhood of {word!r} has {size} > {(LAMBDA - 1) * len(word)} vertices"
        )

    @property
    def word(self):
        return self._word

    @property
    def vertices(self):
        return list(self._vertices)

    @property
    def adjacency(self):
        return self._adjacency

    @property
    def degrees(self):
        return self._degrees

    def __len__(self):
        return len(self._vertices)

    def coordinates(self):
        return np.array(self._vertices, dtype=np.int64)

    def spread(self):
        """
        Largest |dx| or |dy| between two vertices.
        """
        coordinates = self.coordinates()
        return int((coordinates.max(axis=0) - coordinates.min(axis=0)).max())


def build_neighborhood(word):
    return NeighborhoodGraph(word)


def extract_Cp(table, graph):
    """
    C restricted to the neighborhood, as a nested list of PiLinear.
    """
    vertices = graph.vertices
    return [
        [table.lookup(_xi - _xj, _yi - _yj) for (_xj, _yj) in vertices]
        for (_xi, _yi) in vertices
    ]


def extract_Cp_float(table, graph):
    spread = graph.spread()
    if spread > table.max_index:
        raise TableTooSmallError(required_index=spread, max_index=table.max_index)
    coordinates = graph.coordinates()
    dx = np.abs(coordinates[:, 0][:, None] - coordinates[:, 0][None, :])
    dy = np.abs(coordinates[:, 1][:, None] - coordinates[:, 1][None, :])
    return table.float_grid()[np.minimum(dx, dy), np.maximum(dx, dy)]


def fp_numeric(word, table):
    """
    det(M) * deg^T M^-1 1 scaled by 4^-(ell+1), with M = I + C_p B_p / 4.
    """
    graph = build_neighborhood(word)
    size = len(graph)
    matrix = np.eye(size) + extract_Cp_float(table, graph) @ graph.adjacency / LAMBDA

    lu, pivots = lu_factor(matrix, check_finite=False)
    diagonal = np.diag(lu)
    norm = np.abs(matrix).sum(axis=1).max()
    if np.abs(diagonal).min() < PIVOT_TOLERANCE * norm:
        raise IllConditionedError(
            f"M is numerically singular for {word!r}; use the exact mode instead"
        )
    solution = lu_solve((lu, pivots), np.ones(size), check_finite=False)
    contraction = float(graph.degrees @ solution)

    swaps = int(np.count_nonzero(pivots != np.arange(size)))
    sign = (-1) ** swaps * int(np.prod(np.sign(diagonal)))
    log_det = float(np.log(np.abs(diagonal)).sum())
    exponent = -2 * (len(word) + 1)
    if abs(log_det) <= LOG_DET_LIMIT:
        determinant = sign * float(np.prod(np.abs(diagonal)))
        return math.ldexp(determinant * contraction, exponent)

    if contraction == 0.0:
        return 0.0
    sign *= 1 if contraction > 0 else -1
    return sign * math.exp(log_det + math.log(abs(contraction)) + exponent * math.log(2.0))


class FpExact:
    """
    F_p = scale * g(1/pi) with g a rational polynomial.
    """

    def __init__(self, word, scale, g):
        self._word = word
        self._scale = Fraction(scale)
        self._g = g

    @property
    def word(self):
        return self._word

    @property
    def scale(self):
        return self._scale

    @property
    def g(self):
        return self._g

    @property
    def polynomial(self):
        """
        F_p itself as a polynomial in 1/pi.
        """
        return self._g * self._scale

    def value(self, precision_bits=128):
        with mpmath.workprec(precision_bits + 16):
            scale = mpmath.mpf(self._scale.numerator) / self._scale.denominator
            return scale * upoly_eval_inv_pi(self._g, precision_bits)

    def to_float(self, precision_bits=128):
        return float(self.value(precision_bits))

    def to_dict(self):
        return {
            "word": self._word,
            "scale": str(self._scale),
            "g": [str(_c) for _c in self._g.coefficients],
        }

    def __repr__(self):
        return f"FpExact({self._word!r}, scale={self._scale}, degree={self._g.degree})"


def _integer_pencil(table, graph):
    """
    Integer matrices P, Q and denominator D with D * M(u) = P + u Q.
    """
    size = len(graph)
    neighbors = [np.flatnonzero(graph.adjacency[:, _j]).tolist() for _j in range(size)]
    coefficients = extract_Cp(table, graph)

    rational_part = [[Fraction(0)] * size for _ in range(size)]
    inverse_pi_part = [[Fraction(0)] * size for _ in range(size)]
    for _i in range(size):
        row = coefficients[_i]
        for _j in range(size):
            a = sum((row[_k].a for _k in neighbors[_j]), Fraction(0))
            b = sum((row[_k].b for _k in neighbors[_j]), Fraction(0))
            rational_part[_i][_j] = a / LAMBDA + (1 if _i == _j else 0)
            inverse_pi_part[_i][_j] = b / LAMBDA

    denominator = lcm_of(
        _value.denominator
        for _matrix in (rational_part, inverse_pi_part)
        for _row in _matrix
        for _value in _row
    )
    p = [[int(_v * denominator) for _v in _row] for _row in rational_part]
    q = [[int(_v * denominator) for _v in _row] for _row in inverse_pi_part]
    return p, q, denominator


def fp_exact(word, table):
    """
    Exact F_p by evaluation at small integer u and interpolation.

    deg^T adj(D M(u)) 1 is a polynomial of degree < N in u, so N + 1
    non-singular nodes determine it.
    """
    length = len(word)
    if length > EXACT_MAX_LENGTH:
        raise DomainError(f"Exact mode is limited to ell <= {EXACT_MAX_LENGTH}, got {length}")
    graph = build_neighborhood(word)
    size = len(graph)
    spread = graph.spread()
    if spread > table.max_index:
        raise TableTooSmallError(required_index=spread, max_index=table.max_index)

    p, q, denominator = _integer_pencil(table, graph)
    degrees = [int(_d) for _d in graph.degrees]
    ones = [1] * size

    points = []
    for _u in range(3 * (size + 1)):
        matrix = [[_p + _u * _q for _p, _q in zip(_prow, _qrow)] for _prow, _qrow in zip(p, q)]
        determinant, adjugate_ones = bareiss_solve(matrix, ones)
        if determinant == 0:
            continue
        points.append((_u, sum(_d * _a for _d, _a in zip(degrees, adjugate_ones))))
        if len(points) == size + 1:
            break
    else:
        raise InterpolationError(
            f"Only {len(points)} non-singular nodes among {3 * (size + 1)} for {word!r}"
        )

    # adj(D M) = D^(N-1) adj(M)
    g = upoly_interpolate(points) * Fraction(1, denominator ** (size - 1))
    return FpExact(word, Fraction(1, LAMBDA ** (length + 1)), g)


class FpEvaluator(Loggable):
    """
    Evaluates F_p words against one table, in numeric or exact mode.
    """

    def __init__(self, table, exact=False):
        self.table = table
        self.exact = bool(exact)

    def __call__(self, word):
        if self.exact:
            return fp_exact(word, self.table).to_float()
        return fp_numeric(word, self.table)

    def describe(self, word):
        """
        Summary dict for one polygon, with the exact polynomial when requested.
        """
        info = {"word": word, "neighborhood": len(build_neighborhood(word))}
        info["F_numeric"] = fp_numeric(word, self.table)
        if self.exact:
            exact = fp_exact(word, self.table)
            info["F_exact"] = mpmath.nstr(exact.value(), 20)
            info["coefficients"] = [str(_c) for _c in exact.polynomial.coefficients]
            relative = abs(exact.to_float() - info["F_numeric"]) / abs(exact.to_float())
            if relative > 1e-10:
                self._warn(f"numeric and exact modes differ by {relative:.2e} for {word!r}")
        return info


def square_family(sides, table):
    return [(_side, fp_numeric(square_word(_side), table)) for _side in sides]