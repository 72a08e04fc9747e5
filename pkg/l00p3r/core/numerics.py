"""
Exact arithmetic substrate.

Rationals are `fractions.Fraction` (always reduced, positive denominator).
On top of them sit the two linear extensions used by the lattice code,
a + b/pi and a + b*sqrt(3)/pi, and polynomials in u = 1/pi.
"""
import math
import re
from fractions import Fraction
from functools import reduce

import mpmath

from l00p3r.core.errors import DomainError, InvalidInputError, MagnitudeError

BigRational = Fraction

# 1/pi = INV_PI_HEAD + INV_PI_TAIL to double precision
INV_PI_HEAD = Fraction(1725033, 5419351)
INV_PI_TAIL = 2.27595720048157e-15

RATIONAL_PATTERN = re.compile(r"^(-?\d+)/(\d+)$")


def rational_to_string(value):
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def rational_from_string(text):
    """
    Parse "num/den" strictly: no whitespace, den > 0, already reduced.
    """
    match = RATIONAL_PATTERN.match(text)
    if match is None:
        raise InvalidInputError(f"Expected 'num/den', got {text!r}")
    numerator, denominator = int(match.group(1)), int(match.group(2))
    if denominator == 0:
        raise InvalidInputError(f"Zero denominator in {text!r}")
    if math.gcd(abs(numerator), denominator) != 1:
        raise InvalidInputError(f"Fraction {text!r} is not reduced")
    return Fraction(numerator, denominator)


def lcm_of(values):
    return reduce(lambda x, y: x * y // math.gcd(x, y), values, 1)


class LinearExtension:
    """
    Exact value a + b * UNIT where a, b are rationals and UNIT is irrational.

    Closed under addition and rational scaling only. Multiplying two
    extension values would leave the two-dimensional space.
    """

    UNIT = None

    __slots__ = ("_a", "_b")

    def __init__(self, a=0, b=0):
        assert isinstance(a, (int, Fraction)), f"Expected rational a, got {type(a)} {a}"
        assert isinstance(b, (int, Fraction)), f"Expected rational b, got {type(b)} {b}"
        self._a = Fraction(a)
        self._b = Fraction(b)

    @property
    def a(self):
        return self._a

    @property
    def b(self):
        return self._b

    def to_tuple(self):
        return (self._a, self._b)

    def _same_kind(self, other):
        return type(other) is type(self)

    def __eq__(self, other):
        if self._same_kind(other):
            return self.to_tuple() == other.to_tuple()
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and self._a == other
        return NotImplemented

    def __hash__(self):
        return hash((self.__class__.__name__, self._a, self._b))

    def __add__(self, other):
        if self._same_kind(other):
            return self.__class__(self._a + other.a, self._b + other.b)
        if isinstance(other, (int, Fraction)):
            return self.__class__(self._a + other, self._b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return self.__class__(-self._a, -self._b)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__class__(self._a * other, self._b * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __repr__(self):
        return f"{self.__class__.__name__}({self._a}, {self._b})"

    def __str__(self):
        return f"{self._a} + {self._b}*{self.UNIT}"


class PiLinear(LinearExtension):
    """
    a + b/pi. Houses the square-lattice coefficients c_{i,j}.
    """

    UNIT = "(1/pi)"

    __slots__ = ()

    def __float__(self):
        return pilinear_to_float(self)


class Sqrt3PiLinear(LinearExtension):
    """
    a + b*sqrt(3)/pi. Houses the triangular-lattice resistances r_n.
    """

    UNIT = "(sqrt(3)/pi)"

    __slots__ = ()

    def working_bits(self):
        """
        Precision that survives the cancellation between a and b*sqrt(3)/pi.
        """
        sizes = [
            self._a.numerator.bit_length(),
            self._a.denominator.bit_length(),
            self._b.numerator.bit_length(),
            self._b.denominator.bit_length(),
        ]
        return 96 + 2 * max(sizes)

    def value(self, precision_bits=None):
        bits = precision_bits or self.working_bits()
        with mpmath.workprec(bits):
            head = mpmath.mpf(self._a.numerator) / self._a.denominator
            tail = mpmath.mpf(self._b.numerator) / self._b.denominator
            return head + tail * mpmath.sqrt(3) / mpmath.pi

    def to_float(self):
        return float(self.value())

    def __float__(self):
        return self.to_float()


def pilinear_to_float(value):
    """
    Evaluate a + b/pi with the two-term split of 1/pi.

    The rational part a + INV_PI_HEAD*b is formed exactly and rounded once.
    """
    head = value.a + INV_PI_HEAD * value.b
    try:
        result = float(head) + float(value.b) * INV_PI_TAIL
    except OverflowError as e:
        raise MagnitudeError(f"{value!r} does not fit a 64-bit float") from e
    if not math.isfinite(result):
        raise MagnitudeError(f"{value!r} does not fit a 64-bit float")
    return result


class UPolynomial:
    """
    Polynomial in u = 1/pi with rational coefficients, lowest degree first.
    """

    __slots__ = ("_coefficients",)

    def __init__(self, coefficients=()):
        trimmed = [Fraction(_c) for _c in coefficients]
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        self._coefficients = tuple(trimmed)

    @property
    def coefficients(self):
        return self._coefficients

    @property
    def degree(self):
        """
        Degree; -1 for the zero polynomial.
        """
        return len(self._coefficients) - 1

    def __call__(self, u):
        result = Fraction(0)
        for _coefficient in reversed(self._coefficients):
            result = result * u + _coefficient
        return result

    def __eq__(self, other):
        if isinstance(other, UPolynomial):
            return self._coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self._coefficients)

    def __add__(self, other):
        size = max(len(self._coefficients), len(other.coefficients))
        padded_self = list(self._coefficients) + [0] * (size - len(self._coefficients))
        padded_other = list(other.coefficients) + [0] * (size - len(other.coefficients))
        return UPolynomial([_x + _y for _x, _y in zip(padded_self, padded_other)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UPolynomial([_c * other for _c in self._coefficients])
        if not self._coefficients or not other.coefficients:
            return UPolynomial()
        product = [Fraction(0)] * (len(self._coefficients) + len(other.coefficients) - 1)
        for _i, _x in enumerate(self._coefficients):
            for _j, _y in enumerate(other.coefficients):
                product[_i + _j] += _x * _y
        return UPolynomial(product)

    __rmul__ = __mul__

    def __repr__(self):
        return f"UPolynomial({[str(_c) for _c in self._coefficients]})"


def upoly_interpolate(points):
    """
    Exact interpolation through (node, value) pairs.

    Newton divided differences, then expansion into the monomial basis.
    """
    if not points:
        raise InvalidInputError("Cannot interpolate through zero points")
    nodes = [Fraction(_node) for _node, _ in points]
    if len(set(nodes)) != len(nodes):
        raise InvalidInputError(f"Duplicate interpolation nodes in {nodes}")

    size = len(nodes)
    divided = [Fraction(_value) for _, _value in points]
    for _order in range(1, size):
        for _i in range(size - 1, _order - 1, -1):
            divided[_i] = (divided[_i] - divided[_i - 1]) / (nodes[_i] - nodes[_i - _order])

    # Horner on the Newton form: p <- p * (u - x_i) + d_i
    result = [divided[-1]]
    for _i in range(size - 2, -1, -1):
        shifted = [Fraction(0)] + result
        for _k, _c in enumerate(result):
            shifted[_k] -= nodes[_i] * _c
        shifted[0] += divided[_i]
        result = shifted
    return UPolynomial(result)


def upoly_eval_inv_pi(polynomial, precision_bits=128):
    """
    Evaluate a UPolynomial at u = 1/pi with mpmath.
    """
    if precision_bits < 64:
        raise DomainError(f"Expected precision_bits >= 64, got {precision_bits}")
    with mpmath.workprec(precision_bits + 16):
        u = 1 / mpmath.pi
        result = mpmath.mpf(0)
        for _coefficient in reversed(polynomial.coefficients):
            result = result * u + mpmath.mpf(_coefficient.numerator) / _coefficient.denominator
        return result


def bareiss_solve(matrix, rhs):
    """
    Fraction-free elimination on an integer system K x = rhs.

    Returns (det(K), adj(K) @ rhs) as integers, or (0, None) when K is
    singular.
    """
    size = len(matrix)
    assert all(len(_row) == size for _row in matrix), "Expected a square matrix"
    assert len(rhs) == size, f"Expected rhs of size {size}, got {len(rhs)}"
    rows = [[int(_v) for _v in _row] + [int(_b)] for _row, _b in zip(matrix, rhs)]

    sign, previous = 1, 1
    for _k in range(size):
        pivot_row = next((_i for _i in range(_k, size) if rows[_i][_k] != 0), None)
        if pivot_row is None:
            return 0, None
        if pivot_row != _k:
            rows[_k], rows[pivot_row] = rows[pivot_row], rows[_k]
            sign = -sign
        pivot_line = rows[_k]
        pivot = pivot_line[_k]
        for _i in range(_k + 1, size):
            line = rows[_i]
            factor = line[_k]
            for _j in range(_k + 1, size + 1):
                line[_j] = (pivot * line[_j] - factor * pivot_line[_j]) // previous
            line[_k] = 0
        previous = pivot

    determinant = sign * rows[-1][size - 1]

    # back substitution over Q on the (equivalent) triangular system
    solution = [Fraction(0)] * size
    for _i in range(size - 1, -1, -1):
        line = rows[_i]
        accumulated = Fraction(line[size])
        for _j in range(_i + 1, size):
            accumulated -= line[_j] * solution[_j]
        solution[_i] = accumulated / line[_i]

    adjugate_rhs = []
    for _x in solution:
        scaled = _x * determinant
        assert scaled.denominator == 1, f"adj(K) @ rhs must be integral, got {scaled}"
        adjugate_rhs.append(scaled.numerator)
    return determinant, adjugate_rhs
