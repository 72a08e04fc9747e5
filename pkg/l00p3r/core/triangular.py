"""
Triangular-lattice resistances r_n between the origin and (n, n).

r_n = a_n + b_n * sqrt(3)/pi with rational a_n, b_n.
"""
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from l00p3r.core.errors import DomainError
from l00p3r.core.numerics import Sqrt3PiLinear

SQRT3 = np.sqrt(3.0)


class TriResistance:
    def __init__(self, n, value):
        assert n >= 0, f"Expected n >= 0, got {n}"
        assert isinstance(value, Sqrt3PiLinear), f"Expected Sqrt3PiLinear, got {type(value)}"
        self._n = n
        self._value = value

    @property
    def n(self):
        return self._n

    @property
    def value(self):
        return self._value

    def to_float(self):
        return self._value.to_float()

    def __eq__(self, other):
        if not isinstance(other, TriResistance):
            return NotImplemented
        return self._n == other.n and self._value == other.value

    def __hash__(self):
        return hash((self._n, self._value))

    def __repr__(self):
        return f"TriResistance({self._n}, {self._value.a}, {self._value.b})"

    def __str__(self):
        a, b = self._value.a, self._value.b
        sign = "-" if b < 0 else "+"
        return f"{a} {sign} {abs(b)}*sqrt(3)/pi"


class HValue:
    def __init__(self, n, h):
        self._n = n
        self._h = h

    @property
    def n(self):
        return self._n

    @property
    def h(self):
        return self._h

    def __repr__(self):
        return f"HValue({self._n}, {self._h})"


def tri_recurrence(n_max):
    """
    r_0 .. r_{n_max} from the order-three recurrence, r_{-1} = 0.
    """
    assert n_max >= 0, f"Expected n_max >= 0, got {n_max}"
    values = [Sqrt3PiLinear(0, 0), Sqrt3PiLinear(Fraction(1, 3), 0)]
    for _n in range(2, n_max + 1):
        previous_3 = values[_n - 3] if _n >= 3 else Sqrt3PiLinear(0, 0)
        value = (
            Fraction(15 * _n - 22, _n - 1) * values[_n - 1]
            - Fraction(15 * _n - 23, _n - 1) * values[_n - 2]
            + Fraction(_n - 2, _n - 1) * previous_3
            + Sqrt3PiLinear(0, Fraction(-4, _n - 1))
        )
        values.append(value)
    return [TriResistance(_n, _v) for _n, _v in enumerate(values[: n_max + 1])]


def tri_c(n, k):
    """
    c(n, k) = (n+k)! / ((2k+1) (k!)^2 (n-k-1)!), built by consecutive ratios.
    """
    assert 0 <= k < n, f"Expected 0 <= k < n, got n={n}, k={k}"
    value = Fraction(n)
    for _k in range(k):
        value *= Fraction((2 * _k + 1) * (n + _k + 1) * (n - _k - 1), (2 * _k + 3) * (_k + 1) ** 2)
    return value


@lru_cache(maxsize=None)
def _h_rational(n):
    # the sign of (1-n)_k cancels the sign of the argument -3
    total = Fraction(0)
    term = Fraction(n)
    for _k in range(n):
        total += term * 3**_k
        term *= Fraction((2 * _k + 1) * (n + _k + 1) * (n - _k - 1), (2 * _k + 3) * (_k + 1) ** 2)
    return total / n


def tri_H(n):
    if n < 1:
        raise DomainError(f"H(n) is defined for n >= 1, got {n}")
    return HValue(n, _h_rational(n))


def tri_closed_form(n):
    assert n >= 0, f"Expected n >= 0, got {n}"
    if n == 0:
        return TriResistance(0, Sqrt3PiLinear(0, 0))
    a = n * _h_rational(n) / 3
    # the m = n term has weight zero, so H(0) is never needed
    b = -4 * sum(((n - _m) * _h_rational(n - _m) * _h_rational(_m) for _m in range(1, n)), Fraction(0))
    return TriResistance(n, Sqrt3PiLinear(a, b))


def tri_asymptotic(n):
    """
    log(n)/(sqrt(3) pi) + (gamma + log(2 sqrt(3)))/(sqrt(3) pi).
    """
    if n < 1:
        raise DomainError(f"Asymptotic form needs n >= 1, got {n}")
    scale = SQRT3 * np.pi
    return float(np.log(n) / scale + (np.euler_gamma + np.log(2.0 * SQRT3)) / scale)


def integrand(n, x):
    """
    sin(n x)^2 / (sin(x) sqrt(4 - cos(x)^2)), for x away from zero.
    """
    return np.sin(n * x) ** 2 / (np.sin(x) * np.sqrt(4.0 - np.cos(x) ** 2))


def integrand_series(n, x):
    """
    (n^2 x - n^4 x^3 / 3) / sqrt(3), the integrand through order x^3.

    The x^2/6 corrections of 1/sin(x) and 1/sqrt(3 + x^2) cancel, so only
    sin(n x)^2 contributes at order x^3 and the error is O(x^5).
    """
    return (n**2 * x - n**4 * x**3 / 3.0) / SQRT3


def tri_integral_oracle(n, grid=8192):
    """
    R(n, n) = (2/pi) int_0^{pi/2} integrand(n, x) dx.

    Gauss-Legendre; below x = 1e-4 / n the integrand is replaced by
    integrand_series.
    """
    assert n >= 0, f"Expected n >= 0, got {n}"
    assert grid >= 128, f"Expected grid >= 128, got {grid}"
    if n == 0:
        return 0.0
    nodes, weights = roots_legendre(grid)
    x = 0.25 * np.pi * (nodes + 1.0)
    w = 0.25 * np.pi * weights

    near_zero = x < 1e-4 / n
    direct = integrand(n, np.where(near_zero, 1.0, x))
    values = np.where(near_zero, integrand_series(n, x), direct)
    return float(2.0 / np.pi * np.dot(w, values))
