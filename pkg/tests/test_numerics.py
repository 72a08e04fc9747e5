import math
from fractions import Fraction

import pytest
from numpy.random import default_rng

from l00p3r.core.errors import DomainError, InvalidInputError, MagnitudeError
from l00p3r.core.numerics import (
    PiLinear,
    Sqrt3PiLinear,
    UPolynomial,
    bareiss_solve,
    lcm_of,
    pilinear_to_float,
    rational_from_string,
    rational_to_string,
    upoly_eval_inv_pi,
    upoly_interpolate,
)


def test_rational_text():
    assert rational_to_string(Fraction(-3, 4)) == "-3/4"
    assert rational_to_string(2) == "2/1"
    assert rational_from_string("-16/3") == Fraction(-16, 3)
    assert rational_from_string("0/1") == 0


@pytest.mark.parametrize("text", ["6/8", "1/0", "a/b", " 1/2", "1/-2", "3"])
def test_rational_text_rejects(text):
    with pytest.raises(InvalidInputError):
        rational_from_string(text)


def test_lcm_of():
    assert lcm_of([4, 6, 9]) == 36
    assert lcm_of([]) == 1


def test_pilinear_arithmetic():
    x, y = PiLinear(1, 2), PiLinear(3, -1)
    assert x + y == PiLinear(4, 1)
    assert x - y == PiLinear(-2, 3)
    assert 2 * x == PiLinear(2, 4)
    assert x / 2 == PiLinear(Fraction(1, 2), 1)
    assert -x == PiLinear(-1, -2)
    assert PiLinear(5, 0) == 5
    assert PiLinear(5, 1) != 5
    assert hash(PiLinear(1, 2)) == hash(PiLinear(Fraction(2, 2), 2))


def test_extensions_do_not_mix():
    with pytest.raises(TypeError):
        PiLinear(1, 1) + Sqrt3PiLinear(1, 1)
    with pytest.raises(TypeError):
        PiLinear(1, 1) * PiLinear(1, 1)


def test_pilinear_to_float():
    assert pilinear_to_float(PiLinear(0, 1)) == pytest.approx(1 / math.pi, rel=1e-15)
    assert float(PiLinear(1, -8)) == pytest.approx(1 - 8 / math.pi, rel=1e-14)
    assert float(PiLinear(0, Fraction(-16, 3))) == pytest.approx(-16 / (3 * math.pi), rel=1e-15)


def test_pilinear_to_float_overflow():
    with pytest.raises(MagnitudeError):
        pilinear_to_float(PiLinear(10**400, 0))


def test_sqrt3_readout():
    value = Sqrt3PiLinear(Fraction(8, 3), -4)
    assert value.to_float() == pytest.approx(8 / 3 - 4 * math.sqrt(3) / math.pi, rel=1e-14)
    assert value.working_bits() >= 96


def test_upolynomial_basics():
    assert UPolynomial([1, 2, 0, 0]).degree == 1
    assert UPolynomial([]).degree == -1
    assert UPolynomial([0, 0]) == UPolynomial()
    assert UPolynomial([1, 2, 3])(2) == 17
    product = UPolynomial([1, 1]) * UPolynomial([-1, 1])
    assert product == UPolynomial([-1, 0, 1])
    assert UPolynomial([1, 1]) + UPolynomial([0, -1]) == UPolynomial([1])
    assert UPolynomial([2, 4]) * Fraction(1, 2) == UPolynomial([1, 2])


def test_upoly_interpolate_recovers_polynomial():
    target = UPolynomial([Fraction(1, 2), -1, 3])
    points = [(_u, target(_u)) for _u in (0, 1, 5)]
    assert upoly_interpolate(points) == target


def test_upoly_interpolate_rejects():
    with pytest.raises(InvalidInputError):
        upoly_interpolate([])
    with pytest.raises(InvalidInputError):
        upoly_interpolate([(1, 2), (1, 3)])


def test_upoly_eval_inv_pi():
    value = upoly_eval_inv_pi(UPolynomial([1, -8]))
    assert float(value) == pytest.approx(1 - 8 / math.pi, rel=1e-15)
    with pytest.raises(DomainError):
        upoly_eval_inv_pi(UPolynomial([1]), precision_bits=32)


def test_bareiss_solve():
    assert bareiss_solve([[2, 1], [1, 3]], [1, 1]) == (5, [2, 1])
    assert bareiss_solve([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], [1, 1, 1]) == (4, [6, 8, 6])


def test_bareiss_solve_pivots_and_singular():
    assert bareiss_solve([[0, 1], [1, 0]], [1, 2]) == (-1, [-2, -1])
    assert bareiss_solve([[1, 2], [2, 4]], [1, 1]) == (0, None)


def random_rationals(rng, count):
    numerators = rng.integers(-10**6, 10**6, size=count)
    denominators = rng.integers(1, 10**4, size=count)
    return [Fraction(int(_p), int(_q)) for _p, _q in zip(numerators, denominators)]


def random_pilinears(rng, count):
    return [PiLinear(_a, _b) for _a, _b in zip(random_rationals(rng, count), random_rationals(rng, count))]


def test_float_readout_commutes_with_arithmetic():
    rng = default_rng(11)
    xs, ys = random_pilinears(rng, 200), random_pilinears(rng, 200)
    scales = random_rationals(rng, 200)
    for _x, _y, _s in zip(xs, ys, scales):
        fx, fy = pilinear_to_float(_x), pilinear_to_float(_y)
        bound = 1e-14 * (abs(fx) + abs(fy))
        assert abs(pilinear_to_float(_x + _y) - (fx + fy)) <= bound
        assert abs(pilinear_to_float(_x - _y) - (fx - fy)) <= bound
        assert pilinear_to_float(_s * _x) == pytest.approx(float(_s) * fx, rel=1e-14, abs=1e-300)


def test_rational_codec_field_axioms():
    rng = default_rng(5)
    texts = [rational_to_string(_q) for _q in random_rationals(rng, 300)]
    values = [rational_from_string(_t) for _t in texts]
    for _x, _y, _z in zip(values[0::3], values[1::3], values[2::3]):
        assert (_x + _y) + _z == _x + (_y + _z)
        assert (_x * _y) * _z == _x * (_y * _z)
        assert _x * (_y + _z) == _x * _y + _x * _z
        assert _x + _y == _y + _x and _x * _y == _y * _x
        assert rational_from_string(rational_to_string(_x - _x)) == 0
        if _x != 0:
            assert rational_from_string(rational_to_string(_x * (1 / _x))) == 1
    assert [rational_to_string(_v) for _v in values] == texts
