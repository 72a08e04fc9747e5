"""
Published values used as regression targets.
"""
from fractions import Fraction

from l00p3r.core.numerics import UPolynomial

# ell: (pi(ell), F(ell), S(ell))
POLYGON_TABLE = {
    2: (1, 0.50000000000000, 0.50000000000000),
    4: (1, 0.14727245910375, 0.64727245910375),
    6: (2, 0.06204664274521, 0.70931910184896),
    8: (7, 0.04001566383131, 0.74933476568027),
    10: (28, 0.02805060444094, 0.77738537012121),
    12: (124, 0.02102490313204, 0.79841027325325),
    14: (588, 0.01644695527417, 0.8148572285274199),
    16: (2938, 0.01329675992709, 0.8281539884545099),
    18: (15268, 0.01102242742254, 0.8391764158770499),
    20: (81826, 0.00931937541569, 0.8484957912927399),
    22: (449572, 0.00800628886867, 0.8565020801614099),
    24: (2521270, 0.00696952442824, 0.8634716045896499),
}

# L: F_p of the L x L square
SQUARE_TABLE = {
    1: 1.8409057387969413e-2,
    2: 4.462339923059934e-4,
    3: 1.192983879778077e-5,
    4: 3.2824487567509144e-7,
    5: 9.174122974521936e-9,
    6: 2.5893979305184303e-10,
    7: 7.3577883524995755e-12,
    8: 2.1009188710297932e-13,
    9: 6.0210656056096115e-15,
    10: 1.730587034739647e-16,
}

CORNER_WORD = "RUULLDRD"


def corner_polynomial():
    """
    F_p of the corner polygon in u = 1/pi:
    (3 - 8u)^2 (8u - 1) (4u - 1) (-128u^2 + 120u - 23) / 576.
    """
    factors = [
        UPolynomial([3, -8]),
        UPolynomial([3, -8]),
        UPolynomial([-1, 8]),
        UPolynomial([-1, 4]),
        UPolynomial([-23, 120, -128]),
    ]
    product = UPolynomial([Fraction(1, 576)])
    for _factor in factors:
        product = product * _factor
    return product


def polygon_count(length):
    return POLYGON_TABLE[length][0]
