"""Published reference values that the computations are checked against."""
from fractions import Fraction
from math import factorial

MINUS_ONE = {4: 10, 5: 16, 6: 27, 7: 56, 8: 240}
CONICS = {4: 5, 5: 10, 6: 27, 7: 126, 8: 2160}
CUBICS = {4: 5, 5: 16, 6: 72, 7: 576, 8: 17520}

HILBERT_VALUES = {
    4: [10],
    5: [16, 116],
    6: [27, 297, 1939],
    7: [56, 1067, 10576, 67949],
    8: [242, 12004, 226327, 2301371, 15449296],
}

# numerators, highest degree first, over (r + 2)!
_POLY_NUMERATORS = {
    4: [5, 75, 455, 1425, 2420, 2100, 720],
    5: [34, 476, 2884, 9800, 20146, 25004, 17256, 5040],
    6: [372, 4464, 25200, 86184, 193788, 291816, 284640, 161856, 40320],
    7: [9504, 85536, 412992, 1294272, 2860704, 4554144, 5125248, 3863808, 1752192, 362880],
    8: [1779840, 8899200, 32140800, 75168000, 137531520, 186883200, 191635200,
        141696000, 74183040, 24624000, 3628800],
}


def hilbert_polynomial(r: int) -> list[Fraction]:
    """Coefficients in increasing degree."""
    den = factorial(r + 2)
    return [Fraction(c, den) for c in reversed(_POLY_NUMERATORS[r])]


DEGREE_GENUS = {4: (5, 1), 5: (34, 35), 6: (372, 745), 7: (9504, 28513), 8: (1779840, 7119361)}

B_SEQUENCE = {
    4: [1, 0, -5, 5, 0, -1],
    5: [1, 0, -20, 48, 7, -176, 280, -176, 7, 48, -20, 0, 1],
}

IDEAL_GENERATORS = {4: 5, 5: 20, 6: 81, 7: 529, 8: 17399}

BETTI_ROWS = {
    4: [
        [1, 0, 0, 0],
        [0, 5, 5, 0],
        [0, 0, 0, 1],
    ],
    5: [
        [1, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 20, 48, 3, 0, 0, 0, 0, 0],
        [0, 0, 10, 176, 280, 176, 10, 0, 0],
        [0, 0, 0, 0, 0, 3, 48, 20, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 1],
    ],
}

GL_INDEX = {4: 2, 5: 1, 6: 1, 7: 1, 8: 1}

# S_5 Koszul witnesses: (i, class, value)
S5_WITNESSES = [
    (1, "1;-1,0,0,0,0", 2),          # conic Q
    (2, "1;0,0,0,0,0", 3),           # twisted cubic C
    (2, "2;-2,0,0,0,0", 1),          # 2Q
    (2, "2;-1,-1,0,0,0", 0),         # C + E with C.E = 1
    (3, "3;-1,-1,-1,-1,-1", 3),      # -K
]
S4_WITNESSES = [(2, "1;0,0,0,0", 1)]

# S_5 Weyl orbits of nef classes of degree 4
S5_DEGREE4_NEF_ORBITS = 3
