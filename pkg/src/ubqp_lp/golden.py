"""Published reference values used by ``selftest`` and the test-suite."""
from __future__ import annotations

from fractions import Fraction as F

H = F(1, 2)
Q4 = F(1, 4)


def _half(rows):
    return [[F(v, 2) for v in row] for row in rows]


E3 = _half([
    [1, 2, 0, 1, 0, 0],
    [1, 0, 2, 0, 0, 1],
    [0, 0, 0, 1, 2, 1],
    [1, -2, 0, 1, 0, 0],
    [1, 0, -2, 0, 0, 1],
    [0, 0, 0, 1, -2, 1],
])

T3 = _half([
    [1, 1, -1, 1, 1, -1],
    [1, 0, 0, -1, 0, 0],
    [0, 1, 0, 0, -1, 0],
    [1, -1, 1, 1, -1, 1],
    [0, 0, 1, 0, 0, -1],
    [-1, 1, 1, -1, 1, 1],
])

T4 = _half([
    [1, 1, 0, -1, 0, 0, 1, 1, 0, -1, 0, 0],
    [1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, -1, 0, 0, 0],
    [1, -1, 0, 1, 0, 0, 1, -1, 0, 1, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0, -1, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1, 0],
    [-1, 1, 0, 1, 0, 0, -1, 1, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1],
    [-1, 0, 1, 0, 1, 0, -1, 0, 1, 0, 1, 0],
])

E4 = _half([
    [1, 2, 0, 0, 1, 0, 0, 0, 0, 0],
    [1, 0, 2, 0, 0, 0, 0, 1, 0, 0],
    [1, 0, 0, 2, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1, 2, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0, 2, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 1, 2, 1],
    [1, -2, 0, 0, 1, 0, 0, 0, 0, 0],
    [1, 0, -2, 0, 0, 0, 0, 1, 0, 0],
    [1, 0, 0, -2, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1, -2, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0, -2, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 1, -2, 1],
])

# n = 4 consistency equations, each "g(i; j, k) - g(i; l, m)" written out.
# A term is (sign, kind, i, j).
def _g_terms(i, j, k):
    lo = lambda a, b: (min(a, b), max(a, b))  # noqa: E731
    return [(+1, "u", *lo(i, j)), (+1, "v", *lo(i, j)), (+1, "u", *lo(i, k)), (+1, "v", *lo(i, k)),
            (-1, "u", *lo(j, k)), (-1, "v", *lo(j, k))]


def _equation(i, ref, other):
    return _g_terms(i, *ref) + [(-s, kind, a, b) for s, kind, a, b in _g_terms(i, *other)]


CONSISTENCY_N4 = [
    _equation(1, (2, 3), (2, 4)),
    _equation(1, (2, 3), (3, 4)),
    _equation(2, (1, 3), (1, 4)),
    _equation(2, (1, 3), (3, 4)),
    _equation(3, (1, 2), (1, 4)),
    _equation(3, (1, 2), (2, 4)),
    _equation(4, (1, 2), (1, 3)),
    _equation(4, (1, 2), (2, 3)),
]

# witness examples: (x, lambda8 choice, expected lambda)
WITNESSES = [
    ((1, H, H), F(1, 4), (0, 0, 0, 0, Q4, Q4, Q4, Q4)),
    ((0, Q4, Q4), F(0), (F(9, 16), F(3, 16), F(3, 16), F(1, 16), 0, 0, 0, 0)),
    ((1, H, 0), F(0), (0, 0, 0, 0, H, 0, H, 0)),
    ((Q4, Q4, Q4), F(1, 32), (F(13, 32), F(5, 32), F(5, 32), F(1, 32), F(5, 32), F(1, 32), F(1, 32), F(1, 32))),
    ((Q4, Q4, Q4), F(1, 16), (F(3, 8), F(3, 16), F(3, 16), 0, F(3, 16), 0, 0, F(1, 16))),
]
PHI_EXAMPLE1 = (F(5, 4), F(5, 4), F(3, 4), Q4, Q4, Q4)

NONCONVEX_W = (Q4, Q4, H, Q4, Q4, H)
# As printed. L is forced by L phi(x) = x, and L w works out to (0, 1/2, 1/2);
# the printed image is phi(0, 1/4, 1/4), i.e. it follows the printed L w.
PRINTED_LW = (0, Q4, Q4)
PRINTED_IMAGE = (F(1, 8), F(1, 8), F(5, 16), F(1, 8), F(1, 8), F(3, 16))
NONCONVEX_LW = (0, H, H)
NONCONVEX_IMAGE = (Q4, Q4, F(3, 4), Q4, Q4, Q4)

LP3_Q = [[0, -10, -20], [-10, 0, -10], [-20, -10, 0]]
LP3_B = [-2, -2, -26]
LP3_C = (-2, -20, -40, -2, -20, -26)
LP3_CTILDE = (1, -33, -23, 21, 7, -3)
LP3_OPT = -110
LP3_W = (2, 2, 2, 0, 0, 0)
LP3_X = (1, 1, 1)

EX5_Q = [[0, -30, 6, -22], [-30, 0, 15, -2], [6, 15, 0, -5], [-22, -2, -5, 0]]
EX5_B = [-8, -22, 0, -32]
EX5_OPT = -170
EX5_W = (2, H, 2, H, 2, H, 0, H, 0, H, 0, H)
EX5_X = (1, 1, 0, 1)
