"""Frozen reference data for the generated-scheme tests.

Every entry was derived independently of the library (by hand or with a
brute-force oracle over exact rationals) before the generator was written;
the tests assert exact rational equality against these tables.
"""

from fractions import Fraction as F

# -- diffusion (m=2), centered minimal stencils ---------------------------------
# weight polynomials in nu: offset -> coefficients (c_0, c_1, ..., c_n)

DIFFUSION_N2 = {  # offsets -2..2
    0: (F(1), F(-5, 2), F(3)),
    1: (F(0), F(4, 3), F(-2)),
    2: (F(0), F(-1, 12), F(1, 2)),
}

DIFFUSION_N3 = {  # offsets -3..3
    0: (F(1), F(-49, 18), F(14, 3), F(-10, 3)),
    1: (F(0), F(3, 2), F(-13, 4), F(5, 2)),
    2: (F(0), F(-3, 20), F(1), F(-1)),
    3: (F(0), F(1, 90), F(-1, 12), F(1, 6)),
}

DIFFUSION_N4 = {  # offsets -4..4
    0: (F(1), F(-205, 72), F(91, 16), F(-25, 4), F(35, 12)),
    1: (F(0), F(8, 5), F(-61, 15), F(29, 6), F(-7, 3)),
    2: (F(0), F(-1, 5), F(169, 120), F(-13, 6), F(7, 6)),
    3: (F(0), F(8, 315), F(-1, 5), F(1, 2), F(-1, 3)),
    4: (F(0), F(-1, 560), F(7, 480), F(-1, 24), F(1, 24)),
}

# -- advection (m=1) layer tables ------------------------------------------------
# rows as written with 1/j! factored OUT in front (multiply row j by 1/j! to get
# the stored layer weights); offsets ascending.

ADVECTION_N3_OFFSETS = (-2, -1, 0, 1)
ADVECTION_N3_RAW_LAYERS = (
    (F(0), F(0), F(1), F(0)),            # j=0
    (F(1, 6), F(-1), F(1, 2), F(1, 3)),  # j=1  (x 1/1!)
    (F(0), F(1), F(-2), F(1)),           # j=2  (x 1/2!)
    (F(-1), F(3), F(-3), F(1)),          # j=3  (x 1/3!)
)

ADVECTION_N4_OFFSETS = (-2, -1, 0, 1, 2)
ADVECTION_N4_RAW_LAYERS = (
    (F(0), F(0), F(1), F(0), F(0)),
    (F(1, 12), F(-2, 3), F(0), F(2, 3), F(-1, 12)),
    (F(-1, 12), F(4, 3), F(-5, 2), F(4, 3), F(-1, 12)),
    (F(-1, 2), F(1), F(0), F(-1), F(1, 2)),
    (F(1), F(-4), F(6), F(-4), F(1)),
)


def folded_layers(raw_layers):
    """Apply the 1/j! folding convention used by the generator's layer tables."""
    import math

    return tuple(
        tuple(w / math.factorial(j) for w in row) for j, row in enumerate(raw_layers)
    )
