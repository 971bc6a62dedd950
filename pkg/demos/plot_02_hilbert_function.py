"""
Hilbert function of the Cox ring
================================

H(t) adds up h^0 over all effective classes of anticanonical degree t.
"""

###########################################################################
# Slices are enumerated up to permutations of the points; each stored
# representative carries its orbit size and h^0.

from dpx import Surface, effective_slice, hilbert_value

s = Surface(8)
sl = effective_slice(s, 5)
print("representatives:", len(sl), " classes:", sl.n_classes, " H(5) =", sl.total)

###########################################################################
# Values in low degree for every r:

for r in range(4, 9):
    print(r, [hilbert_value(Surface(r), t) for t in range(1, r - 2)])

###########################################################################
# The Hilbert function is a polynomial of degree r + 2. It is interpolated
# exactly; its leading coefficient gives the degree d, and g = (r - 4) d + 1.

from math import factorial

from dpx import degree_and_genus, hilbert_polynomial

for r in range(4, 9):
    poly = hilbert_polynomial(Surface(r))
    num = [c * factorial(r + 2) for c in reversed(poly)]
    print(r, [int(c) for c in num], degree_and_genus(Surface(r)))

###########################################################################
# The K-polynomial: alternating sums B_j of the graded Betti numbers.
# They are palindromic up to the sign (-1)^pd.

from dpx import b_alternating, expected_reg_pd

for r in (4, 5):
    print(r, expected_reg_pd(Surface(r)), b_alternating(Surface(r)))
