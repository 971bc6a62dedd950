"""
Multigraded Betti numbers from Koszul homology
==============================================

Sections of aL - sum m_i E_i are plane curves of degree a with
multiplicity m_i at p_i. Products of sections are products of forms.
"""

###########################################################################
# A point configuration with a genericity certificate: h^0 from the
# lattice agrees with the rank of the interpolation conditions.

from dpx import Surface, parse_class, random_general_points

s = Surface(5)
pc = random_general_points(s, seed=0)
print(pc.points)
for line in pc.certificate:
    print(" ", line)

###########################################################################
# A conic Q = L - E1 has four reducible fibres E + (Q - E); their products
# span a 2-dimensional space, so two quadrics vanish.

from dpx.curves import conics
from dpx.syzygy import conic_relations

q = min(conics(s))
for f in conic_relations(q, pc):
    print({m: str(c) for m, c in f.as_dict().items()})

###########################################################################
# b_{i,D} is the homology of the strand A(D)_* in homological degree i.

from dpx import KoszulComplex

for i, text in [(1, "1;-1,0,0,0,0"), (2, "1;0,0,0,0,0"), (2, "2;-2,0,0,0,0"), (3, "3;-1,-1,-1,-1,-1")]:
    kc = KoszulComplex(parse_class(text, 5), pc)
    print(f"b_{i},({text}) = {kc.betti(i)}   dims {[kc.dim(d) for d in range(5)]}")

###########################################################################
# The whole S_5 diagram: linear strand by Koszul over Weyl orbits, its
# mirror image by Gorenstein duality, middle row from the B_j.

from dpx import betti_diagram

diag = betti_diagram(s, pc)
print(diag.text())
print(diag.checks["koszul cells"])
