"""
The S_4 resolution as Pfaffians
===============================

Cox(S_4) has codimension three and is Gorenstein, so its five quadrics are
the 4x4 Pfaffians of a skew 5x5 matrix of linear forms.
"""

###########################################################################
# One linear syzygy per twisted cubic gives a column of the matrix.

from dpx import Surface, pfaffian_structure_check, random_general_points
from dpx.curves import cox_generators

s = Surface(4)
pc = random_general_points(s, seed=0)
names = [str(c) for c, _ in cox_generators(s)]
report = pfaffian_structure_check(pc)
print("ok:", report.ok, report.shape)

###########################################################################
# Entries are linear forms in the ten generators; the diagonal is empty.

for row in report.matrix:
    cells = []
    for entry in row:
        cells.append(" + ".join(f"{c}*x{m[0]}" for m, c in entry.items()) or "0")
    print(" | ".join(cells))

###########################################################################
# Which generator each x_k stands for:

for k, name in enumerate(names):
    print(f"x{k} = {name}")
