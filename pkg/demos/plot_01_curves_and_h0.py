"""
Curves and sections on a del Pezzo surface
==========================================

Classes on S_r are written (a; b1, ..., br) for aL + b1 E1 + ... + br Er.
"""

###########################################################################
# The Picard lattice and the anticanonical degree:

from dpx import Surface, anticanonical_class, h0_with_trace, parse_class
from dpx.curves import conics, minus_one_curves, twisted_cubics

s = Surface(5)
k = anticanonical_class(s)
print("-K =", k, " (-K)^2 =", k.square)

###########################################################################
# The (-1)-curves, conics and twisted cubics. Conics and cubics are the nef
# classes of square 0 and 1 in degrees 2 and 3.

for r in range(4, 9):
    t = Surface(r)
    print(r, len(minus_one_curves(t)), len(conics(t)), len(twisted_cubics(t)))

###########################################################################
# h^0 by peeling off (-1)-curves that meet the class negatively, until a
# nef class (Riemann-Roch) or a class of negative degree is left.

d = parse_class("3;-2,-2,-1,-1,-1")
value, trace = h0_with_trace(d)
for cls, curve in trace.steps:
    print(f"{cls}  minus  {curve}")
print("terminal", trace.terminal, "->", value)

###########################################################################
# Weyl orbits. The orbit of E1 is the whole set of (-1)-curves, and h^0 is
# constant along any orbit.

from dpx import h0, orbit
from dpx.weyl import nef_orbit_types

print(len(orbit(s.exceptional(1))))
for o in nef_orbit_types(s, 4):
    print(o.name, o.size, {h0(m) for m in o.members})
