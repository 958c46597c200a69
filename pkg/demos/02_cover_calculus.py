"""
Covers and refinement
=====================
"""

from lattidyn import components, finest_cover, minimal_subcover, order, poset_validate, refines, square, wedge
from lattidyn.covers import Family

P = poset_validate("abc", [("c", "a"), ("c", "b")])
U = Family.of([P.downset("ac"), P.downset("bc")])
top = Family.of([P.one])

###############################################################################
# Refinement: every member of the finer cover sits under a member of the other

print("J refines U:", refines(finest_cover(P), U))
print("U refines {1}:", refines(U, top), " {1} refines U:", refines(top, U))

###############################################################################
# Wedge, order and square

print("U ^ U =", wedge(U, U).to_json())
print("order(U) =", order(U))
print("U squared =", square(U).to_json())

###############################################################################
# Components merge overlapping members; the minimal subcover is exact

print("components:", components(U).to_json())
sub, n = minimal_subcover(wedge(U, top))
print("minimal subcover size:", n, sub.to_json())
