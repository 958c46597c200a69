"""
Lattices as downsets
====================

A finite distributive lattice is the set of downsets of a finite poset.
Here we build the V-poset ``c <= a, c <= b`` and look at its lattice.
"""

from lattidyn import from_explicit, join, join_irreducibles, meet, poset_validate, to_explicit

###############################################################################
# Points and order

P = poset_validate("abc", [("c", "a"), ("c", "b")])
print(P)
print("maximal points:", [P.labels[i] for i in P.maximal_points()])

###############################################################################
# Every element is a downset; join is union and meet is intersection

for d in P.downsets():
    print(sorted(d.labels()))

a, b = P.principal("a"), P.principal("b")
print("a v b =", join(a, b).labels(), " a ^ b =", meet(a, b).labels())

###############################################################################
# Join-irreducibles are the principal downsets, one per point

print([d.labels() for d in join_irreducibles(P)])

###############################################################################
# Round trip through an explicit join/meet table

L, elements = to_explicit(P)
Q, _ = from_explicit(L)
print("table size:", len(L.names), " recovered points:", len(Q))
