"""
Expansive automorphisms
=======================

Iterated two-sided wedges of a cover stabilize on a finite lattice.  A cover
is an expansivity cover when the stable wedge refines every cover, which
amounts to refining the join-irreducibles.
"""

from lattidyn import (
    automorphism_from_permutation,
    finest_cover,
    identity,
    is_expansive,
    is_expansivity_cover,
    poset_validate,
    stabilize,
)
from lattidyn.covers import Family

P = poset_validate("abcd")
rot = automorphism_from_permutation(P, [1, 2, 3, 0])
U = Family.of([P.downset("abc"), P.downset("d")])

###############################################################################
# One step of the rotation already separates the points

traj = stabilize(rot, U)
for k, A in enumerate(traj.covers):
    print(k, A.to_json())
print("stabilized at", traj.stabilized_at, "; expansivity cover:", is_expansivity_cover(rot, U))

###############################################################################
# The trivial cover never separates anything

print(is_expansivity_cover(rot, [P.one]))

###############################################################################
# On a finite lattice every automorphism is expansive, witnessed by J

ok, witness = is_expansive(identity(P))
print(ok, witness == finest_cover(P))
