"""
From finite spaces to lattices
==============================

Open sets of a finite space form a distributive lattice, and a continuous map
acts on it by preimage.
"""

from lattidyn import (
    continuous_map,
    induced_automorphism,
    induced_morphism,
    is_expansive,
    open_lattice,
    space_validate,
)
from lattidyn.topology import proper_maximal_opens

X = space_validate("ab", [[], ["a"], ["a", "b"]])
P, emap = open_lattice(X)
print("points of the dual poset:", P.labels)
for u, d in sorted(emap.items(), key=lambda kv: len(kv[0])):
    print(sorted(u), "->", d.labels())

###############################################################################
# A constant map pulls opens back to either everything or nothing

f = continuous_map(X, X, {"a": "a", "b": "a"})
print(induced_morphism(f))

###############################################################################
# Homeomorphisms give automorphisms; on a T1 space the proper maximal opens
# are the point complements

D = space_validate("ab", [[], ["a"], ["b"], ["a", "b"]])
swap = induced_automorphism(continuous_map(D, D, {"a": "b", "b": "a"}))
print("expansive:", is_expansive(swap)[0])
print([sorted(u) for u in proper_maximal_opens(D)])
