"""
Entropy of automorphisms and of shifts
======================================
"""

import math

from lattidyn import (
    automorphism_from_permutation,
    expansive_entropy,
    finest_cover,
    minimal_word_subcover,
    poset_validate,
    relative_entropy,
    shift_entropy,
    symbol_poset_validate,
)

###############################################################################
# Finite systems have zero entropy; counts settle and estimates fall like 1/n

P = poset_validate("abc")
rot = automorphism_from_permutation(P, [1, 2, 0])
seq = relative_entropy(rot, finest_cover(P), 6)
print("counts", seq.counts, "estimates", [round(x, 4) for x in seq.estimates])
print("entropy", expansive_entropy(rot, 8)[0])

###############################################################################
# The shift on words over an ordered alphabet: only maximal symbols matter

S = symbol_poset_validate("abc", [("c", "a"), ("c", "b")])
for n in (1, 2, 3):
    words, count = minimal_word_subcover(S, n)
    print(n, count, sorted("".join(w) for w in words))
value, report = shift_entropy(S, 4)
print("h =", value, "log 2 =", math.log(2), report["counts"])
