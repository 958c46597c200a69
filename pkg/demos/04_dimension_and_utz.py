"""
Dimension, Mane certificates and the Utz bound
==============================================
"""

from lattidyn import (
    automorphism_from_permutation,
    dimension,
    finest_cover,
    mane_dimension_certificate,
    maximal_meet_cover,
    order,
    poset_validate,
    proper_maximal_elements,
    utz_bound,
    utz_generator,
)

###############################################################################
# Dimension is the order of the cover by maximal principal downsets, minus one

for name, P in [
    ("point", poset_validate("a")),
    ("two points", poset_validate("ab")),
    ("V", poset_validate("abc", [("c", "a"), ("c", "b")])),
    ("star", poset_validate("abcx", [("x", "a"), ("x", "b"), ("x", "c")])),
]:
    print(f"{name:>10}: dim {dimension(P)}")

###############################################################################
# A certificate cover with order at most |W|^2 (needs U squared to be an
# expansivity cover, true here for the swap of two points)

P = poset_validate("ab")
swap = automorphism_from_permutation(P, {"a": "b", "b": "a"})
cert, bound = mane_dimension_certificate(swap, finest_cover(P), 2)
print("certificate", cert.to_json(), "order", order(cert), "<=", bound)

###############################################################################
# Utz: proper maximal elements give covers without proper subcovers

Q = poset_validate("abc")
pm = proper_maximal_elements(Q)
print([d.labels() for d in pm])
print(maximal_meet_cover(pm).to_json())
rot = automorphism_from_permutation(Q, [1, 2, 0])
U0, N = utz_generator(rot, finest_cover(Q))
print("U0 =", U0.to_json(), "depth", N, "bound", utz_bound(rot))
