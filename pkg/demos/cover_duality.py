"""Minimal covers as a duality: antichains, the involution, uniformity.

A cover meets every member of a family; MC(F) collects the minimal ones.
Three laws hold (checked here and exhaustively in the test suite):
MC(F) is an antichain, MC is an involution on antichains, and MC only
sees the minimal members of F.
"""

from ucfreq.setfam import (
    family,
    format_mask,
    is_antichain,
    minimal_covers,
    minimal_elements,
)


def show(fam):
    return " ".join(format_mask(s) for s in fam.sets)


edges = family(3, [[1, 2], [2, 3]])
mc = minimal_covers(edges)
print(f"F            = {show(edges)}")
print(f"MC(F)        = {show(mc)}")
print(f"MC(MC(F))    = {show(minimal_covers(mc))}   (back to F: involution)")
print(f"antichain?     {is_antichain(mc)}")
print()

triangle = family(3, [[1, 2], [2, 3], [1, 3]])
print(f"The triangle {show(triangle)} is self-dual:")
print(f"  MC = {show(minimal_covers(triangle))}")
print()

# non-antichains lose their non-minimal members
nested = family(3, [[1], [1, 2], [2, 3]])
print(f"F            = {show(nested)}   (not an antichain)")
print(f"MC(F)        = {show(minimal_covers(nested))}")
print(f"MC(min(F))   = {show(minimal_covers(minimal_elements(nested)))}   (same)")
print(f"MC(MC(F))    = {show(minimal_covers(minimal_covers(nested)))}   (the minimal members)")
print()

# uniformity: the first example above has cover sizes {1, 2}, while two
# disjoint pairs produce a perfectly 2-uniform cover family
pairs = family(4, [[1, 2], [3, 4]])
mc = minimal_covers(pairs)
print(f"MC({show(pairs)}) = {show(mc)}")
sizes = sorted({s.bit_count() for s in mc.sets})
print(f"  cover sizes: {sizes}.  In general MC(F) is k-uniform exactly when the")
print("  minimal members of F form the minimal covers of a k-uniform hypergraph;")
print("  the exhaustive suite checks the laws behind that on every small family.")
