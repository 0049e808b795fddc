"""
Ordered partitions, lattice paths and multi-Schur polynomials
=============================================================

Multi-Schur polynomials sum over vector partitions of the target, which are
the same thing as monotone lattice paths from the origin.
"""

from resultants import multi_schur, ordered_partitions
from resultants.schur import lattice_paths

print("ordered partitions of 4:", [p.parts for p in ordered_partitions(4)])

print("\nlattice paths to (2, 1):")
for path in lattice_paths((2, 1)):
    print(f"  m={path.m}  ", " -> ".join(map(str, path.positions)))

print("\nP_(2,1) =", multi_schur((2, 1)))
print("P_(1,1,1) =", multi_schur((1, 1, 1)))
