"""
Fold-product ideals and their Betti tables
==========================================

Four lines in the projective plane: three through one point, one more in
general position.  We build the ideal of all products of two of the forms,
resolve it, and compare with the closed formula.
"""

from pathlib import Path

from foldideals import (
    fold_ideal,
    load_arrangement,
    minimal_free_resolution,
    parse_arrangement,
    rank2_flats,
)
from foldideals.verify import predicted_betti, verify_main_theorem

A = load_arrangement(Path(__file__).parent / "data" / "example_pencil.arr")
print("arrangement:", A)

# the rank-2 flats tell us which forms are dependent; the triple {1,2,3} is the only one
for flat in rank2_flats(A):
    print("flat", [i + 1 for i in flat.members])

# I_{n-2}: here the six pairwise products
F = fold_ideal(A, A.n - 2)
for subset, g in zip(F.subsets, F.generators):
    print(f"  prod{tuple(i + 1 for i in subset)} = {g}")

res, betti = minimal_free_resolution(F.ideal)
print()
print(betti)

pred = predicted_betti(A)
print("\npredicted ranks", pred.ranks, "in degrees", pred.degrees, f"(m={pred.m}, p={pred.p})")

# the same comparison, with every consistency check the library knows about
report = verify_main_theorem(A)
for name, ok in report["checks"].items():
    print(f"  {name:22s} {ok}")

# a generic arrangement of five lines: p = 0, so the table is (10, 15, 6)
G = parse_arrangement("form: x1\nform: x2\nform: x3\nform: x1+x2+x3\nform: x1+2*x2+3*x3\n")
print("\ngeneric five lines:")
print(minimal_free_resolution(fold_ideal(G, 3).ideal)[1])
