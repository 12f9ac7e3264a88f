"""
Reciprocals of pairwise products
================================

The algebra generated by 1/(l_i l_j) has a presentation ideal I(2,A) in
variables t_ij.  For the pencil plus a line it has four minimal generators:
one linear form from the dependency, two quadrics that exist for any four
forms, and one quadric found by pairing the classical relation.
"""

from pathlib import Path

from foldideals import load_arrangement
from foldideals.ot2 import (
    FiberRing,
    circuit_boundary,
    ot2_ideal,
    ot_classical_ideal,
    pair_into_t,
    standard_generators,
    sylvester_form,
    sym_generator,
    sym_ideal,
)

A = load_arrangement(Path(__file__).parent / "data" / "example_pencil.arr")
fr = FiberRing(A.n, A.ring)

I2 = ot2_ideal(A)
print("I(2,A):")
for g in I2.minimal_generators():
    print("  ", g)

print("standard generators:", [str(g) for g in standard_generators(A, fr)])

# the classical ideal in y1..y4 is principal here
print("I(A):", [str(g) for g in ot_classical_ideal(A).minimal_generators()])

# multiply the boundary by y4^2 and pair the y's: the missing quadric
G = circuit_boundary((0, 1, 2), (1, 1, -1), fr)
print("y4^2 * G pairs to", pair_into_t(G, fr.y(3) ** 2, fr))

# the symmetric ideal has n(n-2) - p = 7 minimal generators
S = sym_ideal(A)
print("sym generators:", S.minimal_count, "expected", S.expected_count)

# Sylvester form of A_123 and B_123 against l1, l2
rows = [sym_generator(A, "A", 0, 1, 2, fr), sym_generator(A, "B", 0, 1, 2, fr)]
res = sylvester_form(rows, [0, 1], A)
print("det =", res.determinant, "=", f"({res.monomial_factor}) * ({res.cofactor})")
print("in I(2,A):", res.in_ideal)
