"""
Products of binary forms, repeats allowed
=========================================

With forms in two variables every I_a has a linear resolution, even when
some forms are repeated.  Below is a sweep over small multisets, and a look
at why the top ideal I_{n-1} factors.
"""

from foldideals import Arrangement, Ring, fold_ideal, minimal_free_resolution, reduced_support
from foldideals.fold_ideals import top_factorization_check
from foldideals.verify import multisets, verify_a_n_minus_1, verify_k2

R = Ring(("x", "y"))

S = Arrangement.from_strings(["x", "x", "y", "x+y"], R)
print("S =", S)
for a in range(1, S.n + 1):
    _, b = minimal_free_resolution(fold_ideal(S, a).ideal)
    print(f"a={a}  Betti {b.as_dict()}  linear: {b.is_linear()}")

# the distinct forms x, y, x+y; their pairwise products span all quadrics
supp, mult = reduced_support(S)
print("support", supp, "multiplicities", mult)

rep = verify_k2(S)
print("powers of m:", [(p["b"], p["holds"]) for p in rep["powers_of_m"]])

# x appears twice, so I_{n-1} = x * I_2(x, y, x+y)
print("top factorization:", top_factorization_check(S))
print("a = n-1 table:", verify_a_n_minus_1(S)["betti"])

# every multiset of up to five forms drawn from four lines
count = 0
for T in multisets(["x", "y", "x+y", "x-y"], R, 5):
    assert verify_k2(T)["pass"], T
    count += 1
print(f"{count} multisets checked, all linear")
