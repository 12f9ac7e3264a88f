"""
Line arrangements in the plane
==============================

For forms in three variables the ideal I_{n-2} is cut out by fat points at
the multiple points of the arrangement, plus a power of the maximal ideal.
"""

from foldideals import Arrangement, fold_ideal, saturate
from foldideals.verify import cm_criterion, phi_kernel_check, primary_decomposition_check, singular_locus

# five lines, one triple point at [0:0:1]
A = Arrangement.from_strings(["x1", "x2", "x1+x2", "x3", "x1+2*x2+3*x3"])

for P in singular_locus(A):
    print(f"point [{':'.join(str(c) for c in P.point)}]  lines {[i + 1 for i in P.lines]}")

rep = primary_decomposition_check(A)
print(rep["checks"])
print("saturation of I_3:", rep["saturation"])

# only the triple point survives saturation, with exponent 3 - 2 = 1
print(saturate(fold_ideal(A, 3).ideal).minimal_generators())

# Cohen-Macaulay exactly when there are no triple points
for forms in (["x1", "x2", "x3", "x1+x2+x3"], ["x1", "x2", "x1+x2", "x3"]):
    B = Arrangement.from_strings(forms)
    r = cm_criterion(B)
    print(B, "CM:", r["cm_computed"], "pdim", r["pdim_computed"], "height", r["height"])

# the kernel of the map from the free module on pairs, one dimension per dependency
k = phi_kernel_check(A)
print("kernel HF", k["kernel_hf"], k["certification"])
