"""
Looking for non-linear resolutions
==================================

Outside two variables nothing forces I_a to have a linear resolution for
every a.  This scan resolves I_a for seeded random arrangements and reports
any that are not linear.  Run it again with the same seed to get the same list.
"""

import sys

from foldideals.verify import conjecture_scan, random_cases

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 1

cases = []
for a in (2, 3):
    cases += [(label, A, a) for label, A, _ in random_cases(seed, 6, k=3, n_range=(4, 6))]

rep = conjecture_scan(cases, jobs=2, seed=seed)
print(f"{len(rep['cases'])} cases, {len(rep['nonlinear'])} non-linear")
for row in rep["cases"]:
    flag = "linear" if row["linear"] else "NOT linear"
    print(f"  {row['label']:16s} a={row['a']} n={row['n']}  {flag}  {row['betti']}")
