"""Print the reachable cycle counts and lengths for a few hypercube dimensions.

    python3 demos/tables.py 14 30 180
"""
import sys

from hypercube_decomp import enumerate_parameters

for n in [int(a) for a in sys.argv[1:]] or [14, 30, 180]:
    print(f"Q_{n}: {n << (n - 1)} edges")
    for row in enumerate_parameters(n) + enumerate_parameters(n, "cbgen"):
        tag = "main " if row.mode == "main" else "cbgen"
        where = "buildable" if row.constructible else "needs a Q_%d base" % (2 * row.x)
        print(f"  {tag} x={row.x:<3} counts {row.cells()[-2]:<26} lengths {row.cells()[-1]:<28} {where}")
