"""Build Q_6 into equal cycles one operation at a time and watch the certificate grow.

    python3 demos/q6_walkthrough.py
"""
from hypercube_decomp import (
    combine_splittable,
    power_cube_decomposition,
    product_by_anchoring,
    verify_certificate,
    verify_decomposition,
)


def show(label, d):
    b = "-" if d.b is None else d.b
    print(f"{label}: {d.count} cycles of length {d.length} in Q_{d.ambient.n}, a={d.a} b={b} dr={d.dr}")


q2 = power_cube_decomposition(1, 1, 2, 0)
show("Q_2 base", q2)

# Q_4 as two Hamiltonian cycles whose alternate vertices represent them
pair = power_cube_decomposition(1, 2, 4, 1)
show("Q_4 pair", pair)
for c, r in zip(pair.cycles, pair.reps):
    print("   ", " ".join(f"{v:04b}" for v in c), "| reps", " ".join(f"{c[p]:04b}" for p in r))

tori = product_by_anchoring(pair.with_trace("one set"), q2)
print(f"anchored products: {len(tori)} subdivided tori with {sum(t.edge_count for t in tori)} edges")

for name, left in (("q=0", pair), ("q=1", power_cube_decomposition(1, 2, 3, 2))):
    show(f"Q_4 input for {name}", left)
    q6 = combine_splittable(left, q2)
    show(f"Q_6 {name}", q6)
    print("   verifier:", verify_decomposition(6, q6.cycles), "| certificate problems:", verify_certificate(q6))
