"""What the recursion would do for cubes far too large to materialise.

    python3 demos/large_n_plans.py
"""
from hypercube_decomp import BudgetExceeded, general_decomposition, plan_main, plan_operations

for n, x, q in ((30, 3, 0), (30, 1, 0), (180, 45, 0), (24, 3, 4)):
    plan = plan_main(n, q, x=x)
    print(f"Q_{n} x={x} q={q}: {plan.count} cycles of length {plan.length}, {plan.splittable}-splittable")
    for step in plan.schedule:
        print(f"   {step.kind:<8} Q_{x << step.level}: cycles of length 2^{step.ell}, sets of 2^{step.m}")
    print("   operations:", ", ".join(sorted(plan_operations(plan))))
    try:
        general_decomposition(plan)
    except BudgetExceeded as exc:
        print("   not built:", exc)
