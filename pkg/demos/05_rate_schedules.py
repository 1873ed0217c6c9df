# Evolve eigenvalues under piecewise-constant generator rates and
# watch the trajectory cross region boundaries.

from paulivol import (
    EigenvalueTriple,
    RateSchedule,
    classify_trajectory,
    evolve,
    is_semigroup_reachable,
    rates_for_target,
)

# strong depolarizing burst, then pure dephasing
schedule = RateSchedule([
    (0.6, (1.0, 1.0, 1.0)),
    (1.4, (0.0, 0.0, 0.8)),
])

print("t        l1      l2      l3    regions")
for pt in classify_trajectory(schedule, steps=9):
    tags = ",".join(tag for tag, hit in pt.regions.items() if hit)
    lam = pt.eigenvalues
    print(f"{pt.t:4.2f}  {lam.l1:6.4f}  {lam.l2:6.4f}  {lam.l3:6.4f}  [{tags}]")

# invert a target: which constant rates land on it at t* = 1?
print()
for triple in [(0.9, 0.85, 0.8), (0.9, 0.8, 0.95)]:
    target = EigenvalueTriple(*triple)
    rates = rates_for_target(target, 1.0)
    reached = evolve(RateSchedule([(1.0, rates)]), 1.0)
    print(f"target {triple}")
    print(f"  rates ({rates.g1:+.4f}, {rates.g2:+.4f}, {rates.g3:+.4f})"
          f"  semigroup reachable: {is_semigroup_reachable(target)}")
    print(f"  reached ({reached.l1:.12f}, {reached.l2:.12f}, {reached.l3:.12f})")
