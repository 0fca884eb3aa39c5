#!/usr/bin/env python3
"""Push-up best-response dynamics: from truth to a Nash equilibrium.

Runs the accomplice game on the 5x5 demo market and on a random market,
prints every step, and checks the fixed point both ways: no strategic pair
can deviate, and the final matching is stable under the true lists.

Also reproduces the tight price-of-anarchy example: an equilibrium whose
matching blocks on exactly the two non-strategic pairs.
"""

from fractions import Fraction

from matchgames import (
    StrategicPairs,
    blocking_pairs,
    da_on_profile,
    derive_rng,
    generate_instance,
    is_stable,
    poa_pos,
    run_pushup_dynamics,
    verify_ne_accomplice,
)
from matchgames.fixtures import cycling_instance, poa_bound_instance, poa_misreport_profile


def narrate(trace):
    for step in trace.steps:
        print(
            f"  step {step.index}: man {step.man} pushes woman {step.promoted} up "
            f"for woman {step.woman} -> matching {list(step.matching_after.man_to_woman)}"
        )
    print(f"  fixed point after {trace.converged_at} step(s)")


print("-- 5x5 demo market, strategic pairs {(2,3), (2,0)} --")
inst = cycling_instance()
pairs = StrategicPairs.of([(2, 3), (2, 0)])
trace = run_pushup_dynamics(inst, pairs)
narrate(trace)
print("  equilibrium:", verify_ne_accomplice(trace.fixed_point, pairs))
print("  stable under truth:", is_stable(inst, trace.final_matching))

print("\n-- random 12x12 market, every pair strategic --")
rand = generate_instance(12, rng=derive_rng(32))
all_pairs = StrategicPairs.all_pairs(12)
trace = run_pushup_dynamics(rand, all_pairs)
narrate(trace)
print("  stable under truth:", is_stable(rand, trace.final_matching))

print("\n-- price of anarchy on the tight 5x5 example --")
poa_inst = poa_bound_instance()
bad_pairs = StrategicPairs.of(
    [(m, w) for m in range(5) for w in range(5) if (m, w) not in {(2, 0), (2, 1)}]
)
worst = da_on_profile(poa_misreport_profile())
print("  worst equilibrium matching:", list(worst.man_to_woman))
print("  its blocking pairs:", sorted(blocking_pairs(poa_inst, worst).blocking))
best = run_pushup_dynamics(poa_inst, bad_pairs).final_matching
result = poa_pos(poa_inst, [worst, best], bad_pairs)
print(f"  PoA >= {result.poa} (= {float(result.poa):.4f}), PoS = {result.pos}")
assert result.poa == Fraction(25, 23)
