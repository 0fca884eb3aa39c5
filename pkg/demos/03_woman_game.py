#!/usr/bin/env python3
"""The self-manipulation game: women promote single men to improve their own
match, iterated to an equilibrium.

On the 3x3 demo market one promotion suffices; on a random market the script
tallies how each step trades one woman's gain against some man's loss.
"""

from matchgames import (
    derive_rng,
    generate_instance,
    rank_of,
    run_da,
    run_inconspicuous_dynamics,
    verify_ne_woman,
)
from matchgames.fixtures import single_step_woman_instance

print("-- 3x3 market, woman 0 strategic --")
inst = single_step_woman_instance()
print("truthful matching:", list(run_da(inst.men, inst.women).man_to_woman))
trace = run_inconspicuous_dynamics(inst, [0])
step = trace.steps[0]
print(
    f"woman {step.woman} promotes man {step.promoted}: report becomes "
    f"{list(step.profile_after.reports[step.woman].order)}"
)
print("new matching:", list(trace.final_matching.man_to_woman))
print("equilibrium:", verify_ne_woman(trace.fixed_point, [0]))

print("\n-- random 15x15 market, every woman strategic --")
rand = generate_instance(15, rng=derive_rng(189, 15))
truthful = run_da(rand.men, rand.women)
trace = run_inconspicuous_dynamics(rand, range(15))
prev = truthful
for step in trace.steps:
    mu = step.matching_after
    gain = rank_of(rand.women[step.woman], prev.woman_to_man[step.woman]) - rank_of(
        rand.women[step.woman], mu.woman_to_man[step.woman]
    )
    hurt = [
        m
        for m in range(15)
        if rank_of(rand.men[m], mu.man_to_woman[m]) > rank_of(rand.men[m], prev.man_to_woman[m])
    ]
    print(f"  step {step.index}: woman {step.woman} gains {gain} rank(s); men {hurt} slip")
    prev = mu
print(f"converged after {trace.converged_at} step(s);",
      "equilibrium:", verify_ne_woman(trace.fixed_point, range(15)))
