#!/usr/bin/env python3
"""Deferred acceptance on a 5x5 market, truthful and manipulated.

Walks the market where a single misreport by man 2 hands woman 3 her top
partner: the truthful outcome, the manipulated outcome, and the blocking
pairs it leaves behind.
"""

from matchgames import blocking_pairs, da_on_profile, enumerate_stable, run_da
from matchgames.fixtures import cycling_instance, cycling_misreport_profile


def show(title, inst, mu):
    report = blocking_pairs(inst, mu)
    print(f"{title}: {list(mu.man_to_woman)}")
    print(f"  blocking pairs: {sorted(report.blocking) or 'none'}  (stable pairs {report.nsp}/25)")


inst = cycling_instance()
print("men's lists: ", [list(l.order) for l in inst.men])
print("women's lists:", [list(l.order) for l in inst.women])
print()

truthful = run_da(inst.men, inst.women)
show("truthful matching", inst, truthful)

sp = cycling_misreport_profile()
print(f"\nman 2 reports {list(sp.reports[2].order)} instead of {list(inst.men[2].order)}")
manipulated = da_on_profile(sp)
show("manipulated matching", inst, manipulated)
print("  woman 3's partner moved", truthful.woman_to_man[3], "->", manipulated.woman_to_man[3])

print("\nall stable matchings of this market:")
for mu in enumerate_stable(inst):
    print(" ", list(mu.man_to_woman))
