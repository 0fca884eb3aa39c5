"""Best-response dynamics and Nash-equilibrium checks.

Two engines, both starting from the truthful profile and both guaranteed to
stop within n^2 steps:

* push-up dynamics for the accomplice (and, via the pair reduction, the
  one-for-many) game: each step applies the best no-regret single-woman
  push-up available to some strategic pair;
* inconspicuous dynamics for the woman game: each step applies the best
  single-man promotion available to some strategic woman, judged against her
  current reported list (the search at step t treats the step-t reports as
  the market's lists).

A profile where no strategic pair (or woman) can deviate is an equilibrium;
verification enumerates the same candidate sets, which suffices because any
improving misreport can be reproduced by an inconspicuous one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .core import (
    InputError,
    Instance,
    Matching,
    PreferenceList,
    Side,
    StrategicPairs,
    StrategyProfile,
)
from .da import da_matching_arr
from .manipulation import (
    ManipulationResult,
    evaluate_pushups,
    find_one_for_many_manipulation,
    find_self_manipulation,
)
from .stability import OracleBoundError

_POLICIES = ("fixed", "random")


class DynamicsInvariantError(RuntimeError):
    """A dynamic exceeded its guaranteed step bound: an implementation bug."""


@dataclass(frozen=True)
class DynamicsStep:
    """One applied best response.  ``man`` is None in the woman game, where
    ``woman`` is the manipulator herself; otherwise ``woman`` is the
    beneficiary.  ``promoted`` is the pushed woman / promoted man."""

    index: int
    man: int | None
    woman: int
    promoted: int
    profile_after: StrategyProfile
    matching_after: Matching


@dataclass(frozen=True)
class DynamicsTrace:
    """Record of a run from the truthful profile to a fixed point."""

    instance: Instance
    pairs: StrategicPairs | None
    women: tuple[int, ...] | None
    steps: tuple[DynamicsStep, ...]
    fixed_point: StrategyProfile
    final_matching: Matching

    @property
    def converged_at(self) -> int:
        return len(self.steps)


def _invert(m2w: np.ndarray) -> np.ndarray:
    w2m = np.empty(len(m2w), np.int64)
    w2m[m2w] = np.arange(len(m2w))
    return w2m


def _scan_pushups(
    men_rows: np.ndarray,
    women_rank: np.ndarray,
    men_true_rank: Sequence[Sequence[int]],
    women_true_rank: Sequence[Sequence[int]],
    cur: np.ndarray,
    pair_order: Sequence[tuple[int, int]],
    best_per_pair: bool,
) -> tuple[int, int, int, np.ndarray, np.ndarray] | None:
    """First pair in ``pair_order`` with an acceptable push-up.

    Returns (m, w, pushed, new row, new matching) or None.  Candidate
    evaluations are cached per man, since consecutive pairs often share the
    manipulator and his push-ups are independent of the beneficiary.
    """
    cur_w2m = _invert(cur)
    cache: dict[int, list[tuple[int, np.ndarray, np.ndarray, np.ndarray]]] = {}
    for m, w in pair_order:
        if m not in cache:
            kept = []
            cur_rank_m = men_true_rank[m][int(cur[m])]
            for x, new_row, m2w in evaluate_pushups(men_rows, women_rank, m, cur):
                if men_true_rank[m][int(m2w[m])] > cur_rank_m:
                    continue  # with-regret candidates never qualify
                kept.append((x, new_row, m2w, _invert(m2w)))
            cache[m] = kept
        old_rank = women_true_rank[w][int(cur_w2m[w])]
        best = None
        for x, new_row, m2w, new_w2m in cache[m]:
            new_rank = women_true_rank[w][int(new_w2m[w])]
            if new_rank >= old_rank:
                continue
            if not best_per_pair:
                return m, w, x, new_row, m2w
            if best is None or (new_rank, x) < (best[0], best[1]):
                best = (new_rank, x, new_row, m2w)
        if best is not None:
            return m, w, best[1], best[2], best[3]
    return None


def run_pushup_dynamics(
    inst: Instance,
    pairs: StrategicPairs,
    policy: str = "fixed",
    seed: int | None = None,
) -> DynamicsTrace:
    """Iterate no-regret push-up best responses from truth to a fixed point.

    ``policy="fixed"`` scans pairs in lexicographic order, restarting from the
    first pair after every applied step.  ``policy="random"`` reshuffles the
    scan order with a seeded generator after every applied step, so different
    seeds can reach different equilibria.  The fixed point is an equilibrium
    of the accomplice game and its matching is stable under the true lists.
    """
    if policy not in _POLICIES:
        raise InputError(f"policy must be one of {_POLICIES}, got {policy!r}")
    n = inst.n
    pair_list = sorted(pairs.pairs)
    for m, w in pair_list:
        if not 0 <= m < n or not 0 <= w < n:
            raise InputError(f"pair ({m}, {w}) out of range for n={n}")
    rng = np.random.default_rng(0 if seed is None else seed)

    men_rows = inst.men_order_arr.copy()
    women_rank = inst.women_rank_arr.copy()
    men_true_rank = [l.rank for l in inst.men]
    women_true_rank = [l.rank for l in inst.women]
    reports = list(inst.men)
    cur = da_matching_arr(men_rows, women_rank)

    steps: list[DynamicsStep] = []
    while True:
        if policy == "random" and pair_list:
            order = [pair_list[i] for i in rng.permutation(len(pair_list))]
        else:
            order = pair_list
        hit = _scan_pushups(
            men_rows, women_rank, men_true_rank, women_true_rank, cur, order, True
        )
        if hit is None:
            break
        m, w, x, new_row, m2w = hit
        men_rows[m] = new_row
        reports[m] = PreferenceList(int(v) for v in new_row)
        cur = m2w
        profile = StrategyProfile(base=inst, side=Side.MEN, reports=tuple(reports))
        steps.append(
            DynamicsStep(
                index=len(steps),
                man=m,
                woman=w,
                promoted=x,
                profile_after=profile,
                matching_after=Matching(tuple(int(v) for v in m2w)),
            )
        )
        if len(steps) > n * n:
            raise DynamicsInvariantError(
                f"push-up dynamics exceeded {n * n} steps; convergence bound violated"
            )
    fixed_point = StrategyProfile(base=inst, side=Side.MEN, reports=tuple(reports))
    return DynamicsTrace(
        instance=inst,
        pairs=pairs,
        women=None,
        steps=tuple(steps),
        fixed_point=fixed_point,
        final_matching=Matching(tuple(int(v) for v in cur)),
    )


def run_inconspicuous_dynamics(
    inst: Instance,
    pw: Iterable[int],
    policy: str = "fixed",
    seed: int | None = None,
) -> DynamicsTrace:
    """Iterate optimal single-man promotions by strategic women from truth to
    a fixed point.

    Each step searches the market whose women's lists are the current reports,
    so improvement and optimality are judged against the manipulating woman's
    own current list.  Step count never exceeds n^2: every applied promotion
    strictly worsens at least one man.
    """
    if policy not in _POLICIES:
        raise InputError(f"policy must be one of {_POLICIES}, got {policy!r}")
    n = inst.n
    women = sorted({int(w) for w in pw})
    if any(not 0 <= w < n for w in women):
        raise InputError(f"woman id out of range for n={n}")
    rng = np.random.default_rng(0 if seed is None else seed)

    reports = list(inst.women)
    steps: list[DynamicsStep] = []
    while True:
        snapshot = Instance(n=n, men=inst.men, women=tuple(reports))
        sp_now = StrategyProfile.truthful(snapshot, Side.WOMEN)
        if policy == "random" and women:
            order = [women[i] for i in rng.permutation(len(women))]
        else:
            order = women
        hit: tuple[int, ManipulationResult] | None = None
        for w in order:
            res = find_self_manipulation(sp_now, w, mode="best")
            if res.found:
                hit = (w, res)
                break
        if hit is None:
            break
        w, res = hit
        assert res.new_list is not None and res.resulting_matching is not None
        assert res.promoted is not None
        reports[w] = res.new_list
        profile = StrategyProfile(base=inst, side=Side.WOMEN, reports=tuple(reports))
        steps.append(
            DynamicsStep(
                index=len(steps),
                man=None,
                woman=w,
                promoted=res.promoted,
                profile_after=profile,
                matching_after=res.resulting_matching,
            )
        )
        if len(steps) > n * n:
            raise DynamicsInvariantError(
                f"inconspicuous dynamics exceeded {n * n} steps; convergence bound violated"
            )
    fixed_point = StrategyProfile(base=inst, side=Side.WOMEN, reports=tuple(reports))
    final = steps[-1].matching_after if steps else _truthful_matching(inst)
    return DynamicsTrace(
        instance=inst,
        pairs=None,
        women=tuple(women),
        steps=tuple(steps),
        fixed_point=fixed_point,
        final_matching=final,
    )


def _truthful_matching(inst: Instance) -> Matching:
    m2w = da_matching_arr(inst.men_order_arr, inst.women_rank_arr)
    return Matching(tuple(int(v) for v in m2w))


def trace_to_dict(trace: DynamicsTrace) -> dict:
    """JSON-ready view of a trace; every step carries the full profile."""
    players: dict
    if trace.pairs is not None:
        players = {"pairs": sorted(list(p) for p in trace.pairs.pairs)}
    else:
        players = {"women": list(trace.women or ())}
    return {
        "n": trace.instance.n,
        **players,
        "converged_at": trace.converged_at,
        "steps": [
            {
                "index": s.index,
                "man": s.man,
                "woman": s.woman,
                "promoted": s.promoted,
                "reports_after": [list(l.order) for l in s.profile_after.reports],
                "matching_after": list(s.matching_after.man_to_woman),
            }
            for s in trace.steps
        ],
        "fixed_point": {
            "side": trace.fixed_point.side.value,
            "reports": [list(l.order) for l in trace.fixed_point.reports],
        },
        "final_matching": list(trace.final_matching.man_to_woman),
    }


# ---------------------------------------------------------------------------
# equilibrium verification
# ---------------------------------------------------------------------------


def first_accomplice_deviation(
    sp: StrategyProfile, pairs: StrategicPairs
) -> tuple[tuple[int, int], ManipulationResult] | None:
    """The lexicographically first strategic pair with a valid push-up at
    ``sp``, with a witness manipulation; None if ``sp`` is an equilibrium."""
    if sp.side is not Side.MEN:
        raise InputError("accomplice games use men-reporting profiles")
    inst = sp.base
    men_rows = np.array([l.order for l in sp.reports], dtype=np.int32)
    women_rank = inst.women_rank_arr.copy()
    cur = da_matching_arr(men_rows, women_rank)
    hit = _scan_pushups(
        men_rows,
        women_rank,
        [l.rank for l in inst.men],
        [l.rank for l in inst.women],
        cur,
        sorted(pairs.pairs),
        False,
    )
    if hit is None:
        return None
    m, w, x, new_row, m2w = hit
    cur_w2m = _invert(cur)
    new_w2m = _invert(m2w)
    w_true = inst.women[w].rank
    witness = ManipulationResult(
        found=True,
        manipulator=m,
        new_list=PreferenceList(int(v) for v in new_row),
        promoted=x,
        beneficiary_gain=w_true[int(cur_w2m[w])] - w_true[int(new_w2m[w])],
        resulting_matching=Matching(tuple(int(v) for v in m2w)),
    )
    return (m, w), witness


def verify_ne_accomplice(sp: StrategyProfile, pairs: StrategicPairs) -> bool:
    """True iff no strategic pair admits an accomplice manipulation at ``sp``."""
    return first_accomplice_deviation(sp, pairs) is None


def verify_ne_one_for_many(
    sp: StrategyProfile, pm: Iterable[int], pw_by_m: Mapping[int, Iterable[int]]
) -> bool:
    """True iff no strategic man has a one-for-many deviation at ``sp``."""
    for m in sorted({int(v) for v in pm}):
        if find_one_for_many_manipulation(sp, m, pw_by_m.get(m, ())).found:
            return False
    return True


def first_woman_deviation(
    sp: StrategyProfile, pw: Iterable[int]
) -> tuple[int, ManipulationResult] | None:
    """First strategic woman with an improving promotion at ``sp``.

    Candidates are judged in the market defined by the current reports, the
    same view the inconspicuous dynamics uses at its fixed point.
    """
    if sp.side is not Side.WOMEN:
        raise InputError("woman games use women-reporting profiles")
    snapshot = Instance(n=sp.base.n, men=sp.base.men, women=tuple(sp.reports))
    sp_now = StrategyProfile.truthful(snapshot, Side.WOMEN)
    for w in sorted({int(v) for v in pw}):
        res = find_self_manipulation(sp_now, w, mode="first")
        if res.found:
            return w, res
    return None


def verify_ne_woman(sp: StrategyProfile, pw: Iterable[int]) -> bool:
    """True iff no strategic woman can improve her own match at ``sp``."""
    return first_woman_deviation(sp, pw) is None


# ---------------------------------------------------------------------------
# exhaustive oracle
# ---------------------------------------------------------------------------


def enumerate_all_ne(
    inst: Instance,
    pairs: StrategicPairs,
    max_n: int = 4,
    max_strategic_men: int = 2,
) -> list[tuple[StrategyProfile, Matching]]:
    """Every equilibrium profile of the accomplice game, by sheer enumeration.

    Only strategic men's lists vary; everyone else reports truthfully.  The
    profile space has (n!)^k points for k strategic men, so this refuses
    anything beyond small oracle sizes.
    """
    n = inst.n
    pm = pairs.men()
    if n > max_n:
        raise OracleBoundError(f"exhaustive NE enumeration limited to n <= {max_n}, got {n}")
    if len(pm) > max_strategic_men:
        raise OracleBoundError(
            f"exhaustive NE enumeration limited to {max_strategic_men} strategic men, "
            f"got {len(pm)}"
        )
    results: list[tuple[StrategyProfile, Matching]] = []
    truth = list(inst.men)
    for combo in product(permutations(range(n)), repeat=len(pm)):
        reports = list(truth)
        for m, order in zip(pm, combo):
            reports[m] = PreferenceList(order)
        sp = StrategyProfile(base=inst, side=Side.MEN, reports=tuple(reports))
        if verify_ne_accomplice(sp, pairs):
            men_rows = np.array([l.order for l in reports], dtype=np.int32)
            m2w = da_matching_arr(men_rows, inst.women_rank_arr)
            results.append((sp, Matching(tuple(int(v) for v in m2w))))
    return results
