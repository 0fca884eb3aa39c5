"""Misreport construction and single-step manipulation searches.

Three kinds of deviations are searched for, always by running deferred
acceptance on candidate misreports and comparing partners under true lists:

* accomplice: a man misreports so a designated woman strictly improves while
  he is not worse off,
* one-for-many: a man's misreport Pareto-improves a designated set of women
  with no regret for himself,
* self: a woman misreports to strictly improve her own match.

Man-side candidates are single-woman push-ups (one woman moved from below the
man's current match to the top of his list); placing the pushed woman first is
without loss of generality because permuting a list strictly above or strictly
below the current match never changes the outcome.  Woman-side candidates are
inconspicuous misreports: one man promoted, nothing else changed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

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

_MODES = ("best", "first")


@dataclass(frozen=True)
class ManipulationResult:
    """Outcome of a manipulation search.

    ``promoted`` is the pushed-up woman (man-side games) or the promoted man
    (woman game).  ``beneficiary_gain`` counts true-list rank improvement: the
    single beneficiary's gain for accomplice and self searches, the summed
    gain over all beneficiaries for one-for-many.
    """

    found: bool
    manipulator: int
    new_list: PreferenceList | None = None
    promoted: int | None = None
    beneficiary_gain: int = 0
    resulting_matching: Matching | None = None


def _not_found(agent: int) -> ManipulationResult:
    return ManipulationResult(found=False, manipulator=agent)


def push_up(lst: PreferenceList, match: int, x: Iterable[int]) -> PreferenceList:
    """Move the agents in ``x`` from below ``match`` to the front of the list.

    Canonical layout: ``x`` (original relative order), then everything that
    was above ``match``, then ``match``, then the rest.  ``x`` must be a
    subset of the agents ranked strictly below ``match``.
    """
    xs = {int(a) for a in x}
    if not 0 <= match < len(lst):
        raise InputError(f"match id {match} out of range")
    pos = lst.rank[match]
    below = set(lst.order[pos + 1 :])
    bad = xs - below
    if bad:
        raise InputError(
            f"push-up set must lie strictly below the match; offending ids: {sorted(bad)}"
        )
    head = [a for a in lst.order if a in xs]
    left = [a for a in lst.order[:pos] if a not in xs]
    tail = [a for a in lst.order[pos + 1 :] if a not in xs]
    return PreferenceList(head + left + [match] + tail)


# ---------------------------------------------------------------------------
# array-level evaluation shared by the searches and the dynamics engine
# ---------------------------------------------------------------------------


def _reports_matrix(reports: Iterable[PreferenceList]) -> np.ndarray:
    return np.array([l.order for l in reports], dtype=np.int32)


def _pushup_rows(row: np.ndarray, match: int) -> list[tuple[int, np.ndarray]]:
    """(pushed woman, new row) for every woman below ``match`` in ``row``,
    in list order."""
    order = [int(v) for v in row]
    pos = order.index(match)
    out = []
    for x in order[pos + 1 :]:
        new_order = [x] + order[:pos] + [match] + [v for v in order[pos + 1 :] if v != x]
        out.append((x, np.array(new_order, dtype=np.int32)))
    return out


def evaluate_pushups(
    men_rows: np.ndarray, women_rank: np.ndarray, m: int, cur_m2w: np.ndarray
) -> list[tuple[int, np.ndarray, np.ndarray]]:
    """Run deferred acceptance once per single-woman push-up by man ``m``.

    Returns (pushed woman, new report row, resulting man_to_woman) triples in
    the order the pushed women appear below m's current match.  ``men_rows``
    is restored before returning.
    """
    saved = men_rows[m].copy()
    results = []
    try:
        for x, new_row in _pushup_rows(saved, int(cur_m2w[m])):
            men_rows[m] = new_row
            m2w = da_matching_arr(men_rows, women_rank)
            results.append((x, new_row, m2w))
    finally:
        men_rows[m] = saved
    return results


def _profile_matrices(sp: StrategyProfile) -> tuple[np.ndarray, np.ndarray]:
    """(men order rows, women rank rows) of the effective profile."""
    if sp.side is Side.MEN:
        return _reports_matrix(sp.reports), sp.base.women_rank_arr.copy()
    return sp.base.men_order_arr.copy(), np.array([l.rank for l in sp.reports], np.int32)


# ---------------------------------------------------------------------------
# accomplice search
# ---------------------------------------------------------------------------


def find_accomplice_manipulation(
    sp: StrategyProfile, pair: tuple[int, int], mode: str = "best"
) -> ManipulationResult:
    """Search single-woman push-ups by ``pair[0]`` that strictly improve
    ``pair[1]`` and give the manipulator no regret, both under true lists.

    ``mode="best"`` maximizes the beneficiary's true-list gain, breaking ties
    by the smallest pushed-woman id; ``mode="first"`` returns the first
    acceptable candidate in push-up order.
    """
    if sp.side is not Side.MEN:
        raise InputError("accomplice manipulation requires a men-reporting profile")
    if mode not in _MODES:
        raise InputError(f"mode must be one of {_MODES}, got {mode!r}")
    m, w = pair
    n = sp.base.n
    if not 0 <= m < n or not 0 <= w < n:
        raise InputError(f"pair ({m}, {w}) out of range for n={n}")

    men_rows, women_rank = _profile_matrices(sp)
    cur = da_matching_arr(men_rows, women_rank)
    m_true = sp.base.men[m].rank
    w_true = sp.base.women[w].rank
    cur_w2m = np.empty(n, np.int64)
    cur_w2m[cur] = np.arange(n)
    old_partner_rank = w_true[int(cur_w2m[w])]

    best: tuple[int, int, np.ndarray, np.ndarray] | None = None
    for x, new_row, m2w in evaluate_pushups(men_rows, women_rank, m, cur):
        if m_true[int(m2w[m])] > m_true[int(cur[m])]:
            continue  # manipulator regrets
        new_w2m = np.empty(n, np.int64)
        new_w2m[m2w] = np.arange(n)
        new_rank = w_true[int(new_w2m[w])]
        if new_rank >= old_partner_rank:
            continue  # beneficiary does not strictly improve
        cand = (new_rank, x, new_row, m2w)
        if mode == "first":
            best = cand
            break
        if best is None or (cand[0], cand[1]) < (best[0], best[1]):
            best = cand
    if best is None:
        return _not_found(m)
    new_rank, x, new_row, m2w = best
    return ManipulationResult(
        found=True,
        manipulator=m,
        new_list=PreferenceList(int(v) for v in new_row),
        promoted=x,
        beneficiary_gain=old_partner_rank - new_rank,
        resulting_matching=Matching(tuple(int(v) for v in m2w)),
    )


# ---------------------------------------------------------------------------
# one-for-many
# ---------------------------------------------------------------------------


def one_for_many_to_accomplice(
    pm: Iterable[int], pw_by_m: Mapping[int, Iterable[int]]
) -> StrategicPairs:
    """Flatten a one-for-many player set into accomplice pairs: one pair per
    (misreporting man, beneficiary woman).  Equilibria of the pair game carry
    over to the one-for-many game."""
    pairs = set()
    for m in pm:
        for w in pw_by_m.get(m, ()):
            pairs.add((int(m), int(w)))
    return StrategicPairs.of(pairs)


def find_one_for_many_manipulation(
    sp: StrategyProfile, m: int, pw: Iterable[int]
) -> ManipulationResult:
    """Search push-ups by ``m`` that weakly improve every woman in ``pw``,
    strictly improve at least one, and give ``m`` no regret (true lists).

    Used for equilibrium verification; returns the first acceptable candidate
    in push-up order.  ``beneficiary_gain`` sums the gains over ``pw``.
    """
    if sp.side is not Side.MEN:
        raise InputError("one-for-many manipulation requires a men-reporting profile")
    n = sp.base.n
    women = sorted({int(w) for w in pw})
    if not 0 <= m < n or any(not 0 <= w < n for w in women):
        raise InputError("agent id out of range")

    men_rows, women_rank = _profile_matrices(sp)
    cur = da_matching_arr(men_rows, women_rank)
    m_true = sp.base.men[m].rank
    cur_w2m = np.empty(n, np.int64)
    cur_w2m[cur] = np.arange(n)
    old_ranks = {w: sp.base.women[w].rank[int(cur_w2m[w])] for w in women}

    for x, new_row, m2w in evaluate_pushups(men_rows, women_rank, m, cur):
        if m_true[int(m2w[m])] > m_true[int(cur[m])]:
            continue
        new_w2m = np.empty(n, np.int64)
        new_w2m[m2w] = np.arange(n)
        gains = [
            old_ranks[w] - sp.base.women[w].rank[int(new_w2m[w])] for w in women
        ]
        if any(g < 0 for g in gains) or not any(g > 0 for g in gains):
            continue  # not a Pareto improvement for pw
        return ManipulationResult(
            found=True,
            manipulator=m,
            new_list=PreferenceList(int(v) for v in new_row),
            promoted=x,
            beneficiary_gain=sum(gains),
            resulting_matching=Matching(tuple(int(v) for v in m2w)),
        )
    return _not_found(m)


# ---------------------------------------------------------------------------
# woman self-manipulation
# ---------------------------------------------------------------------------


def _promotion_rows(order: np.ndarray) -> list[tuple[int, int, np.ndarray]]:
    """(promoted man, insertion position, new row) for every inconspicuous
    misreport, enumerated by man id then position."""
    lst = [int(v) for v in order]
    pos_of = {a: i for i, a in enumerate(lst)}
    out = []
    for a in sorted(lst):
        pos = pos_of[a]
        for j in range(pos):
            new = lst[:pos] + lst[pos + 1 :]
            new.insert(j, a)
            out.append((a, j, np.array(new, dtype=np.int32)))
    return out


def find_self_manipulation(
    sp: StrategyProfile, w: int, mode: str = "best"
) -> ManipulationResult:
    """Search inconspicuous misreports of ``w``'s current reported list that
    strictly improve her own match under her true list.

    ``mode="best"`` maximizes her true-list gain, breaking ties by smallest
    promoted-man id, then smallest insertion position.
    """
    if sp.side is not Side.WOMEN:
        raise InputError("self manipulation requires a women-reporting profile")
    if mode not in _MODES:
        raise InputError(f"mode must be one of {_MODES}, got {mode!r}")
    n = sp.base.n
    if not 0 <= w < n:
        raise InputError(f"woman id {w} out of range for n={n}")

    men_rows, women_rank = _profile_matrices(sp)
    cur = da_matching_arr(men_rows, women_rank)
    cur_w2m = np.empty(n, np.int64)
    cur_w2m[cur] = np.arange(n)
    w_true = sp.base.women[w].rank
    old_rank = w_true[int(cur_w2m[w])]

    report_order = np.array(sp.reports[w].order, dtype=np.int32)
    saved = women_rank[w].copy()
    best: tuple[int, int, int, np.ndarray, np.ndarray] | None = None
    try:
        for a, j, new_row in _promotion_rows(report_order):
            rank_row = np.empty(n, np.int32)
            rank_row[new_row] = np.arange(n, dtype=np.int32)
            women_rank[w] = rank_row
            m2w = da_matching_arr(men_rows, women_rank)
            new_w2m = np.empty(n, np.int64)
            new_w2m[m2w] = np.arange(n)
            new_rank = w_true[int(new_w2m[w])]
            if new_rank >= old_rank:
                continue
            cand = (new_rank, a, j, new_row, m2w)
            if mode == "first":
                best = cand
                break
            if best is None or (cand[0], cand[1], cand[2]) < (best[0], best[1], best[2]):
                best = cand
    finally:
        women_rank[w] = saved
    if best is None:
        return _not_found(w)
    new_rank, a, j, new_row, m2w = best
    return ManipulationResult(
        found=True,
        manipulator=w,
        new_list=PreferenceList(int(v) for v in new_row),
        promoted=a,
        beneficiary_gain=old_rank - new_rank,
        resulting_matching=Matching(tuple(int(v) for v in m2w)),
    )
