"""Man-proposing deferred acceptance.

Single source of matchings for every game operation in this package.  Men
propose in preference order; each woman tentatively holds her best proposal so
far.  The outcome does not depend on the order in which unmatched men are
scanned, so the scheduler choice (FIFO queue by default) is observationally
irrelevant; a LIFO variant exists purely so tests can assert that.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .core import InputError, Matching, PreferenceList, StrategyProfile, effective_profile

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None


def _propose_impl(men_order, women_rank, lifo):
    # men_order[m, k]: k-th choice of man m; women_rank[w, m]: w's rank of m.
    n = men_order.shape[0]
    nxt = np.zeros(n, np.int32)
    holds = np.full(n, -1, np.int32)  # woman -> tentative man
    stack = np.empty(n * n, np.int32)
    head = 0
    tail = 0
    for i in range(n):
        stack[tail] = i
        tail += 1
    proposals = 0
    while head < tail:
        if lifo:
            tail -= 1
            m = stack[tail]
        else:
            m = stack[head]
            head += 1
        while True:
            w = men_order[m, nxt[m]]
            nxt[m] += 1
            proposals += 1
            cur = holds[w]
            if cur < 0:
                holds[w] = m
                break
            if women_rank[w, m] < women_rank[w, cur]:
                holds[w] = m
                stack[tail] = cur
                tail += 1
                break
    m2w = np.empty(n, np.int32)
    for w in range(n):
        m2w[holds[w]] = w
    return m2w, proposals


if njit is not None:
    _propose = njit(cache=True, nogil=True)(_propose_impl)
else:  # pragma: no cover
    _propose = _propose_impl


def da_matching_arr(men_order: np.ndarray, women_rank: np.ndarray, lifo: bool = False) -> np.ndarray:
    """Fast path used by the manipulation searches: int32 arrays in and out."""
    m2w, proposals = _propose(men_order, women_rank, lifo)
    n = men_order.shape[0]
    if proposals > n * n:
        raise AssertionError(f"deferred acceptance made {proposals} > n^2 proposals")
    return m2w


def _rank_matrix(lists: Sequence[PreferenceList]) -> np.ndarray:
    return np.array([l.rank for l in lists], dtype=np.int32)


def _order_matrix(lists: Sequence[PreferenceList]) -> np.ndarray:
    return np.array([l.order for l in lists], dtype=np.int32)


def run_da(
    men_lists: Sequence[PreferenceList],
    women_lists: Sequence[PreferenceList],
    scheduler: str = "fifo",
) -> Matching:
    """Run deferred acceptance on a full profile and return the matching.

    The output is stable with respect to the given (possibly misreported)
    profile: men-optimal and women-pessimal among its stable matchings.
    """
    n = len(men_lists)
    if len(women_lists) != n:
        raise InputError(
            f"side sizes differ: {n} men lists vs {len(women_lists)} women lists"
        )
    for lst in (*men_lists, *women_lists):
        if len(lst) != n:
            raise InputError("preference list length does not match market size")
    if scheduler not in ("fifo", "lifo"):
        raise InputError(f"unknown scheduler {scheduler!r}")
    m2w = da_matching_arr(
        _order_matrix(men_lists), _rank_matrix(women_lists), lifo=(scheduler == "lifo")
    )
    return Matching(tuple(int(w) for w in m2w))


def da_on_profile(sp: StrategyProfile) -> Matching:
    """Deferred acceptance on a strategy profile's effective lists."""
    men_lists, women_lists = effective_profile(sp)
    return run_da(men_lists, women_lists)
