"""Blocking pairs, restricted stability, brute-force stable sets, PoA/PoS."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable

from .core import InputError, Instance, Matching, StrategicPairs, ValidationError


class OracleBoundError(InputError):
    """Exhaustive enumeration refused because the instance is too large."""


@dataclass(frozen=True)
class StabilityReport:
    """Blocking pairs of a matching under the true profile, plus the count of
    non-blocking ("stable") pairs out of n^2."""

    blocking: frozenset[tuple[int, int]]
    nsp: int


def blocking_pairs(inst: Instance, mu: Matching) -> StabilityReport:
    """All pairs (m, w) that strictly prefer each other to their partners."""
    n = inst.n
    if mu.n != n:
        raise InputError(f"matching size {mu.n} does not match instance size {n}")
    found = set()
    w2m = mu.woman_to_man
    for m in range(n):
        mrank = inst.men[m].rank
        cutoff = mrank[mu.man_to_woman[m]]
        for w in inst.men[m].order:
            if mrank[w] >= cutoff:
                break
            wrank = inst.women[w].rank
            if wrank[m] < wrank[w2m[w]]:
                found.add((m, w))
    return StabilityReport(blocking=frozenset(found), nsp=n * n - len(found))


def is_x_stable(inst: Instance, mu: Matching, x: StrategicPairs) -> bool:
    """True iff every blocking pair of ``mu`` lies inside ``x``."""
    return blocking_pairs(inst, mu).blocking <= x.pairs


def is_stable(inst: Instance, mu: Matching) -> bool:
    return not blocking_pairs(inst, mu).blocking


def enumerate_stable(inst: Instance, bound: int = 8) -> tuple[Matching, ...]:
    """All stable matchings, by checking every one of the n! matchings.

    This is the ground-truth oracle behind the lattice-containment and
    optimality tests; the stability check is inlined and written directly from
    the blocking-pair definition so it shares no code path with callers.
    Refuses n above ``bound`` (default 8: 40320 matchings).
    """
    n = inst.n
    if n > bound:
        raise OracleBoundError(
            f"exhaustive stable-set enumeration is limited to n <= {bound}, got n={n}"
        )
    men_rank = [l.rank for l in inst.men]
    women_rank = [l.rank for l in inst.women]
    out = []
    for assignment in permutations(range(n)):
        w2m = [0] * n
        for m, w in enumerate(assignment):
            w2m[w] = m
        stable = True
        for m in range(n):
            mrank = men_rank[m]
            cutoff = mrank[assignment[m]]
            for w in range(n):
                if mrank[w] < cutoff and women_rank[w][m] < women_rank[w][w2m[w]]:
                    stable = False
                    break
            if not stable:
                break
        if stable:
            out.append(Matching(assignment))
    out.sort(key=lambda mu: mu.man_to_woman)  # lexicographic, deterministic
    return tuple(out)


@dataclass(frozen=True)
class PoAPoS:
    """Price of anarchy / stability over a set of equilibrium matchings.

    When ``exhaustive`` is false the supplied equilibria are a sample, so
    ``poa`` is only a lower bound on the true price of anarchy and ``pos``
    only an upper bound on the true price of stability.
    """

    poa: Fraction
    pos: Fraction
    exhaustive: bool


def poa_pos(
    inst: Instance,
    ne_matchings: Iterable[Matching],
    pairs: StrategicPairs,
    exhaustive: bool = False,
) -> PoAPoS:
    """Exact rational PoA and PoS over the supplied equilibrium matchings.

    Every supplied matching must come from a certified equilibrium profile;
    as a cross-check, its blocking pairs must all lie outside the strategic
    set (a blocking pair inside it would admit a top-placement manipulation,
    contradicting equilibrium).
    """
    matchings = list(ne_matchings)
    if not matchings:
        raise InputError("ne_matchings must be non-empty")
    n = inst.n
    nsps = []
    outside = pairs.complement(n)
    for mu in matchings:
        report = blocking_pairs(inst, mu)
        if not report.blocking <= outside.pairs:
            raise ValidationError(
                "matching blocks on a strategic pair; it cannot come from an "
                f"equilibrium profile: {sorted(report.blocking & pairs.pairs)}"
            )
        nsps.append(report.nsp)
    total = n * n
    return PoAPoS(
        poa=Fraction(total, min(nsps)),
        pos=Fraction(total, max(nsps)),
        exhaustive=exhaustive,
    )
