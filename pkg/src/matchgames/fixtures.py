"""Small hand-built markets with known equilibrium behavior.

Used throughout the tests and demo scripts.  Agent ids are 0-based.
"""

from __future__ import annotations

from .core import Instance, PreferenceList, Side, StrategyProfile


def cycling_instance() -> Instance:
    """5x5 market where unrestricted better responses can cycle.

    With strategic pairs {(2, 3), (2, 0)}, man 2 can help woman 3 by a
    misreport that demotes woman 0; at the misreported profile, reverting
    helps woman 0, and the two better responses alternate forever.  Push-up
    best responses on the same market converge in one step.
    """
    men = [
        (1, 0, 2, 3, 4),
        (0, 1, 2, 3, 4),
        (0, 2, 3, 1, 4),
        (3, 4, 0, 1, 2),
        (4, 3, 0, 1, 2),
    ]
    women = [
        (0, 2, 1, 3, 4),
        (1, 0, 2, 3, 4),
        (2, 0, 1, 3, 4),
        (4, 2, 0, 1, 3),
        (3, 0, 1, 2, 4),
    ]
    return Instance.from_lists(men, women)


def cycling_misreport() -> PreferenceList:
    """Man 2's non-push-up misreport on :func:`cycling_instance`: woman 3 is
    promoted above his match but woman 0 is demoted below it."""
    return PreferenceList((3, 2, 0, 1, 4))


def cycling_misreport_profile() -> StrategyProfile:
    inst = cycling_instance()
    return StrategyProfile.truthful(inst, Side.MEN).replace(2, cycling_misreport())


def poa_bound_instance() -> Instance:
    """5x5 market whose worst equilibrium leaves exactly the two non-strategic
    pairs blocking, making the anarchy/stability price bounds tight.

    Differs from :func:`cycling_instance` only in man 2's and woman 1's lists.
    """
    men = [
        (1, 0, 2, 3, 4),
        (0, 1, 2, 3, 4),
        (0, 1, 2, 3, 4),
        (3, 4, 0, 1, 2),
        (4, 3, 0, 1, 2),
    ]
    women = [
        (0, 2, 1, 3, 4),
        (1, 2, 0, 3, 4),
        (2, 0, 1, 3, 4),
        (4, 2, 0, 1, 3),
        (3, 0, 1, 2, 4),
    ]
    return Instance.from_lists(men, women)


def poa_misreport_profile() -> StrategyProfile:
    """Equilibrium profile of :func:`poa_bound_instance` whose matching blocks
    on the two excluded pairs (2, 0) and (2, 1)."""
    inst = poa_bound_instance()
    return StrategyProfile.truthful(inst, Side.MEN).replace(
        2, PreferenceList((3, 2, 0, 1, 4))
    )


def single_step_woman_instance() -> Instance:
    """3x3 market where woman 0 has exactly one profitable self-manipulation:
    promoting man 2 above man 1 steals man 0 back from woman 1."""
    men = [
        (1, 0, 2),
        (0, 1, 2),
        (0, 1, 2),
    ]
    women = [
        (0, 1, 2),
        (1, 0, 2),
        (0, 1, 2),
    ]
    return Instance.from_lists(men, women)


def mutual_top_instance(n: int) -> Instance:
    """Every agent ranks their own index first (rest ascending); the identity
    matching is the unique stable matching and nobody can manipulate."""
    lists = [
        tuple([i] + [j for j in range(n) if j != i]) for i in range(n)
    ]
    return Instance.from_lists(lists, lists)
