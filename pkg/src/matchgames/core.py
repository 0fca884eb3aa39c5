"""Domain types for two-sided matching markets.

Agents on each side are integers 0..n-1.  A preference list is a strict,
complete ranking of the opposite side, most-preferred first.  Everything here
is immutable after construction; mutation happens by building new values, so
instances, profiles and matchings are safe to share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np


class InputError(ValueError):
    """An argument is out of range or inconsistent with the market size."""


class ParseError(InputError):
    """Input document is not valid JSON or lacks the expected structure."""


class ValidationError(InputError):
    """Structurally readable input that violates a permutation/size invariant."""


class Side(Enum):
    """Which side of the market submits reported lists in a strategy profile."""

    MEN = "men"
    WOMEN = "women"


class PreferenceList:
    """A permutation of 0..n-1; ``order[0]`` is the most preferred agent.

    The inverse permutation (agent -> position) is precomputed so preference
    queries are O(1); they are the hot path inside deferred acceptance and
    every manipulation search.
    """

    __slots__ = ("order", "rank")

    def __init__(self, order: Sequence[int]):
        order = tuple(int(a) for a in order)
        n = len(order)
        if n == 0:
            raise ValidationError("empty preference list")
        rank = [-1] * n
        for pos, a in enumerate(order):
            if not 0 <= a < n:
                raise ValidationError(f"agent id {a} out of range for n={n}")
            if rank[a] != -1:
                raise ValidationError(f"agent id {a} appears twice in preference list")
            rank[a] = pos
        self.order: tuple[int, ...] = order
        self.rank: tuple[int, ...] = tuple(rank)

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self) -> Iterator[int]:
        return iter(self.order)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PreferenceList) and self.order == other.order

    def __hash__(self) -> int:
        return hash(self.order)

    def __repr__(self) -> str:
        return f"PreferenceList({list(self.order)})"


def rank_of(lst: PreferenceList, target: int) -> int:
    """0-based position of ``target`` in ``lst``; 0 means most preferred."""
    if not 0 <= target < len(lst):
        raise InputError(f"agent id {target} out of range for n={len(lst)}")
    return lst.rank[target]


def prefers(lst: PreferenceList, a: int, b: int) -> bool:
    """True iff ``lst`` strictly prefers ``a`` to ``b`` (false when a == b)."""
    n = len(lst)
    if not 0 <= a < n or not 0 <= b < n:
        raise InputError(f"agent id out of range for n={n}: {a}, {b}")
    return lst.rank[a] < lst.rank[b]


@dataclass(frozen=True)
class Instance:
    """A matching market: n men, n women, and their true preference lists."""

    n: int
    men: tuple[PreferenceList, ...]
    women: tuple[PreferenceList, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError(f"market size must be >= 1, got {self.n}")
        for name, side in (("men", self.men), ("women", self.women)):
            if len(side) != self.n:
                raise ValidationError(
                    f"expected {self.n} {name} preference lists, got {len(side)}"
                )
            for lst in side:
                if len(lst) != self.n:
                    raise ValidationError(
                        f"{name} list of length {len(lst)} in a market of size {self.n}"
                    )

    @classmethod
    def from_lists(
        cls, men: Sequence[Sequence[int]], women: Sequence[Sequence[int]]
    ) -> "Instance":
        return cls(
            n=len(men),
            men=tuple(PreferenceList(l) for l in men),
            women=tuple(PreferenceList(l) for l in women),
        )

    # int32 views shared by the deferred-acceptance kernel and the searches.
    @cached_property
    def men_order_arr(self) -> np.ndarray:
        return np.array([l.order for l in self.men], dtype=np.int32)

    @cached_property
    def men_rank_arr(self) -> np.ndarray:
        return np.array([l.rank for l in self.men], dtype=np.int32)

    @cached_property
    def women_order_arr(self) -> np.ndarray:
        return np.array([l.order for l in self.women], dtype=np.int32)

    @cached_property
    def women_rank_arr(self) -> np.ndarray:
        return np.array([l.rank for l in self.women], dtype=np.int32)


@dataclass(frozen=True)
class Matching:
    """A bijection between men and women; ``man_to_woman[m]`` is m's partner."""

    man_to_woman: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.man_to_woman)
        seen = [False] * n
        for w in self.man_to_woman:
            if not 0 <= w < n or seen[w]:
                raise ValidationError("man_to_woman is not a permutation")
            seen[w] = True

    @cached_property
    def woman_to_man(self) -> tuple[int, ...]:
        inv = [0] * len(self.man_to_woman)
        for m, w in enumerate(self.man_to_woman):
            inv[w] = m
        return tuple(inv)

    @property
    def n(self) -> int:
        return len(self.man_to_woman)

    def pairs(self) -> Iterator[tuple[int, int]]:
        return iter(enumerate(self.man_to_woman))

    def __repr__(self) -> str:
        return f"Matching({list(self.man_to_woman)})"


@dataclass(frozen=True)
class StrategicPairs:
    """The player set of an accomplice game: (man, woman) alliances.

    Pairs need not be disjoint; one agent may be allied with several others.
    """

    pairs: frozenset[tuple[int, int]]

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]], n: int | None = None) -> "StrategicPairs":
        norm = frozenset((int(m), int(w)) for m, w in pairs)
        if n is not None:
            for m, w in norm:
                if not 0 <= m < n or not 0 <= w < n:
                    raise InputError(f"pair ({m}, {w}) out of range for n={n}")
        else:
            for m, w in norm:
                if m < 0 or w < 0:
                    raise InputError(f"pair ({m}, {w}) has a negative id")
        return cls(norm)

    @classmethod
    def all_pairs(cls, n: int) -> "StrategicPairs":
        return cls(frozenset((m, w) for m in range(n) for w in range(n)))

    def men(self) -> tuple[int, ...]:
        return tuple(sorted({m for m, _ in self.pairs}))

    def women(self) -> tuple[int, ...]:
        return tuple(sorted({w for _, w in self.pairs}))

    def complement(self, n: int) -> "StrategicPairs":
        every = {(m, w) for m in range(n) for w in range(n)}
        return StrategicPairs(frozenset(every - self.pairs))

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class StrategyProfile:
    """Reported lists for one side of the market, overlaying a true instance.

    Exactly one side reports; the other side's lists are always read from the
    underlying instance.
    """

    base: Instance
    side: Side
    reports: tuple[PreferenceList, ...]

    def __post_init__(self) -> None:
        if len(self.reports) != self.base.n:
            raise ValidationError(
                f"expected {self.base.n} reported lists, got {len(self.reports)}"
            )
        for lst in self.reports:
            if len(lst) != self.base.n:
                raise ValidationError("reported list has the wrong length")

    @classmethod
    def truthful(cls, base: Instance, side: Side = Side.MEN) -> "StrategyProfile":
        reports = base.men if side is Side.MEN else base.women
        return cls(base=base, side=side, reports=reports)

    def replace(self, agent: int, new_list: PreferenceList) -> "StrategyProfile":
        if not 0 <= agent < self.base.n:
            raise InputError(f"agent id {agent} out of range")
        reports = list(self.reports)
        reports[agent] = new_list
        return StrategyProfile(base=self.base, side=self.side, reports=tuple(reports))

    def report_of(self, agent: int) -> PreferenceList:
        return self.reports[agent]


def effective_profile(
    sp: StrategyProfile,
) -> tuple[tuple[PreferenceList, ...], tuple[PreferenceList, ...]]:
    """Full (men lists, women lists) profile: reports on the strategic side,
    true lists on the other."""
    if sp.side is Side.MEN:
        return sp.reports, sp.base.women
    return sp.base.men, sp.reports


# ---------------------------------------------------------------------------
# JSON interchange
#
# Instance:  {"n": 5, "men": [[...], ...], "women": [[...], ...]}
# Pairs:     {"pairs": [[m, w], ...]}
# Profile:   {"side": "men"|"women", "reports": [[...], ...]}
# Matching:  {"matching": [w_of_m0, w_of_m1, ...]}
# ---------------------------------------------------------------------------


def _parse_json(text: str | bytes) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object")
    return doc


def _int_matrix(doc: Mapping, key: str) -> list[list[int]]:
    rows = doc.get(key)
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"field {key!r} must be a list of lists")
    return rows


def load_instance(text: str | bytes) -> Instance:
    """Parse and validate an instance document."""
    doc = _parse_json(text)
    n = doc.get("n")
    if not isinstance(n, int):
        raise ParseError("field 'n' must be an integer")
    men = _int_matrix(doc, "men")
    women = _int_matrix(doc, "women")
    if len(men) != n or len(women) != n:
        raise ValidationError(
            f"expected {n} lists per side, got {len(men)} men / {len(women)} women"
        )
    return Instance.from_lists(men, women)


def serialize_instance(inst: Instance) -> str:
    return json.dumps(
        {
            "n": inst.n,
            "men": [list(l.order) for l in inst.men],
            "women": [list(l.order) for l in inst.women],
        }
    )


def load_pairs(text: str | bytes, n: int | None = None) -> StrategicPairs:
    doc = _parse_json(text)
    raw = doc.get("pairs")
    if not isinstance(raw, list):
        raise ParseError("field 'pairs' must be a list of [man, woman] pairs")
    try:
        pairs = [(int(m), int(w)) for m, w in raw]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed pair entry: {exc}") from exc
    return StrategicPairs.of(pairs, n=n)


def serialize_pairs(pairs: StrategicPairs) -> str:
    return json.dumps({"pairs": sorted(list(p) for p in pairs.pairs)})


def load_profile(text: str | bytes, base: Instance) -> StrategyProfile:
    doc = _parse_json(text)
    side_raw = doc.get("side")
    if side_raw not in ("men", "women"):
        raise ParseError("field 'side' must be 'men' or 'women'")
    reports = _int_matrix(doc, "reports")
    return StrategyProfile(
        base=base,
        side=Side(side_raw),
        reports=tuple(PreferenceList(r) for r in reports),
    )


def serialize_profile(sp: StrategyProfile) -> str:
    return json.dumps(
        {"side": sp.side.value, "reports": [list(l.order) for l in sp.reports]}
    )


def load_matching(text: str | bytes) -> Matching:
    doc = _parse_json(text)
    raw = doc.get("matching")
    if not isinstance(raw, list):
        raise ParseError("field 'matching' must be a list of woman ids")
    return Matching(tuple(int(w) for w in raw))


def serialize_matching(mu: Matching) -> str:
    return json.dumps({"matching": list(mu.man_to_woman)})
