"""Seeded preference generators: impartial culture and the Mallows model.

Reproducibility contract: every generator takes a ``numpy.random.Generator``
and the same seed yields the same instance on every platform.  Batch code
derives one generator per sample via ``derive_rng(master_seed, *path)`` so
samples can be produced in any order (or in parallel) without changing the
result.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import InputError, Instance, PreferenceList, ValidationError


@dataclass(frozen=True)
class MallowsParams:
    """Central ranking plus dispersion phi in [0, 1]: phi=0 pins every sample
    to the center, phi=1 is a uniform draw over all rankings."""

    center: PreferenceList
    phi: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.phi <= 1.0:
            raise ValidationError(f"phi must lie in [0, 1], got {self.phi}")


def derive_rng(master_seed: int, *path: int) -> np.random.Generator:
    """A PCG64 generator keyed by (master_seed, *path); independent streams
    for distinct paths."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((master_seed, *path))))


def kendall_tau(u: PreferenceList, v: PreferenceList) -> int:
    """Number of discordant pairs between two rankings (swap distance)."""
    if len(u) != len(v):
        raise InputError(f"rankings have different lengths: {len(u)} vs {len(v)}")
    pu = np.asarray(u.rank)
    pv = np.asarray(v.rank)
    du = pu[:, None] - pu[None, :]
    dv = pv[:, None] - pv[None, :]
    return int(np.count_nonzero(du * dv < 0) // 2)


def _insertion_position(t: int, phi: float, rng: np.random.Generator) -> int:
    # Weight for slot j in [0, t] is phi^(t-j); slot t (append at the bottom)
    # always has weight 1, which also covers phi = 0 via the 0^0 = 1 reading.
    if t == 0:
        return 0
    weights = phi ** np.arange(t, -1, -1, dtype=np.float64)
    total = float(weights.sum())
    target = rng.random() * total
    acc = 0.0
    for j in range(t + 1):
        acc += weights[j]
        if target < acc:
            return j
    return t


def mallows_sample(params: MallowsParams, rng: np.random.Generator) -> PreferenceList:
    """One exact draw: probability of ranking v is phi^dist(center, v) / Z.

    Repeated insertion: the center's items are inserted one by one, the i-th
    item landing j slots above the bottom with probability proportional to
    phi^j.  Always inserting at the bottom reproduces the center, and each
    slot above it contributes exactly one extra discordant pair, which is what
    makes the construction exact.  O(n^2), no rejection.
    """
    out: list[int] = []
    for t, item in enumerate(params.center.order):
        out.insert(_insertion_position(t, params.phi, rng), item)
    return PreferenceList(out)


def _impartial_side(n: int, rng: np.random.Generator) -> tuple[PreferenceList, ...]:
    return tuple(PreferenceList(rng.permutation(n)) for _ in range(n))


def _mallows_side(n: int, phi: float, rng: np.random.Generator) -> tuple[PreferenceList, ...]:
    center = PreferenceList(rng.permutation(n))
    params = MallowsParams(center=center, phi=phi)
    return tuple(mallows_sample(params, rng) for _ in range(n))


def generate_instance(
    n: int,
    model: str = "impartial",
    rng: np.random.Generator | None = None,
    phi_m: float | None = None,
    phi_w: float | None = None,
) -> Instance:
    """Draw a full market.

    ``model="impartial"``: every list is an independent uniform permutation.
    ``model="mallows"``: one uniform central ranking per side, then n Mallows
    samples per side with that side's dispersion.  Draw order is fixed (men's
    center, men's lists, women's center, women's lists) so a given generator
    state always produces the same instance.
    """
    if n < 1:
        raise InputError(f"market size must be >= 1, got {n}")
    if rng is None:
        rng = np.random.default_rng()
    if model == "impartial":
        return Instance(n=n, men=_impartial_side(n, rng), women=_impartial_side(n, rng))
    if model == "mallows":
        if phi_m is None or phi_w is None:
            raise InputError("mallows model requires phi_m and phi_w")
        men = _mallows_side(n, float(phi_m), rng)
        women = _mallows_side(n, float(phi_w), rng)
        return Instance(n=n, men=men, women=women)
    raise InputError(f"unknown model {model!r}; expected 'impartial' or 'mallows'")
