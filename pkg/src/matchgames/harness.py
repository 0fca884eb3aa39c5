"""Experiment driver: dynamics-length and welfare studies over sweeps.

A configuration names a game, a sweep (sizes at a fixed culture, or a full
(phi_m, phi_w) grid at a fixed size), a sample count per cell and a master
seed.  Each sample draws a market, runs the game's dynamics from truth,
verifies the fixed point really is an equilibrium (fail fast on engine bugs)
and measures trace length plus the welfare movement between the truthful
matching and the equilibrium matching.  Per-sample generators are derived
from (master_seed, cell_index, sample_index), so results do not depend on
execution order and cells can run in parallel.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .core import (
    Instance,
    Matching,
    ParseError,
    Side,
    StrategicPairs,
    ValidationError,
    load_pairs,
)
from .da import da_matching_arr
from .dynamics import (
    DynamicsTrace,
    run_inconspicuous_dynamics,
    run_pushup_dynamics,
    trace_to_dict,
    verify_ne_accomplice,
    verify_ne_woman,
)
from .gen import derive_rng, generate_instance

CSV_HEADER = (
    "game,n,phi_m,phi_w,samples,seed,avg_len,max_len,"
    "avg_women_gain,avg_men_loss,best_woman_gain,worst_man_loss,net_welfare"
)

GAMES = ("accomplice", "woman")


class EquilibriumCheckError(RuntimeError):
    """A dynamics fixed point failed equilibrium verification."""


@dataclass(frozen=True)
class SizeSweep:
    sizes: tuple[int, ...]
    model: str = "impartial"
    phi_m: float | None = None
    phi_w: float | None = None


@dataclass(frozen=True)
class PhiGrid:
    phis: tuple[float, ...]
    n: int


@dataclass(frozen=True)
class ExperimentConfig:
    game: str
    sweep: SizeSweep | PhiGrid
    samples_per_cell: int
    master_seed: int
    strategic: str = "default"  # "all_pairs", "all_women", or a pairs-file path
    dump_traces: str | None = None

    def __post_init__(self) -> None:
        if self.game not in GAMES:
            raise ValidationError(f"game must be one of {GAMES}, got {self.game!r}")
        if self.samples_per_cell < 1:
            raise ValidationError("samples_per_cell must be >= 1")
        if isinstance(self.sweep, PhiGrid):
            if any(not 0.0 <= p <= 1.0 for p in self.sweep.phis):
                raise ValidationError("grid phi values must lie in [0, 1]")

    @classmethod
    def from_json(cls, text: str | bytes) -> "ExperimentConfig":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid config JSON: {exc}") from exc
        raw_sweep = doc.get("sweep", {})
        sweep: SizeSweep | PhiGrid
        if "sizes" in raw_sweep:
            sweep = SizeSweep(
                sizes=tuple(int(v) for v in raw_sweep["sizes"]),
                model=raw_sweep.get("model", "impartial"),
                phi_m=raw_sweep.get("phi_m"),
                phi_w=raw_sweep.get("phi_w"),
            )
        elif "grid" in raw_sweep:
            sweep = PhiGrid(
                phis=tuple(float(v) for v in raw_sweep["grid"]),
                n=int(raw_sweep["n"]),
            )
        else:
            raise ParseError("sweep must provide either 'sizes' or 'grid'")
        return cls(
            game=doc.get("game", "accomplice"),
            sweep=sweep,
            samples_per_cell=int(doc.get("samples_per_cell", 200)),
            master_seed=int(doc.get("master_seed", 0)),
            strategic=doc.get("strategic", "default"),
            dump_traces=doc.get("dump_traces"),
        )


@dataclass(frozen=True)
class WelfareRecord:
    """Per-agent rank movement between the truthful and equilibrium
    matchings, in true-list rank units.  Positive gain means the woman moved
    up her list; positive loss means the man moved down his."""

    gains: tuple[int, ...]
    losses: tuple[int, ...]
    women_avg_gain: float
    men_avg_loss: float
    best_off_woman_gain: int
    worst_off_man_loss: int
    net_welfare: int


def welfare_record(inst: Instance, truthful: Matching, equilibrium: Matching) -> WelfareRecord:
    n = inst.n
    gains = tuple(
        inst.women[w].rank[truthful.woman_to_man[w]]
        - inst.women[w].rank[equilibrium.woman_to_man[w]]
        for w in range(n)
    )
    losses = tuple(
        inst.men[m].rank[equilibrium.man_to_woman[m]]
        - inst.men[m].rank[truthful.man_to_woman[m]]
        for m in range(n)
    )
    return WelfareRecord(
        gains=gains,
        losses=losses,
        women_avg_gain=sum(gains) / n,
        men_avg_loss=sum(losses) / n,
        best_off_woman_gain=max(gains),
        worst_off_man_loss=max(losses),
        net_welfare=sum(gains) - sum(losses),
    )


def _resolve_pairs(strategic: str, game: str, n: int) -> StrategicPairs | tuple[int, ...]:
    if strategic in ("default", "all_pairs") and game == "accomplice":
        return StrategicPairs.all_pairs(n)
    if strategic in ("default", "all_women") and game == "woman":
        return tuple(range(n))
    # anything else is a pairs-file path
    text = Path(strategic).read_text()
    if game == "accomplice":
        return load_pairs(text, n=n)
    doc = json.loads(text)
    return tuple(int(w) for w in doc["women"])


@dataclass(frozen=True)
class _Cell:
    index: int
    game: str
    n: int
    model: str
    phi_m: float | None
    phi_w: float | None
    samples: int
    master_seed: int
    strategic: str
    dump_traces: str | None


def _cells(cfg: ExperimentConfig) -> list[_Cell]:
    cells = []
    if isinstance(cfg.sweep, SizeSweep):
        for i, n in enumerate(cfg.sweep.sizes):
            cells.append(
                _Cell(
                    index=i,
                    game=cfg.game,
                    n=n,
                    model=cfg.sweep.model,
                    phi_m=cfg.sweep.phi_m,
                    phi_w=cfg.sweep.phi_w,
                    samples=cfg.samples_per_cell,
                    master_seed=cfg.master_seed,
                    strategic=cfg.strategic,
                    dump_traces=cfg.dump_traces,
                )
            )
    else:
        i = 0
        for phi_m in cfg.sweep.phis:
            for phi_w in cfg.sweep.phis:
                cells.append(
                    _Cell(
                        index=i,
                        game=cfg.game,
                        n=cfg.sweep.n,
                        model="mallows",
                        phi_m=phi_m,
                        phi_w=phi_w,
                        samples=cfg.samples_per_cell,
                        master_seed=cfg.master_seed,
                        strategic=cfg.strategic,
                        dump_traces=cfg.dump_traces,
                    )
                )
                i += 1
    return cells


def run_game_sample(
    game: str, inst: Instance, strategic: StrategicPairs | tuple[int, ...]
) -> tuple[DynamicsTrace, Matching]:
    """One dynamics run plus its truthful baseline, with the fixed point
    re-verified as an equilibrium."""
    truthful = Matching(
        tuple(int(v) for v in da_matching_arr(inst.men_order_arr, inst.women_rank_arr))
    )
    if game == "accomplice":
        assert isinstance(strategic, StrategicPairs)
        trace = run_pushup_dynamics(inst, strategic)
        if not verify_ne_accomplice(trace.fixed_point, strategic):
            raise EquilibriumCheckError(
                "push-up dynamics fixed point failed equilibrium verification"
            )
    else:
        assert not isinstance(strategic, StrategicPairs)
        trace = run_inconspicuous_dynamics(inst, strategic)
        if not verify_ne_woman(trace.fixed_point, strategic):
            raise EquilibriumCheckError(
                "inconspicuous dynamics fixed point failed equilibrium verification"
            )
    return trace, truthful


def _run_cell(cell: _Cell) -> dict:
    strategic = _resolve_pairs(cell.strategic, cell.game, cell.n)
    lengths: list[int] = []
    records: list[WelfareRecord] = []
    for k in range(cell.samples):
        rng = derive_rng(cell.master_seed, cell.index, k)
        inst = generate_instance(
            cell.n, model=cell.model, rng=rng, phi_m=cell.phi_m, phi_w=cell.phi_w
        )
        trace, truthful = run_game_sample(cell.game, inst, strategic)
        lengths.append(trace.converged_at)
        records.append(welfare_record(inst, truthful, trace.final_matching))
        if cell.dump_traces is not None:
            out = Path(cell.dump_traces)
            out.mkdir(parents=True, exist_ok=True)
            path = out / f"cell{cell.index:03d}_sample{k:04d}.json"
            path.write_text(json.dumps(trace_to_dict(trace)))
    s = cell.samples
    return {
        "game": cell.game,
        "n": cell.n,
        "phi_m": cell.phi_m,
        "phi_w": cell.phi_w,
        "samples": s,
        "seed": cell.master_seed,
        "avg_len": sum(lengths) / s,
        "max_len": max(lengths),
        "avg_women_gain": sum(r.women_avg_gain for r in records) / s,
        "avg_men_loss": sum(r.men_avg_loss for r in records) / s,
        "best_woman_gain": sum(r.best_off_woman_gain for r in records) / s,
        "worst_man_loss": sum(r.worst_off_man_loss for r in records) / s,
        "net_welfare": sum(r.net_welfare for r in records) / s,
    }


def run_experiment(cfg: ExperimentConfig, threads: int = 1) -> list[dict]:
    """All cells of a configuration, rows in cell order regardless of
    execution order."""
    cells = _cells(cfg)
    if threads > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_run_cell, cells))
    else:
        rows = [_run_cell(c) for c in cells]
    return rows


def run_length_experiment(cfg: ExperimentConfig, threads: int = 1) -> list[dict]:
    """Average/maximum dynamics length per cell (welfare columns come along
    for free; both studies share one engine and one CSV schema)."""
    return run_experiment(cfg, threads=threads)


def run_welfare_experiment(cfg: ExperimentConfig, threads: int = 1) -> list[dict]:
    """Welfare movement between truthful and equilibrium matchings per cell."""
    return run_experiment(cfg, threads=threads)


def _fmt(value: float | int | None) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return f"{value:.6f}"


def rows_to_csv(rows: Iterable[dict]) -> str:
    """Deterministic CSV: fixed header, fixed column order, %.6f floats."""
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [
                    r["game"],
                    str(r["n"]),
                    _fmt(r["phi_m"]),
                    _fmt(r["phi_w"]),
                    str(r["samples"]),
                    str(r["seed"]),
                    _fmt(r["avg_len"]),
                    str(r["max_len"]),
                    _fmt(r["avg_women_gain"]),
                    _fmt(r["avg_men_loss"]),
                    _fmt(r["best_woman_gain"]),
                    _fmt(r["worst_man_loss"]),
                    _fmt(r["net_welfare"]),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def write_csv(rows: Sequence[dict], path: str | Path) -> None:
    Path(path).write_text(rows_to_csv(rows))
