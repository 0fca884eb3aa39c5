#!/usr/bin/env python3
"""Desk-scale reproduction of the two experiment studies.

Writes two CSVs into demos/out/: dynamics length over a size sweep, and a
(phi_m, phi_w) welfare grid.  The frontend plotting scripts consume exactly
these files:

    npx tsx frontend/src/plotLines.ts  --csv demos/out/length_by_n.csv \
        --x n --y avg_len,max_len --out demos/out/length.png
    npx tsx frontend/src/plotHeatmap.ts --csv demos/out/welfare_grid.csv \
        --value best_woman_gain --out demos/out/heatmap.png

Sample counts here are small so the script finishes in well under a minute;
raise samples_per_cell for smoother curves.
"""

import json
from pathlib import Path

from matchgames import ExperimentConfig, rows_to_csv, run_experiment, write_csv

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

length_cfg = ExperimentConfig.from_json(
    json.dumps(
        {
            "game": "accomplice",
            "sweep": {"sizes": [5, 10, 15, 20, 25, 30]},
            "samples_per_cell": 50,
            "master_seed": 90125,
        }
    )
)
rows = run_experiment(length_cfg)
write_csv(rows, OUT / "length_by_n.csv")
print("length study (accomplice game, impartial culture):")
for r in rows:
    print(f"  n={r['n']:2d}: avg {r['avg_len']:.2f}  max {r['max_len']}  net welfare {r['net_welfare']:+.1f}")

grid_cfg = ExperimentConfig.from_json(
    json.dumps(
        {
            "game": "accomplice",
            "sweep": {"grid": [0.0, 0.2, 0.4, 0.6, 0.8, 1.0], "n": 12},
            "samples_per_cell": 30,
            "master_seed": 5150,
        }
    )
)
grid_rows = run_experiment(grid_cfg)
write_csv(grid_rows, OUT / "welfare_grid.csv")
print(f"\nwelfare grid: {len(grid_rows)} cells written to {OUT / 'welfare_grid.csv'}")
print(rows_to_csv(grid_rows).splitlines()[0])
print("best-off woman gain by (phi_m, phi_w):")
phis = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]
by_cell = {(r["phi_m"], r["phi_w"]): r["best_woman_gain"] for r in grid_rows}
print("        " + "  ".join(f"w={p:.1f}" for p in phis))
for pm in phis:
    print(f"  m={pm:.1f} " + "  ".join(f"{by_cell[(pm, pw)]:5.2f}" for pw in phis))
