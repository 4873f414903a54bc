"""Run a small threshold sweep and write the aggregate CSV.

Same thing the CLI does with
  screensim run --id demo --problem good --psi-sweep ... --out out/
but driven from Python.

Run:  python3 demos/small_sweep_to_csv.py
"""

import os

from screensim import FatigueModel, ProblemParams, SweepConfig, run_sweep
from screensim.cli import write_csv

config = SweepConfig(
    config_id="demo-psi",
    n=120,
    k=6,
    params=ProblemParams(6, 0.5, 0.0),
    compared=("good_k", "human_like"),
    fatigue=FatigueModel.eps1(),
    runs=500,
    master_seed=11,
    sweep=("psi", (0.0, 0.15, 0.3, 0.45)),
)

result = run_sweep(config)
print(f"{'psi':>5} {'feasible':>9} {'mean rtb':>9} {'mean jds':>9} {'looked at':>10}")
for cell in result.cells:
    print(f"{cell.sweep_value:>5.2f} {cell.runs_feasible:>9d} {cell.mean_rtb:>9.4f}"
          f" {cell.mean_jds:>9.4f} {cell.mean_evaluated_count:>10.2f}")

os.makedirs("out", exist_ok=True)
path = os.path.join("out", "demo-psi.csv")
write_csv(result, path)
print()
print("wrote", path)
with open(path) as fh:
    for line in list(fh)[:3]:
        print(" ", line.rstrip())
