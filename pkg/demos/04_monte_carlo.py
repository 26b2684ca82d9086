"""Sample the failure process directly and compare against the closed form.

Each trial draws one uniform per matrix entry; the path fails if any entry
beats its risk probability.  The estimate should sit within a few binomial
standard errors of 1 - prod(1 - r) -- that is the whole claim of the model.
"""

import pathlib

from motionrisk import evaluate_path, load_elements, load_map, monte_carlo_risk
from motionrisk.cli import parse_path_text

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

grid = load_map((FIXTURES / "pillar_courtyard.map").read_text())
elements = load_elements((FIXTURES / "pillar_courtyard.config.json").read_text())
path = parse_path_text((FIXTURES / "pillar_courtyard_left.path").read_text())
report = evaluate_path(grid, path, elements)

print(f"closed-form risk: {report.risk:.6f}")
print()
print(f"{'trials':>9}  {'estimate':>9}  {'stderr':>8}  {'deviation':>9}")
for trials in (1_000, 10_000, 100_000, 1_000_000):
    mc = monte_carlo_risk(report.matrix, trials=trials, seed=42)
    dev = (mc.estimate - report.risk) / mc.stderr if mc.stderr else 0.0
    print(f"{trials:>9}  {mc.estimate:9.6f}  {mc.stderr:8.6f}  {dev:+8.2f} se")

print()
print("same trials, different seeds:")
for seed in range(5):
    mc = monte_carlo_risk(report.matrix, trials=100_000, seed=seed)
    print(f"  seed {seed}: {mc.estimate:.6f}  ({mc.failures} failures)")
