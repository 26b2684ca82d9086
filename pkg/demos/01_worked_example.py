"""Walk one path across the pillar courtyard and print every number on the way.

The map is a 12x12 walled yard with a single pillar.  The robot starts in the
top-left corner, slides down the left side of the pillar, and exits at the
bottom-right.  Three risk elements are active: obstacle proximity, sharp
turns, and tether contacts (anchor at the start cell).
"""

import pathlib

from motionrisk import evaluate_path, load_elements, load_map
from motionrisk.cli import parse_path_text

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

grid = load_map((FIXTURES / "pillar_courtyard.map").read_text())
elements = load_elements((FIXTURES / "pillar_courtyard.config.json").read_text())
path = parse_path_text((FIXTURES / "pillar_courtyard_left.path").read_text())

report = evaluate_path(grid, path, elements)

names = report.matrix.element_names
print(f"{'state':>5}  {'cell':>8}  " + "  ".join(f"{n:>17}" for n in names) + "  finish")
for i, s in enumerate(path):
    cells = "  ".join(f"{v:17.4f}" for v in report.matrix.values[i])
    print(f"{i:>5}  ({s.row:>2},{s.col:>2})  {cells}  {report.state_finish[i]:6.2f}")

print()
print(f"finish probability: {report.finish_prob:.4f}  (displays as {report.finish_prob:.2f})")
print(f"path risk:          {report.risk:.4f}  (displays as {report.risk:.2f})")

# State 6 sits right beside the pillar, mid-turn, with the tether wrapped on
# the pillar corner -- the only state where all three elements fire at once.
row = report.matrix.values[6]
finish_6 = (1 - row[0]) * (1 - row[1]) * (1 - row[2])
print()
print(f"state 6 by hand: (1-{row[0]}) * (1-{row[1]}) * (1-{row[2]}) = {finish_6:.6f}")
