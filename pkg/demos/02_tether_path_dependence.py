"""Two traverses to the same cell, different tether histories, different risk.

Both paths end one cell below the pillar.  The left route keeps the pillar on
its right and the taut tether picks up one contact; the right route swings
around the far side and wraps two corners.  Same endpoint, same locale costs
at the end -- but the traverse-dependent element remembers the difference.
"""

import pathlib

from motionrisk import evaluate_path, load_elements, load_map
from motionrisk.cli import parse_path_text
from motionrisk.tether import tether_for_prefix

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

grid = load_map((FIXTURES / "pillar_courtyard.map").read_text())
elements = load_elements((FIXTURES / "pillar_courtyard.config.json").read_text())

for label, name in [("left ", "pillar_courtyard_left_to_pillar.path"),
                    ("right", "pillar_courtyard_right.path")]:
    path = parse_path_text((FIXTURES / name).read_text())
    tether = tether_for_prefix(grid, path.states)
    report = evaluate_path(grid, path, elements)
    contacts = ", ".join(f"({r:g},{c:g})" for r, c in tether.contacts) or "none"
    print(f"{label} route: {' -> '.join(f'({s.row},{s.col})' for s in path)}")
    print(f"       contacts: {len(tether.contacts)}  [{contacts}]")
    print(f"       taut length: {tether.taut_length:.4f}")
    print(f"       risk: {report.risk:.4f}")
    print()

print("A per-state cost table cannot tell these apart: the last cell is the")
print("same, but the wrapped tether makes the right-side approach riskier.")
