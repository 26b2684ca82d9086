"""Draw the courtyard scene as SVG: map, risk-shaded path, taut tether."""

import pathlib

from motionrisk import evaluate_path, load_elements, load_map
from motionrisk.cli import parse_path_text
from motionrisk.render import render_svg
from motionrisk.tether import tether_for_prefix

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
OUT = pathlib.Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)

grid = load_map((FIXTURES / "pillar_courtyard.map").read_text())
elements = load_elements((FIXTURES / "pillar_courtyard.config.json").read_text())

for name in ("pillar_courtyard_left", "pillar_courtyard_right"):
    path = parse_path_text((FIXTURES / f"{name}.path").read_text())
    report = evaluate_path(grid, path, elements)
    svg = render_svg(
        grid,
        path=path,
        state_risks=[1.0 - f for f in report.state_finish],
        tether=tether_for_prefix(grid, path.states),
        title=f"{name}  risk {report.risk:.2f}",
    )
    target = OUT / f"{name}.svg"
    target.write_text(svg)
    print(f"wrote {target}  ({len(svg)} bytes, risk {report.risk:.4f})")

print("open them in a browser; darker path cells mean riskier states.")
