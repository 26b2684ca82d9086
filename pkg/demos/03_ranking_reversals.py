"""Where the additive baseline and the probabilistic risk disagree.

Two fixture pairs.  In each, the additive sum of per-state costs ranks the
two candidate paths one way and the finish-probability risk ranks them the
other way.  Summing costs over-penalizes long safe paths and under-penalizes
short spicy ones; a product of survival probabilities does not.
"""

import pathlib

from motionrisk import (
    RiskCategory,
    additive_path_cost,
    evaluate_path,
    evaluate_risk_matrix,
    load_elements,
    load_map,
)
from motionrisk.cli import parse_path_text

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def show_pair(stem, a, b):
    grid = load_map((FIXTURES / f"{stem}.map").read_text())
    elements = load_elements((FIXTURES / f"{stem}.config.json").read_text())
    locale = [e for e in elements if e.category is RiskCategory.LOCALE]
    print(f"== {stem}")
    rows = []
    for name in (a, b):
        path = parse_path_text((FIXTURES / f"{name}.path").read_text())
        risk = evaluate_path(grid, path, elements).risk
        cost = additive_path_cost(evaluate_risk_matrix(grid, path, locale))
        rows.append((name, risk, cost))
        print(f"  {name:10} states={len(path.states):2}  risk={risk:.4f}  additive={cost:.4f}")
    by_risk = min(rows, key=lambda r: r[1])[0]
    by_cost = min(rows, key=lambda r: r[2])[0]
    verdict = "REVERSED" if by_risk != by_cost else "same"
    print(f"  risk prefers {by_risk}, additive prefers {by_cost}  -> {verdict}")
    print()


# A short path squeezing a slit versus a long way around the wall.
show_pair("squeeze_detour", "squeeze", "detour")

# A straight corridor run versus a twisty one that hugs the walls but turns a
# lot: the turn element is action-dependent, so the additive locale-only sum
# never sees it.
show_pair("corridor", "straight", "twisty")
