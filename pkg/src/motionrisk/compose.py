"""Composing per-state element risks into path-level finish probabilities.

A path finishes only if every state finishes, and a state finishes only if
every element passes, with elements conditionally independent given the
traverse history.  Products of survival probabilities are evaluated in the
log domain so long paths of small risks keep full precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .elements import RiskCategory, RiskElement
from .world import GridMap, Path, require_valid_path


class DomainError(ValueError):
    """Raised when probabilities leave [0, 1]."""


@dataclass(frozen=True)
class RiskMatrix(object):
    """Per-state, per-element failure probabilities for one evaluated path."""

    element_names: Tuple[str, ...]
    categories: Tuple[RiskCategory, ...]
    values: np.ndarray  # shape (n_states, n_elements)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 2:
            raise DomainError("risk matrix must be 2D (states x elements)")
        if vals.shape[1] != len(self.element_names):
            raise DomainError("one column per element expected")
        if len(self.categories) != len(self.element_names):
            raise DomainError("one category per element expected")
        if np.any(~np.isfinite(vals)) or np.any(vals < 0.0) or np.any(vals > 1.0):
            raise DomainError("risk matrix entries must lie in [0, 1]")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def n_states(self) -> int:
        return self.values.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.element_names.index(name)]

    def state_finish_probs(self) -> np.ndarray:
        """Per-state probability that every element passes."""
        return np.array([state_finish_prob(row) for row in self.values])


def state_finish_prob(element_risks: Sequence[float]) -> float:
    """Probability a single state finishes: product of (1 - r_k), log-domain."""
    risks = np.asarray(element_risks, dtype=float)
    if risks.ndim != 1:
        raise DomainError("element risks must be a flat sequence")
    if np.any(~np.isfinite(risks)) or np.any(risks < 0.0) or np.any(risks > 1.0):
        raise DomainError("element risks must lie in [0, 1]")
    if np.any(risks >= 1.0):
        return 0.0
    return float(np.exp(np.log1p(-risks).sum()))


def path_finish_prob(matrix: RiskMatrix) -> float:
    """Probability the whole path finishes: product over all entries."""
    vals = matrix.values
    if np.any(vals >= 1.0):
        return 0.0
    return float(np.exp(np.log1p(-vals).sum()))


def path_risk(matrix: RiskMatrix) -> float:
    """Probability of not finishing the path."""
    return 1.0 - path_finish_prob(matrix)


def evaluate_risk_matrix(
    grid: GridMap, path: Path, elements: Sequence[RiskElement]
) -> RiskMatrix:
    """Evaluate every element on every prefix of a validated path.

    Entry (i, k) sees only the history its element's category permits.
    """
    if not elements:
        raise ValueError("at least one risk element is required")
    require_valid_path(grid, path)
    values = np.zeros((len(path), len(elements)))
    for i in range(len(path)):
        prefix = path.states[: i + 1]
        for k, el in enumerate(elements):
            values[i, k] = el.evaluate(grid, prefix)
    return RiskMatrix(
        element_names=tuple(e.name for e in elements),
        categories=tuple(e.category for e in elements),
        values=values,
    )


@dataclass(frozen=True)
class PathRiskReport(object):
    """Everything a caller needs to present one evaluated path."""

    path: Path
    matrix: RiskMatrix
    state_finish: Tuple[float, ...]
    finish_prob: float
    risk: float


def evaluate_path(grid: GridMap, path: Path, elements: Sequence[RiskElement]) -> PathRiskReport:
    matrix = evaluate_risk_matrix(grid, path, elements)
    return PathRiskReport(
        path=path,
        matrix=matrix,
        state_finish=tuple(matrix.state_finish_probs().tolist()),
        finish_prob=path_finish_prob(matrix),
        risk=path_risk(matrix),
    )


def additive_path_cost(
    matrix: RiskMatrix,
    weights: Optional[Union[Mapping[str, float], Sequence[float]]] = None,
    normalizers: Optional[Mapping[str, Callable[[float], float]]] = None,
) -> float:
    """Conventional additive baseline: weighted sum of locale costs per state.

    Only locale columns are meaningful without history, so any other category
    is rejected.  Normalizers default to identity.
    """
    for name, cat in zip(matrix.element_names, matrix.categories):
        if cat is not RiskCategory.LOCALE:
            raise ValueError(
                f"additive baseline is locale-only; element {name!r} is {cat.value}"
            )
    if weights is None:
        w = np.ones(len(matrix.element_names))
    elif isinstance(weights, Mapping):
        w = np.array([float(weights.get(n, 1.0)) for n in matrix.element_names])
    else:
        w = np.asarray(list(weights), dtype=float)
        if w.shape != (len(matrix.element_names),):
            raise ValueError("one weight per element expected")
    if np.any(w < 0.0):
        raise ValueError("weights must be non-negative")
    vals = matrix.values
    if normalizers:
        vals = vals.copy()
        for k, name in enumerate(matrix.element_names):
            fn = normalizers.get(name)
            if fn is not None:
                vals[:, k] = [fn(v) for v in vals[:, k]]
    return float((vals * w).sum())


@dataclass(frozen=True)
class MonteCarloResult(object):
    estimate: float
    stderr: float
    trials: int
    seed: int
    failures: int


def monte_carlo_risk(
    matrix: RiskMatrix, trials: int, seed: int, chunk: int = 1 << 16
) -> MonteCarloResult:
    """Estimate path risk by simulating Bernoulli survival per state and element.

    A trial fails when any (state, element) draw lands below its risk entry.
    Only nonzero entries consume draws; for a fixed seed the outcome is
    deterministic regardless of chunk boundaries' timing.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    probs = matrix.values[matrix.values > 0.0]
    rng = np.random.default_rng(seed)
    failures = 0
    if probs.size:
        done = 0
        while done < trials:
            m = min(chunk, trials - done)
            draws = rng.random((m, probs.size))
            failures += int((draws < probs).any(axis=1).sum())
            done += m
    estimate = failures / trials
    stderr = float(np.sqrt(estimate * (1.0 - estimate) / trials))
    return MonteCarloResult(estimate, stderr, trials, seed, failures)
