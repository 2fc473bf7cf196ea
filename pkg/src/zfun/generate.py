"""Seeded random generators for spaces, maps, measures and step functions.

Everything is driven by an explicit :class:`random.Random` so identical seeds
give identical structures on every platform.  Use :func:`rng_for` to derive
independent streams: it seeds from a string, which CPython hashes stably.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .numbers import EXACT, Mode
from .spaces import FiniteMetricSpace, MetricMap, metric_map, validate_space
from .measures import ProbMeasure, prob_measure
from .stepspace import StepFunction, step_function


def rng_for(seed: int, label: str) -> random.Random:
    """An independent, reproducible stream for ``(seed, label)``."""
    return random.Random(f"{seed}:{label}")


def random_rational(rng: random.Random, num_max: int = 40, den_max: int = 8) -> Fraction:
    return Fraction(rng.randint(1, num_max), rng.randint(1, den_max))


def random_space(
    rng: random.Random,
    size: int,
    prefix: str = "x",
    mode: Mode = EXACT,
    labels: Sequence[str] | None = None,
) -> FiniteMetricSpace:
    """A random valid metric on ``size`` labeled points.

    Draws a symmetric positive weight matrix and closes it under shortest
    paths, which repairs every triangle violation while keeping positivity.
    """
    pts = tuple(labels) if labels is not None else tuple(f"{prefix}{i}" for i in range(size))
    n = len(pts)
    d = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = random_rational(rng)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                via = d[i][k] + d[k][j]
                if via < d[i][j]:
                    d[i][j] = via
    return validate_space(pts, d, mode)


def normalize_diameter(space: FiniteMetricSpace, mode: Mode = EXACT) -> FiniteMetricSpace:
    """Rescale so the diameter is exactly one (space must have >= 2 points)."""
    top = max(max(row) for row in space.dist)
    return validate_space(
        space.points,
        [[v / top for v in row] for row in space.dist],
        mode,
    )


def random_measure(
    rng: random.Random,
    space: FiniteMetricSpace,
    mode: Mode = EXACT,
    full_support: bool = False,
) -> ProbMeasure:
    """Random rational weights totalling exactly one (possibly sparse)."""
    n = len(space.points)
    while True:
        raw = [
            rng.randint(1, 9) if full_support or rng.random() < 0.8 else 0
            for _ in range(n)
        ]
        total = sum(raw)
        if total > 0:
            break
    weights = {p: Fraction(w, total) for p, w in zip(space.points, raw) if w}
    return prob_measure(space, weights, mode)


def random_map(
    rng: random.Random, domain: FiniteMetricSpace, codomain: FiniteMetricSpace
) -> MetricMap:
    assignment = {p: rng.choice(codomain.points) for p in domain.points}
    return metric_map(domain, codomain, assignment)


def random_bijection(rng: random.Random, space: FiniteMetricSpace) -> MetricMap:
    shuffled = list(space.points)
    rng.shuffle(shuffled)
    return metric_map(space, space, dict(zip(space.points, shuffled)))


def random_step_function(
    rng: random.Random,
    target: FiniteMetricSpace,
    max_segments: int = 6,
    grid: int = 64,
    mode: Mode = EXACT,
) -> StepFunction:
    """Random step function with breakpoints on the 1/grid lattice."""
    cells = rng.randint(1, max_segments)
    interior = sorted(rng.sample(range(1, grid), min(cells - 1, grid - 1)))
    bps = [Fraction(0)] + [Fraction(k, grid) for k in interior] + [Fraction(1)]
    vals = [rng.choice(target.points) for _ in range(len(bps) - 1)]
    return step_function(target, bps, vals, mode)
