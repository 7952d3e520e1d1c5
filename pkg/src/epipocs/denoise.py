"""Parameter-free denoising by projection onto the epigraph of TV.

The noisy observation ``y`` is lifted to ``[y, 0]`` and pushed toward the
epigraph of the cost by successive orthogonal projections onto supporting
hyperplanes, each followed by a projection back onto the level set
``{height <= 0}``. Iterates travel toward a constant image (where the two sets
meet), so the run is stopped where the distance from ``[y, 0]`` to the
epigraph point above the current iterate turns around.

The height axis is measured per pixel: the lifted cost is ``f(w) / sqrt(N)``,
so the squared distance reads ``N * (MSE + (f / N)^2)``. No weight is tuned.
"""

import io
from dataclasses import dataclass, field

import numpy as np

from epipocs.costs import CostFunction, ScaledCost, TotalVariation, as_signal
from epipocs.errors import DomainError, NumericError
from epipocs.geometry import (
    LevelSet,
    LiftedPoint,
    project_onto_hyperplane,
    project_onto_level_set,
    supporting_hyperplane,
)


@dataclass(frozen=True)
class DenoiseOptions:
    cost: CostFunction = field(default_factory=TotalVariation)
    max_iters: int = 200
    refinement_iters: int = 10
    turnaround_patience: int = 1

    def __post_init__(self):
        if not isinstance(self.cost, CostFunction):
            raise TypeError("cost must be a CostFunction")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.refinement_iters < 0:
            raise ValueError("refinement_iters must be >= 0")
        if self.turnaround_patience < 1:
            raise ValueError("turnaround_patience must be >= 1")


@dataclass
class DenoiseResult:
    estimate: np.ndarray
    distance_trace: list
    turnaround_index: int | None
    iterations: int
    cost_trace: list
    best_index: int = 0


def epigraph_denoise(y, opts=None):
    """Denoise ``y`` (1-D signal or 2-D image) without a regularization weight.

    Iterate ``i`` records ``d_i = ||y - v_i||^2 + f(v_i)^2 / N``, the squared
    distance from ``[y, 0]`` to ``[v_i, f(v_i)]`` in the normalized lifting.
    Once ``d`` fails to decrease ``turnaround_patience`` times in a row, a
    further ``refinement_iters`` projections are run and the iterate with the
    smallest ``d`` is returned. If no turnaround happens within ``max_iters``,
    ``turnaround_index`` is None.
    """
    opts = opts or DenoiseOptions()
    y = as_signal(y, "y")
    cost = opts.cost
    lifted_cost = ScaledCost(cost, 1.0 / np.sqrt(y.size))
    level = LevelSet(0.0)

    distances, costs = [], []
    best_index, best = 0, y
    turnaround, stop_at = None, None
    run = 0
    v = y
    for i in range(opts.max_iters):
        try:
            cost.check_domain(v)
        except DomainError as exc:
            raise DomainError(f"iterate {i} left the cost domain: {exc}",
                              index=exc.index, iteration=i) from exc
        fv = cost.value(v)
        d = float(np.sum((y - v) ** 2)) + lifted_cost.factor**2 * fv * fv
        if not np.isfinite(d):
            raise NumericError(f"distance is not finite at iterate {i}")
        distances.append(d)
        costs.append(fv)
        if d < distances[best_index]:
            best_index, best = i, v

        if i > 0 and turnaround is None:
            run = run + 1 if d >= distances[i - 1] else 0
            if run >= opts.turnaround_patience:
                turnaround = i - run
                stop_at = i + opts.refinement_iters
        if stop_at is not None and i >= stop_at:
            break
        if i == opts.max_iters - 1:
            break

        plane = supporting_hyperplane(lifted_cost, v)
        w = project_onto_hyperplane(LiftedPoint(v, 0.0), plane)
        v = project_onto_level_set(w, level).signal

    if turnaround is None:
        best_index, best = len(distances) - 1, v
    return DenoiseResult(
        estimate=best.copy(),
        distance_trace=distances,
        turnaround_index=turnaround,
        iterations=len(distances),
        cost_trace=costs,
        best_index=best_index,
    )


def denoise_trace_csv(result):
    """Serialize the distance and cost traces as ``iter,distance,cost`` CSV."""
    buf = io.StringIO()
    buf.write("iter,distance,cost\n")
    for i, (d, c) in enumerate(zip(result.distance_trace, result.cost_trace)):
        buf.write(f"{i},{d:.17g},{c:.17g}\n")
    return buf.getvalue()


def parse_trace_csv(text):
    """Inverse of :func:`denoise_trace_csv`; returns ``(distances, costs)``."""
    lines = text.strip().splitlines()
    if not lines or lines[0] != "iter,distance,cost":
        raise ValueError("not a denoise trace: missing header")
    distances, costs = [], []
    for line in lines[1:]:
        _, d, c = line.split(",")
        distances.append(float(d))
        costs.append(float(c))
    return distances, costs
