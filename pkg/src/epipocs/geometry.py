"""Lifted-space geometry and the alternating-projection minimizer.

A signal ``w`` in R^N is lifted to ``[w, y]`` in R^(N+1). The epigraph of a
cost ``f`` is ``{[w, y] : y >= f(w)}``; the level set is ``{[w, y] : y <= alpha}``.
Minimizing ``f`` reduces to finding the nearest pair of points of these two
sets, which alternating orthogonal projections approach.
"""

from dataclasses import dataclass, field

import numpy as np

from epipocs.costs import as_signal
from epipocs.errors import DomainError, NumericError

# Strictly below the minimum (0) of every shipped cost, so that the epigraph
# and the level set are disjoint rather than tangent.
DEFAULT_ALPHA = -1e-3


@dataclass(frozen=True)
class LiftedPoint:
    """A signal together with a height component."""

    signal: np.ndarray
    height: float

    def __post_init__(self):
        object.__setattr__(self, "signal", as_signal(self.signal))
        h = float(self.height)
        if not np.isfinite(h):
            raise ValueError("height must be finite")
        object.__setattr__(self, "height", h)

    @property
    def dim(self):
        return self.signal.size + 1

    def to_vector(self):
        return np.append(self.signal.ravel(), self.height)

    @classmethod
    def from_vector(cls, vec, shape=None):
        vec = np.asarray(vec, dtype=np.float64).ravel()
        signal = vec[:-1] if shape is None else vec[:-1].reshape(shape)
        return cls(signal, vec[-1])


@dataclass(frozen=True)
class Hyperplane:
    """The affine set ``{u : normal . u = offset}`` in R^(N+1)."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=np.float64).ravel()
        if n.size < 2 or not np.all(np.isfinite(n)):
            raise ValueError("normal must be a finite vector of length >= 2")
        if not np.any(n):
            raise ValueError("hyperplane normal must be nonzero")
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "offset", float(self.offset))

    def residual(self, p):
        """Signed value ``normal . p - offset``."""
        return float(self.normal @ _vector(p) - self.offset)


@dataclass(frozen=True)
class LevelSet:
    """Lifted points whose height is at most ``alpha``."""

    alpha: float = 0.0

    def contains(self, p):
        return p.height <= self.alpha


@dataclass
class MinimizeResult:
    minimizer: np.ndarray
    value: float
    iterations: int
    distance_trace: list = field(default_factory=list)
    converged: bool = False


def _vector(p):
    return p.to_vector() if isinstance(p, LiftedPoint) else np.asarray(p, dtype=np.float64).ravel()


def project_onto_hyperplane(p, h):
    """Orthogonal projection ``p - ((n . p - b) / |n|^2) n``.

    ``p`` may be a :class:`LiftedPoint` (the result keeps its signal shape) or
    a plain vector of length N+1.
    """
    if not isinstance(h, Hyperplane):
        raise TypeError("h must be a Hyperplane")
    v = _vector(p)
    if v.size != h.normal.size:
        raise ValueError(f"point has dimension {v.size}, hyperplane {h.normal.size}")
    q = v - ((h.normal @ v - h.offset) / (h.normal @ h.normal)) * h.normal
    if isinstance(p, LiftedPoint):
        return LiftedPoint.from_vector(q, p.signal.shape)
    return q


def project_onto_level_set(p, s):
    """Clamp the height of ``p`` to ``s.alpha``; the signal is untouched."""
    if p.height <= s.alpha:
        return p
    return LiftedPoint(p.signal, s.alpha)


def supporting_hyperplane(f, v):
    """Supporting hyperplane of the epigraph of ``f`` at ``[v, f(v)]``.

    With ``g`` a subgradient at ``v`` the normal is ``[g, -1]`` and the offset
    ``g . v - f(v)``; the epigraph lies in ``normal . u <= offset``.
    """
    v = as_signal(v)
    f.check_domain(v)
    fv = f.value(v)
    g = np.asarray(f.subgradient(v), dtype=np.float64)
    if not np.isfinite(fv) or not np.all(np.isfinite(g)):
        raise NumericError("cost or subgradient is not finite")
    g = g.ravel()
    return Hyperplane(np.append(g, -1.0), float(g @ v.ravel()) - fv)


def alternating_pocs_minimize(f, w0, alpha=DEFAULT_ALPHA, max_iters=10_000, tol=1e-12):
    """Minimize a convex cost by alternating projections in the lifted space.

    Each iteration projects ``[w, alpha]`` (a point of the level set) onto the
    supporting hyperplane of the epigraph at ``w``, then back onto the level
    set. The hyperplane stands in for the epigraph, whose exact projection has
    no closed form for most costs.

    Parameters
    ----------
    f : CostFunction
        Convex cost with ``f(w) >= alpha`` everywhere.
    w0 : array_like
        Starting signal, inside the domain of ``f``.
    alpha : float
        Height bound of the level set. Must be strictly below ``min f`` for
        the sets to be disjoint; the default suits costs with minimum 0.
    max_iters : int
    tol : float
        Stop once ``|f(w_{k+1}) - f(w_k)| < tol``.

    Returns
    -------
    MinimizeResult
        The iterate with the smallest cost seen. ``distance_trace[k]`` is the
        gap between the level-set point and its hyperplane projection at
        iteration ``k``.
    """
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    if not tol > 0:
        raise ValueError("tol must be positive")
    level = LevelSet(alpha)
    w = as_signal(w0, "w0")
    f.check_domain(w)
    fw = f.value(w)
    if not np.isfinite(fw):
        raise NumericError("cost is not finite at w0")
    best_w, best_f = w, fw
    trace = []
    converged = False
    for k in range(max_iters):
        lifted = LiftedPoint(w, alpha)
        q = project_onto_hyperplane(lifted, supporting_hyperplane(f, w))
        trace.append(float(np.linalg.norm(q.to_vector() - lifted.to_vector())))
        w_next = project_onto_level_set(q, level).signal
        try:
            f.check_domain(w_next)
        except DomainError as exc:
            raise DomainError(f"iterate {k + 1} left the domain: {exc}",
                              index=exc.index, iteration=k + 1) from exc
        f_next = f.value(w_next)
        if not np.isfinite(f_next):
            raise NumericError(f"cost is not finite at iterate {k + 1}")
        if f_next < best_f:
            best_w, best_f = w_next, f_next
        step = abs(f_next - fw)
        w, fw = w_next, f_next
        if step < tol:
            converged = True
            break
    return MinimizeResult(best_w, float(best_f), len(trace), trace, converged)
