"""Convex cost functionals with subgradients.

Every cost exposes ``value(w)`` and ``subgradient(w)`` on float64 arrays of
shape ``(N,)`` or ``(rows, cols)``. Subgradients use ``sign(0) = 0``.
"""

import numpy as np

from epipocs.errors import DomainError


def as_signal(w, name="signal"):
    """Convert ``w`` to a finite float64 array of dimension 1 or 2."""
    arr = np.asarray(w, dtype=np.float64)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim > 2:
        raise ValueError(f"{name} must be 1-D or 2-D, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


# -- total variation ----------------------------------------------------------

def tv_value(w):
    """Anisotropic total variation, the l1 norm of first differences.

    Differences are taken without wraparound, so an ``M x M`` image
    contributes ``2 M (M - 1)`` terms.
    """
    w = as_signal(w)
    total = np.abs(np.diff(w, axis=0)).sum()
    if w.ndim == 2:
        total += np.abs(np.diff(w, axis=1)).sum()
    return float(total)


def tv_subgradient(w):
    """Return ``D^T sign(D w)`` with ``D`` the first-difference operator."""
    w = as_signal(w)
    g = np.zeros_like(w)
    s = np.sign(np.diff(w, axis=0))
    g[1:] += s
    g[:-1] -= s
    if w.ndim == 2:
        s = np.sign(np.diff(w, axis=1))
        g[:, 1:] += s
        g[:, :-1] -= s
    return g


# -- filtered variation -------------------------------------------------------

def _check_filter(h, w):
    h = np.asarray(h, dtype=np.float64).ravel()
    if h.size < 2:
        raise ValueError("filter must have at least two taps")
    if not np.all(np.isfinite(h)):
        raise ValueError("filter contains non-finite taps")
    for axis in range(w.ndim):
        if h.size > w.shape[axis]:
            raise ValueError(
                f"filter of length {h.size} is longer than signal axis {axis} "
                f"(length {w.shape[axis]})"
            )
    return h


def _correlate_valid(w, h, axis):
    # (h * w)_k = sum_j h_j w_{k+j}, only positions where the filter fits.
    n = w.shape[axis] - h.size + 1
    out = None
    for j, hj in enumerate(h):
        part = hj * np.take(w, np.arange(j, j + n), axis=axis)
        out = part if out is None else out + part
    return out


def _correlate_adjoint(r, h, axis, shape):
    g = np.zeros(shape)
    n = r.shape[axis]
    for j, hj in enumerate(h):
        idx = [slice(None)] * len(shape)
        idx[axis] = slice(j, j + n)
        g[tuple(idx)] += hj * r
    return g


def fv_value(w, filter=(1.0, -1.0)):
    """Filtered variation: l1 norm of the valid correlation with ``filter``.

    For 2-D input the filter is applied along columns and along rows and the
    two responses are summed.
    """
    w = as_signal(w)
    h = _check_filter(filter, w)
    total = np.abs(_correlate_valid(w, h, 0)).sum()
    if w.ndim == 2:
        total += np.abs(_correlate_valid(w, h, 1)).sum()
    return float(total)


def fv_subgradient(w, filter=(1.0, -1.0)):
    w = as_signal(w)
    h = _check_filter(filter, w)
    g = _correlate_adjoint(np.sign(_correlate_valid(w, h, 0)), h, 0, w.shape)
    if w.ndim == 2:
        g += _correlate_adjoint(np.sign(_correlate_valid(w, h, 1)), h, 1, w.shape)
    return g


# -- l1 and entropic ----------------------------------------------------------

def l1_value(w):
    return float(np.abs(as_signal(w)).sum())


def l1_subgradient(w):
    return np.sign(as_signal(w))


def _check_positive(w):
    bad = np.flatnonzero(w.ravel() <= 0)
    if bad.size:
        index = np.unravel_index(bad[0], w.shape)
        index = int(index[0]) if w.ndim == 1 else tuple(int(i) for i in index)
        raise DomainError(
            f"entropic cost requires strictly positive entries; entry {index} "
            f"is {w[index]!r}",
            index=index,
        )


def entropic_value(w):
    """Normalized negative entropy ``sum(w log w - w + 1)``, zero at ``w = 1``."""
    w = as_signal(w)
    _check_positive(w)
    return float(np.sum(w * np.log(w) - w + 1.0))


def entropic_subgradient(w):
    w = as_signal(w)
    _check_positive(w)
    return np.log(w)


# -- cost objects -------------------------------------------------------------

class CostFunction:
    """Base class for convex costs used by the lifted-space solvers.

    Subclasses implement :meth:`value` and :meth:`subgradient`; costs with a
    restricted domain also override :meth:`check_domain`.
    """

    name = "cost"
    positive_domain = False

    def value(self, w):
        raise NotImplementedError

    def subgradient(self, w):
        raise NotImplementedError

    def check_domain(self, w):
        """Raise :class:`DomainError` if ``w`` is outside the domain."""

    def __call__(self, w):
        return self.value(w)

    def __repr__(self):
        return f"{type(self).__name__}()"


class TotalVariation(CostFunction):
    """Anisotropic TV; 1-D or 2-D depending on the input shape."""

    name = "tv"

    def value(self, w):
        return tv_value(w)

    def subgradient(self, w):
        return tv_subgradient(w)


class FilteredVariation(CostFunction):
    name = "fv"

    def __init__(self, filter=(1.0, -1.0)):
        self.filter = np.asarray(filter, dtype=np.float64).ravel()
        if self.filter.size < 2:
            raise ValueError("filter must have at least two taps")

    def value(self, w):
        return fv_value(w, self.filter)

    def subgradient(self, w):
        return fv_subgradient(w, self.filter)

    def check_domain(self, w):
        _check_filter(self.filter, as_signal(w))

    def __repr__(self):
        return f"FilteredVariation(filter={self.filter.tolist()})"


class L1Norm(CostFunction):
    name = "l1"

    def value(self, w):
        return l1_value(w)

    def subgradient(self, w):
        return l1_subgradient(w)


class Entropic(CostFunction):
    name = "entropic"
    positive_domain = True

    def value(self, w):
        return entropic_value(w)

    def subgradient(self, w):
        return entropic_subgradient(w)

    def check_domain(self, w):
        _check_positive(as_signal(w))


class ScaledCost(CostFunction):
    """``factor * base``; used to measure the lifted height in other units."""

    def __init__(self, base, factor):
        if not factor > 0:
            raise ValueError("factor must be positive")
        self.base = base
        self.factor = float(factor)
        self.name = base.name
        self.positive_domain = base.positive_domain

    def value(self, w):
        return self.factor * self.base.value(w)

    def subgradient(self, w):
        return self.factor * self.base.subgradient(w)

    def check_domain(self, w):
        self.base.check_domain(w)

    def __repr__(self):
        return f"ScaledCost({self.base!r}, {self.factor!r})"


def make_cost(kind, filter=None):
    """Build a cost from its short name: ``tv``, ``fv``, ``l1`` or ``entropic``."""
    kind = kind.lower()
    if kind == "tv":
        return TotalVariation()
    if kind == "fv":
        return FilteredVariation((1.0, -1.0) if filter is None else filter)
    if kind == "l1":
        return L1Norm()
    if kind == "entropic":
        return Entropic()
    raise ValueError(f"unknown cost kind {kind!r}")
