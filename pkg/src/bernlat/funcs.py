"""Input function model: evaluation on [0,1], certified integer boundary
values, and modulus-of-continuity access (analytic or estimated)."""

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import BoundaryNotIntegerError, NonFiniteError


class ModulusSpec:
    """Base for modulus-of-continuity descriptors.

    Subclasses implement __call__(delta) with numpy-broadcastable
    arithmetic where possible.  `analytic` distinguishes certified upper
    bounds from sampled lower estimates.
    """

    analytic = True


@dataclass(frozen=True)
class LipschitzModulus(ModulusSpec):
    L: float
    cap: Optional[float] = None  # known diameter bound, e.g. 2 for sin(pi x)

    def __post_init__(self):
        if self.L < 0:
            raise ValueError("Lipschitz constant must be >= 0")

    def __call__(self, delta):
        w = self.L * np.asarray(delta, dtype=float)
        if self.cap is not None:
            w = np.minimum(w, self.cap)
        return w if np.ndim(delta) else float(w)


@dataclass(frozen=True)
class HoelderModulus(ModulusSpec):
    C: float
    alpha: float

    def __post_init__(self):
        if self.C <= 0 or not 0.0 < self.alpha <= 1.0:
            raise ValueError("need C > 0 and 0 < alpha <= 1")

    def __call__(self, delta):
        w = self.C * np.asarray(delta, dtype=float) ** self.alpha
        return w if np.ndim(delta) else float(w)


@dataclass(frozen=True)
class TableModulus(ModulusSpec):
    """User-supplied nondecreasing table, piecewise-linearly interpolated."""

    deltas: tuple
    omegas: tuple

    def __post_init__(self):
        d = np.asarray(self.deltas, dtype=float)
        w = np.asarray(self.omegas, dtype=float)
        if len(d) < 2 or len(d) != len(w):
            raise ValueError("table needs matching delta/omega columns, >= 2 rows")
        if d[0] != 0.0 or w[0] != 0.0:
            raise ValueError("table must start at (0, 0)")
        if np.any(np.diff(d) <= 0) or np.any(np.diff(w) < 0):
            raise ValueError("table must be strictly increasing in delta, nondecreasing in omega")

    def __call__(self, delta):
        w = np.interp(np.asarray(delta, dtype=float), self.deltas, self.omegas)
        return w if np.ndim(delta) else float(w)


@dataclass
class EmpiricalModulus(ModulusSpec):
    """Sliding-window estimate from an m-point uniform sample of f.

    A lower estimate of the true modulus by construction; never used to
    assert theoretical bounds.  An instance belongs to one FunctionSpec
    (samples are bound lazily on first query).
    """

    m: int
    analytic = False
    _samples: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("grid size must be >= 2")


@dataclass(frozen=True)
class FunctionSpec:
    """A function on [0,1] with certified integer boundary values."""

    evaluator: Callable[[float], float]
    f0: int
    f1: int
    modulus: Optional[ModulusSpec] = None

    def __call__(self, x):
        return self.evaluator(x)

    def with_modulus(self, modulus):
        return FunctionSpec(self.evaluator, self.f0, self.f1, modulus)


def certify(evaluator, tolerance=1e-9, modulus=None):
    """Check endpoint integrality and build a FunctionSpec.

    Raises BoundaryNotIntegerError if either endpoint is farther than
    `tolerance` from every integer, NonFiniteError on bad evaluation.
    """
    ends = []
    for x in (0.0, 1.0):
        v = float(evaluator(x))
        if not math.isfinite(v):
            raise NonFiniteError(f"f({x}) is not finite: {v}")
        r = round(v)
        if abs(v - r) > tolerance:
            raise BoundaryNotIntegerError(
                f"f({x}) = {v} is not within {tolerance} of an integer"
            )
        ends.append(int(r))
    return FunctionSpec(evaluator, ends[0], ends[1], modulus)


def sample_uniform(spec, m):
    """Values of f at x_j = j/(m-1), j = 0..m-1."""
    if m < 2:
        raise ValueError("need at least 2 sample points")
    xs = np.linspace(0.0, 1.0, m)
    vals = np.array([float(spec.evaluator(x)) for x in xs])
    if not np.all(np.isfinite(vals)):
        bad = xs[~np.isfinite(vals)][0]
        raise NonFiniteError(f"f({bad}) is not finite")
    return vals


def sliding_range_max(values, span):
    """Max over contiguous windows of index width `span` of (max - min).

    Monotone-deque implementation, O(m).  Equals the exhaustive maximum
    of |f_i - f_j| over all pairs with |i - j| <= span.
    """
    m = len(values)
    if span <= 0:
        return 0.0
    if span >= m - 1:
        return float(np.max(values) - np.min(values))
    best = 0.0
    hi = deque()  # indices, values decreasing
    lo = deque()  # indices, values increasing
    for j in range(m):
        v = values[j]
        while hi and values[hi[-1]] <= v:
            hi.pop()
        hi.append(j)
        while lo and values[lo[-1]] >= v:
            lo.pop()
        lo.append(j)
        cut = j - span
        if hi[0] < cut:
            hi.popleft()
        if lo[0] < cut:
            lo.popleft()
        if j >= span:
            best = max(best, float(values[hi[0]] - values[lo[0]]))
    return best


def _window_span(m, delta):
    # index distance corresponding to |x_i - x_j| <= delta on an m-grid;
    # tiny guard absorbs representation error of delta*(m-1)
    return int(math.floor(delta * (m - 1) + 1e-9))


def modulus(spec, delta):
    """omega_f(delta) according to the FunctionSpec's modulus kind."""
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [0,1], got {delta}")
    mod = spec.modulus
    if mod is None:
        raise ValueError("FunctionSpec carries no modulus")
    if mod.analytic:
        return float(mod(delta))
    if mod._samples is None:
        mod._samples = sample_uniform(spec, mod.m)
    key = float(delta)
    if key not in mod._cache:
        span = _window_span(mod.m, delta)
        mod._cache[key] = sliding_range_max(mod._samples, span)
    return mod._cache[key]
