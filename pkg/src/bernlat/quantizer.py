"""Integer quantization of Bernstein coefficients.

Pipeline: sample f at k/n, pin a boundary block of width t to the
endpoint integers, shift the middle block by a uniform epsilon so its
sum becomes an integer, then round with a first-order error-diffusion
recurrence.  The residue provably vanishes at both ends of the middle
block, which locks the boundary coefficients and makes the output
interpolate f at 0 and 1 exactly.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CutoffOutOfRangeError,
    NonFiniteError,
    StructuralViolationError,
)
from .funcs import modulus as _omega

# |q_k| <= max|f| + 3/2; anything near 2^62 means garbage input
_Q_LIMIT = 2**62

DEFAULT_RESIDUE_TOL = 1e-6


@dataclass(frozen=True)
class CoefficientVector:
    n: int
    values: np.ndarray

    def __post_init__(self):
        if len(self.values) != self.n + 1:
            raise ValueError(
                f"expected {self.n + 1} coefficients, got {len(self.values)}"
            )


@dataclass(frozen=True)
class LatticeApproximant:
    """Integer coefficients q_0..q_n identifying a lattice element."""

    n: int
    t: int
    q: np.ndarray  # int64, length n+1
    epsilon_n: float


@dataclass(frozen=True)
class QuantizationTrace:
    """Residues u_0..u_n of the rounding recurrence (u_{-1} = 0)."""

    u: np.ndarray


def _round_half_even(w):
    return int(round(w))


def _round_half_up(w):
    return int(math.floor(w + 0.5))


def _round_half_down(w):
    return int(math.ceil(w - 0.5))


# the construction only needs |w - [w]| <= 1/2; the rule is a
# reproducibility knob, ties-to-even avoids drift on half-integer runs
ROUNDING_RULES = {
    "half-even": _round_half_even,
    "half-up": _round_half_up,
    "half-down": _round_half_down,
}


def _check_cutoff(n, t):
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    if not 0 <= t <= n // 2:
        raise CutoffOutOfRangeError(f"t={t} outside [0, {n // 2}] for n={n}")


def bernstein_coefficients(f, n):
    """Samples f(k/n), k = 0..n."""
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    vals = np.array([float(f.evaluator(k / n)) for k in range(n + 1)])
    if not np.all(np.isfinite(vals)):
        raise NonFiniteError("f produced a non-finite sample")
    return CoefficientVector(n, vals)


def epsilon(f, n, t, rounding="half-even"):
    """Uniform shift making the middle coefficient sum an integer.

    epsilon = ([S] - S) / (n+1-2t) with S = sum_{k=t}^{n-t} f(k/n);
    satisfies |epsilon| * (n+1-2t) <= 1/2.
    """
    _check_cutoff(n, t)
    coeffs = bernstein_coefficients(f, n)
    return _epsilon_from_coeffs(coeffs.values, n, t, rounding)


def _epsilon_from_coeffs(values, n, t, rounding="half-even"):
    s = math.fsum(values[t : n - t + 1])
    target = ROUNDING_RULES[rounding](s)
    return (target - s) / (n + 1 - 2 * t)


def perturbed_coefficients(f, n, t, rounding="half-even"):
    """Boundary-pinned, epsilon-shifted coefficients y_0..y_n."""
    _check_cutoff(n, t)
    coeffs = bernstein_coefficients(f, n)
    eps = _epsilon_from_coeffs(coeffs.values, n, t, rounding)
    y = coeffs.values.copy()
    y[:t] = f.f0
    y[t : n - t + 1] += eps
    y[n - t + 1 :] = f.f1
    return CoefficientVector(n, y)


def quantize(y, rounding="half-even"):
    """First-order error-diffusion rounding of a coefficient sequence.

    q_k = [u_{k-1} + y_k], u_k = u_{k-1} + y_k - q_k, u_{-1} = 0.
    Returns (int64 array, QuantizationTrace).  |u_k| <= 1/2 holds
    exactly in floating point: u_k is the rounding residual of the
    representable value u_{k-1} + y_k.
    """
    values = y.values if isinstance(y, CoefficientVector) else np.asarray(y, dtype=float)
    if not np.all(np.isfinite(values)):
        raise NonFiniteError("quantizer input contains non-finite entries")
    rnd = ROUNDING_RULES[rounding]
    q = np.empty(len(values), dtype=np.int64)
    u = np.empty(len(values))
    carry = 0.0
    for k, yk in enumerate(values):
        w = carry + yk
        if abs(w) >= _Q_LIMIT:
            raise OverflowError(f"coefficient magnitude {w} exceeds int64 headroom")
        qk = rnd(w)
        carry = w - qk  # exact: q is an integer within 1/2 of w
        q[k] = qk
        u[k] = carry
    return q, QuantizationTrace(u)


def quantize_function(
    f, n, t=None, rounding="half-even", residue_tol=DEFAULT_RESIDUE_TOL
):
    """Full construction of the integer-coefficient approximant.

    Composes perturbed_coefficients and quantize, then asserts the
    structural facts: residues vanish on the pinned head, the residue at
    index n-t is ~0, and the tail coefficients lock to f(1).
    """
    if t is None:
        t = choose_t(n)
    _check_cutoff(n, t)
    coeffs = bernstein_coefficients(f, n)
    eps = _epsilon_from_coeffs(coeffs.values, n, t, rounding)
    y = coeffs.values.copy()
    y[:t] = f.f0
    y[t : n - t + 1] += eps
    y[n - t + 1 :] = f.f1
    q, trace = quantize(y, rounding)
    u = trace.u
    if t > 0:
        if not (np.all(q[:t] == f.f0) and np.all(u[:t] == 0.0)):
            raise StructuralViolationError("head block not locked to f(0)")
    if abs(u[n - t]) > residue_tol:
        raise StructuralViolationError(
            f"residue at n-t is {u[n - t]}, beyond tolerance {residue_tol}"
        )
    if t > 0:
        if not np.all(q[n - t + 1 :] == f.f1):
            raise StructuralViolationError("tail block not locked to f(1)")
        if np.max(np.abs(u[n - t + 1 :])) > residue_tol:
            raise StructuralViolationError("tail residues beyond tolerance")
    if q[0] != f.f0 or q[n] != f.f1:
        raise StructuralViolationError("endpoint coefficients not locked")
    return LatticeApproximant(n, t, q, eps), trace


def theta_exponent(alpha):
    """Optimal cutoff growth exponent for a Hoelder-alpha modulus."""
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0,1], got {alpha}")
    if alpha <= 0.5:
        return 0.5
    return 2.0 * alpha / (2.0 * alpha + 1.0)


def choose_t(n, alpha=None):
    """Cutoff floor(n^theta / 2), clamped to [0, floor(n/2)].

    Default theta = 2/3 (the convenient Lipschitz-rate choice); with
    alpha given, uses the Hoelder-optimal exponent.
    """
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    theta = 2.0 / 3.0 if alpha is None else theta_exponent(alpha)
    # guard: n**theta can land a hair below an exact integer (n=1000)
    t = int(math.floor(0.5 * n**theta + 1e-9))
    return max(0, min(t, n // 2))


def rho(f, n):
    """Optimized middle-term bound and its minimizing cutoff.

    min over integer t in [0, n/2] of
        max(omega(t/n), 1/(2(n+1-2t))) + 1/sqrt(2(t+1)).
    Smallest minimizer on ties.
    """
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    ts = np.arange(n // 2 + 1)
    mod = f.modulus
    if mod is None:
        raise ValueError("rho needs a modulus on the FunctionSpec")
    if mod.analytic:
        w = np.asarray(mod(ts / n), dtype=float)
    else:
        w = np.array([_omega(f, t / n) for t in ts])
    vals = np.maximum(w, 0.5 / (n + 1.0 - 2.0 * ts)) + 1.0 / np.sqrt(2.0 * (ts + 1.0))
    i = int(np.argmin(vals))
    return float(vals[i]), i
