"""Error measurement, theoretical bounds, proof-inequality checks, exact
power-basis certification, and the brute-force lattice oracle."""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List

import numpy as np

from .basis import basis_blocks, bernstein_values
from .errors import (
    CutoffOutOfRangeError,
    EstimateOnlyModulusError,
    NonFiniteError,
    SearchSpaceTooLargeError,
)
from .funcs import modulus as _omega
from .quantizer import LatticeApproximant, bernstein_coefficients, rho

_BRUTE_FORCE_MAX_N = 6
_BRUTE_FORCE_MAX_RADIUS = 3


@dataclass(frozen=True)
class ErrorReport:
    n: int
    t: int
    sup_error: float
    grid_points: int
    bound_main: float
    bound_simple: float
    bernstein_error: float


@dataclass(frozen=True)
class PowerBasisPoly:
    """Exact integer coefficients c_0..c_n of Q(x) = sum c_j x^j."""

    coefficients: List[int]


def default_grid_size(n):
    """Dense enough to resolve the ~1/n oscillation of the error."""
    return max(2049, 8 * n + 1)


def sample_on_grid(f, xs):
    vals = np.array([float(f.evaluator(x)) for x in xs])
    if not np.all(np.isfinite(vals)):
        raise NonFiniteError("f produced a non-finite sample")
    return vals


def sup_error(f, approx, m):
    """Grid sup of |f - Q| on m uniform points (lower estimate)."""
    if m < 2:
        raise ValueError("grid needs at least 2 points")
    xs = np.linspace(0.0, 1.0, m)
    fv = sample_on_grid(f, xs)
    qv = bernstein_values(approx.q.astype(float), xs)
    return float(np.max(np.abs(fv - qv)))


def bernstein_error(f, n, m):
    """Grid sup of |f - B_n| where B_n samples f at k/n."""
    if m < 2:
        raise ValueError("grid needs at least 2 points")
    xs = np.linspace(0.0, 1.0, m)
    fv = sample_on_grid(f, xs)
    bv = bernstein_values(bernstein_coefficients(f, n).values, xs)
    return float(np.max(np.abs(fv - bv)))


def snt_check(n, t, m):
    """Max over the grid of S_{n,t}(x) - x(1-x)/sqrt(t/2).

    S_{n,t}(x) = sum_{k=t}^{n-t} |k/n - x| p_{n,k}(x).  A nonpositive
    return certifies the proof's tail-mass bound on the grid.
    """
    if not 0 < t <= n / 2:
        raise CutoffOutOfRangeError(f"need 0 < t <= n/2, got t={t}, n={n}")
    xs = np.linspace(0.0, 1.0, m)
    kk = np.arange(t, n - t + 1, dtype=float)
    worst = -np.inf
    for sl, block in basis_blocks(n, xs):
        xc = xs[sl]
        mid = block[:, t : n - t + 1]
        s = np.sum(np.abs(kk[None, :] / n - xc[:, None]) * mid, axis=1)
        viol = s - xc * (1.0 - xc) / math.sqrt(t / 2.0)
        worst = max(worst, float(np.max(viol)))
    return worst


def to_power_basis(approx):
    """Exact conversion to integer power-basis coefficients.

    c_j = sum_{k<=j} q_k C(n,k) C(n-k, j-k) (-1)^{j-k}, computed in
    arbitrary precision; certifies membership in Z[X].
    """
    if isinstance(approx, LatticeApproximant):
        n, q = approx.n, [int(v) for v in approx.q]
    else:
        q = [int(v) for v in approx]
        n = len(q) - 1
    coeffs = []
    for j in range(n + 1):
        c = 0
        for k in range(j + 1):
            c += q[k] * math.comb(n, k) * math.comb(n - k, j - k) * (-1) ** (j - k)
        coeffs.append(c)
    return PowerBasisPoly(coeffs)


def eval_power_exact(poly, x):
    """Horner evaluation of a power-basis polynomial at a Fraction."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(poly.coefficients):
        acc = acc * x + c
    return acc


def eval_bernstein_exact(n, coeffs, x):
    """Exact rational evaluation of sum coeffs[k] p_{n,k}(x)."""
    x = Fraction(x)
    acc = Fraction(0)
    for k, c in enumerate(coeffs):
        acc += Fraction(c) * math.comb(n, k) * x**k * (1 - x) ** (n - k)
    return acc


def monomial_membership_check(n, k):
    """Confirm x^k = sum_l C(n-k,l) x^{k+l}(1-x)^{n-k-l} exactly.

    Verified by exact rational evaluation at n+1 distinct rationals;
    certifies that the power lattice equals the unscaled-basis lattice.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    for i in range(n + 1):
        x = Fraction(i, n + 1)
        lhs = x**k
        rhs = Fraction(0)
        for l in range(n - k + 1):
            rhs += math.comb(n - k, l) * x ** (k + l) * (1 - x) ** (n - k - l)
        if lhs != rhs:
            return False
    return True


def brute_force_best(f, n, radius, m):
    """Exhaustive search over integer coefficients near round(f(k/n)).

    Independent oracle for the lattice distance at tiny n; returns the
    grid-sup-minimizing coefficient vector (lexicographically smallest
    on ties) and its error.
    """
    if n > _BRUTE_FORCE_MAX_N or radius > _BRUTE_FORCE_MAX_RADIUS:
        raise SearchSpaceTooLargeError(
            f"refusing n={n}, radius={radius} "
            f"(limits n<={_BRUTE_FORCE_MAX_N}, radius<={_BRUTE_FORCE_MAX_RADIUS})"
        )
    if radius < 0:
        raise ValueError("radius must be >= 0")
    xs = np.linspace(0.0, 1.0, m)
    fv = sample_on_grid(f, xs)
    basis = np.vstack([block for _, block in basis_blocks(n, xs)])
    centers = np.array(
        [int(round(float(f.evaluator(k / n)))) for k in range(n + 1)], dtype=np.int64
    )
    offsets = range(-radius, radius + 1)
    best_err = np.inf
    best_q = None
    chunk = []
    # itertools.product yields offsets in lexicographic order, so the
    # first minimum encountered is the lexicographically smallest q
    def flush(chunk, best_err, best_q):
        qmat = np.asarray(chunk, dtype=float) + centers[None, :]
        errs = np.max(np.abs(basis @ qmat.T - fv[:, None]), axis=0)
        i = int(np.argmin(errs))
        if errs[i] < best_err:
            best_err = float(errs[i])
            best_q = centers + np.asarray(chunk[i], dtype=np.int64)
        return best_err, best_q

    for off in itertools.product(offsets, repeat=n + 1):
        chunk.append(off)
        if len(chunk) >= 4096:
            best_err, best_q = flush(chunk, best_err, best_q)
            chunk = []
    if chunk:
        best_err, best_q = flush(chunk, best_err, best_q)
    return best_q, best_err


def _analytic_omega(f, delta, strict):
    mod = f.modulus
    if mod is None:
        raise ValueError("bound evaluation needs a modulus")
    if not mod.analytic and strict:
        raise EstimateOnlyModulusError(
            "empirical modulus is a lower estimate; bound would be unsound"
        )
    return _omega(f, delta)


def bound_simple(f, n, strict=True):
    """(9/4) omega(n^{-1/3}) + 2 n^{-1/3}."""
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    d = n ** (-1.0 / 3.0)
    return 2.25 * _analytic_omega(f, min(d, 1.0), strict) + 2.0 * d


def bound_main(f, n, strict=True):
    """(5/4) omega(n^{-1/2}) + rho(f, n)."""
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    w = _analytic_omega(f, n**-0.5, strict)
    return 1.25 * w + rho(f, n)[0]


def analyze(f, approx, m=None, strict=False):
    """Measure the approximant against f and the theoretical bounds."""
    n = approx.n
    if m is None:
        m = default_grid_size(n)
    return ErrorReport(
        n=n,
        t=approx.t,
        sup_error=sup_error(f, approx, m),
        grid_points=m,
        bound_main=bound_main(f, n, strict=strict),
        bound_simple=bound_simple(f, n, strict=strict),
        bernstein_error=bernstein_error(f, n, m),
    )
