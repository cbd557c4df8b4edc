"""Numerically stable evaluation of the scaled Bernstein basis.

The basis is p_{n,k}(x) = C(n,k) x^k (1-x)^{n-k}, with the convention
p_{n,k} = 0 for k < 0 or k > n.  Rows are computed by anchoring at the
mode index and spreading outward with the two-term ratio recurrence,
which avoids overflowing C(n,k) and underflow cascades near x = 0, 1.
"""

import math

import numpy as np
from scipy.special import gammaln
from scipy.stats import binom

# values below the smallest positive normal are flushed to zero
_TINY = float(np.finfo(float).tiny)

_SMALL_N_DIRECT = 50  # C(n,k) and the powers stay comfortably in float range


def _check_domain(n, x):
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got n={n}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"abscissa must lie in [0,1], got x={x}")


def eval_basis(n, k, x):
    """Single basis value p_{n,k}(x); 0 for k outside 0..n."""
    _check_domain(n, x)
    if k < 0 or k > n:
        return 0.0
    if x == 0.0:
        return 1.0 if k == 0 else 0.0
    if x == 1.0:
        return 1.0 if k == n else 0.0
    if n <= _SMALL_N_DIRECT:
        v = math.comb(n, k) * x**k * (1.0 - x) ** (n - k)
    else:
        # Loader's saddle-point pmf evaluation: ~1e-15 relative accuracy
        v = float(binom.pmf(k, n, x))
    return v if v >= _TINY else 0.0


def basis_row(n, x):
    """All n+1 basis values at x, as a float array summing to ~1."""
    _check_domain(n, x)
    row = np.zeros(n + 1)
    if x == 0.0:
        row[0] = 1.0
        return row
    if x == 1.0:
        row[n] = 1.0
        return row
    k0 = min(int((n + 1) * x), n)  # mode index: unimodal peak of the row
    logp0 = (
        gammaln(n + 1.0)
        - gammaln(k0 + 1.0)
        - gammaln(n - k0 + 1.0)
        + k0 * math.log(x)
        + (n - k0) * math.log1p(-x)
    )
    p0 = math.exp(logp0)
    row[k0] = p0
    odds = x / (1.0 - x)
    if k0 < n:
        ks = np.arange(k0, n, dtype=float)
        ratios = (n - ks) / (ks + 1.0) * odds
        row[k0 + 1 :] = p0 * np.cumprod(ratios)
    if k0 > 0:
        ks = np.arange(k0, 0, -1, dtype=float)
        ratios = ks / (n - ks + 1.0) / odds
        row[k0 - 1 :: -1] = p0 * np.cumprod(ratios)
    row[row < _TINY] = 0.0
    return row


def eval_lattice_poly(q, x):
    """Evaluate sum_k q[k] p_{n,k}(x) for integer (or real) coefficients.

    Degree n is inferred as len(q)-1.  Exact at the endpoints: returns
    q[0] at x=0 and q[-1] at x=1.
    """
    q = np.asarray(q)
    n = len(q) - 1
    if n < 0:
        raise ValueError("coefficient sequence must be nonempty")
    row = basis_row(n, x)
    return float(row @ q.astype(float))


def moment_residuals(n, x):
    """Absolute residuals of the four moment identities at (n, x).

    Returns (|sum p - 1|, |sum (k-nx) p|, |sum (k-nx)^2 p - nx(1-x)|,
    |sum k(n-k) p - n(n-1)x(1-x)|).
    """
    _check_domain(n, x)
    if n < 1:
        raise ValueError("moment identities need n >= 1")
    row = basis_row(n, x)
    k = np.arange(n + 1, dtype=float)
    d = k - n * x
    r0 = abs(float(row.sum()) - 1.0)
    r1 = abs(float(d @ row))
    r2 = abs(float((d * d) @ row) - n * x * (1.0 - x))
    r3 = abs(float((k * (n - k)) @ row) - n * (n - 1.0) * x * (1.0 - x))
    return r0, r1, r2, r3


def difference_identity_residual(n, k, x):
    """Residual of x(1-x)(p_{n,k} - p_{n,k+1}) = ((k+1)/(n+1) - x) p_{n+1,k+1}."""
    _check_domain(n, x)
    lhs = x * (1.0 - x) * (eval_basis(n, k, x) - eval_basis(n, k + 1, x))
    rhs = ((k + 1) / (n + 1) - x) * eval_basis(n + 1, k + 1, x)
    return abs(lhs - rhs)


def difference_identity_max_residual(n, x):
    """Max of difference_identity_residual over all k in {-1, ..., n}.

    Row-vectorized; used by the verify suites.
    """
    _check_domain(n, x)
    pn = np.zeros(n + 3)  # entries for k = -1 .. n+1, zero-padded
    pn[1 : n + 2] = basis_row(n, x)
    pnp1 = basis_row(n + 1, x)
    ks = np.arange(-1, n + 1, dtype=float)
    lhs = x * (1.0 - x) * (pn[0 : n + 2] - pn[1 : n + 3])
    rhs = ((ks + 1.0) / (n + 1.0) - x) * pnp1
    return float(np.max(np.abs(lhs - rhs)))


def basis_blocks(n, xs, chunk=1024):
    """Yield (index_slice, matrix) blocks of basis values on a grid.

    Each matrix has shape (len(slice), n+1) with rows p_{n,.}(x).
    Endpoint abscissae are handled exactly.  Chunking keeps memory at
    O(chunk * n) for dense sup-norm grids.
    """
    xs = np.asarray(xs, dtype=float)
    if np.any((xs < 0.0) | (xs > 1.0)):
        raise ValueError("grid abscissae must lie in [0,1]")
    k = np.arange(n + 1, dtype=float)
    logc = gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)
    for lo in range(0, len(xs), chunk):
        sl = slice(lo, min(lo + chunk, len(xs)))
        xc = xs[sl]
        block = np.zeros((len(xc), n + 1))
        interior = (xc > 0.0) & (xc < 1.0)
        if np.any(interior):
            xi = xc[interior]
            logm = (
                logc[None, :]
                + k[None, :] * np.log(xi)[:, None]
                + (n - k)[None, :] * np.log1p(-xi)[:, None]
            )
            m = np.exp(logm)
            m[m < _TINY] = 0.0
            block[interior] = m
        block[xc == 0.0, 0] = 1.0
        block[xc == 1.0, n] = 1.0
        yield sl, block


def bernstein_values(coeffs, xs, chunk=1024):
    """Evaluate sum_k coeffs[k] p_{n,k} on an array of abscissae."""
    coeffs = np.asarray(coeffs, dtype=float)
    n = len(coeffs) - 1
    xs = np.asarray(xs, dtype=float)
    out = np.empty(len(xs))
    for sl, block in basis_blocks(n, xs, chunk):
        out[sl] = block @ coeffs
    return out
