"""Identity and invariant suites behind the `verify` CLI command.

Each suite returns (name, passed, worst) where `worst` is the suite's
max residual/violation in its own scale.
"""

import numpy as np

from . import basis
from .analysis import monomial_membership_check, snt_check
from .quantizer import quantize

MOMENT_TOL = 1e-9  # on scaled residuals
DIFF_TOL = 1e-12  # on residual / n
RESIDUE_BOUND = 0.5

_SNT_FIXED_CASES = ((10, 1), (10, 5), (100, 10), (100, 50), (256, 31))


def moment_suite(n_max, grid):
    """Partition of unity and first/second central moment identities.

    Quadratic-moment residuals are scaled by n since the summands grow
    like n^2.
    """
    xs = np.linspace(0.0, 1.0, grid)
    worst = 0.0
    for n in range(1, n_max + 1):
        scale = max(1.0, float(n))
        for x in xs:
            r0, r1, r2, r3 = basis.moment_residuals(n, x)
            worst = max(worst, r0, r1, r2 / scale, r3 / scale)
    return "moment-identities", worst <= MOMENT_TOL, worst


def difference_identity_suite(n_max, grid):
    """Downshift identity for basis differences, all k in {-1..n}."""
    xs = np.linspace(0.0, 1.0, grid)
    worst = 0.0
    for n in range(1, n_max + 1):
        for x in xs:
            r = basis.difference_identity_max_residual(n, x)
            worst = max(worst, r / n)
    return "difference-identity", worst <= DIFF_TOL, worst


def snt_suite(n_max, grid, seed=0):
    """Tail-mass bound S_{n,t}(x) <= x(1-x)/sqrt(t/2)."""
    rng = np.random.default_rng(seed)
    cases = [(n, t) for n, t in _SNT_FIXED_CASES if n <= n_max]
    for _ in range(5):
        n = int(rng.integers(2, max(3, n_max + 1)))
        t = int(rng.integers(1, n // 2 + 1))
        cases.append((n, t))
    worst = -np.inf
    for n, t in cases:
        worst = max(worst, snt_check(n, t, grid))
    return "tail-mass-bound", worst <= 0.0, worst


def monomial_suite(n_max):
    """Monomials expand exactly over the unscaled basis (lattice equality)."""
    limit = min(12, n_max)
    ok = all(
        monomial_membership_check(n, k)
        for n in range(limit + 1)
        for k in range(n + 1)
    )
    return "monomial-membership", ok, 0.0 if ok else 1.0


def quantizer_suite(n_max, seed=0, cases=50):
    """Residue bound |u_k| <= 1/2 and per-step conservation, randomized."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    ok = True
    for _ in range(cases):
        length = int(rng.integers(1, min(n_max, 512) + 2))
        y = rng.uniform(-10.0, 10.0, size=length)
        q, trace = quantize(y)
        u = trace.u
        worst = max(worst, float(np.max(np.abs(u))))
        carry = 0.0
        for k in range(length):
            w = carry + y[k]
            if u[k] != w - q[k]:  # subtraction of the integer is exact
                ok = False
            carry = u[k]
    return "quantizer-residues", ok and worst <= RESIDUE_BOUND, worst


def run_all(n_max=256, grid=101, seed=0):
    return [
        moment_suite(n_max, grid),
        difference_identity_suite(n_max, grid),
        snt_suite(n_max, grid, seed),
        monomial_suite(n_max),
        quantizer_suite(n_max, seed),
    ]
