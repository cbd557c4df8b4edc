import math

import numpy as np
import pytest

from bernlat import (
    EmpiricalModulus,
    HoelderModulus,
    LipschitzModulus,
    TableModulus,
    certify,
    modulus,
    sample_uniform,
)
from bernlat.errors import BoundaryNotIntegerError, NonFiniteError
from bernlat.funcs import sliding_range_max, _window_span


def pair_scan(values, span):
    """O(m^2) oracle for the sliding-window range maximum."""
    best = 0.0
    m = len(values)
    for i in range(m):
        for j in range(i + 1, min(i + span + 1, m)):
            best = max(best, abs(float(values[i] - values[j])))
    return best


class TestCertify:
    def test_sine_endpoints(self):
        spec = certify(lambda x: math.sin(math.pi * x))
        assert (spec.f0, spec.f1) == (0, 0)

    def test_half_integer_boundary_rejected(self):
        with pytest.raises(BoundaryNotIntegerError):
            certify(lambda x: x + 0.5)

    def test_linear_integer_endpoints(self):
        spec = certify(lambda x: 3 - 2 * x)
        assert (spec.f0, spec.f1) == (3, 1)

    def test_non_finite_endpoint(self):
        with pytest.raises(NonFiniteError):
            certify(lambda x: float("nan"))

    def test_tolerance_is_adjustable(self):
        evaluator = lambda x: x + 1e-6
        with pytest.raises(BoundaryNotIntegerError):
            certify(evaluator)
        spec = certify(evaluator, tolerance=1e-5)
        assert (spec.f0, spec.f1) == (0, 1)


class TestModulus:
    def test_lipschitz(self):
        spec = certify(lambda x: x, modulus=LipschitzModulus(1.0))
        assert modulus(spec, 0.25) == 0.25

    def test_lipschitz_cap(self):
        spec = certify(lambda x: 0.0, modulus=LipschitzModulus(10.0, cap=2.0))
        assert modulus(spec, 0.5) == 2.0

    def test_hoelder(self):
        spec = certify(lambda x: 0.0, modulus=HoelderModulus(1.0, 0.5))
        assert modulus(spec, 0.04) == pytest.approx(0.2, abs=1e-15)

    def test_empirical_sine(self):
        spec = certify(
            lambda x: math.sin(math.pi * x), modulus=EmpiricalModulus(1001)
        )
        assert modulus(spec, 0.5) == pytest.approx(1.0, abs=1e-6)

    def test_table(self):
        mod = TableModulus((0.0, 0.5, 1.0), (0.0, 1.0, 1.0))
        spec = certify(lambda x: 0.0, modulus=mod)
        assert modulus(spec, 0.25) == pytest.approx(0.5)

    def test_domain_error(self):
        spec = certify(lambda x: x, modulus=LipschitzModulus(1.0))
        with pytest.raises(ValueError):
            modulus(spec, 1.5)

    @pytest.mark.parametrize(
        "mod",
        [
            LipschitzModulus(2.0, cap=0.7),
            HoelderModulus(1.5, 0.4),
            TableModulus((0.0, 0.1, 1.0), (0.0, 0.3, 0.9)),
            EmpiricalModulus(301),
        ],
    )
    def test_nondecreasing_in_delta(self, mod):
        spec = certify(lambda x: math.sin(math.pi * x), modulus=mod)
        deltas = np.sort(np.random.default_rng(0).uniform(0.0, 1.0, 100))
        vals = [modulus(spec, d) for d in deltas]
        assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))
        assert modulus(spec, 0.0) == 0.0


class TestEmpiricalWindow:
    @pytest.mark.parametrize("m", [2, 7, 50, 200])
    def test_matches_pair_scan_oracle(self, m):
        rng = np.random.default_rng(m)
        values = rng.uniform(-3.0, 3.0, m)
        for delta in (0.0, 0.01, 0.13, 0.5, 0.77, 1.0):
            span = _window_span(m, delta)
            assert sliding_range_max(values, span) == pair_scan(values, span)

    def test_lower_estimate_of_lipschitz_modulus(self):
        # sliding-window never exceeds L*delta plus the grid sampling slack
        for text_l in ((lambda x: x, 1.0), (lambda x: math.sin(3 * x), 3.0)):
            ev, L = text_l
            m = 401
            spec = certify(
                lambda x: ev(x) - (ev(0.0) + (ev(1.0) - ev(0.0)) * x),
                modulus=EmpiricalModulus(m),
            )
            for delta in (0.05, 0.2, 0.6, 1.0):
                est = modulus(spec, delta)
                assert est <= (L + abs(ev(1.0) - ev(0.0))) * delta + 2 * (
                    L + abs(ev(1.0) - ev(0.0))
                ) / (m - 1)


class TestSampleUniform:
    def test_identity(self):
        spec = certify(lambda x: x)
        assert list(sample_uniform(spec, 3)) == [0.0, 0.5, 1.0]

    def test_constant(self):
        spec = certify(lambda x: 2.0)
        assert list(sample_uniform(spec, 4)) == [2.0, 2.0, 2.0, 2.0]

    def test_parabola(self):
        spec = certify(lambda x: x * (1 - x))
        assert sample_uniform(spec, 5) == pytest.approx(
            [0.0, 0.1875, 0.25, 0.1875, 0.0], abs=1e-15
        )

    def test_non_finite_sample(self):
        spec = certify(lambda x: float("inf") if x == 0.5 else 0.0)
        with pytest.raises(NonFiniteError):
            sample_uniform(spec, 3)

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            sample_uniform(certify(lambda x: x), 1)
