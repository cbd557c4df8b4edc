import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bernlat import (
    LipschitzModulus,
    certify,
    choose_t,
    epsilon,
    eval_lattice_poly,
    perturbed_coefficients,
    bernstein_coefficients,
    quantize,
    quantize_function,
    rho,
    theta_exponent,
)
from bernlat.errors import CutoffOutOfRangeError


def lip(evaluator, L=1.0, cap=None):
    return certify(evaluator, modulus=LipschitzModulus(L, cap=cap))


class TestBernsteinCoefficients:
    def test_identity(self):
        assert list(bernstein_coefficients(lip(lambda x: x), 4).values) == [
            0.0,
            0.25,
            0.5,
            0.75,
            1.0,
        ]

    def test_constant(self):
        assert list(bernstein_coefficients(lip(lambda x: 2.0), 3).values) == [2.0] * 4

    def test_sine(self):
        vals = bernstein_coefficients(lip(lambda x: math.sin(math.pi * x)), 2).values
        assert vals == pytest.approx([0.0, 1.0, 0.0], abs=1e-15)


class TestEpsilon:
    def test_integer_sum_gives_zero(self):
        assert epsilon(lip(lambda x: 3.0), 7, 2) == 0.0

    def test_ties_to_even_upward(self):
        # S = (1+2+3)/4 = 1.5, [1.5] = 2, eps = 0.5/3
        assert epsilon(lip(lambda x: x), 4, 1) == pytest.approx(1 / 6, abs=1e-15)

    def test_half_integer_boundary_case(self):
        # S = 0.5, [0.5] = 0 ties-to-even, eps = -0.5; |eps|*(n+1-2t) = 1/2
        assert epsilon(lip(lambda x: x), 2, 1) == -0.5

    def test_cutoff_out_of_range(self):
        with pytest.raises(CutoffOutOfRangeError):
            epsilon(lip(lambda x: x), 4, 3)

    @pytest.mark.parametrize("n,t", [(5, 0), (5, 2), (12, 3), (33, 16)])
    def test_half_bound(self, n, t):
        f = lip(lambda x: math.sin(math.pi * x) + 0.37 * x * (1 - x))
        assert abs(epsilon(f, n, t)) * (n + 1 - 2 * t) <= 0.5 + 1e-12


class TestPerturbedCoefficients:
    def test_identity_function(self):
        y = perturbed_coefficients(lip(lambda x: x), 4, 1).values
        assert y == pytest.approx([0, 5 / 12, 8 / 12, 11 / 12, 1], abs=1e-15)

    def test_constant_no_shift(self):
        y = perturbed_coefficients(lip(lambda x: 2.0), 3, 0).values
        assert list(y) == [2.0, 2.0, 2.0, 2.0]

    def test_linear_integer_midpoint(self):
        y = perturbed_coefficients(lip(lambda x: 3 - 2 * x, L=2.0), 2, 1).values
        assert list(y) == [3.0, 2.0, 1.0]

    def test_middle_sum_is_integer(self):
        f = lip(lambda x: math.sin(math.pi * x) + 0.2 * x * (1 - x))
        for n, t in ((9, 2), (40, 7)):
            y = perturbed_coefficients(f, n, t).values
            s = math.fsum(y[t : n - t + 1])
            assert abs(s - round(s)) <= 1e-9


class TestQuantize:
    def test_integer_fixed_point(self):
        q, trace = quantize([2.0, 2.0, 2.0])
        assert list(q) == [2, 2, 2]
        assert list(trace.u) == [0.0, 0.0, 0.0]

    def test_hand_simulation(self):
        q, trace = quantize([0.0, 0.4, 0.8, 1.0])
        assert list(q) == [0, 0, 1, 1]
        assert trace.u == pytest.approx([0.0, 0.4, 0.2, 0.2], abs=1e-15)

    def test_hand_simulation_with_shift(self):
        q, trace = quantize([0, 5 / 12, 8 / 12, 11 / 12, 1])
        assert list(q) == [0, 0, 1, 1, 1]
        assert trace.u == pytest.approx([0, 5 / 12, 1 / 12, 0, 0], abs=1e-12)

    def test_alternative_rounding_rules(self):
        q_even, _ = quantize([0.5, 0.5], rounding="half-even")
        q_up, _ = quantize([0.5, 0.5], rounding="half-up")
        assert list(q_even) == [0, 1]
        assert list(q_up) == [1, 0]

    @given(
        st.lists(
            st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
            min_size=1,
            max_size=300,
        )
    )
    @settings(max_examples=200, deadline=None)
    def test_residue_bound_and_conservation(self, ys):
        q, trace = quantize(ys)
        u = trace.u
        carry = 0.0
        for k, yk in enumerate(ys):
            w = carry + yk
            assert q[k] == round(w)
            assert u[k] == w - q[k]  # exact rounding residual
            assert abs(u[k]) <= 0.5
            carry = u[k]


class TestQuantizeFunction:
    def test_integer_constant(self):
        approx, trace = quantize_function(lip(lambda x: 5.0), 10, 3)
        assert list(approx.q) == [5] * 11
        assert np.all(trace.u == 0.0)

    def test_identity_function(self):
        approx, _ = quantize_function(lip(lambda x: x), 4, 1)
        assert list(approx.q) == [0, 0, 1, 1, 1]

    def test_linear_interpolant_base_case(self):
        approx, _ = quantize_function(lip(lambda x: x), 1, 0)
        assert list(approx.q) == [0, 1]

    def test_structural_zeroing_and_locking(self):
        f = lip(lambda x: math.sin(math.pi * x), L=math.pi, cap=2.0)
        for n in (8, 64, 512):
            approx, trace = quantize_function(f, n)
            t = approx.t
            assert abs(trace.u[n - t]) <= 1e-6
            assert np.all(approx.q[:t] == 0)
            assert np.all(approx.q[n - t + 1 :] == 0)
            assert eval_lattice_poly(approx.q, 0.0) == 0.0
            assert eval_lattice_poly(approx.q, 1.0) == 0.0

    def test_degenerate_middle_block(self):
        # t = n/2: single middle index, handled by the same code path
        approx, trace = quantize_function(lip(lambda x: x), 4, 2)
        assert len(approx.q) == 5
        assert abs(trace.u[2]) <= 1e-12

    def test_epsilon_metadata_bound(self):
        f = lip(lambda x: x * (1 - x), cap=0.25)
        approx, _ = quantize_function(f, 20, 3)
        assert abs(approx.epsilon_n) * (20 + 1 - 6) <= 0.5 + 1e-12


class TestChooseT:
    def test_convenient_lipschitz_value(self):
        assert choose_t(1000) == 50

    def test_small_degree(self):
        assert choose_t(2) == 0

    def test_hoelder_half(self):
        assert choose_t(1024, 0.5) == 16

    def test_clamped_to_half_degree(self):
        for n in range(1, 40):
            assert 0 <= choose_t(n) <= n // 2

    def test_theta_exponent(self):
        assert theta_exponent(0.3) == 0.5
        assert theta_exponent(0.5) == 0.5
        assert theta_exponent(1.0) == pytest.approx(2 / 3)
        with pytest.raises(ValueError):
            theta_exponent(1.5)


def brute_rho(spec, n):
    """Exhaustive scan oracle for the optimized middle-term bound."""
    best, best_t = None, None
    for t in range(n // 2 + 1):
        w = spec.modulus(t / n)
        v = max(w, 0.5 / (n + 1 - 2 * t)) + 1.0 / math.sqrt(2 * (t + 1))
        if best is None or v < best - 0.0:
            if best is None or v < best:
                best, best_t = v, t
    return best, best_t


class TestRho:
    def test_zero_modulus_small_degree(self):
        spec = certify(lambda x: 0.0, modulus=LipschitzModulus(0.0))
        value, t = rho(spec, 2)
        assert value == pytest.approx(1 / 6 + 1 / math.sqrt(2), abs=1e-12)
        assert t == 0

    def test_degree_one_single_candidate(self):
        spec = certify(lambda x: 0.0, modulus=LipschitzModulus(3.0))
        value, t = rho(spec, 1)
        assert t == 0
        assert value == pytest.approx(0.25 + 1 / math.sqrt(2), abs=1e-12)

    def test_lipschitz_minimizer_location(self):
        spec = certify(lambda x: x, modulus=LipschitzModulus(1.0))
        _, t = rho(spec, 1000)
        assert 30 <= t <= 80

    @pytest.mark.parametrize("n", [2, 7, 33, 128])
    def test_matches_scan_oracle(self, n):
        spec = certify(lambda x: 0.0, modulus=LipschitzModulus(1.7, cap=0.9))
        value, t = rho(spec, n)
        ov, ot = brute_rho(spec, n)
        assert value == pytest.approx(ov, abs=1e-12)
        assert t == ot

    def test_upper_bound_by_convenient_cutoff(self):
        # rho <= omega(n^{-1/3}/2) + 2 n^{-1/3} for n >= 2
        spec = certify(lambda x: x, modulus=LipschitzModulus(1.0))
        for n in (2, 5, 16, 100, 4096):
            value, _ = rho(spec, n)
            d = n ** (-1 / 3)
            assert value <= spec.modulus(d / 2) + 2 * d + 1e-12
