import numpy as np
import pytest

from gowersff import (
    NormRequest,
    WorkCapExceeded,
    evaluate,
    gowers_accelerated,
    gowers_norm,
    gowers_oracle,
    gowers_recursive,
    inverse_phase_trace,
    kloosterman_trace,
    legendre_curve_trace,
    legendre_poly_trace,
    prime_field,
    u1,
    u2_accelerated,
    xi,
)
from gowersff.norms import _finalize
from conftest import poly_phase, random_unit_vector


class TestXi:
    def test_h_zero_gives_squared_modulus(self):
        rng = np.random.default_rng(0)
        v = rng.normal(size=31) + 1j * rng.normal(size=31)
        assert np.abs(xi(v, 0) - np.abs(v) ** 2).max() <= 1e-12

    def test_linear_phase_gives_constant(self, field101):
        c = 7
        v = field101.char_table[(c * np.arange(101)) % 101]
        for h in (1, 5, 60):
            out = xi(v, h)
            expected = field101.char_table[(c * h) % 101]
            assert np.abs(out - expected).max() <= 1e-12

    def test_commutes(self):
        rng = np.random.default_rng(1)
        v = random_unit_vector(101, rng)
        for h, hp in [(3, 11), (50, 99), (0, 42)]:
            a = xi(xi(v, hp), h)
            b = xi(xi(v, h), hp)
            assert np.abs(a - b).max() <= 1e-12


class TestU1:
    def test_constant_one(self):
        assert abs(u1(np.ones(17, dtype=np.complex128)) - 1) <= 1e-15

    @pytest.mark.parametrize("p", [101, 499, 997])
    def test_inverse_phase_mean_law(self, p):
        v = inverse_phase_trace(prime_field(p)).values
        assert abs(u1(v) - 1 / p**2) <= 1e-12

    @pytest.mark.parametrize("p", [101, 499, 997])
    def test_kloosterman_u1_vanishes(self, p):
        v = kloosterman_trace(prime_field(p)).values
        assert u1(v) <= 1e-10


class TestOracle:
    def test_d1_equals_u1(self):
        rng = np.random.default_rng(2)
        v = random_unit_vector(31, rng)
        assert abs(gowers_oracle(v, 1) - u1(v)) <= 1e-10

    def test_quadratic_phase_d2_p13(self):
        v = poly_phase((0, 0, 1), 13)
        assert abs(gowers_oracle(v, 2) - 1 / 13) <= 1e-10

    @pytest.mark.parametrize("p", [7, 11, 13])
    def test_quadratic_phase_d3_is_one(self, p):
        v = poly_phase((0, 0, 1), p)
        assert abs(gowers_oracle(v, 3) - 1) <= 1e-10

    def test_work_cap_refusal_names_cap(self):
        v = np.ones(101, dtype=np.complex128)
        with pytest.raises(WorkCapExceeded, match="work cap"):
            gowers_oracle(v, 5)  # 101^6 > 1e9

    def test_custom_cap(self):
        v = np.ones(11, dtype=np.complex128)
        with pytest.raises(WorkCapExceeded):
            gowers_oracle(v, 2, work_cap=100)


class TestRecursive:
    def test_d1_equals_u1(self):
        rng = np.random.default_rng(3)
        v = random_unit_vector(101, rng)
        assert gowers_recursive(v, 1) == pytest.approx(u1(v), abs=1e-15)

    def test_random_sign_vector_matches_oracle_p31_d3(self):
        rng = np.random.default_rng(4)
        v = (rng.integers(0, 2, 31) * 2 - 1).astype(np.complex128)
        assert abs(gowers_recursive(v, 3) - gowers_oracle(v, 3)) <= 1e-9

    def test_kloosterman_matches_accelerated_p101_d2(self, field101):
        v = kloosterman_trace(field101).values
        assert abs(gowers_recursive(v, 2) - gowers_accelerated(v, 2, field101)) <= 1e-9

    def test_d4_small_prime(self):
        rng = np.random.default_rng(5)
        v = random_unit_vector(11, rng)
        assert abs(gowers_recursive(v, 4) - gowers_oracle(v, 4)) <= 1e-9


class TestAccelerated:
    def test_u2_constant(self):
        assert abs(u2_accelerated(np.ones(101, dtype=np.complex128)) - 1) <= 1e-10

    def test_u2_single_mode(self, field101):
        v = field101.char_table[(9 * np.arange(101)) % 101]
        assert abs(u2_accelerated(v, field101) - 1) <= 1e-10

    def test_u2_random_matches_recursive_p499(self, field499):
        rng = np.random.default_rng(6)
        v = random_unit_vector(499, rng)
        assert abs(u2_accelerated(v, field499) - gowers_recursive(v, 2)) <= 1e-9

    def test_d2_is_u2(self, field101):
        rng = np.random.default_rng(7)
        v = random_unit_vector(101, rng)
        assert gowers_accelerated(v, 2, field101) == pytest.approx(
            u2_accelerated(v, field101), abs=1e-15
        )

    def test_legendre_curve_d3_matches_recursive(self, field101):
        v = legendre_curve_trace(field101).values
        assert abs(
            gowers_accelerated(v, 3, field101) - gowers_recursive(v, 3)
        ) <= 1e-8

    def test_inverse_phase_p1009_d3_completes(self):
        F = prime_field(1009)
        v = inverse_phase_trace(F).values
        u3 = gowers_accelerated(v, 3, F)
        assert 0 <= u3 * 1009 <= 1e3

    def test_d1_refused(self):
        with pytest.raises(ValueError, match="u1"):
            gowers_accelerated(np.ones(11, dtype=np.complex128), 1)

    def test_deep_refusal_above_256(self):
        v = np.ones(257, dtype=np.complex128)
        with pytest.raises(WorkCapExceeded, match="257"):
            gowers_accelerated(v, 5)

    def test_deep_allowed_at_small_p(self):
        rng = np.random.default_rng(8)
        v = random_unit_vector(7, rng)
        assert abs(gowers_accelerated(v, 5, allow_deep=True) - gowers_oracle(v, 5)) <= 1e-9

    def test_work_cap_estimate_refusal(self):
        v = np.ones(997, dtype=np.complex128)
        with pytest.raises(WorkCapExceeded, match="work cap"):
            gowers_accelerated(v, 4, work_cap=10**6)


class TestEngineEquivalence:
    @pytest.mark.parametrize("p", [11, 17, 31])
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_three_routes_agree(self, p, d):
        rng = np.random.default_rng(100 * p + d)
        for _ in range(5):
            v = random_unit_vector(p, rng)
            oracle = gowers_oracle(v, d)
            assert abs(oracle - gowers_recursive(v, d)) <= 1e-9
            if d >= 2:
                assert abs(oracle - gowers_accelerated(v, d)) <= 1e-9


class TestNormProperties:
    def test_gowers_norm_of_unit_constant(self):
        c = np.exp(0.7j)
        v = np.full(31, c, dtype=np.complex128)
        for d in (1, 2, 3):
            assert abs(gowers_norm(v, d) - 1) <= 1e-10

    def test_legendre_poly_norm_strictly_inside_unit_interval(self, field101):
        v = legendre_poly_trace((1, 1, 0, 1), field101).values
        n = gowers_norm(v, 2, field101)
        assert 0 < n < 1

    @pytest.mark.parametrize("p", [31, 101])
    def test_monotonicity(self, p):
        rng = np.random.default_rng(p)
        for _ in range(3):
            v = random_unit_vector(p, rng)
            norms = [gowers_norm(v, d) for d in (1, 2, 3)]
            assert norms[0] <= norms[1] + 1e-8
            assert norms[1] <= norms[2] + 1e-8

    @pytest.mark.parametrize("d", [2, 3])
    def test_modulation_invariance(self, d, field101):
        p = 101
        rng = np.random.default_rng(40 + d)
        v = random_unit_vector(p, rng)
        base = gowers_accelerated(v, d, field101)
        for _ in range(10):
            coeffs = [0] + [int(rng.integers(0, p)) for _ in range(d - 1)]
            modulated = v * poly_phase(coeffs, p)
            assert abs(gowers_accelerated(modulated, d, field101) - base) <= 1e-8

    @pytest.mark.parametrize("d", [2, 3])
    def test_affine_invariance(self, d, field101):
        p = 101
        rng = np.random.default_rng(50 + d)
        v = random_unit_vector(p, rng)
        base = gowers_accelerated(v, d, field101)
        x = np.arange(p, dtype=np.int64)
        for a, b in [(1, 3), (2, 0), (45, 77), (100, 1)]:
            composed = v[(a * x + b) % p]
            assert abs(gowers_accelerated(composed, d, field101) - base) <= 1e-8

    @pytest.mark.parametrize("p", [11, 31, 101])
    def test_polynomial_phase_exactness(self, p):
        cases = {0: (0,), 1: (0, 3), 2: (0, 1, 1), 3: (0, 2, 0, 1)}
        for deg, coeffs in cases.items():
            v = poly_phase(coeffs, p)
            for d in range(deg + 1, 5):
                u_d = u1(v) if d == 1 else gowers_accelerated(v, d)
                assert abs(u_d - 1) <= 1e-9

    def test_nonnegativity_on_random_inputs(self):
        rng = np.random.default_rng(9)
        for p in (11, 31):
            v = rng.normal(size=p) + 1j * rng.normal(size=p)
            for d in (1, 2, 3):
                assert gowers_oracle(v, d) >= 0
                assert gowers_recursive(v, d) >= 0

    def test_clamp_behavior(self):
        assert _finalize(-0.5e-9, 1e-9) == 0.0
        with pytest.raises(ArithmeticError):
            _finalize(-1e-6, 1e-9)


class TestEvaluate:
    def test_engine_dispatch_and_fields(self, field101):
        table = kloosterman_trace(field101)
        for engine in ("oracle", "recursive", "accelerated"):
            d = 1 if engine == "oracle" else 2
            res = evaluate(NormRequest.from_table(table, d, engine))
            assert res.engine == engine
            assert res.p == 101 and res.d == d
            assert res.u_d_times_p == pytest.approx(res.u_d * 101)
            assert res.norm == pytest.approx(res.u_d ** (1 / 2**d))
            assert res.elapsed >= 0

    def test_trivial_bound_checked_for_family_tables(self, field101):
        # rank 2 families must satisfy U_d <= 2^(2^d); run all and rely on
        # the internal assertion raising on violation.
        for table in (kloosterman_trace(field101), legendre_curve_trace(field101)):
            for d in (1, 2, 3):
                res = evaluate(NormRequest.from_table(table, d))
                assert res.u_d <= table.descriptor.rank ** (2**d) + 1e-6

    def test_unknown_engine_rejected(self):
        with pytest.raises(ValueError, match="engine"):
            evaluate(NormRequest(values=np.ones(11, dtype=np.complex128), d=1, engine="fft"))

    def test_accelerated_request_at_d1_uses_mean_formula(self):
        v = np.ones(31, dtype=np.complex128)
        res = evaluate(NormRequest(values=v, d=1, engine="accelerated"))
        assert res.u_d == pytest.approx(1.0)
