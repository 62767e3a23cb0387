import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gowersff import (
    INFINITY,
    FamilyDescriptor,
    MultiplicativeCharacter,
    TraceTable,
    conductor_bound_xi,
    exceptional_set,
    fourier_trace,
    inverse_phase_trace,
    kloosterman_trace,
    legendre_curve_integers,
    legendre_curve_trace,
    legendre_poly_trace,
    mixed_ask_trace,
    prime_field,
)
from conftest import euler_legendre


def kloosterman_direct_oracle(a: int, p: int) -> complex:
    """S(a,1;p) by the literal double loop (independent of the library)."""
    total = 0j
    for y in range(1, p):
        ybar = pow(y, p - 2, p)
        total += np.exp(2j * np.pi * ((a * y + ybar) % p) / p)
    return total


class TestLegendrePoly:
    def test_values_at_p7_per_point_oracle(self):
        table = legendre_poly_trace((0, 1), prime_field(7))  # f = X
        expected = [euler_legendre(x, 7) for x in range(7)]
        assert expected == [0, 1, 1, -1, 1, -1, -1]
        assert np.array_equal(table.values.real, expected)
        assert np.abs(table.values.imag).max() == 0

    @pytest.mark.parametrize("p", [7, 101])
    def test_square_polynomial_rejected(self, p):
        with pytest.raises(ValueError, match="square-degenerate"):
            legendre_poly_trace((0, 0, 1), prime_field(p))   # X^2
        with pytest.raises(ValueError, match="square-degenerate"):
            legendre_poly_trace((0, 0, 3), prime_field(p))   # 3X^2

    def test_vanishing_reduction_rejected(self):
        with pytest.raises(ValueError, match="square-degenerate"):
            legendre_poly_trace((7, 7), prime_field(7))      # 0 mod 7

    @pytest.mark.parametrize("p", [7, 101, 499])
    def test_mean_is_zero_for_f_equals_x(self, p):
        # Direct-summation oracle: sum_x (x/p) over all of F_p is exactly 0
        # (residues and non-residues balance and the term at 0 vanishes).
        table = legendre_poly_trace((0, 1), prime_field(p))
        oracle = sum(euler_legendre(x, p) for x in range(p))
        assert oracle == 0
        assert abs(table.values.mean()) <= 1e-12

    def test_descriptor_roots_and_conductor(self):
        # f = X(X-1) has roots {0, 1}; conductor 1 + |{0,1}| + 1 = 4 <= 2+2
        table = legendre_poly_trace((0, -1, 1), prime_field(11))
        d = table.descriptor
        assert d.rank == 1
        assert d.singular_set == {0, 1}
        assert d.swan[INFINITY] == 0
        assert d.conductor == 4


class TestInversePhase:
    def test_value_at_one(self, field101):
        table = inverse_phase_trace(field101)
        assert table.values[1] == field101.char_table[1]  # inv(1) = 1

    @pytest.mark.parametrize("p", [101, 499, 997])
    def test_complete_sum_is_minus_one(self, p):
        table = inverse_phase_trace(prime_field(p))
        assert abs(table.values.sum() - (-1)) <= 1e-10

    def test_unit_modulus_off_zero(self, field101):
        v = inverse_phase_trace(field101).values
        assert v[0] == 0
        assert np.abs(np.abs(v[1:]) - 1).max() <= 1e-12

    def test_descriptor(self, field101):
        d = inverse_phase_trace(field101).descriptor
        assert d.rank == 1
        assert d.singular_set == {0}
        assert d.swan == {0: 1, INFINITY: 0}
        assert d.conductor == 3


class TestKloosterman:
    def test_s11_mod5_against_double_sum_oracle(self):
        oracle = kloosterman_direct_oracle(1, 5)
        closed_form = 2 + 2 * math.cos(4 * math.pi / 5)  # = 0.381966...
        assert abs(oracle - closed_form) <= 1e-12
        table = kloosterman_trace(prime_field(5))
        assert abs(table.values[1] - closed_form / math.sqrt(5)) <= 1e-12

    @pytest.mark.parametrize("p", [101, 499])
    def test_value_at_zero(self, p):
        table = kloosterman_trace(prime_field(p))
        assert table.values[0] == -1 / math.sqrt(p)

    @pytest.mark.parametrize("p", [101, 499])
    def test_total_sum_vanishes(self, p):
        # Exchanging summation: sum_x S(x,1;p) over x != 0 equals +1,
        # cancelling the -1 from sqrt(p) * value(0).
        table = kloosterman_trace(prime_field(p))
        assert abs(table.values.sum()) <= 1e-9

    def test_direct_vs_transform_p499(self, field499):
        direct = kloosterman_trace(field499, method="direct").values
        transform = kloosterman_trace(field499, method="transform").values
        assert np.abs(direct - transform).max() <= 1e-8

    def test_transform_matches_small_oracle(self):
        p = 13
        table = kloosterman_trace(prime_field(p))
        for a in range(1, p):
            assert abs(table.values[a] - kloosterman_direct_oracle(a, p) / math.sqrt(p)) <= 1e-10

    @pytest.mark.parametrize("p", [101, 499, 997])
    def test_real_valued(self, p):
        v = kloosterman_trace(prime_field(p)).values
        assert np.abs(v.imag).max() <= 1e-9

    @pytest.mark.parametrize("p", [101, 499, 997])
    def test_weil_bound(self, p):
        v = kloosterman_trace(prime_field(p)).values
        assert np.abs(v[1:]).max() <= 2 + 1e-9

    def test_unknown_method_rejected(self, field101):
        with pytest.raises(ValueError):
            kloosterman_trace(field101, method="magic")

    def test_descriptor(self, field101):
        d = kloosterman_trace(field101).descriptor
        assert d.rank == 2
        assert d.swan == {0: 0, INFINITY: 1}
        assert d.conductor == 4


class TestLegendreCurve:
    @pytest.mark.parametrize("p", [101, 499])
    def test_fiat_values_at_zero_and_one(self, p):
        v = legendre_curve_trace(prime_field(p)).values
        assert v[0] == v[1] == 1 / math.sqrt(p)

    def test_hasse_bound(self, field101):
        v = legendre_curve_trace(field101).values
        assert np.abs(v).max() <= 2

    @pytest.mark.parametrize("p", [7, 101])
    def test_methods_agree_exactly_as_integers(self, p):
        F = prime_field(p)
        a = legendre_curve_integers(F, "point_count")
        b = legendre_curve_integers(F, "char_sum")
        assert a.dtype.kind == b.dtype.kind == "i"
        assert np.array_equal(a, b)

    def test_point_count_against_naive_enumeration(self):
        # Independent oracle: literally enumerate (u, v) pairs at p = 11.
        p = 11
        ints = legendre_curve_integers(prime_field(p), "point_count")
        for x in range(p):
            n = sum(
                1
                for u in range(p)
                for v in range(p)
                if (v * v - u * (u - 1) * (u - x)) % p == 0
            )
            assert ints[x] == p - n

    def test_small_prime_rejected(self):
        with pytest.raises(ValueError):
            legendre_curve_trace(prime_field(3))

    def test_descriptor(self, field101):
        d = legendre_curve_trace(field101).descriptor
        assert d.rank == 2
        assert d.singular_set == {0, 1}
        assert d.conductor == 5


class TestMixedAsk:
    def test_reproduces_legendre_poly(self, field101):
        chi = MultiplicativeCharacter(field101, 50)  # (p-1)/2: the quadratic character
        mixed = mixed_ask_trace(((), (1,)), ((0, 1), (1,)), chi, field101)
        direct = legendre_poly_trace((0, 1), field101)
        assert np.abs(mixed.values - direct.values).max() <= 1e-12
        assert mixed.descriptor.conductor == 3

    def test_reproduces_inverse_phase(self, field101):
        chi = MultiplicativeCharacter(field101, 0)
        mixed = mixed_ask_trace(((1,), (0, 1)), ((1,), (1,)), chi, field101)
        direct = inverse_phase_trace(field101)
        assert np.abs(mixed.values - direct.values).max() <= 1e-12
        assert mixed.descriptor.swan == {0: 1, INFINITY: 0}
        assert mixed.descriptor.conductor == 3

    def test_cubic_phase_conductor(self, field101):
        chi = MultiplicativeCharacter(field101, 0)
        mixed = mixed_ask_trace(((0, 0, 0, 1), (1,)), ((1,), (1,)), chi, field101)
        # pure phase e(x^3/p): pole of order 3 at infinity only
        assert mixed.descriptor.swan == {INFINITY: 3}
        assert mixed.descriptor.conductor == 4

    def test_zero_f2_rejected(self, field101):
        chi = MultiplicativeCharacter(field101, 0)
        with pytest.raises(ValueError):
            mixed_ask_trace(((), (1,)), ((), (1,)), chi, field101)

    def test_cubic_phase_uniformity_switches_at_its_degree(self, field101):
        from gowersff import gowers_accelerated

        chi = MultiplicativeCharacter(field101, 0)
        mixed = mixed_ask_trace(((0, 0, 0, 1), (1,)), ((1,), (1,)), chi, field101)
        u3 = gowers_accelerated(mixed.values, 3, field101)
        u4 = gowers_accelerated(mixed.values, 4, field101)
        assert u3 < 1
        # derived closed form: each nonzero shift leaves a quadratic phase
        # with U_2 = 1/p, so U_3 = (1 + (p-1)/p)/p
        assert abs(u3 - (2 * 101 - 1) / 101**2) <= 1e-10
        assert abs(u4 - 1) <= 1e-9

    def test_character_multiplicativity(self):
        F = prime_field(31)
        chi = MultiplicativeCharacter(F, 7)
        vals = chi.values()
        assert vals[0] == 0
        for x in range(1, 31):
            for y in range(1, 31):
                assert abs(vals[x] * vals[y] - vals[x * y % 31]) <= 1e-12

    def test_quadratic_character_is_legendre(self, field101):
        chi = MultiplicativeCharacter(field101, 50)
        vals = chi.values()
        for x in range(101):
            assert abs(vals[x] - euler_legendre(x, 101)) <= 1e-12


class TestFourierTrace:
    def test_constant_transforms_to_spike(self, field101):
        const = TraceTable(
            field101,
            np.ones(101, dtype=np.complex128),
            FamilyDescriptor("mixed_ask", "const", 1, {INFINITY: 0}),
        )
        out = fourier_trace(const).values
        assert abs(out[0] - (-math.sqrt(101))) <= 1e-9
        assert np.abs(out[1:]).max() <= 1e-9

    @pytest.mark.parametrize("p", [101, 499])
    def test_inverse_phase_transforms_to_minus_kloosterman(self, p):
        F = prime_field(p)
        lhs = fourier_trace(inverse_phase_trace(F)).values
        rhs = -kloosterman_trace(F).values
        assert np.abs(lhs - rhs).max() <= 1e-9

    def test_double_transform_is_reflection(self, field101):
        rng = np.random.default_rng(5)
        v = rng.normal(size=101) + 1j * rng.normal(size=101)
        table = TraceTable(
            field101, v, FamilyDescriptor("fourier_of", "raw", 0, {})
        )
        twice = fourier_trace(fourier_trace(table)).values
        reflected = v[(-np.arange(101)) % 101]
        assert np.abs(twice - reflected).max() <= 1e-9

    def test_untracked_descriptor(self, field101):
        out = fourier_trace(inverse_phase_trace(field101))
        assert out.descriptor.rank == 0
        assert out.descriptor.conductor == 0


class TestExceptionalSet:
    def test_empty(self):
        assert exceptional_set(set(), 7) == set()

    def test_pair_mod_seven(self):
        assert exceptional_set({0, 1}, 7) == {1, 6}

    @settings(max_examples=40, deadline=None)
    @given(st.sets(st.integers(0, 100), max_size=12))
    def test_size_bound_and_membership(self, s):
        p = 101
        e = exceptional_set(s, p)
        assert len(e) <= len(s) * (len(s) - 1) if s else e == set()
        for h in range(1, p):
            overlaps = any((x - h) % p in s for x in s)
            assert (h in e) == overlaps


def test_conductor_bound_xi_values():
    assert conductor_bound_xi(1) == 5
    assert conductor_bound_xi(3) == 45
    assert conductor_bound_xi(4) == 80
    with pytest.raises(ValueError):
        conductor_bound_xi(0)


class TestTableInvariants:
    def test_pointwise_bound_all_families(self, field101):
        chi = MultiplicativeCharacter(field101, 50)
        tables = [
            legendre_poly_trace((1, 1, 0, 1), field101),
            inverse_phase_trace(field101),
            kloosterman_trace(field101),
            legendre_curve_trace(field101),
            mixed_ask_trace(((0, 0, 0, 1), (1,)), ((0, 1), (1,)), chi, field101),
        ]
        for t in tables:
            assert np.abs(t.values).max() <= t.descriptor.rank + 1e-12

    def test_conductor_formula_every_family(self, field101):
        tables = [
            legendre_poly_trace((1, 1, 0, 1), field101),
            inverse_phase_trace(field101),
            kloosterman_trace(field101),
            legendre_curve_trace(field101),
        ]
        for t in tables:
            d = t.descriptor
            expected = d.rank + sum(max(1, s) for s in d.swan.values())
            assert d.conductor == expected

    def test_bound_violation_rejected(self, field101):
        desc = FamilyDescriptor("mixed_ask", "bad", 1, {INFINITY: 0})
        with pytest.raises(ValueError, match="pointwise bound"):
            TraceTable(field101, np.full(101, 3.0, dtype=np.complex128), desc)

    def test_values_are_read_only(self, field101):
        t = inverse_phase_trace(field101)
        with pytest.raises(ValueError):
            t.values[0] = 1.0
