import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semishor.numtheory import (
    BitRegister,
    NotCoprimeError,
    bit_reverse,
    continued_fraction_candidates,
    convergent_is_close,
    extract_factors,
    h_coefficient,
    mod_exp,
    multiplicative_order,
)


def naive_pow(x, a, N):
    out = 1
    for _ in range(a):
        out = out * x % N
    return out


class TestModExp:
    def test_zeroth_power(self):
        assert mod_exp(5, 0, 33) == 1

    def test_tenth_power(self):
        assert mod_exp(5, 10, 33) == 1

    def test_order_eight_case(self):
        assert mod_exp(2, 8, 51) == 1

    def test_rejects_small_modulus(self):
        with pytest.raises(ValueError):
            mod_exp(3, 4, 1)

    def test_rejects_negative_exponent(self):
        with pytest.raises(ValueError):
            mod_exp(3, -1, 7)

    @given(
        st.integers(min_value=0, max_value=10**6),
        st.integers(min_value=0, max_value=200),
        st.integers(min_value=2, max_value=10**4),
    )
    @settings(max_examples=200)
    def test_matches_naive_loop(self, x, a, N):
        assert mod_exp(x, a, N) == naive_pow(x, a, N)


class TestMultiplicativeOrder:
    def test_paper_instance(self):
        assert multiplicative_order(5, 33) == 10

    def test_identity(self):
        assert multiplicative_order(1, 33) == 1

    def test_n51_oracle_value(self):
        # direct computation; deliberately not the value quoted elsewhere
        assert multiplicative_order(2, 51) == 8

    def test_not_coprime_carries_factor(self):
        with pytest.raises(NotCoprimeError) as exc:
            multiplicative_order(6, 33)
        assert exc.value.common_factor == 3

    def test_minimality_exhaustive_small(self):
        for N in range(3, 101):
            for x in range(2, N):
                if math.gcd(x, N) != 1:
                    continue
                L = multiplicative_order(x, N)
                assert mod_exp(x, L, N) == 1
                assert all(mod_exp(x, m, N) != 1 for m in range(1, L))


class TestContinuedFractions:
    def test_contains_target_convergent(self):
        cands = continued_fraction_candidates(77, 256, 33)
        assert (3, 10) in cands
        assert abs(77 / 256 - 3 / 10) < 1 / 512

    def test_zero_numerator(self):
        assert continued_fraction_candidates(0, 256, 33) == [(0, 1)]

    def test_exact_half(self):
        assert (1, 2) in continued_fraction_candidates(128, 256, 33)

    def test_denominators_increase(self):
        for c_hat in (1, 77, 100, 201, 255):
            dens = [L for _, L in continued_fraction_candidates(c_hat, 256, 33)]
            assert dens == sorted(dens)
            assert all(L < 33 for L in dens)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            continued_fraction_candidates(256, 256, 33)

    @given(st.integers(min_value=1, max_value=4095))
    @settings(max_examples=200)
    def test_convergent_quality(self, c_hat):
        q, N = 4096, 60
        for d, L in continued_fraction_candidates(c_hat, q, N):
            if L > 0:
                assert abs(c_hat / q - d / L) < 1 / L**2

    def test_closeness_filter(self):
        assert convergent_is_close(77, 256, 3, 10)
        assert not convergent_is_close(80, 256, 3, 10)


class TestExtractFactors:
    def test_paper_split(self):
        split = extract_factors(5, 10, 33)
        assert split.factors == (11, 3)

    def test_period_multiple_also_splits(self):
        split = extract_factors(5, 30, 33)
        assert split.factors == (11, 3)

    def test_odd_period_reason(self):
        # 4 has order 3 mod 21
        split = extract_factors(4, 3, 21)
        assert split.factors is None and split.reason == "odd-period"

    def test_trivial_root(self):
        split = extract_factors(32, 2, 33)
        assert split.factors is None and split.reason == "trivial-root"

    def test_rejects_non_period(self):
        with pytest.raises(ValueError):
            extract_factors(5, 9, 33)


class TestHCoefficient:
    def test_all_bits_equal(self):
        assert h_coefficient(11, 11, 4) == 16

    def test_complement(self):
        assert h_coefficient(0b1010, 0b0101, 4) == 1

    def test_distance_two(self):
        assert h_coefficient(5, 3, 3) == 2

    def test_literal_product_form(self):
        for l in range(1, 5):
            for b in range(1 << l):
                for c in range(1 << l):
                    prod = 1
                    for i in range(l):
                        prod *= 1 + (1 if ((b >> i) & 1) == ((c >> i) & 1) else 0)
                    assert h_coefficient(b, c, l) == prod

    def test_binomial_sum_identity(self):
        for l in range(1, 9):
            c = (1 << l) // 3
            total = sum(h_coefficient(b, c, l) for b in range(1 << l))
            assert total / 2**l == pytest.approx((3 / 2) ** l)

    def test_range_check(self):
        with pytest.raises(ValueError):
            h_coefficient(16, 0, 4)


class TestBitReverse:
    def test_single_bit(self):
        assert bit_reverse(1, 3) == 4

    def test_zero(self):
        assert bit_reverse(0, 8) == 0

    def test_hand_case(self):
        assert bit_reverse(6, 3) == 3

    def test_involution(self):
        for l in range(1, 13):
            for a in range(1 << min(l, 10)):
                assert bit_reverse(bit_reverse(a, l), l) == a


class TestBitRegister:
    def test_bits_roundtrip(self):
        reg = BitRegister(value=11, width=4)
        assert reg.bits() == [1, 1, 0, 1]
        assert sum(bit << i for i, bit in enumerate(reg.bits())) == int(reg)

    def test_width_bounds(self):
        with pytest.raises(ValueError):
            BitRegister(value=16, width=4)
