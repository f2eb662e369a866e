import math

import pytest

from seqaccel import (
    BadEstimates,
    RemainderEstimates,
    SequenceSample,
    UnstableValue,
    levin_general,
    levin_u,
    levin_v,
    staircase_entry,
    theta2,
    u2_explicit,
    v1_explicit,
)

from conftest import alternating_sample, assert_tables_bitwise, rel_diff


def u4_rational_form(s, n):
    """Alternative expression for the order-2 u value, used as a dual-formula oracle."""
    d = [s[i + 1] - s[i] for i in range(len(s) - 1)]
    dd = [d[i + 1] - d[i] for i in range(len(d) - 1)]
    num = s[n] * d[n + 1] * dd[n - 1] - s[n + 1] * d[n - 1] * dd[n]
    den = d[n + 1] * dd[n - 1] - d[n - 1] * dd[n]
    return num / den


class TestLevinGeneral:
    def test_order_zero_is_input(self, rng):
        sample = alternating_sample(rng, 10)
        omega = RemainderEstimates.explicit([1.0 + 0.1 * n for n in range(10)])
        table = levin_general(sample, 1.0, omega)
        for n in range(10):
            assert table.value(0, n) == sample.values[n]

    def test_homogeneity(self, rng):
        sample = alternating_sample(rng, 10)
        base_w = [w for w in RemainderEstimates.u_variant(sample).values if w is not None]
        estimates = RemainderEstimates(values=(None,) + tuple(base_w), policy="u")
        base = levin_general(sample, 1.0, estimates)
        scaled = levin_general(
            sample, 1.0,
            RemainderEstimates(values=(None,) + tuple(2.0 * w for w in base_w), policy="u"),
        )
        assert_tables_bitwise(base, scaled)
        odd = levin_general(
            sample, 1.0,
            RemainderEstimates(values=(None,) + tuple(3.7 * w for w in base_w), policy="u"),
        )
        for key, entry in base.entries.items():
            if entry.is_valid and odd.entry(*key).is_valid:
                assert rel_diff(entry.value, odd.value(*key)) <= 1e-13

    def test_exact_single_term_remainder(self):
        omega = [0.9 ** n for n in range(8)]
        sample = SequenceSample(values=tuple(5.0 + w for w in omega))
        table = levin_general(sample, 1.0, RemainderEstimates.explicit(omega))
        for n in range(6):
            assert abs(table.value(1, n) - 5.0) <= 1e-12

    def test_zero_estimate_rejected(self):
        with pytest.raises(BadEstimates):
            RemainderEstimates.explicit([1.0, 0.0, 2.0])

    def test_translativity(self, rng):
        sample = alternating_sample(rng, 12)
        shifted = SequenceSample(values=tuple(v + 10.0 for v in sample.values))
        a = levin_u(sample)
        b = levin_u(shifted)
        for key, entry in a.entries.items():
            other = b.entry(*key)
            if entry.is_valid and other.is_valid and key[0] <= 6:
                assert rel_diff(entry.value + 10.0, other.value) <= 1e-11


class TestLevinU:
    def test_matches_explicit_order2(self, rng):
        for _ in range(10):
            sample = alternating_sample(rng, 12)
            table = levin_u(sample, beta=1.0)
            for n in range(1, 9):
                assert rel_diff(table.value(2, n), u2_explicit(sample, n)) <= 1e-12

    def test_beta_independence_of_order2(self, rng):
        sample = alternating_sample(rng, 12)
        t1 = levin_u(sample, beta=1.0)
        t7 = levin_u(sample, beta=7.0)
        for n in range(1, 9):
            assert rel_diff(t1.value(2, n), t7.value(2, n)) <= 1e-12

    def test_theta2_shift_identity(self, rng):
        sample = alternating_sample(rng, 12)
        table = levin_u(sample)
        for n in range(8):
            assert rel_diff(theta2(sample, n, 1), table.value(2, n + 1)) <= 1e-12

    def test_staircase_window(self, rng):
        table = levin_u(alternating_sample(rng, 10))
        entry = staircase_entry(table, 8)
        assert (entry.k, entry.n) == (7, 1)


class TestU2Explicit:
    def test_dual_formula(self, rng):
        for _ in range(10):
            sample = alternating_sample(rng, 8)
            for n in range(1, 5):
                assert rel_diff(u2_explicit(sample, n),
                                u4_rational_form(sample.values, n)) <= 1e-12

    def test_equals_v1(self, rng):
        sample = alternating_sample(rng, 8)
        for n in range(1, 5):
            assert rel_diff(u2_explicit(sample, n), v1_explicit(sample, n)) <= 1e-12

    def test_geometric_exact(self):
        s = SequenceSample(values=tuple(1.0 + 0.3 ** n for n in range(5)))
        assert abs(u2_explicit(s, 1) - 1.0) <= 1e-12

    def test_guarded(self):
        s = SequenceSample(values=(0.0, 1.0, 2.0, 3.0))
        with pytest.raises(UnstableValue):
            u2_explicit(s, 1)


class TestLevinV:
    def test_v1_is_theta2_shifted(self, rng):
        sample = alternating_sample(rng, 12)
        for n in range(8):
            assert rel_diff(v1_explicit(sample, n + 1), theta2(sample, n, 1)) <= 1e-12

    def test_table_matches_explicit(self, rng):
        sample = alternating_sample(rng, 12)
        table = levin_v(sample)
        for n in range(1, 8):
            assert rel_diff(table.value(1, n), v1_explicit(sample, n)) <= 1e-12

    def test_sign_convention_immaterial(self, rng):
        sample = alternating_sample(rng, 10)
        est = RemainderEstimates.v_variant(sample)
        flipped = RemainderEstimates.explicit(
            [-w for w in est.values if w is not None])
        # align the flipped explicit list with the v offsets (starts at 1)
        padded = RemainderEstimates(values=(None,) + flipped.values + (None,),
                                    policy="v")
        a = levin_general(sample, 1.0, est)
        b = levin_general(sample, 1.0, padded)
        assert_tables_bitwise(a, b)

    def test_u2_equals_v1_on_tables(self, rng):
        sample = alternating_sample(rng, 12)
        u = levin_u(sample)
        v = levin_v(sample)
        for n in range(1, 8):
            assert rel_diff(u.value(2, n), v.value(1, n)) <= 1e-12
