import itertools
import random
from fractions import Fraction

import pytest

from recmeasure.martingale import (
    SAVINGS_DROP_BOUND,
    BoundFunction,
    StrategyMartingale,
    TableMartingale,
    all_strings,
    capital_trace,
    combine_sum,
    dump_table,
    load_table,
    savings_transform,
    schnorr_hits,
    strings_up_to,
    success_at,
    validate,
)
from recmeasure.strategies import coincidence_martingale, pair_doubling_martingale

from conftest import random_strategy_martingale


def constant_one(depth: int) -> TableMartingale:
    return TableMartingale(depth, {s: Fraction(1) for s in strings_up_to(depth)})


class TestValidate:
    def test_constant_is_valid(self):
        assert validate(constant_one(3), 3) == []

    def test_averaging_violation_is_located(self):
        m = TableMartingale(
            1, {"": Fraction(1), "0": Fraction(1), "1": Fraction(2)}
        )
        report = validate(m, 1)
        assert len(report) == 1
        assert "averaging" in report[0]

    def test_negative_value_reported(self):
        m = TableMartingale(
            1, {"": Fraction(0), "0": Fraction(-1), "1": Fraction(1)}
        )
        assert any("negative" in v for v in validate(m, 1))

    def test_coincidence_strategy_valid_to_depth_8(self):
        assert validate(coincidence_martingale("01100101"), 8) == []

    def test_depth_beyond_table_errors(self):
        with pytest.raises(ValueError):
            validate(constant_one(2), 3)

    def test_incomplete_table_rejected(self):
        with pytest.raises(ValueError):
            TableMartingale(1, {"": Fraction(1), "0": Fraction(1)})


class TestEvaluate:
    def test_constant(self):
        assert constant_one(4).value("1010") == 1

    def test_coincidence_examples(self):
        m = coincidence_martingale("0000")
        assert m.value("00") == Fraction(9, 4)
        assert m.value("01") == Fraction(3, 4)

    def test_out_of_depth_query_errors(self):
        with pytest.raises(ValueError):
            constant_one(2).value("000")


class TestTrace:
    def test_constant(self):
        assert capital_trace(constant_one(3), "101") == [1, 1, 1, 1]

    def test_coincidence(self):
        m = coincidence_martingale("000")
        assert capital_trace(m, "000") == [
            1,
            Fraction(3, 2),
            Fraction(9, 4),
            Fraction(27, 8),
        ]

    def test_pair_doubling(self):
        m = pair_doubling_martingale(4)
        assert capital_trace(m, "0011") == [1, 1, 2, 2, 4]


class TestCombineSum:
    def test_half_half_of_constants(self):
        s = combine_sum(
            [(Fraction(1, 2), constant_one(3)), (Fraction(1, 2), constant_one(3))]
        )
        assert all(s.value(x) == 1 for x in strings_up_to(3))

    def test_opposite_coincidences(self):
        a = coincidence_martingale("0000")
        b = coincidence_martingale("1111")
        s = combine_sum([(Fraction(1, 2), a), (Fraction(1, 2), b)])
        # the first-bit bets cancel, deeper ones do not
        assert s.value("0") == s.value("1") == 1
        assert s.value("00") == Fraction(5, 4)
        for x in strings_up_to(4):
            assert s.value(x) == (a.value(x) + b.value(x)) / 2
        assert validate(s, 4) == []

    def test_single_member_scales(self):
        s = combine_sum([(Fraction(2), constant_one(2))])
        assert s.value("01") == 2

    def test_linearity_exact(self, rng):
        depth = 6
        members = [
            (Fraction(rng.randint(0, 5), 3), random_strategy_martingale(rng, depth))
            for _ in range(4)
        ]
        s = combine_sum(members)
        for sigma in strings_up_to(depth):
            assert s.value(sigma) == sum(w * m.value(sigma) for w, m in members)
        assert validate(s, depth) == []

    def test_depth_mismatch_errors(self):
        with pytest.raises(ValueError):
            combine_sum([(Fraction(1), constant_one(2)), (Fraction(1), constant_one(3))])

    def test_negative_weight_errors(self):
        with pytest.raises(ValueError):
            combine_sum([(Fraction(-1), constant_one(2))])


class TestSavings:
    def test_constant_unchanged(self):
        s = savings_transform(constant_one(4))
        assert all(s.value(x) == 1 for x in strings_up_to(4))

    def test_doubling_path_banks_units(self):
        # all-in doubling along 000...: transfers fire as soon as the working
        # part reaches the cap, so the banked part ratchets upward
        def rule(sigma):
            return Fraction(1), 0

        m = StrategyMartingale(6, Fraction(1), rule)
        s = savings_transform(m)
        saved_values = [s.saved_active("0" * i)[0] for i in range(7)]
        assert saved_values == sorted(saved_values)
        assert saved_values[-1] >= 3
        for i in range(7):
            saved, active = s.saved_active("0" * i)
            assert 0 <= active < SAVINGS_DROP_BOUND

    def test_valid_and_drop_bounded(self, rng):
        depth = 10
        for _ in range(5):
            m = random_strategy_martingale(rng, depth)
            s = savings_transform(m)
            assert validate(s, depth) == []
            for leaf in all_strings(depth):
                trace = capital_trace(s, leaf)
                saved = [s.saved_active(leaf[:i])[0] for i in range(depth + 1)]
                assert saved == sorted(saved)
                running_max = trace[0]
                for value in trace[1:]:
                    assert value >= running_max - SAVINGS_DROP_BOUND
                    running_max = max(running_max, value)

    def test_rejects_large_initial_capital(self):
        big = TableMartingale(0, {"": Fraction(3)})
        with pytest.raises(ValueError):
            savings_transform(big)


class TestSuccess:
    def test_coincidence_reaches_two_at_two(self):
        m = coincidence_martingale("0000")
        assert success_at(m, "0000", Fraction(2)) == 2

    def test_constant_never_reaches_two(self):
        assert success_at(constant_one(4), "0101", Fraction(2)) is None

    def test_pair_doubling_reaches_four_at_four(self):
        m = pair_doubling_martingale(4)
        assert success_at(m, "0011", Fraction(4)) == 4


class TestSchnorrHits:
    def test_constant_hits_only_zero(self):
        f = BoundFunction((0, 2, 4))
        assert schnorr_hits(constant_one(5), f, "01010") == [0]

    def test_coincidence_hits_small_levels(self):
        ref = "0" * 9
        m = coincidence_martingale(ref)
        f = BoundFunction((0, 2, 4, 6, 8))
        hits = schnorr_hits(m, f, ref)
        # capital at f(n)+1 is (3/2)^(2n+1); expect a hit whenever it tops n
        expected = [
            n for n in range(5) if Fraction(3, 2) ** (2 * n + 1) > n
        ]
        assert hits == expected

    def test_pair_doubling_on_doubled_path(self):
        m = pair_doubling_martingale(10)
        f = BoundFunction((1, 3, 5, 7, 9))
        assert schnorr_hits(m, f, "0011001100") == [0, 1, 2, 3, 4]

    def test_bound_function_must_increase(self):
        with pytest.raises(ValueError):
            BoundFunction((0, 0, 1))


class TestTableIO:
    def test_roundtrip(self, tmp_path, rng):
        m = random_strategy_martingale(rng, 4)
        path = tmp_path / "table.txt"
        path.write_text(dump_table(m))
        loaded = load_table(path)
        assert loaded.depth == 4
        for sigma in strings_up_to(4):
            assert loaded.value(sigma) == m.value(sigma)

    def test_lambda_line(self, tmp_path):
        path = tmp_path / "t.txt"
        path.write_text("- 1\n0 1/2\n1 3/2\n")
        m = load_table(path)
        assert m.value("") == 1
        assert m.value("1") == Fraction(3, 2)

    def test_malformed_rational_rejected(self, tmp_path):
        path = tmp_path / "t.txt"
        path.write_text("- x/y\n")
        with pytest.raises(ValueError):
            load_table(path)

    def test_missing_string_rejected(self, tmp_path):
        path = tmp_path / "t.txt"
        path.write_text("- 1\n0 1\n")
        with pytest.raises(ValueError):
            load_table(path)
