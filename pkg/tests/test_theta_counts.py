from fractions import Fraction

import pandas as pd
import pytest

from models.errors import BudgetExhaustedError, IndefiniteLatticeError
from services.theta_counts import (
    a1_complement_root_counts,
    a1_pair_count_in_e7,
    analytic_bound_holds,
    analytic_threshold,
    e8_count_from_divisor_sum,
    independent_shell_count,
    inequality_check,
    mass_identity_check,
    rep_number_table,
    representation_number,
)


@pytest.mark.parametrize("label,n,count", [("E7", 1, 126), ("E7", 2, 756), ("E6", 1, 72), ("E6", 2, 270), ("D6", 1, 60), ("D6", 2, 252)])
def test_known_representation_numbers(label, n, count):
    assert representation_number(label, n) == count


@pytest.mark.parametrize("n", [1, 2, 3])
def test_e8_divisor_sum(n):
    assert representation_number("E8", n) == e8_count_from_divisor_sum(n)


@pytest.mark.parametrize("label", ["E7", "E6", "D6", "A2", "D4"])
def test_enumeration_matches_coordinate_model(label):
    table = rep_number_table(label, 3)
    assert table.counts == [independent_shell_count(label, n) for n in range(4)]


def test_representation_number_guards():
    assert representation_number("E7", 0) == 1
    with pytest.raises(IndefiniteLatticeError):
        representation_number("U", 1)
    with pytest.raises(BudgetExhaustedError):
        representation_number("E8", 50, node_budget=1000)


def test_inequality_fails_for_small_n():
    result = inequality_check(1)
    assert (result.e7, result.e6, result.d6) == (126, 72, 60)
    assert result.lhs == 252
    assert result.rhs == 5796
    assert not result.holds


def test_analytic_threshold():
    assert analytic_threshold() == 952
    assert analytic_bound_holds(952)
    assert not analytic_bound_holds(951)


def test_mass_identity():
    report = mass_identity_check()
    assert report.holds
    assert report.lhs == Fraction(1, 2229534720)
    assert not mass_identity_check((3715891200, 5573836801)).holds


def test_a1_systems_in_e7():
    assert a1_pair_count_in_e7() == 63
    assert a1_complement_root_counts() == [60] * 5


def test_table_to_csv(tmp_path):
    path = tmp_path / "e8.csv"
    rep_number_table("E8", 2).to_csv(path)
    frame = pd.read_csv(path)
    assert list(frame["count"]) == [1, 240, 2160]
    assert list(frame.columns) == ["n", "count"]


@pytest.mark.slow
@pytest.mark.parametrize("label", ["E8", "E7", "E6", "D6", "A2"])
def test_coordinate_model_up_to_ten(label):
    assert rep_number_table(label, 10).counts == [independent_shell_count(label, n) for n in range(11)]
