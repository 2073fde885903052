import pytest

from occumine import (
    PatternRecord,
    Thresholds,
    build_database,
    validate_database,
)
from occumine.model import Transaction, min_support_count

EXPECTED_TU = [65, 37, 38, 11, 49, 58, 23, 61, 59, 42]


def test_example_tu_column(example_db):
    assert [t.tu for t in example_db.transactions] == EXPECTED_TU


def test_example_db_is_valid(example_db):
    assert validate_database(example_db) == []


def test_zero_probability_is_flagged():
    db = build_database([[("a", 1, 0.0), ("b", 2, 0.5)]], {"a": 3.0, "b": 1.0})
    violations = validate_database(db)
    assert len(violations) == 1
    assert violations[0].tid == 1
    assert violations[0].item == "a"
    assert "probability" in violations[0].message


def test_tu_mismatch_is_flagged(example_db):
    t1 = example_db.transactions[0]
    tampered = example_db.transactions[:0] + (
        Transaction(1, t1.occurrences, 64.0),
    ) + example_db.transactions[1:]
    db = type(example_db)(tampered, example_db.unit_utilities, example_db.item_universe)
    violations = validate_database(db)
    assert [v.tid for v in violations] == [1]
    assert "64.0" in violations[0].message and "65" in violations[0].message


def test_duplicate_item_and_missing_utility_are_flagged():
    db = build_database([[("a", 1, 0.5)]], {"a": 2.0, "b": 1.0})
    occurrences = db.transactions[0].occurrences * 2
    bad = Transaction(1, occurrences, 4.0)
    tampered = type(db)((bad,), {"b": 1.0}, ("a",))
    messages = [v.message for v in validate_database(tampered)]
    assert any("duplicate item" in m for m in messages)
    assert any("missing utility" in m for m in messages)


def test_tid_gap_is_flagged(example_db):
    shuffled = example_db.transactions[1:] + example_db.transactions[:1]
    db = type(example_db)(shuffled, example_db.unit_utilities, example_db.item_universe)
    assert any("tid out of sequence" in v.message for v in validate_database(db))


def test_pattern_equality_ignores_order():
    a = PatternRecord(("b", "c"), 3, 1.45, 0.65)
    b = PatternRecord(("c", "b"), 3, 1.45, 0.65)
    assert a == b
    assert hash(a) == hash(b)
    assert a.pattern == frozenset({"b", "c"})


@pytest.mark.parametrize(
    "alpha,beta,gamma",
    [(0.0, 0.5, 0.5), (1.2, 0.5, 0.5), (0.5, 0.0, 0.5), (0.5, 1.5, 0.5), (0.5, 0.5, -0.1), (0.5, 0.5, 1.1)],
)
def test_threshold_ranges(alpha, beta, gamma):
    with pytest.raises(ValueError):
        Thresholds(alpha, beta, gamma)


@pytest.mark.parametrize(
    "alpha,size,expected",
    [
        (0.3, 10, 3),  # 0.3 * 10 is 3.0000000000000004 in binary; must not ceil to 4
        (0.35, 10, 4),
        (1.0, 10, 10),
        (0.01, 10, 1),
        (0.8, 10, 8),
        (0.01, 5, 1),
    ],
)
def test_min_support_count(alpha, size, expected):
    assert min_support_count(alpha, size) == expected


def test_thresholds_derived_values():
    th = Thresholds(0.3, 0.3, 0.05)
    assert th.min_support(10) == 3
    assert th.min_probability(10) == pytest.approx(0.5)
