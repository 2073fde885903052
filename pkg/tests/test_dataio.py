import pytest

from occumine import (
    GeneratorConfig,
    MissingUtilityError,
    ParseError,
    Thresholds,
    augment,
    generate,
    mine,
    parse_database,
    validate_database,
    write_database,
)
from occumine.dataio import parse_utilities

from conftest import TEST_DATA_DIR

UTILITY_TEXT = "a 7\nc 11\nd 1\n"


def test_parse_single_line():
    db = parse_database("a:2:0.6 c:4:0.8 d:7:0.5\n", UTILITY_TEXT)
    assert len(db) == 1
    t1 = db.transactions[0]
    assert t1.tid == 1
    assert t1.tu == 65
    assert [(o.item, o.quantity, o.probability) for o in t1.occurrences] == [
        ("a", 2, 0.6),
        ("c", 4, 0.8),
        ("d", 7, 0.5),
    ]


def test_parse_empty_stream():
    db = parse_database("", "")
    assert len(db) == 0
    assert validate_database(db) == []


def test_parse_skips_comments_and_blank_lines():
    text = "# header\n\na:1:0.5\n   \nc:2:0.25\n"
    db = parse_database(text, UTILITY_TEXT)
    assert [t.tid for t in db.transactions] == [1, 2]


def test_parse_accepts_crlf():
    db = parse_database(b"a:1:0.5\r\nc:2:0.25\r\n", UTILITY_TEXT.encode())
    assert len(db) == 2


def test_parse_final_newline_optional():
    assert len(parse_database("a:1:0.5", UTILITY_TEXT)) == 1


def test_zero_quantity_rejected():
    with pytest.raises(ParseError) as info:
        parse_database("a:0:0.5\n", UTILITY_TEXT)
    assert info.value.line == 1
    assert "quantity" in str(info.value)


@pytest.mark.parametrize("token", ["a:1:0.0", "a:1:1.5", "a:1:-0.2"])
def test_probability_out_of_range(token):
    with pytest.raises(ParseError) as info:
        parse_database(f"{token}\n", UTILITY_TEXT)
    assert "probability" in str(info.value)


def test_malformed_token_reports_position():
    with pytest.raises(ParseError) as info:
        parse_database("a:1:0.5 c:4\n", UTILITY_TEXT)
    assert info.value.line == 1
    assert info.value.column == 9


def test_duplicate_item_rejected():
    with pytest.raises(ParseError) as info:
        parse_database("a:1:0.5 a:2:0.5\n", UTILITY_TEXT)
    assert "duplicate" in str(info.value)


def test_unknown_item_raises_missing_utility():
    with pytest.raises(MissingUtilityError) as info:
        parse_database("q:1:0.5\n", UTILITY_TEXT)
    assert info.value.item == "q"


def test_bad_utility_lines():
    with pytest.raises(ParseError):
        parse_utilities("a\n")
    with pytest.raises(ParseError):
        parse_utilities("a -3\n")
    with pytest.raises(ParseError):
        parse_utilities("a 2\na 3\n")


def test_example_roundtrip(example_db):
    data_text, utility_text = write_database(example_db)
    assert parse_database(data_text, utility_text) == example_db


def test_roundtrip_preserves_full_precision():
    db = parse_database("a:1:0.333333333\n", "a 2\n")
    data_text, _ = write_database(db)
    assert "0.333333333" in data_text
    assert parse_database(data_text, "a 2\n") == db


def test_write_empty_database():
    db = parse_database("", "")
    assert write_database(db) == ("", "")


def test_write_has_no_trailing_blank_line(example_db):
    data_text, utility_text = write_database(example_db)
    assert not data_text.endswith("\n\n")
    assert data_text.endswith("\n")
    assert utility_text.splitlines()[0] == "a 7"


@pytest.mark.parametrize("seed", range(12))
def test_random_roundtrip(seed):
    db = generate(
        GeneratorConfig(
            seed=seed,
            num_transactions=20,
            num_items=9,
            avg_transaction_length=3.0,
            max_quantity=6,
            max_unit_utility=14,
            prob_min=0.05,
            prob_max=1.0,
        )
    )
    data_text, utility_text = write_database(db)
    assert parse_database(data_text, utility_text) == db


def test_generator_is_deterministic():
    cfg = GeneratorConfig(seed=9, num_transactions=25, num_items=8, avg_transaction_length=3.0)
    assert write_database(generate(cfg)) == write_database(generate(cfg))


def test_generator_seeds_differ():
    texts = {
        write_database(
            generate(
                GeneratorConfig(
                    seed=seed, num_transactions=25, num_items=8, avg_transaction_length=3.0
                )
            )
        )[0]
        for seed in (1, 2, 3)
    }
    assert len(texts) == 3


def test_generated_databases_validate():
    for seed in range(5):
        db = generate(
            GeneratorConfig(
                seed=seed, num_transactions=30, num_items=10, avg_transaction_length=4.0
            )
        )
        assert validate_database(db) == []
        assert 1 <= len(db) == 30


def test_certain_generation_gives_probability_one():
    db = generate(
        GeneratorConfig(
            seed=4,
            num_transactions=20,
            num_items=6,
            avg_transaction_length=3.0,
            prob_min=1.0,
            prob_max=1.0,
        )
    )
    assert all(o.probability == 1.0 for t in db.transactions for o in t.occurrences)
    # a certain database mined at gamma 0 behaves like a precise one
    assert mine(db, Thresholds(0.2, 0.1, 0.0)).patterns == mine(
        db, Thresholds(0.2, 0.1, 0.2)
    ).patterns


def test_generator_golden_vector():
    cfg = GeneratorConfig(
        seed=42,
        num_transactions=30,
        num_items=10,
        avg_transaction_length=3.5,
        max_quantity=5,
        max_unit_utility=15,
        prob_min=0.2,
        prob_max=1.0,
    )
    data_text, utility_text = write_database(generate(cfg))
    frozen_data = (TEST_DATA_DIR / "gen30_seed42_transactions.txt").read_text()
    frozen_utility = (TEST_DATA_DIR / "gen30_seed42_utilities.txt").read_text()
    assert data_text == frozen_data
    assert utility_text == frozen_utility


@pytest.mark.parametrize(
    "kwargs",
    [
        {"num_items": 0},
        {"avg_transaction_length": 0.5},
        {"max_quantity": 0},
        {"max_unit_utility": 0},
        {"prob_min": 0.0},
        {"prob_min": 0.8, "prob_max": 0.5},
        {"prob_max": 1.2},
        {"num_transactions": -1},
    ],
)
def test_generator_config_validation(kwargs):
    base = dict(seed=1, num_transactions=5, num_items=4, avg_transaction_length=2.0)
    base.update(kwargs)
    with pytest.raises(ValueError):
        GeneratorConfig(**base)


AUGMENT_CONFIG = GeneratorConfig(
    seed=5,
    num_transactions=0,
    num_items=1,
    avg_transaction_length=1.0,
    max_quantity=4,
    max_unit_utility=9,
    prob_min=0.3,
    prob_max=0.9,
)


def test_augment_is_deterministic():
    text = "1 5 9\n2 5\n9 1\n"
    assert write_database(augment(text, AUGMENT_CONFIG)) == write_database(
        augment(text, AUGMENT_CONFIG)
    )


def test_augment_preserves_structure():
    db = augment("1 5 9\n2 5\n9 1\n", AUGMENT_CONFIG)
    assert len(db) == 3
    assert [sorted(t.item_set) for t in db.transactions] == [
        ["1", "5", "9"],
        ["2", "5"],
        ["1", "9"],
    ]
    assert validate_database(db) == []


def test_augment_merges_duplicates():
    db = augment("7 7 7\n", AUGMENT_CONFIG)
    t = db.transactions[0]
    assert len(t.occurrences) == 1
    # three draws from [1, 4] summed
    assert 3 <= t.occurrences[0].quantity <= 12


def test_augment_wide_line():
    line = " ".join(str(k) for k in range(23))
    db = augment(line + "\n", AUGMENT_CONFIG)
    assert len(db.transactions[0].occurrences) == 23


def test_augment_rejects_bad_token():
    with pytest.raises(ParseError):
        augment("ok bad:token\n", AUGMENT_CONFIG)
