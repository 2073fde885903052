"""Reading, writing, generating, and augmenting uncertain transaction data.

Two plain-text formats, UTF-8, LF or CRLF accepted, LF written, lines
starting with ``#`` are comments, final newline optional:

* transactions: one transaction per line, single-space-separated tokens
  of the form ``item:quantity:probability``; item ids match
  ``[A-Za-z0-9_]+``, quantities are positive integers, probabilities are
  decimals in (0, 1].  Tids are implicit: the k-th transaction line gets
  tid k.
* utilities: one ``item unit-utility`` pair per line, space-separated,
  unit utilities non-negative.

Probabilities are written with however many digits round-trip exactly,
and the parser accepts full precision, so parse(write(db)) == db.
"""

from __future__ import annotations

import math
import random
import re
from bisect import bisect_left
from dataclasses import dataclass
from itertools import accumulate
from pathlib import Path

from .errors import MissingUtilityError, ParseError
from .model import UncertainDatabase, build_database

_ITEM_RE = re.compile(r"[A-Za-z0-9_]+\Z")
_TOKEN_RE = re.compile(r"\S+")


def _decode(text: str | bytes) -> str:
    if isinstance(text, bytes):
        return text.decode("utf-8")
    return text


def _lines(text: str):
    """Yield (line_number, line) for content lines, skipping blanks and comments."""
    for number, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield number, line


def parse_utilities(utility_text: str | bytes) -> dict[str, float]:
    """Parse the unit-utility table format."""
    utilities: dict[str, float] = {}
    for number, line in _lines(_decode(utility_text)):
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN_RE.finditer(line)]
        if len(tokens) != 2:
            raise ParseError(
                f"expected 'item unit-utility', got {len(tokens)} tokens", number
            )
        (item, item_col), (value_text, value_col) = tokens
        if not _ITEM_RE.match(item):
            raise ParseError(f"invalid item id {item!r}", number, item_col)
        if item in utilities:
            raise ParseError(f"duplicate utility entry for {item!r}", number, item_col)
        try:
            value = float(value_text)
        except ValueError:
            raise ParseError(
                f"unit utility {value_text!r} is not a number", number, value_col
            ) from None
        if not math.isfinite(value) or value < 0:
            raise ParseError(
                f"unit utility {value_text} out of range (must be >= 0)",
                number,
                value_col,
            )
        utilities[item] = value
    return utilities


def parse_database(
    transactions_text: str | bytes, utility_text: str | bytes
) -> UncertainDatabase:
    """Parse the two text formats into a validated database."""
    utilities = parse_utilities(utility_text)

    rows: list[list[tuple[str, int, float]]] = []
    for number, line in _lines(_decode(transactions_text)):
        row: list[tuple[str, int, float]] = []
        seen: set[str] = set()
        for match in _TOKEN_RE.finditer(line):
            token, column = match.group(), match.start() + 1
            parts = token.split(":")
            if len(parts) != 3:
                raise ParseError(
                    f"token {token!r} is not item:quantity:probability", number, column
                )
            item, quantity_text, probability_text = parts
            if not _ITEM_RE.match(item):
                raise ParseError(f"invalid item id {item!r}", number, column)
            if item in seen:
                raise ParseError(f"duplicate item {item!r} in transaction", number, column)
            seen.add(item)
            try:
                quantity = int(quantity_text)
            except ValueError:
                raise ParseError(
                    f"quantity {quantity_text!r} is not an integer", number, column
                ) from None
            if quantity < 1:
                raise ParseError(
                    f"quantity {quantity} out of range (must be >= 1)", number, column
                )
            try:
                prob = float(probability_text)
            except ValueError:
                raise ParseError(
                    f"probability {probability_text!r} is not a number", number, column
                ) from None
            if not 0.0 < prob <= 1.0:
                raise ParseError(
                    f"probability {prob} out of range (must be in (0, 1])",
                    number,
                    column,
                )
            if item not in utilities:
                raise MissingUtilityError(item, number)
            row.append((item, quantity, prob))
        if not any(q * utilities[i] > 0 for i, q, _ in row):
            raise ParseError("transaction has zero total utility", number)
        rows.append(row)

    return build_database(rows, utilities)


def load_database(data_path: str | Path, utility_path: str | Path) -> UncertainDatabase:
    """Read both files and parse them."""
    data = Path(data_path).read_bytes()
    utility = Path(utility_path).read_bytes()
    return parse_database(data, utility)


def _format_number(value: float) -> str:
    """Shortest decimal that parses back to exactly this float."""
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def write_database(db: UncertainDatabase) -> tuple[str, str]:
    """Render a database back into the two text formats.

    Occurrence order inside transactions is preserved, so the round trip
    through :func:`parse_database` reproduces the database exactly.
    """
    for item in db.unit_utilities:
        if not _ITEM_RE.match(item):
            raise ValueError(f"item id {item!r} cannot be serialized")

    transaction_lines = []
    for t in db.transactions:
        tokens = [
            f"{occ.item}:{occ.quantity}:{_format_number(occ.probability)}"
            for occ in t.occurrences
        ]
        transaction_lines.append(" ".join(tokens))
    utility_lines = [
        f"{item} {_format_number(value)}"
        for item, value in sorted(db.unit_utilities.items())
    ]

    def _join(lines: list[str]) -> str:
        return "\n".join(lines) + "\n" if lines else ""

    return _join(transaction_lines), _join(utility_lines)


def save_database(
    db: UncertainDatabase, data_path: str | Path, utility_path: str | Path
) -> None:
    data_text, utility_text = write_database(db)
    Path(data_path).write_text(data_text, encoding="utf-8", newline="\n")
    Path(utility_path).write_text(utility_text, encoding="utf-8", newline="\n")


@dataclass(frozen=True)
class GeneratorConfig:
    """Knobs for the synthetic database generator."""

    seed: int
    num_transactions: int
    num_items: int
    avg_transaction_length: float
    max_quantity: int = 5
    max_unit_utility: int = 20
    prob_min: float = 0.1
    prob_max: float = 1.0

    def __post_init__(self) -> None:
        if self.num_transactions < 0:
            raise ValueError("num_transactions must be >= 0")
        if self.num_items < 1:
            raise ValueError("num_items must be >= 1")
        if self.avg_transaction_length < 1:
            raise ValueError("avg_transaction_length must be >= 1")
        if self.max_quantity < 1:
            raise ValueError("max_quantity must be >= 1")
        if self.max_unit_utility < 1:
            raise ValueError("max_unit_utility must be >= 1")
        if not 0.0 < self.prob_min <= self.prob_max <= 1.0:
            raise ValueError("probabilities must satisfy 0 < prob_min <= prob_max <= 1")


def _draw_probability(rng: random.Random, config: GeneratorConfig) -> float:
    # Rounded for readable files; clamped so rounding can never hit 0.
    return max(round(rng.uniform(config.prob_min, config.prob_max), 4), 0.0001)


def _draw_length(rng: random.Random, config: GeneratorConfig) -> int:
    """Geometric-like length with mean avg_transaction_length, clamped."""
    mean = config.avg_transaction_length
    if mean <= 1.0:
        return 1
    p = 1.0 / mean
    u = rng.random()
    length = 1 + int(math.log(1.0 - u) / math.log(1.0 - p)) if u > 0.0 else 1
    return max(1, min(length, config.num_items))


def generate(config: GeneratorConfig) -> UncertainDatabase:
    """Deterministically generate a synthetic uncertain database.

    Item popularity follows a 1/rank skew; quantities and unit utilities
    are uniform integers; probabilities are uniform in
    [prob_min, prob_max], rounded to 4 decimals.
    """
    rng = random.Random(config.seed)
    width = len(str(config.num_items))
    pool = [f"i{k:0{width}d}" for k in range(1, config.num_items + 1)]
    utilities = {item: float(rng.randint(1, config.max_unit_utility)) for item in pool}

    weights = list(accumulate(1.0 / (k + 1) for k in range(config.num_items)))
    total_weight = weights[-1]

    rows: list[list[tuple[str, int, float]]] = []
    for _ in range(config.num_transactions):
        length = _draw_length(rng, config)
        chosen: set[str] = set()
        while len(chosen) < length:
            item = pool[bisect_left(weights, rng.random() * total_weight)]
            chosen.add(item)
        rows.append(
            [
                (item, rng.randint(1, config.max_quantity), _draw_probability(rng, config))
                for item in sorted(chosen)
            ]
        )
    return build_database(rows, utilities)


def augment(plain_text: str | bytes, config: GeneratorConfig) -> UncertainDatabase:
    """Attach quantities, probabilities, and utilities to plain transactions.

    Input lines are whitespace-separated item tokens.  Duplicate tokens on
    a line merge into one occurrence whose quantity draws are summed.  The
    transaction structure and item set are preserved; everything random is
    deterministic in the seed.
    """
    rng = random.Random(config.seed)

    token_rows: list[list[str]] = []
    universe: set[str] = set()
    for number, line in _lines(_decode(plain_text)):
        tokens = []
        for match in _TOKEN_RE.finditer(line):
            token, column = match.group(), match.start() + 1
            if not _ITEM_RE.match(token):
                raise ParseError(f"invalid item id {token!r}", number, column)
            tokens.append(token)
        token_rows.append(tokens)
        universe.update(tokens)

    utilities = {
        item: float(rng.randint(1, config.max_unit_utility)) for item in sorted(universe)
    }

    rows: list[list[tuple[str, int, float]]] = []
    for tokens in token_rows:
        quantities: dict[str, int] = {}
        ordered: list[str] = []
        for token in tokens:
            if token not in quantities:
                quantities[token] = 0
                ordered.append(token)
            quantities[token] += rng.randint(1, config.max_quantity)
        rows.append(
            [(item, quantities[item], _draw_probability(rng, config)) for item in ordered]
        )
    return build_database(rows, utilities)
