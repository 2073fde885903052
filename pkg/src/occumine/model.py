"""Core data model: uncertain quantitative databases, thresholds, results.

A database is a sequence of transactions over string item ids.  Each item
occurrence carries a purchase quantity (>= 1) and an existential
probability in (0, 1]; a separate table maps every item to a non-negative
unit utility.  All model types are frozen dataclasses: instances are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

#: Slack for every floating-point comparison against a threshold:
#: ``x >= t`` is implemented as ``x >= t - TOL`` because repeated list
#: joins accumulate rounding error.
TOL = 1e-9


def min_support_count(alpha: float, db_size: int) -> int:
    """Smallest integer support satisfying the fraction ``alpha`` of ``db_size``.

    ceil(alpha * db_size), never below 1.  The small negative slack keeps
    products like 0.3 * 10 from ceiling to 4.
    """
    return max(1, math.ceil(alpha * db_size - TOL))


@dataclass(frozen=True)
class ItemOccurrence:
    """One item inside a transaction."""

    item: str
    quantity: int
    probability: float


@dataclass(frozen=True)
class Transaction:
    """A transaction with a 1-based tid and its precomputed total utility ``tu``."""

    tid: int
    occurrences: tuple[ItemOccurrence, ...]
    tu: float

    @cached_property
    def item_set(self) -> frozenset[str]:
        return frozenset(occ.item for occ in self.occurrences)

    @cached_property
    def by_item(self) -> dict[str, ItemOccurrence]:
        return {occ.item: occ for occ in self.occurrences}

    def __len__(self) -> int:
        return len(self.occurrences)


@dataclass(frozen=True)
class UncertainDatabase:
    """An immutable uncertain quantitative transaction database.

    ``item_universe`` holds the distinct items appearing in transactions,
    sorted by id.  ``unit_utilities`` may contain extra entries for items
    that never occur; it must cover every item that does.
    """

    transactions: tuple[Transaction, ...]
    unit_utilities: dict[str, float]
    item_universe: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.transactions)

    def transaction(self, tid: int) -> Transaction:
        if not 1 <= tid <= len(self.transactions):
            raise ValueError(f"no transaction with tid {tid}")
        return self.transactions[tid - 1]


def build_database(
    rows: list[list[tuple[str, int, float]]],
    unit_utilities: dict[str, float],
) -> UncertainDatabase:
    """Assemble a database from raw (item, quantity, probability) rows.

    Assigns 1-based tids in row order and computes each transaction's
    total utility from ``unit_utilities``.  Raises ``KeyError`` when an
    item has no utility entry; structural invariants beyond that are the
    caller's job (see :func:`validate_database`).
    """
    transactions = []
    universe: set[str] = set()
    for index, row in enumerate(rows):
        occurrences = tuple(
            ItemOccurrence(item, quantity, probability)
            for item, quantity, probability in row
        )
        tu = sum(occ.quantity * unit_utilities[occ.item] for occ in occurrences)
        transactions.append(Transaction(index + 1, occurrences, tu))
        universe.update(occ.item for occ in occurrences)
    return UncertainDatabase(
        transactions=tuple(transactions),
        unit_utilities=dict(unit_utilities),
        item_universe=tuple(sorted(universe)),
    )


@dataclass(frozen=True)
class Thresholds:
    """The three user thresholds of a mining job.

    alpha: minimum support, as a fraction of the database size, in (0, 1].
    beta:  minimum average utility occupancy, compared directly, in (0, 1].
    gamma: minimum probability, as a fraction of the database size, in [0, 1].
    """

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")
        if not 0.0 < self.beta <= 1.0:
            raise ValueError(f"beta must be in (0, 1], got {self.beta}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must be in [0, 1], got {self.gamma}")

    def min_support(self, db_size: int) -> int:
        return min_support_count(self.alpha, db_size)

    def min_probability(self, db_size: int) -> float:
        return self.gamma * db_size


@dataclass(frozen=True)
class PatternRecord:
    """A qualifying pattern and its measures.

    ``items`` is stored in the mining order (ascending support count,
    ties by item id), so records from the same database render
    consistently; equality and hashing ignore that order.
    """

    items: tuple[str, ...]
    support: int
    probability: float
    utility_occupancy: float

    @property
    def pattern(self) -> frozenset[str]:
        return frozenset(self.items)

    def sort_key(self) -> tuple[str, ...]:
        return tuple(sorted(self.items))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PatternRecord):
            return NotImplemented
        return (
            self.pattern == other.pattern
            and self.support == other.support
            and self.probability == other.probability
            and self.utility_occupancy == other.utility_occupancy
        )

    def __hash__(self) -> int:
        return hash((self.pattern, self.support))


@dataclass
class MiningStats:
    """Instrumentation counters for one mining run."""

    visited_nodes: int = 0
    constructed_lists: int = 0
    candidate_joins: int = 0
    patterns_found: int = 0
    elapsed_seconds: float = 0.0

    def as_dict(self) -> dict[str, float]:
        return {
            "visited_nodes": self.visited_nodes,
            "constructed_lists": self.constructed_lists,
            "candidate_joins": self.candidate_joins,
            "patterns_found": self.patterns_found,
            "elapsed_ms": self.elapsed_seconds * 1000.0,
        }


@dataclass(frozen=True)
class Violation:
    """One invariant violation found by :func:`validate_database`."""

    message: str
    tid: int | None = None
    item: str | None = None

    def __str__(self) -> str:
        context = []
        if self.tid is not None:
            context.append(f"tid {self.tid}")
        if self.item is not None:
            context.append(f"item {self.item!r}")
        if context:
            return f"{self.message} ({', '.join(context)})"
        return self.message


def validate_database(db: UncertainDatabase) -> list[Violation]:
    """Check every model invariant; an empty list means the database is valid.

    Violations are data, not failures: callers that require validity
    (e.g. the miner) raise on a non-empty result.
    """
    violations: list[Violation] = []

    for item, value in db.unit_utilities.items():
        if value < 0:
            violations.append(Violation("unit utility is negative", item=item))

    seen_universe: set[str] = set()
    for item in db.item_universe:
        if item in seen_universe:
            violations.append(Violation("duplicate item in universe", item=item))
        seen_universe.add(item)

    for position, t in enumerate(db.transactions, start=1):
        if t.tid != position:
            violations.append(
                Violation(f"tid out of sequence (expected {position})", tid=t.tid)
            )
        seen: set[str] = set()
        recomputed = 0.0
        for occ in t.occurrences:
            if occ.item in seen:
                violations.append(
                    Violation("duplicate item in transaction", tid=t.tid, item=occ.item)
                )
            seen.add(occ.item)
            if occ.quantity < 1:
                violations.append(
                    Violation(f"quantity {occ.quantity} below 1", tid=t.tid, item=occ.item)
                )
            if not 0.0 < occ.probability <= 1.0:
                violations.append(
                    Violation(
                        f"probability {occ.probability} outside (0, 1]",
                        tid=t.tid,
                        item=occ.item,
                    )
                )
            if occ.item not in db.unit_utilities:
                violations.append(
                    Violation("missing utility entry", tid=t.tid, item=occ.item)
                )
            elif occ.item not in seen_universe:
                violations.append(
                    Violation("item not in universe", tid=t.tid, item=occ.item)
                )
            else:
                recomputed += occ.quantity * db.unit_utilities[occ.item]
        if all(occ.item in db.unit_utilities for occ in t.occurrences):
            if abs(recomputed - t.tu) > TOL:
                violations.append(
                    Violation(
                        f"stored tu {t.tu} does not match recomputed {recomputed}",
                        tid=t.tid,
                    )
                )
            if recomputed <= 0.0:
                violations.append(Violation("transaction utility is not positive", tid=t.tid))

    return violations
