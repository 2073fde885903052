"""Depth-first pattern search over the support-ordered set-enumeration tree.

The search keeps a vertical list per visited node and extends nodes by
joining sibling lists.  Four pruning strategies are switchable; they only
change how much of the tree is traversed, never which patterns come out,
because every emission re-checks all three thresholds.

* support pruning: skip a node (and its subtree) whose support count is
  below the minimum, which is sound because support is anti-monotone.
* occupancy-bound pruning: skip a node's subtree when an upper bound on
  any qualifying descendant's utility occupancy falls below the minimum.
* probability pruning: skip a node's subtree when its summed probability
  is below the minimum, sound by the same anti-monotonicity argument.
* join abort: stop a list join midway once the joint support can no
  longer reach the minimum.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field

from .errors import DatabaseValidationError
from .lists import PatternList, PatternSummary, build_single_item_lists, construct
from .measures import total_order
from .model import (
    TOL,
    MiningStats,
    PatternRecord,
    Thresholds,
    UncertainDatabase,
    validate_database,
)


@dataclass(frozen=True)
class StrategySet:
    """Which pruning strategies a run may use."""

    support_prune: bool = True
    bound_prune: bool = True
    probability_prune: bool = True
    join_abort: bool = True


#: All four strategies on: the full algorithm.
FULL = StrategySet(True, True, True, True)
#: Support and occupancy-bound pruning only.
S12 = StrategySet(True, True, False, False)
#: Support and probability pruning only.
S13 = StrategySet(True, False, True, False)
#: Support pruning only.
S1 = StrategySet(True, False, False, False)

PRESETS: dict[str, StrategySet] = {"full": FULL, "s12": S12, "s13": S13, "s1": S1}


@dataclass(frozen=True)
class MiningOutcome:
    """The discovered patterns (sorted by id-sorted item tuple) plus counters."""

    patterns: tuple[PatternRecord, ...]
    stats: MiningStats

    def pattern_sets(self) -> dict[frozenset[str], PatternRecord]:
        return {record.pattern: record for record in self.patterns}


def upper_bound(plist: PatternList, min_sup_count: int) -> float:
    """Bound the utility occupancy of any qualifying extension of a node.

    Any extension with at least ``min_sup_count`` supporting transactions
    averages per-transaction shares that are each at most this node's
    uo + ruo there, so the mean of the ``min_sup_count`` largest uo + ruo
    values dominates it.  Lists shorter than the minimum still divide by
    ``min_sup_count``: the missing transactions contribute nothing to any
    extension's numerator.
    """
    if not plist.entries:
        return 0.0
    k = min_sup_count
    top = heapq.nlargest(k, (e.uo + e.ruo for e in plist.entries))
    return sum(top) / k


@dataclass
class _Search:
    min_sup: int
    min_pro: float
    beta: float
    strategies: StrategySet
    stats: MiningStats
    found: list[PatternRecord] = field(default_factory=list)
    node_trace: list[tuple[tuple[str, ...], float]] | None = None

    def run(self, prefix: PatternList | None, extensions: list[tuple[PatternList, PatternSummary]]) -> None:
        s = self.strategies
        for index, (xa_list, xa_sum) in enumerate(extensions):
            self.stats.visited_nodes += 1
            if self.node_trace is not None:
                self.node_trace.append(
                    (xa_list.items, upper_bound(xa_list, self.min_sup))
                )

            sc_ok = xa_sum.support >= self.min_sup
            pro_ok = xa_sum.probability >= self.min_pro - TOL
            if (s.support_prune and not sc_ok) or (s.probability_prune and not pro_ok):
                continue

            # Emission re-checks everything: disabling a strategy must
            # never let a non-qualifying pattern through.
            if sc_ok and pro_ok and xa_sum.occupancy >= self.beta - TOL:
                self.found.append(
                    PatternRecord(
                        items=xa_list.items,
                        support=xa_sum.support,
                        probability=xa_sum.probability,
                        utility_occupancy=xa_sum.occupancy,
                    )
                )

            if s.bound_prune and upper_bound(xa_list, self.min_sup) < self.beta - TOL:
                continue

            children: list[tuple[PatternList, PatternSummary]] = []
            for xb_list, _ in extensions[index + 1 :]:
                self.stats.candidate_joins += 1
                joined = construct(
                    prefix, xa_list, xb_list, self.min_sup, join_abort=s.join_abort
                )
                if joined is None:
                    continue
                child_list, child_sum = joined
                if not child_list.entries:
                    continue
                self.stats.constructed_lists += 1
                if s.support_prune and child_sum.support < self.min_sup:
                    continue
                if s.probability_prune and child_sum.probability < self.min_pro - TOL:
                    continue
                children.append(joined)
            if children:
                self.run(xa_list, children)


def mine(
    db: UncertainDatabase,
    thresholds: Thresholds,
    strategies: StrategySet = FULL,
    *,
    validate: bool = True,
    node_trace: list[tuple[tuple[str, ...], float]] | None = None,
) -> MiningOutcome:
    """Mine every pattern meeting the support, occupancy, and probability
    thresholds of ``thresholds``.

    The result is independent of ``strategies``; only the traversal cost
    recorded in the stats changes.  ``node_trace``, when given, collects
    ``(items, upper_bound)`` for every visited node, for diagnostics.
    """
    if validate:
        violations = validate_database(db)
        if violations:
            raise DatabaseValidationError(violations)

    stats = MiningStats()
    started = time.perf_counter()
    n = len(db)
    outcome_patterns: tuple[PatternRecord, ...] = ()

    if n > 0:
        min_sup = thresholds.min_support(n)
        min_pro = thresholds.min_probability(n)

        # Pass 1: support count and summed probability per item.
        counts: dict[str, int] = {item: 0 for item in db.item_universe}
        pro_mass: dict[str, float] = {item: 0.0 for item in db.item_universe}
        for t in db.transactions:
            for occ in t.occurrences:
                counts[occ.item] += 1
                pro_mass[occ.item] += occ.probability

        # Items below the minimum support can head no qualifying pattern,
        # so they are always dropped.  Items below the probability minimum
        # are dropped only under probability pruning; otherwise they stay
        # in the order (and in ruo values) and the final filter handles
        # them.
        promising = [
            item
            for item in db.item_universe
            if counts[item] >= min_sup
            and (
                not strategies.probability_prune
                or pro_mass[item] >= min_pro - TOL
            )
        ]

        if promising:
            order = total_order(db, promising)
            # Pass 2: one vertical list per promising item, in order.
            singles = build_single_item_lists(db, order)
            stats.constructed_lists += len(singles)
            extensions = [singles[item] for item in order.items]

            search = _Search(
                min_sup=min_sup,
                min_pro=min_pro,
                beta=thresholds.beta,
                strategies=strategies,
                stats=stats,
                node_trace=node_trace,
            )
            search.run(None, extensions)
            outcome_patterns = tuple(sorted(search.found, key=PatternRecord.sort_key))

    stats.patterns_found = len(outcome_patterns)
    stats.elapsed_seconds = time.perf_counter() - started
    return MiningOutcome(patterns=outcome_patterns, stats=stats)
