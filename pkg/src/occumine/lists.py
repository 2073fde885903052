"""Vertical per-pattern lists and the pairwise join that extends them.

Each pattern owns a list of per-transaction entries (tid, pro, uo, ruo):
the pattern's existence probability, utility share, and remaining utility
share in that transaction.  Lists for single items are built in one
database pass; every longer pattern's list is derived by joining two
sibling lists, so k-itemsets never touch the database again.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import JoinChainError
from .measures import TotalOrder
from .model import UncertainDatabase


class Entry(NamedTuple):
    tid: int
    pro: float
    uo: float
    ruo: float


@dataclass(frozen=True)
class PatternList:
    """A pattern's vertical list, entries sorted by ascending tid."""

    items: tuple[str, ...]
    entries: tuple[Entry, ...]

    @property
    def support(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class PatternSummary:
    """Aggregates over one pattern's list: support, total probability,
    mean utility occupancy, mean remaining utility occupancy."""

    support: int
    probability: float
    occupancy: float
    remaining: float


def summarize(plist: PatternList) -> PatternSummary:
    """Fold a list into its summary (empty lists yield all-zero fields)."""
    n = len(plist.entries)
    if n == 0:
        return PatternSummary(0, 0.0, 0.0, 0.0)
    pro = uo = ruo = 0.0
    for entry in plist.entries:
        pro += entry.pro
        uo += entry.uo
        ruo += entry.ruo
    return PatternSummary(n, pro, uo / n, ruo / n)


def build_single_item_lists(
    db: UncertainDatabase, order: TotalOrder
) -> dict[str, tuple[PatternList, PatternSummary]]:
    """Build the vertical list of every ranked item in one database pass.

    An item's per-transaction uo is quantity * unit utility / tu; its ruo
    sums the uo of ranked items after it in the same transaction.  Items
    outside ``order`` still contribute to tu (it was computed over the
    whole transaction) but never to any ruo.
    """
    rank = order.rank
    utilities = db.unit_utilities
    entries: dict[str, list[Entry]] = {item: [] for item in order.items}

    for t in db.transactions:
        present = sorted(
            (occ for occ in t.occurrences if occ.item in rank),
            key=lambda occ: rank[occ.item],
        )
        if not present:
            continue
        shares = [occ.quantity * utilities[occ.item] / t.tu for occ in present]
        tail = 0.0
        ruos = [0.0] * len(present)
        for i in range(len(present) - 1, -1, -1):
            ruos[i] = tail
            tail += shares[i]
        for occ, share, ruo in zip(present, shares, ruos):
            entries[occ.item].append(Entry(t.tid, occ.probability, share, ruo))

    result: dict[str, tuple[PatternList, PatternSummary]] = {}
    for item in order.items:
        plist = PatternList(items=(item,), entries=tuple(entries[item]))
        result[item] = (plist, summarize(plist))
    return result


def construct(
    prefix: PatternList | None,
    xa: PatternList,
    xb: PatternList,
    min_sup_count: int,
    join_abort: bool = False,
) -> tuple[PatternList, PatternSummary] | None:
    """Join two sibling lists into the list of their union pattern.

    ``xa`` and ``xb`` both extend ``prefix`` by one item, with ``xa``'s
    extending item earlier in the mining order.  Per shared tid the
    joined entry is::

        pro = pro_a * pro_b / pro_prefix     (no division when prefix is None)
        uo  = uo_a + uo_b - uo_prefix        (no subtraction when prefix is None)
        ruo = ruo_b

    Sorted tids make this a linear merge.  With ``join_abort`` enabled, a
    running bound on the joint support (xa's support minus xa-only tids
    seen so far) aborts the join and returns ``None`` as soon as it drops
    below ``min_sup_count``; otherwise the full (possibly empty) result is
    returned.
    """
    a_entries = xa.entries
    b_entries = xb.entries
    p_entries = prefix.entries if prefix is not None else None

    joined: list[Entry] = []
    pro_sum = uo_sum = ruo_sum = 0.0
    sup_bound = len(a_entries)
    jb = 0
    jp = 0
    nb = len(b_entries)

    for ea in a_entries:
        tid = ea.tid
        while jb < nb and b_entries[jb].tid < tid:
            jb += 1
        if jb < nb and b_entries[jb].tid == tid:
            eb = b_entries[jb]
            if p_entries is None:
                pro = ea.pro * eb.pro
                uo = ea.uo + eb.uo
            else:
                while jp < len(p_entries) and p_entries[jp].tid < tid:
                    jp += 1
                if jp >= len(p_entries) or p_entries[jp].tid != tid:
                    raise JoinChainError(
                        f"prefix {xa.items[:-1]} has no entry for tid {tid} "
                        f"shared by its extensions"
                    )
                ep = p_entries[jp]
                pro = ea.pro * eb.pro / ep.pro
                uo = ea.uo + eb.uo - ep.uo
            joined.append(Entry(tid, pro, uo, eb.ruo))
            pro_sum += pro
            uo_sum += uo
            ruo_sum += eb.ruo
        else:
            sup_bound -= 1
            if join_abort and sup_bound < min_sup_count:
                return None

    items = xa.items + (xb.items[-1],)
    plist = PatternList(items=items, entries=tuple(joined))
    n = len(joined)
    if n == 0:
        summary = PatternSummary(0, 0.0, 0.0, 0.0)
    else:
        summary = PatternSummary(n, pro_sum, uo_sum / n, ruo_sum / n)
    return plist, summary
