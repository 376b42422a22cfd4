"""Todd-Coxeter coset enumeration.

Two definition strategies are provided:

``hlt`` (relator driven)
    Walk the live cosets in order.  At each coset, every relator is scanned
    with forced closure (new cosets fill the gaps), then any still undefined
    entries of the row are defined.

``felsch`` (deduction driven)
    Always define the first undefined entry of the lowest live coset, then
    push every consequence through the relators before defining anything
    else.

Both finish with a verification sweep over every coset and relator, so a
returned table always satisfies the subgroup and relator conditions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

from .coset_table import CosetLimitError, CosetTable, word_columns
from .words import (Presentation, SubgroupSpec, Word, invert_letters,
                    reduce_letters)

log = logging.getLogger(__name__)

_KIND_ALIASES = {
    "hlt": "hlt",
    "relator_driven": "hlt",
    "felsch": "felsch",
    "deduction_driven": "felsch",
}


@dataclass(frozen=True)
class Strategy:
    kind: str = "felsch"
    max_cosets: int = 10**6
    max_total: int | None = None
    compaction_threshold: float = 0.2

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", _KIND_ALIASES[self.kind])
        except KeyError:
            raise ValueError(f"unknown strategy {self.kind!r}") from None
        if self.max_cosets < 1:
            raise ValueError("max_cosets must be at least 1")
        if not 0 < self.compaction_threshold <= 1:
            raise ValueError("compaction_threshold must be in (0, 1]")


class EnumerationLimitError(CosetLimitError):
    """Enumeration stopped at a coset limit before completing.

    The statistics gathered so far are attached, since a large index and an
    infinite one look the same from inside the enumeration.
    """

    def __init__(self, message: str, *, max_active: int, total_defined: int,
                 strategy: str):
        super().__init__(message)
        self.max_active = max_active
        self.total_defined = total_defined
        self.strategy = strategy

    def stats(self) -> dict:
        return {"index": None, "max_active": self.max_active,
                "total_defined": self.total_defined, "strategy": self.strategy}


@dataclass(frozen=True)
class EnumerationResult:
    table: CosetTable
    index: int
    max_active: int
    total_defined: int
    strategy: str

    def word_image(self, w: Word | Iterable[int]) -> int:
        return word_image(self, w)

    def stats(self) -> dict:
        return {"index": self.index, "max_active": self.max_active,
                "total_defined": self.total_defined, "strategy": self.strategy}


def word_image(result: EnumerationResult, w: Word | Iterable[int]) -> int:
    """Coset reached by tracing ``w`` from coset 1."""
    letters = w.letters if isinstance(w, Word) else tuple(w)
    return result.table.image(1, letters)


def _relator_columns(p: Presentation) -> list[tuple[int, ...]]:
    return [word_columns(r.letters) for r in p.relators if len(r)]


def _rotations_by_column(p: Presentation) -> list[list[tuple[int, ...]]]:
    """For each column c, the cyclic conjugates of relators (and their
    inverses) that begin with c."""
    by_col: list[list[tuple[int, ...]]] = [[] for _ in range(2 * p.rank)]
    seen = set()
    for r in p.relators:
        for w in (r.letters, invert_letters(r.letters)):
            cols = word_columns(w)
            for k in range(len(cols)):
                rot = cols[k:] + cols[:k]
                if rot not in seen:
                    seen.add(rot)
                    by_col[rot[0]].append(rot)
    return by_col


class _Enumeration:
    def __init__(self, p: Presentation, h: SubgroupSpec, s: Strategy):
        for w in h.generators:
            if w.names != p.generators:
                raise ValueError(f"subgroup word {w} is not over the presentation's generators")
        self.p = p
        self.s = s
        self.rels = _relator_columns(p)
        self.hgens = [word_columns(reduce_letters(w.letters))
                      for w in h.generators if reduce_letters(w.letters)]
        self.t = CosetTable(p.rank, capacity=s.max_cosets, max_total=s.max_total)

    # -- shared pieces ---------------------------------------------------

    def fail(self, err: Exception):
        t = self.t
        raise EnumerationLimitError(
            str(err), max_active=t.max_active, total_defined=t.total_defined,
            strategy=self.s.kind) from err

    def should_compact(self) -> bool:
        t = self.t
        return t.dead_count() > self.s.compaction_threshold * t.allocated

    def compact(self, pointer: int) -> int:
        """Compact the table and return ``pointer`` renumbered (rounded up
        to the next live coset)."""
        remap = self.t.compact_inplace()
        live_before = sum(1 for i in range(1, min(pointer, len(remap))) if remap[i])
        return live_before + 1

    def handle_limit(self, err: CosetLimitError, pointer: int) -> int:
        t = self.t
        at_capacity = t.capacity is not None and t.allocated >= t.capacity
        if at_capacity and t.dead_count():
            log.debug("capacity reached; compacting %d dead rows", t.dead_count())
            return self.compact(pointer)
        self.fail(err)

    def close_subgroup(self, felsch: bool):
        t = self.t
        for w in self.hgens:
            res = t.scan_columns(1, w, fill=True)
            if res.outcome == "coincidence":
                t.process_coincidence(*res.pair)
            if felsch:
                self.process_deductions()

    def verify(self) -> bool:
        """Scan every relator at every live coset and the subgroup words at
        coset 1.  Returns True when nothing had to change."""
        t = self.t
        clean = True
        for alpha in range(1, len(t.table)):
            for w in self.rels:
                if not t.is_live(alpha):
                    break
                res = t.scan_columns(alpha, w)
                if res.outcome == "coincidence":
                    t.process_coincidence(*res.pair)
                    clean = False
                elif res.outcome != "complete":
                    clean = False
        for w in self.hgens:
            res = t.scan_columns(1, w)
            if res.outcome == "coincidence":
                t.process_coincidence(*res.pair)
            if res.outcome != "complete":
                clean = False
        t.deductions.clear()
        return clean and t.is_complete()

    # -- HLT ---------------------------------------------------------------

    def run_hlt(self):
        t = self.t
        t.record_deductions = False
        self.close_subgroup(felsch=False)
        while True:
            alpha = 1
            while alpha < len(t.table):
                try:
                    self.hlt_row(alpha)
                except CosetLimitError as err:
                    alpha = self.handle_limit(err, alpha)
                    continue
                alpha += 1
                if self.should_compact():
                    alpha = self.compact(alpha)
            if self.verify():
                return

    def hlt_row(self, alpha: int):
        t = self.t
        for w in self.rels:
            if t.parent[alpha] != alpha:
                return
            res = t.scan_columns(alpha, w, fill=True)
            if res.outcome == "coincidence":
                t.process_coincidence(*res.pair)
        if t.parent[alpha] == alpha:
            row = t.table[alpha]
            for c in range(t.ncols):
                if not row[c]:
                    t.define(alpha, c)

    # -- Felsch ------------------------------------------------------------

    def process_deductions(self):
        t = self.t
        table, parent = t.table, t.parent
        rots = self.rots
        queue = t.deductions
        while queue:
            alpha, c = queue.popleft()
            if parent[alpha] != alpha:
                continue
            for w in rots[c]:
                res = t.scan_columns(alpha, w)
                if res.outcome == "coincidence":
                    t.process_coincidence(*res.pair)
                    if parent[alpha] != alpha:
                        break
            if parent[alpha] != alpha:
                continue
            beta = table[alpha][c]
            if not beta:
                continue
            for w in rots[c ^ 1]:
                res = t.scan_columns(beta, w)
                if res.outcome == "coincidence":
                    t.process_coincidence(*res.pair)
                    if parent[beta] != beta:
                        break

    def run_felsch(self):
        t = self.t
        t.record_deductions = True
        self.rots = _rotations_by_column(self.p)
        self.close_subgroup(felsch=True)
        pointer = 1
        while True:
            gap = t.first_undefined(pointer)
            if gap is None:
                gap = t.first_undefined(1)
            if gap is None:
                if self.verify():
                    return
                pointer = 1
                continue
            alpha, c = gap
            pointer = alpha
            try:
                t.define(alpha, c)
            except CosetLimitError as err:
                pointer = self.handle_limit(err, pointer)
                continue
            self.process_deductions()
            if self.should_compact():
                pointer = self.compact(pointer)

    def run(self) -> EnumerationResult:
        if self.s.kind == "hlt":
            self.run_hlt()
        else:
            self.run_felsch()
        t = self.t
        t.compact_inplace()
        table = t.standardize()
        return EnumerationResult(table=table, index=t.current_active,
                                 max_active=t.max_active,
                                 total_defined=t.total_defined,
                                 strategy=self.s.kind)


def enumerate_cosets(p: Presentation, h: SubgroupSpec | None = None,
                     strategy: Strategy | None = None) -> EnumerationResult:
    """Enumerate the cosets of ``h`` (default: trivial subgroup) in ``p``.

    Raises :class:`EnumerationLimitError` when the strategy's limits are hit.
    """
    result = _Enumeration(p, h or SubgroupSpec(), strategy or Strategy()).run()
    log.info("enumeration finished: %s", result.stats())
    return result


def order_of_group(p: Presentation, strategy: Strategy | None = None) -> int:
    return enumerate_cosets(p, SubgroupSpec(), strategy).index
