"""Low-index subgroups by backtrack search over standard coset tables.

The search fills the first undefined entry (row-major) of a partial table,
trying each existing coset whose inverse entry is still free and then one
new coset.  After every choice, relator scans without fill push all forced
entries; a clash or coincidence kills the branch.  Because new cosets only
ever appear at the first gap, every table produced is standard, so each
subgroup is found exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .abelian import abelian_invariants
from .coset_table import CosetTable
from .enumerator import _rotations_by_column
from .rewriting import (reidemeister_presentation, schreier_generators,
                        schreier_transversal)
from .words import Presentation, SubgroupSpec


@dataclass(frozen=True)
class LowIndexSubgroup:
    table: CosetTable
    generators: SubgroupSpec

    @property
    def index(self) -> int:
        return len(self.table)


@dataclass(frozen=True)
class LowIndexResult:
    subgroups: tuple[LowIndexSubgroup, ...]
    max_index: int
    classes_only: bool

    def __len__(self):
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    def counts(self) -> dict[int, int]:
        """Number of subgroups found at each index 1..max_index."""
        out = {k: 0 for k in range(1, self.max_index + 1)}
        for s in self.subgroups:
            out[s.index] += 1
        return out


class _Search:
    def __init__(self, p: Presentation, n: int):
        self.n = n
        self.ncols = 2 * p.rank
        self.rots = _rotations_by_column(p)
        self.table = [[0] * self.ncols for _ in range(n + 1)]
        self.trail: list[tuple[int, int]] = []
        self.m = 1
        self.found: list[list[list[int]]] = []

    def assign(self, i: int, c: int, j: int) -> bool:
        """Set i.c = j and j.c^1 = i; False on a clash."""
        T = self.table
        if T[i][c]:
            return T[i][c] == j
        if T[j][c ^ 1]:
            return False
        T[i][c] = j
        self.trail.append((i, c))
        if (j, c ^ 1) != (i, c):
            T[j][c ^ 1] = i
            self.trail.append((j, c ^ 1))
        self.pending.append((i, c))
        return True

    def scan(self, alpha: int, w: Sequence[int]) -> bool:
        T = self.table
        f = alpha
        i = 0
        r = len(w) - 1
        while i <= r and T[f][w[i]]:
            f = T[f][w[i]]
            i += 1
        if i > r:
            return f == alpha
        b = alpha
        while r >= i and T[b][w[r] ^ 1]:
            b = T[b][w[r] ^ 1]
            r -= 1
        if r < i:
            return f == b
        if r == i:
            return self.assign(f, w[i], b)
        return True

    def propagate(self) -> bool:
        T = self.table
        rots = self.rots
        while self.pending:
            alpha, c = self.pending.pop()
            for w in rots[c]:
                if not self.scan(alpha, w):
                    return False
            beta = T[alpha][c]
            for w in rots[c ^ 1]:
                if not self.scan(beta, w):
                    return False
        return True

    def undo(self, mark: int):
        T = self.table
        while len(self.trail) > mark:
            i, c = self.trail.pop()
            T[i][c] = 0

    def first_gap(self):
        T = self.table
        for i in range(1, self.m + 1):
            row = T[i]
            for c in range(self.ncols):
                if not row[c]:
                    return i, c
        return None

    def complete_ok(self) -> bool:
        T = self.table
        for alpha in range(1, self.m + 1):
            for col_rots in self.rots:
                for w in col_rots:
                    f = alpha
                    for c in w:
                        f = T[f][c]
                    if f != alpha:
                        return False
        return True

    def run(self):
        self.pending: list[tuple[int, int]] = []
        self.search()

    def search(self):
        gap = self.first_gap()
        if gap is None:
            if self.complete_ok():
                self.found.append([row[:] for row in self.table[:self.m + 1]])
            return
        i, c = gap
        T = self.table
        for beta in range(1, self.m + 1):
            if T[beta][c ^ 1]:
                continue
            self.try_branch(i, c, beta)
        if self.m < self.n:
            self.m += 1
            self.try_branch(i, c, self.m)
            self.m -= 1

    def try_branch(self, i: int, c: int, beta: int):
        mark = len(self.trail)
        self.pending = []
        if self.assign(i, c, beta) and self.propagate():
            self.search()
        self.pending = []
        self.undo(mark)


def _class_key(t: CosetTable) -> tuple:
    return min(t.standardize(start=k).key() for k in range(1, len(t) + 1))


def low_index_subgroups(p: Presentation, n: int, classes_only: bool = False) -> LowIndexResult:
    """Every subgroup of index at most ``n`` (or one per conjugacy class)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    s = _Search(p, n)
    s.run()
    subgroups = []
    seen_classes = set()
    for rows in s.found:
        t = CosetTable.from_rows(rows[1:], p.rank)
        if classes_only:
            key = _class_key(t)
            if key in seen_classes:
                continue
            seen_classes.add(key)
        u = schreier_transversal(t, p.generators)
        gens = tuple(w for w in schreier_generators(t, u) if len(w))
        subgroups.append(LowIndexSubgroup(t, SubgroupSpec(gens)))
    return LowIndexResult(tuple(subgroups), n, classes_only)


def quotient_abelian_probe(result: LowIndexResult, p: Presentation
                           ) -> list[tuple[int, int, tuple[int, ...]]]:
    """``(index, free_rank, torsion)`` of H/H' for each subgroup found.

    A positive free rank anywhere proves the group infinite.
    """
    out = []
    for s in result.subgroups:
        q = reidemeister_presentation(p, s.table)
        torsion, free_rank = abelian_invariants(q)
        out.append((s.index, free_rank, torsion))
    return out
