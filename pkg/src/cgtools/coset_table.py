"""Partial coset tables.

Rows are cosets numbered from 1 (row 1 is the subgroup itself); row 0 is an
unused placeholder so coset numbers index the table directly.  Column ``2j``
holds the action of generator ``j`` and column ``2j + 1`` the action of its
inverse, so the inverse of column ``c`` is ``c ^ 1``.  An entry of 0 means
undefined.

Coincidences are handled with a union-find forest (``parent``) and a queue of
rows waiting to be merged; the lower-numbered coset always survives.  Dead
rows stay in place until :meth:`CosetTable.compact_inplace` renumbers them
away.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .perm import Permutation
from .words import reduce_letters


class CosetLimitError(RuntimeError):
    """The table ran out of room for new cosets."""


class IncompleteTableError(ValueError):
    """An operation that needs a complete table got a partial one."""


def letter_column(a: int) -> int:
    return 2 * (a - 1) if a > 0 else 2 * (-a - 1) + 1


def word_columns(letters: Iterable[int]) -> tuple[int, ...]:
    return tuple(letter_column(a) for a in letters)


@dataclass(frozen=True)
class ScanResult:
    outcome: str  # complete | deduction | coincidence | incomplete
    coset: int = 0
    column: int = 0
    value: int = 0

    @property
    def pair(self) -> tuple[int, int]:
        """The coincident cosets, for ``outcome == "coincidence"``."""
        return self.coset, self.value


COMPLETE = ScanResult("complete")
INCOMPLETE = ScanResult("incomplete")


class CosetTable:
    def __init__(self, ngens: int, capacity: int | None = None,
                 max_total: int | None = None):
        self.ngens = ngens
        self.ncols = 2 * ngens
        self.table: list[list[int] | None] = [None, [0] * self.ncols]
        self.parent = [0, 1]
        self.deductions: deque[tuple[int, int]] = deque()
        self.record_deductions = True
        self.capacity = capacity
        self.max_total = max_total
        self.total_defined = 1
        self.max_active = 1
        self.current_active = 1

    # -- basic queries ----------------------------------------------------

    @property
    def allocated(self) -> int:
        return len(self.table) - 1

    def is_live(self, i: int) -> bool:
        return 0 < i < len(self.parent) and self.parent[i] == i

    def live_cosets(self) -> list[int]:
        p = self.parent
        return [i for i in range(1, len(p)) if p[i] == i]

    def find(self, i: int) -> int:
        p = self.parent
        root = i
        while p[root] != root:
            root = p[root]
        while p[i] != root:
            p[i], i = root, p[i]
        return root

    def first_undefined(self, start: int = 1) -> tuple[int, int] | None:
        p, table = self.parent, self.table
        for i in range(start, len(table)):
            if p[i] == i:
                row = table[i]
                if 0 in row:
                    return i, row.index(0)
        return None

    def is_complete(self) -> bool:
        return self.first_undefined() is None

    def image(self, i: int, letters: Iterable[int]) -> int:
        """Trace ``letters`` from coset ``i``; 0 if the trace falls off."""
        table = self.table
        for a in letters:
            i = table[i][letter_column(a)]
            if not i:
                return 0
        return i

    # -- definitions ------------------------------------------------------

    def define(self, i: int, c: int) -> int:
        """Make a new coset the image of coset ``i`` under column ``c``."""
        if not self.is_live(i):
            raise ValueError(f"coset {i} is not live")
        if self.table[i][c]:
            raise ValueError(f"entry ({i}, {c}) is already defined")
        if self.capacity is not None and self.allocated >= self.capacity:
            raise CosetLimitError(f"coset table capacity {self.capacity} exhausted")
        if self.max_total is not None and self.total_defined >= self.max_total:
            raise CosetLimitError(f"total coset limit {self.max_total} reached")
        k = len(self.table)
        row = [0] * self.ncols
        row[c ^ 1] = i
        self.table.append(row)
        self.parent.append(k)
        self.table[i][c] = k
        self.total_defined += 1
        self.current_active += 1
        if self.current_active > self.max_active:
            self.max_active = self.current_active
        if self.record_deductions:
            self.deductions.append((i, c))
        return k

    def set_entry(self, i: int, c: int, j: int) -> None:
        """Record ``i . c = j`` together with the inverse entry."""
        self.table[i][c] = j
        self.table[j][c ^ 1] = i
        if self.record_deductions:
            self.deductions.append((i, c))

    # -- scanning ---------------------------------------------------------

    def scan(self, i: int, word, fill: bool = False) -> ScanResult:
        """Scan a word (letters, freely reduced first) at coset ``i``.

        Without ``fill``, a single gap is closed as a deduction and several
        gaps give ``incomplete``.  With ``fill``, new cosets are defined until
        the scan closes.  Coincidences are reported, not processed.
        """
        if not self.is_live(i):
            raise ValueError(f"coset {i} is not live")
        letters = tuple(word)
        if not letters:
            raise ValueError("cannot scan the empty word")
        cols = word_columns(reduce_letters(letters))
        if not cols:
            return COMPLETE
        return self.scan_columns(i, cols, fill)

    def scan_columns(self, alpha: int, cols: Sequence[int], fill: bool = False) -> ScanResult:
        table = self.table
        f = alpha
        b = alpha
        i = 0
        j = len(cols) - 1
        while True:
            while i <= j:
                nxt = table[f][cols[i]]
                if not nxt:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    return ScanResult("coincidence", f, 0, b)
                return COMPLETE
            while j >= i:
                nxt = table[b][cols[j] ^ 1]
                if not nxt:
                    break
                b = nxt
                j -= 1
            if j < i:
                if f != b:
                    return ScanResult("coincidence", f, 0, b)
                return COMPLETE
            if i == j:
                c = cols[i]
                self.set_entry(f, c, b)
                return ScanResult("deduction", f, c, b)
            if not fill:
                return INCOMPLETE
            f = self.define(f, cols[i])
            i += 1

    # -- coincidences -----------------------------------------------------

    def _merge(self, k: int, lam: int, queue: list[int]) -> None:
        phi = self.find(k)
        psi = self.find(lam)
        if phi == psi:
            return
        mu, nu = (phi, psi) if phi < psi else (psi, phi)
        self.parent[nu] = mu
        self.current_active -= 1
        queue.append(nu)

    def process_coincidence(self, a: int, b: int) -> int:
        """Identify cosets ``a`` and ``b`` and everything that forces.

        Returns the number of rows killed.
        """
        table = self.table
        ncols = self.ncols
        find = self.find
        queue: list[int] = []
        self._merge(a, b, queue)
        q = 0
        while q < len(queue):
            gamma = queue[q]
            q += 1
            row = table[gamma]
            for c in range(ncols):
                delta = row[c]
                if not delta:
                    continue
                ci = c ^ 1
                table[delta][ci] = 0
                mu = find(gamma)
                nu = find(delta)
                if table[mu][c]:
                    self._merge(nu, table[mu][c], queue)
                elif table[nu][ci]:
                    self._merge(mu, table[nu][ci], queue)
                else:
                    table[mu][c] = nu
                    table[nu][ci] = mu
                    if self.record_deductions:
                        self.deductions.append((mu, c))
        return len(queue)

    # -- renumbering ------------------------------------------------------

    def dead_count(self) -> int:
        return self.allocated - self.current_active

    def compact_inplace(self) -> list[int]:
        """Drop dead rows; returns the old-to-new number map (0 for dead)."""
        p, table = self.parent, self.table
        remap = [0] * len(table)
        n = 0
        for i in range(1, len(table)):
            if p[i] == i:
                n += 1
                remap[i] = n
        new_table: list[list[int] | None] = [None]
        for i in range(1, len(table)):
            if remap[i]:
                new_table.append([remap[x] for x in table[i]])
        self.table = new_table
        self.parent = list(range(n + 1))
        self.deductions = deque(
            (remap[i], c) for i, c in self.deductions if remap[i])
        return remap

    def copy(self) -> CosetTable:
        t = CosetTable(self.ngens, self.capacity, self.max_total)
        t.table = [None] + [list(r) for r in self.table[1:]]
        t.parent = list(self.parent)
        t.deductions = deque(self.deductions)
        t.record_deductions = self.record_deductions
        t.total_defined = self.total_defined
        t.max_active = self.max_active
        t.current_active = self.current_active
        return t

    def compact(self) -> CosetTable:
        t = self.copy()
        t.compact_inplace()
        return t

    def standard_order(self, start: int = 1) -> list[int]:
        """Live cosets in breadth-first order from ``start`` (column order)."""
        if not self.is_complete():
            raise IncompleteTableError("standardization needs a complete table")
        order = [start]
        seen = {start}
        table = self.table
        k = 0
        while k < len(order):
            for d in table[order[k]]:
                if d not in seen:
                    seen.add(d)
                    order.append(d)
            k += 1
        return order

    def standardize(self, start: int = 1) -> CosetTable:
        """Return the standard (breadth-first numbered) form of the table.

        ``start`` picks which coset becomes coset 1; the default keeps the
        subgroup's own coset.
        """
        order = self.standard_order(start)
        remap = {old: new for new, old in enumerate(order, 1)}
        t = CosetTable(self.ngens, self.capacity, self.max_total)
        t.table = [None] + [[remap[x] for x in self.table[old]] for old in order]
        t.parent = list(range(len(order) + 1))
        t.total_defined = self.total_defined
        t.max_active = self.max_active
        t.current_active = len(order)
        return t

    def is_standard(self) -> bool:
        return self.is_complete() and self.key() == self.standardize().key()

    def key(self) -> tuple[tuple[int, ...], ...]:
        """Hashable contents of the live rows (for comparing tables)."""
        return tuple(tuple(self.table[i]) for i in self.live_cosets())

    def __eq__(self, other):
        if not isinstance(other, CosetTable):
            return NotImplemented
        return self.ngens == other.ngens and self.key() == other.key()

    __hash__ = None

    def __len__(self):
        return self.current_active

    # -- conversions ------------------------------------------------------

    def to_permutations(self) -> list[Permutation]:
        """One permutation per generator: coset ``i`` goes to ``i . x``."""
        if not self.is_complete():
            raise IncompleteTableError("table is incomplete")
        if self.dead_count():
            raise ValueError("table must be compacted first")
        n = self.current_active
        return [Permutation([self.table[i][2 * g] - 1 for i in range(1, n + 1)])
                for g in range(self.ngens)]

    def dump(self) -> str:
        t = self.compact() if self.dead_count() else self
        lines = [f"cosets {t.current_active} generators {t.ngens}"]
        for row in t.table[1:]:
            lines.append(" ".join(map(str, row)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dump(cls, text: str) -> CosetTable:
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        head = lines[0].split()
        if len(head) != 4 or head[0] != "cosets" or head[2] != "generators":
            raise ValueError("bad table header")
        n, r = int(head[1]), int(head[3])
        if len(lines) != n + 1:
            raise ValueError(f"expected {n} table rows, got {len(lines) - 1}")
        rows = []
        for ln in lines[1:]:
            row = [int(x) for x in ln.split()]
            if len(row) != 2 * r or any(x < 0 or x > n for x in row):
                raise ValueError(f"bad table row {ln!r}")
            rows.append(row)
        return cls.from_rows(rows, r)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ngens: int) -> CosetTable:
        """Build a (possibly partial) table from 1-based rows; 0 = undefined."""
        t = cls(ngens)
        t.table = [None] + [list(r) for r in rows]
        n = len(rows)
        t.parent = list(range(n + 1))
        t.total_defined = t.max_active = t.current_active = n
        for i in range(1, n + 1):
            for c, j in enumerate(t.table[i]):
                if j and t.table[j][c ^ 1] != i:
                    raise ValueError(f"entries ({i},{c}) and ({j},{c ^ 1}) disagree")
        return t

    def check_consistency(self) -> None:
        """Raise AssertionError if any live entry lacks its inverse entry."""
        for i in self.live_cosets():
            for c, j in enumerate(self.table[i]):
                if j:
                    assert self.parent[j] == j, f"({i},{c}) points at dead {j}"
                    assert self.table[j][c ^ 1] == i, f"({i},{c})={j} not inverted"


def compact(t: CosetTable) -> CosetTable:
    return t.compact()


def standardize(t: CosetTable) -> CosetTable:
    return t.standardize()


def to_permutations(t: CosetTable) -> list[Permutation]:
    return t.to_permutations()
