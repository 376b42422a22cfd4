"""Relation matrices, Smith normal form and abelian invariants.

Entries are Python ints, so there is no overflow however much the entries
grow during elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .words import Presentation


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise ValueError("matrix is not rectangular with the stated shape")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines += [" ".join(map(str, r)) for r in self.entries]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> IntMatrix:
        tokens = text.split()
        if len(tokens) < 2:
            raise ValueError("matrix text needs a 'rows cols' header")
        m, n = int(tokens[0]), int(tokens[1])
        vals = [int(x) for x in tokens[2:]]
        if len(vals) != m * n:
            raise ValueError(f"expected {m * n} entries, got {len(vals)}")
        return cls(m, n, tuple(tuple(vals[i * n:(i + 1) * n]) for i in range(m)))

    def __str__(self):
        return self.to_text()


def relation_matrix(p: Presentation) -> IntMatrix:
    """Exponent sums: entry (i, j) counts generator j in relator i."""
    rows = []
    for r in p.relators:
        row = [0] * p.rank
        for a in r.letters:
            row[abs(a) - 1] += 1 if a > 0 else -1
        rows.append(row)
    return IntMatrix.from_rows(rows, p.rank)


def _min_pivot(A, t):
    best = None
    for i in range(t, len(A)):
        for j in range(t, len(A[i])):
            v = A[i][j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
    return best


def smith_normal_form(m: IntMatrix | Sequence[Sequence[int]]) -> tuple[tuple[int, ...], int]:
    """Nonzero Smith invariants ``d1 | d2 | ...`` and the rank.

    Pivoting: bring a nonzero entry of least absolute value to the corner,
    clear its row and column by division with remainder, repeat until both
    are clear, then make sure the pivot divides the rest of the block.
    """
    if isinstance(m, IntMatrix):
        A = [list(r) for r in m.entries]
    else:
        A = [list(r) for r in m]
    rows = len(A)
    cols = len(A[0]) if A else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        found = _min_pivot(A, t)
        if found is None:
            break
        _, i, j = found
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        ri, rt = A[i], A[t]
                        for k in range(t, cols):
                            ri[k] -= q * rt[k]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for row in A[t:]:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot is left in row/column t
                best = (abs(p), t, t)
                for i in range(t + 1, rows):
                    if A[i][t] and abs(A[i][t]) < best[0]:
                        best = (abs(A[i][t]), i, t)
                for j in range(t + 1, cols):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), t, j)
                _, i, j = best
                A[t], A[i] = A[i], A[t]
                for row in A:
                    row[t], row[j] = row[j], row[t]
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if A[i][j] % p), None)
            if bad is None:
                break
            ri, rt = A[bad[0]], A[t]
            for k in range(t, cols):
                rt[k] += ri[k]
        diag.append(abs(A[t][t]))
        t += 1
    return tuple(diag), len(diag)


def abelian_invariants(p: Presentation) -> tuple[tuple[int, ...], int]:
    """Torsion invariants (each > 1, dividing the next) and free rank of
    the abelianisation of ``p``."""
    diag, rank = smith_normal_form(relation_matrix(p))
    return tuple(d for d in diag if d > 1), p.rank - rank


def format_abelian(torsion: Sequence[int], free_rank: int) -> str:
    parts = [f"Z/{d}" for d in torsion] + ["Z"] * free_rank
    return " x ".join(parts) if parts else "trivial"
