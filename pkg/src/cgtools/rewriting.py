"""Schreier transversals, Schreier generators and Reidemeister rewriting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .coset_table import CosetTable, IncompleteTableError
from .words import (Letters, Presentation, Word, cyclically_reduce_letters,
                    invert_letters, reduce_letters)


def _column_letter(c: int) -> int:
    return c // 2 + 1 if c % 2 == 0 else -(c // 2 + 1)


def default_names(ngens: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, ngens + 1))


@dataclass(frozen=True)
class Transversal:
    """Prefix-closed coset representatives read off a complete table.

    ``reps[i - 1]`` is the representative of coset ``i``; ``parent[i - 1]``
    is the (coset, column) tree edge that first reached coset ``i``.
    """

    reps: tuple[Letters, ...]
    parent: tuple[tuple[int, int] | None, ...]
    names: tuple[str, ...]

    def rep(self, coset: int) -> Word:
        return Word(self.reps[coset - 1], self.names)

    def __len__(self):
        return len(self.reps)

    def is_tree_edge(self, coset: int, gen: int, target: int) -> bool:
        """True when the edge ``coset --gen--> target`` lies in the tree."""
        c = 2 * gen
        return (self.parent[target - 1] == (coset, c)
                or self.parent[coset - 1] == (target, c + 1))


def schreier_transversal(t: CosetTable, names: Sequence[str] | None = None) -> Transversal:
    """Breadth-first spanning tree of the coset graph from coset 1."""
    if not t.is_complete():
        raise IncompleteTableError("transversal needs a complete table")
    names = tuple(names) if names is not None else default_names(t.ngens)
    live = t.live_cosets()
    if live != list(range(1, len(live) + 1)):
        raise ValueError("table must be compacted first")
    n = len(live)
    reps: list[Letters | None] = [None] * (n + 1)
    parent: list[tuple[int, int] | None] = [None] * (n + 1)
    reps[1] = ()
    order = [1]
    k = 0
    while k < len(order):
        i = order[k]
        k += 1
        for c, j in enumerate(t.table[i]):
            if reps[j] is None:
                reps[j] = reps[i] + (_column_letter(c),)
                parent[j] = (i, c)
                order.append(j)
    return Transversal(tuple(reps[1:]), tuple(parent[1:]), names)


def schreier_generator_index(t: CosetTable, u: Transversal) -> dict[tuple[int, int], int]:
    """Number the non-tree edges ``(coset, generator)`` from 1, cosets first."""
    index = {}
    for i in range(1, len(u) + 1):
        for g in range(t.ngens):
            j = t.table[i][2 * g]
            if not u.is_tree_edge(i, g, j):
                index[(i, g)] = len(index) + 1
    return index


def schreier_generators(t: CosetTable, u: Transversal) -> list[Word]:
    """The words ``rep(i) * x * rep(i.x)^-1`` for every non-tree edge."""
    out = []
    for (i, g) in schreier_generator_index(t, u):
        j = t.table[i][2 * g]
        w = reduce_letters(u.reps[i - 1] + (g + 1,) + invert_letters(u.reps[j - 1]))
        out.append(Word(w, u.names))
    return out


def schreier_generator_names(t: CosetTable, u: Transversal) -> list[str]:
    return [f"{u.names[g]}_{i}" for (i, g) in schreier_generator_index(t, u)]


def rewrite(t: CosetTable, index: dict[tuple[int, int], int], coset: int,
            letters: Sequence[int]) -> Letters:
    """Reidemeister-rewrite a word traced from ``coset``.

    Each letter crossing a non-tree edge contributes the matching Schreier
    generator (inverted when the edge is crossed backwards).
    """
    table = t.table
    out = []
    cur = coset
    for a in letters:
        if a > 0:
            g = a - 1
            k = index.get((cur, g))
            if k:
                out.append(k)
            cur = table[cur][2 * g]
        else:
            g = -a - 1
            nxt = table[cur][2 * g + 1]
            k = index.get((nxt, g))
            if k:
                out.append(-k)
            cur = nxt
    return tuple(out)


def cyclic_key(w: Letters) -> Letters:
    """Canonical representative of ``w`` up to rotation and inversion."""
    if not w:
        return w
    best = None
    for v in (w, invert_letters(w)):
        for k in range(len(v)):
            r = v[k:] + v[:k]
            if best is None or r < best:
                best = r
    return best


def dedupe_relators(rels) -> list[Letters]:
    seen = set()
    out = []
    for r in rels:
        r = cyclically_reduce_letters(r)
        if not r:
            continue
        key = cyclic_key(r)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def reidemeister_presentation(p: Presentation, t: CosetTable) -> Presentation:
    """Presentation of the subgroup whose (complete) coset table is ``t``.

    Generators are the non-trivial Schreier generators, named
    ``<generator>_<coset>``; relators are the rewritten conjugates
    ``rep(i) * R * rep(i)^-1`` of every relator ``R`` at every coset ``i``.
    """
    if t.ngens != p.rank:
        raise ValueError("table and presentation have different generator counts")
    u = schreier_transversal(t, p.generators)
    index = schreier_generator_index(t, u)
    names = schreier_generator_names(t, u)
    rels = []
    for i in range(1, len(u) + 1):
        for r in p.relators:
            rels.append(rewrite(t, index, i, r.letters))
    return Presentation(tuple(names), tuple(Word(r, names) for r in dedupe_relators(rels)))
