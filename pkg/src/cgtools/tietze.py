"""Presentation simplification by Tietze transformations.

Rules, cheapest first:

1. drop empty relators and duplicates (up to rotation and inversion);
2. eliminate a generator that occurs exactly once in some relator, by
   solving that relator for it and substituting everywhere else;
3. shorten a relator by replacing a subword ``u`` with ``v^-1`` whenever
   ``u*v`` is a cyclic conjugate of another relator and ``|v| < |u|``.

Rules 2 and 3 each cost one unit of the budget.  Neither rule lengthens the
presentation, so total relator length never grows.
"""

from __future__ import annotations

from collections import Counter

from .rewriting import dedupe_relators
from .words import (Letters, Presentation, Word, cyclically_reduce_letters,
                    invert_letters)


def _total(rels) -> int:
    return sum(len(r) for r in rels)


def _substitute(r: Letters, gen: int, sub: Letters) -> Letters:
    inv = invert_letters(sub)
    out: list[int] = []
    for a in r:
        if a == gen:
            out.extend(sub)
        elif a == -gen:
            out.extend(inv)
        else:
            out.append(a)
    return cyclically_reduce_letters(out)


def _solve_for(r: Letters, gen: int) -> Letters:
    """Given ``r`` containing ``gen`` exactly once, return the word equal to
    generator ``gen`` modulo ``r``."""
    k = next(i for i, a in enumerate(r) if abs(a) == gen)
    rest = r[k + 1:] + r[:k]
    # r ~ g^e * rest = 1
    return invert_letters(rest) if r[k] > 0 else rest


def _eliminate(rels: list[Letters], live: list[int]):
    """Pick the cheapest single-occurrence elimination; None if none helps."""
    best = None
    total_occ = Counter(abs(a) for r in rels for a in r)
    for g in live:
        for ri, r in enumerate(rels):
            occ = sum(1 for a in r if abs(a) == g)
            if occ != 1:
                continue
            others = total_occ[g] - 1
            growth = -len(r) + others * (len(r) - 2)
            cand = (growth, g, len(r), ri)
            if best is None or cand < best:
                best = cand
    if best is None or best[0] > 0:
        return None
    _, g, _, ri = best
    sub = _solve_for(rels[ri], g)
    new = [_substitute(r, g, sub) for i, r in enumerate(rels) if i != ri]
    return g, new


def _shorten(rels: list[Letters]):
    """Apply the first strictly shortening substring replacement."""
    table: dict[Letters, tuple[Letters, int]] = {}
    lengths = set()
    for si, s in enumerate(rels):
        n = len(s)
        for v in (s, invert_letters(s)):
            for k in range(n):
                rot = v[k:] + v[:k]
                for ulen in range(n // 2 + 1, n + 1):
                    u = rot[:ulen]
                    repl = invert_letters(rot[ulen:])
                    prev = table.get(u)
                    if prev is None or len(repl) < len(prev[0]):
                        table[u] = (repl, si)
                    lengths.add(ulen)
    ordered = sorted(lengths, reverse=True)
    for ri, r in enumerate(rels):
        n = len(r)
        doubled = r + r
        for L in ordered:
            if L > n:
                continue
            for pos in range(n):
                u = doubled[pos:pos + L]
                hit = table.get(u)
                if hit is None or hit[1] == ri:
                    continue
                repl = hit[0]
                if len(repl) >= L:
                    continue
                rest = doubled[pos + L:pos + n]
                new_r = cyclically_reduce_letters(repl + rest)
                out = list(rels)
                out[ri] = new_r
                return out
    return None


def tietze_simplify(p: Presentation, budget: int = 1000) -> Presentation:
    """Simplify ``p``; the result presents an isomorphic group."""
    if budget < 0:
        raise ValueError("budget must be non-negative")
    rels = dedupe_relators(r.letters for r in p.relators)
    live = list(range(1, p.rank + 1))
    while budget > 0:
        step = _eliminate(rels, live)
        if step is not None:
            g, rels = step
            live.remove(g)
            rels = dedupe_relators(rels)
            budget -= 1
            continue
        shorter = _shorten(rels)
        if shorter is not None:
            rels = dedupe_relators(shorter)
            budget -= 1
            continue
        break
    renum = {g: i for i, g in enumerate(live, 1)}
    names = tuple(p.generators[g - 1] for g in live)
    new_rels = [tuple(renum[a] if a > 0 else -renum[-a] for a in r) for r in rels]
    return Presentation(names, tuple(Word(r, names) for r in new_rels))
