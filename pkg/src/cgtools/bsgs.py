"""Permutation groups, Schreier vectors and stabilizer chains (BSGS).

A :class:`StabilizerChain` stores, per base point, the strong generators
that fix all earlier base points and a Schreier vector for the orbit of the
base point under them.  Transversal elements are rebuilt from the Schreier
vector on demand (and memoised per level).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Iterator, Sequence

from .perm import Permutation, perm_parse

ROOT = -1


class SchreierVector:
    """Orbit of ``root`` with back-edges to rebuild transversal elements.

    ``entries[p - 1]`` is None for unreached points, :data:`ROOT` for the
    root, and otherwise ``(k, d)`` meaning ``p = q ** gens[k] ** d`` for the
    point ``q`` one step closer to the root.
    """

    def __init__(self, root: int, gens: Sequence[Permutation], degree: int):
        self.root = root
        self.gens = list(gens)
        self.inverses = [g.inverse() for g in self.gens]
        self.entries: list = [None] * degree
        self.entries[root - 1] = ROOT
        self.orbit = [root]
        self._cache: dict[int, Permutation] = {}
        entries = self.entries
        labels = [(k, 1, g.images) for k, g in enumerate(self.gens)]
        labels += [(k, -1, g.images) for k, g in enumerate(self.inverses)]
        i = 0
        while i < len(self.orbit):
            q = self.orbit[i] - 1
            i += 1
            for k, d, img in labels:
                p = img[q]
                if entries[p] is None:
                    entries[p] = (k, d)
                    self.orbit.append(p + 1)

    def __contains__(self, point: int) -> bool:
        return self.entries[point - 1] is not None

    def __len__(self):
        return len(self.orbit)

    @property
    def degree(self) -> int:
        return len(self.entries)

    def previous(self, point: int) -> int:
        k, d = self.entries[point - 1]
        back = self.inverses[k] if d == 1 else self.gens[k]
        return back(point)

    def transversal_element(self, delta: int) -> Permutation:
        """An element mapping the root to ``delta``."""
        u = self._cache.get(delta)
        if u is not None:
            return u
        if self.entries[delta - 1] is None:
            raise ValueError(f"point {delta} is not in the orbit of {self.root}")
        steps = []
        p = delta
        while self.entries[p - 1] != ROOT:
            k, d = self.entries[p - 1]
            steps.append(self.gens[k] if d == 1 else self.inverses[k])
            p = self.previous(p)
        u = Permutation.identity(self.degree)
        for s in reversed(steps):
            u = u * s
        self._cache[delta] = u
        return u


def transversal_element(sv: SchreierVector, delta: int) -> Permutation:
    return sv.transversal_element(delta)


@dataclass
class ChainLevel:
    base_point: int
    generators: list[Permutation] = field(default_factory=list)
    sv: SchreierVector | None = None

    def rebuild(self, degree: int):
        self.sv = SchreierVector(self.base_point, self.generators, degree)

    @property
    def orbit(self) -> list[int]:
        return self.sv.orbit


class StabilizerChain:
    def __init__(self, degree: int, levels: list[ChainLevel] | None = None):
        self.degree = degree
        self.levels = levels or []

    @property
    def base(self) -> list[int]:
        return [lv.base_point for lv in self.levels]

    @property
    def strong_generators(self) -> list[Permutation]:
        seen = set()
        out = []
        for lv in self.levels:
            for g in lv.generators:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def orbit_lengths(self) -> list[int]:
        return [len(lv.sv) for lv in self.levels]

    def order(self) -> int:
        return prod(self.orbit_lengths())

    def copy(self) -> StabilizerChain:
        levels = []
        for lv in self.levels:
            new = ChainLevel(lv.base_point, list(lv.generators))
            new.sv = lv.sv
            levels.append(new)
        return StabilizerChain(self.degree, levels)

    def sift(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """Strip ``g`` through levels ``start..``; see :func:`sift`."""
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            delta = g(lv.base_point)
            if delta not in lv.sv:
                return g, i
            g = g * lv.sv.transversal_element(delta).inverse()
        return g, len(self.levels)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise ValueError("degree mismatch")
        return self.sift(g)[0].is_identity()

    def elements(self) -> Iterator[Permutation]:
        """Every group element exactly once."""
        def rec(i: int, acc: Permutation):
            if i < 0:
                yield acc
                return
            sv = self.levels[i].sv
            for delta in sv.orbit:
                yield from rec(i - 1, acc * sv.transversal_element(delta))
        yield from rec(len(self.levels) - 1, Permutation.identity(self.degree))

    def __eq__(self, other):
        if not isinstance(other, StabilizerChain):
            return NotImplemented
        return (self.degree == other.degree and self.base == other.base
                and [lv.generators for lv in self.levels]
                == [lv.generators for lv in other.levels])

    __hash__ = None

    def __repr__(self):
        return f"StabilizerChain(base={self.base}, orbits={self.orbit_lengths()})"


class PermGroup:
    """A permutation group given by generators; the chain is built lazily."""

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None,
                 chain: StabilizerChain | None = None):
        self.generators = list(generators)
        if degree is None:
            if not self.generators:
                raise ValueError("degree is required for a group with no generators")
            degree = self.generators[0].degree
        if any(g.degree != degree for g in self.generators):
            raise ValueError("generators have mismatched degrees")
        self.degree = degree
        self._chain = chain

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = schreier_sims(self)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def __contains__(self, g: Permutation) -> bool:
        return self.chain.contains(g)

    def elements(self) -> Iterator[Permutation]:
        return self.chain.elements()

    def orbit(self, point: int) -> list[int]:
        return orbit(self, point)[0]

    def orbits(self) -> list[list[int]]:
        seen = set()
        out = []
        for p in range(1, self.degree + 1):
            if p not in seen:
                o = sorted(self.orbit(p))
                seen.update(o)
                out.append(o)
        return out

    def is_transitive(self) -> bool:
        return len(orbit(self, 1)[0]) == self.degree if self.degree else True

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def to_text(self) -> str:
        lines = [f"degree {self.degree}"] + [str(g) for g in self.generators]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> PermGroup:
        """Parse ``degree n`` followed by one permutation per line.

        Lines may also be separated by ``;``.  Without a degree line the
        largest point named sets the degree.
        """
        items = [s.strip() for s in text.replace(";", "\n").splitlines()]
        items = [s for s in items if s and not s.startswith("#")]
        degree = None
        if items and items[0].lower().startswith("degree"):
            parts = items.pop(0).split()
            if len(parts) != 2:
                raise ValueError("expected 'degree n'")
            degree = int(parts[1])
        if degree is None:
            perms = [perm_parse(s) for s in items]
            degree = max((p.degree for p in perms), default=0)
        return cls([perm_parse(s, degree) for s in items], degree)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, generators={[str(g) for g in self.generators]})"


# -- orbits ---------------------------------------------------------------

def orbit(g: PermGroup, alpha: int) -> tuple[set[int], SchreierVector]:
    if not 1 <= alpha <= g.degree:
        raise ValueError(f"point {alpha} out of range 1..{g.degree}")
    sv = SchreierVector(alpha, g.generators, g.degree)
    return set(sv.orbit), sv


def sift(chain: StabilizerChain, g: Permutation) -> tuple[Permutation, int]:
    """Residue of ``g`` and the 1-based level where it left the chain
    (``len(base) + 1`` when it went all the way through)."""
    if g.degree != chain.degree:
        raise ValueError("degree mismatch")
    h, i = chain.sift(g)
    return h, i + 1


def group_order(chain: StabilizerChain) -> int:
    return chain.order()


# -- Schreier-Sims ----------------------------------------------------------

def _smallest_moved(g: Permutation) -> int:
    for i, j in enumerate(g.images):
        if i != j:
            return i + 1
    raise ValueError("identity moves no point")


def _add_generator(chain: StabilizerChain, g: Permutation) -> bool:
    """Put ``g`` into the chain unless it already sifts; True if added."""
    h, j = chain.sift(g)
    if h.is_identity():
        return False
    _absorb_from(chain, h, 0, j)
    return True


def _complete(chain: StabilizerChain) -> StabilizerChain:
    """Schreier-Sims: make every Schreier generator of every level sift."""
    checked: dict[int, set] = {}
    signature: dict[int, int] = {}
    i = len(chain.levels) - 1
    while i >= 0:
        lv = chain.levels[i]
        if signature.get(i) != len(lv.generators):
            signature[i] = len(lv.generators)
            checked[i] = set()
        done = checked[i]
        restart = None
        sv = lv.sv
        for beta in list(sv.orbit):
            u_beta = sv.transversal_element(beta)
            for k, s in enumerate(lv.generators):
                if (beta, k) in done:
                    continue
                done.add((beta, k))
                gamma = s(beta)
                g = u_beta * s * sv.transversal_element(gamma).inverse()
                if g.is_identity():
                    continue
                h, j = chain.sift(g, i + 1)
                if not h.is_identity():
                    _absorb_from(chain, h, i + 1, j)
                    restart = j
                    break
            if restart is not None:
                break
        if restart is not None:
            i = restart
        else:
            i -= 1
    return chain


def _absorb_from(chain: StabilizerChain, h: Permutation, lo: int, hi: int) -> None:
    """Add ``h`` as a strong generator to levels ``lo..hi``, appending a new
    level when ``hi`` runs past the base."""
    if hi == len(chain.levels):
        chain.levels.append(ChainLevel(_smallest_moved(h)))
    for lv in chain.levels[lo:hi + 1]:
        lv.generators.append(h)
        lv.rebuild(chain.degree)


def _initial_chain(degree: int, gens: Sequence[Permutation],
                   base: Sequence[int] = ()) -> StabilizerChain:
    levels = [ChainLevel(b) for b in base]
    gens = [g for g in gens if not g.is_identity()]
    for g in gens:
        if all(g(lv.base_point) == lv.base_point for lv in levels):
            levels.append(ChainLevel(_smallest_moved(g)))
    fixed: list[int] = []
    for lv in levels:
        lv.generators = [g for g in gens if all(g(b) == b for b in fixed)]
        lv.rebuild(degree)
        fixed.append(lv.base_point)
    return StabilizerChain(degree, levels)


def schreier_sims(g: PermGroup, base: Sequence[int] = ()) -> StabilizerChain:
    """Deterministic Schreier-Sims; ``base`` seeds the first base points."""
    return _complete(_initial_chain(g.degree, g.generators, base))


def random_element(gens: Sequence[Permutation], rng: random.Random,
                   length: int, degree: int) -> Permutation:
    x = Permutation.identity(degree)
    if not gens:
        return x
    for _ in range(length):
        s = rng.choice(gens)
        x = x * (s if rng.random() < 0.5 else s.inverse())
    return x


def random_schreier(g: PermGroup, trials: int, seed: int = 0,
                    word_length: int = 30) -> StabilizerChain:
    """Probable chain from ``trials`` random elements; not verified."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    chain = StabilizerChain(g.degree)
    for s in g.generators:
        _add_generator(chain, s)
    for _ in range(trials):
        _add_generator(chain, random_element(g.generators, rng, word_length, g.degree))
    return chain


def verify_chain(g: PermGroup, chain: StabilizerChain) -> StabilizerChain:
    """Return a copy of ``chain`` repaired until it is a verified BSGS of g."""
    if chain.degree != g.degree:
        raise ValueError("degree mismatch")
    chain = chain.copy()
    for s in g.generators:
        _add_generator(chain, s)
    return _complete(chain)


def extend_chain(chain: StabilizerChain, gens: Iterable[Permutation]) -> StabilizerChain:
    """Verified chain for the group generated by ``chain`` and ``gens``."""
    chain = chain.copy()
    changed = False
    for s in gens:
        changed |= _add_generator(chain, s)
    return _complete(chain) if changed else chain


def base_change(g: PermGroup, chain: StabilizerChain, prefix: Sequence[int]) -> StabilizerChain:
    """Rebuild a verified chain whose base starts with ``prefix``.

    Prefix points whose orbit is trivial at their level are dropped, as are
    any other redundant levels.
    """
    if len(set(prefix)) != len(prefix):
        raise ValueError("prefix points must be distinct")
    for b in prefix:
        if not 1 <= b <= g.degree:
            raise ValueError(f"point {b} out of range")
    new = _complete(_initial_chain(g.degree, chain.strong_generators, prefix))
    new.levels = [lv for lv in new.levels if len(lv.sv) > 1]
    return new


def pointwise_stabilizer(g: PermGroup, points: Sequence[int]) -> PermGroup:
    """Subgroup fixing every point of ``points``, with its chain."""
    chain = base_change(g, g.chain, points)
    k = 0
    for lv in chain.levels:
        if lv.base_point in points:
            k += 1
        else:
            break
    sub = StabilizerChain(g.degree, [
        ChainLevel(lv.base_point, list(lv.generators), lv.sv) for lv in chain.levels[k:]])
    gens = sub.levels[0].generators if sub.levels else []
    return PermGroup(gens, g.degree, chain=sub)
