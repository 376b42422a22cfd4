"""Permutations on {1..n}.

Composition is left to right: ``(a * b)`` applies ``a`` first, so point ``i``
goes to ``b(a(i))``.  This matches right actions, where ``i^(ab) = (i^a)^b``.
Points are 1-based in all text and in :meth:`Permutation.__call__`; the
``images`` tuple is 0-based internally.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from typing import Iterable, Sequence

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], *, check: bool = True):
        images = tuple(images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError("images do not form a permutation")
        self.images = images
        self._hash = None

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int | None = None) -> Permutation:
        """Build from disjoint cycles of 1-based points."""
        cycles = [list(c) for c in cycles]
        pts = [p for c in cycles for p in c]
        if len(set(pts)) != len(pts):
            raise ValueError("repeated point in cycles")
        if any(p < 1 for p in pts):
            raise ValueError("cycle points must be >= 1")
        n = max(pts, default=0)
        if degree is None:
            degree = n
        elif n > degree:
            raise ValueError(f"point {n} exceeds degree {degree}")
        img = list(range(degree))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                img[a - 1] = b - 1
        return cls(img, check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1] + 1

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(other.images) != len(self.images):
            raise ValueError("degree mismatch")
        return Permutation(map(other.images.__getitem__, self.images), check=False)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv, check=False)

    __invert__ = inverse

    def __pow__(self, n: int) -> Permutation:
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = Permutation.identity(self.degree)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self, g: Permutation) -> Permutation:
        """``g^-1 * self * g``."""
        return g.inverse() * self * g

    def commutator(self, other: Permutation) -> Permutation:
        """``[self, other] = self^-1 * other^-1 * self * other``."""
        return self.inverse() * other.inverse() * self * other

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            c = []
            j = i
            while not seen[j]:
                seen[j] = True
                c.append(j + 1)
                j = self.images[j]
            if len(c) > 1 or include_fixed:
                out.append(tuple(c))
        return out

    def cycle_type(self) -> Counter:
        """Multiset of cycle lengths, fixed points included."""
        return Counter(len(c) for c in self.cycles(include_fixed=True))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles()), 1)

    def support(self) -> list[int]:
        return [i + 1 for i, j in enumerate(self.images) if i != j]

    def __str__(self):
        cs = self.cycles()
        if not cs:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cs)

    def __repr__(self):
        return f"Permutation({self})"


def perm_multiply(a: Permutation, b: Permutation) -> Permutation:
    return a * b


def perm_inverse(a: Permutation) -> Permutation:
    return a.inverse()


def perm_parse(text: str, degree: int | None = None) -> Permutation:
    """Parse cycle notation such as ``(1,2,3)(4,5)``; ``()`` is the identity.

    Cycles must be disjoint.  Without ``degree`` the largest point named
    fixes the degree.
    """
    s = text.strip()
    pos = 0
    cycles = []
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_RE.match(s, pos)
        if not m:
            raise ValueError(f"malformed cycle notation at position {pos}: {text!r}")
        body = m.group(1).strip()
        if body:
            try:
                pts = [int(x) for x in re.split(r"\s*,\s*|\s+", body)]
            except ValueError:
                raise ValueError(f"malformed cycle {m.group()!r}") from None
            cycles.append(pts)
        pos = m.end()
    if not s:
        raise ValueError("empty permutation text")
    return Permutation.from_cycles(cycles, degree)
