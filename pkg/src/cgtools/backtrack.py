"""Backtrack searches over base images: centralizers, set stabilizers and
element conjugacy.

An element of G is determined by the images of the base points, and the
chain lets us walk those images level by level: at level j the candidates
are ``delta ** x`` for ``delta`` in the j-th basic orbit, where ``x`` is the
element built so far.  Each property supplies a cheap test on the partial
list of base images, so whole subtrees are cut without building elements.

Subgroup searches work bottom-up.  At level i the subgroup K found so far
already contains its stabilizer of the first i base points; a new image
``gamma`` of the i-th base point is only tried if it lies outside the
K-orbit of that point and outside the K-orbit of every image that already
failed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .bsgs import PermGroup, StabilizerChain, base_change, schreier_sims
from .perm import Permutation

LevelTest = Callable[[int, list[int]], bool]
LeafTest = Callable[[Permutation], bool]


@dataclass(frozen=True)
class SearchSpec:
    """What to search for.

    ``target`` is one of ``"centralizer"`` (args: z), ``"set_stabilizer"``
    (args: the point set) or ``"conjugacy"`` (args: x, y).
    """

    target: str
    args: tuple
    base_hint: tuple[int, ...] = ()


def _orbit(point: int, gens: Sequence[Permutation]) -> set[int]:
    seen = {point}
    stack = [point]
    while stack:
        p = stack.pop()
        for s in gens:
            q = s(p)
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


class _Tree:
    def __init__(self, chain: StabilizerChain, level_ok: LevelTest, leaf_ok: LeafTest):
        self.chain = chain
        self.levels = chain.levels
        self.base = chain.base
        self.level_ok = level_ok
        self.leaf_ok = leaf_ok

    def descend(self, j: int, x: Permutation, images: list[int]) -> Permutation | None:
        """First element extending ``x`` (fixed on levels < j) that passes."""
        if j == len(self.levels):
            return x if self.leaf_ok(x) else None
        sv = self.levels[j].sv
        for delta in sv.orbit:
            images.append(x(delta))
            if self.level_ok(j, images):
                found = self.descend(j + 1, sv.transversal_element(delta) * x, images)
                if found is not None:
                    images.pop()
                    return found
            images.pop()
        return None

    def subgroup(self) -> list[Permutation]:
        """Generators of the subgroup of elements passing every test."""
        found: list[tuple[int, Permutation]] = []
        for i in reversed(range(len(self.levels))):
            gens = [h for lv, h in found if lv >= i]
            beta = self.base[i]
            have = _orbit(beta, gens)
            failed: set[int] = set()
            sv = self.levels[i].sv
            for gamma in sv.orbit:
                if gamma in have or gamma in failed:
                    continue
                images = self.base[:i] + [gamma]
                h = None
                if self.level_ok(i, images):
                    u = sv.transversal_element(gamma)
                    h = self.descend(i + 1, u, images)
                if h is None:
                    failed |= _orbit(gamma, gens)
                else:
                    found.append((i, h))
                    gens.append(h)
                    have = _orbit(beta, gens)
        return [h for _, h in found]

    def element(self) -> Permutation | None:
        return self.descend(0, Permutation.identity(self.chain.degree), [])


def _mapping_test(base: list[int], x: Permutation, y: Permutation) -> LevelTest:
    """Partial-image test for elements h with ``p^x^h == p^h^y``.

    For base points with ``beta_a^x == beta_d`` the image of ``beta_d`` is
    forced to ``gamma_a^y``; checked when the later of the two is placed.
    """
    pos = {b: k for k, b in enumerate(base)}
    checks: list[list[tuple[int, int]]] = [[] for _ in base]
    for a, b in enumerate(base):
        d = pos.get(x(b))
        if d is not None:
            checks[max(a, d)].append((a, d))

    def ok(j: int, images: list[int]) -> bool:
        for a, d in checks[j]:
            if images[d] != y(images[a]):
                return False
        return True
    return ok


def _cycle_base(z: Permutation) -> list[int]:
    """Points of z in cycle order, longest cycles first, fixed points last."""
    cycles = sorted(z.cycles(include_fixed=True), key=lambda c: (-len(c), c[0]))
    return [p for c in cycles for p in c]


def _check_degree(g: PermGroup, *perms: Permutation):
    for p in perms:
        if p.degree != g.degree:
            raise ValueError("degree mismatch")


def _result(g: PermGroup, gens: list[Permutation]) -> PermGroup:
    sub = PermGroup(gens, g.degree)
    sub._chain = schreier_sims(sub)
    return sub


def centralizer(g: PermGroup, z: Permutation, base_hint: Sequence[int] = ()) -> PermGroup:
    """``{h in G : h z = z h}``."""
    _check_degree(g, z)
    chain = base_change(g, g.chain, list(base_hint) or _cycle_base(z))
    tree = _Tree(chain, _mapping_test(chain.base, z, z), lambda h: h * z == z * h)
    return _result(g, tree.subgroup())


def set_stabilizer(g: PermGroup, points: Sequence[int] | set[int],
                   base_hint: Sequence[int] = ()) -> PermGroup:
    """``{h in G : S^h == S}``."""
    s = set(points)
    for p in s:
        if not 1 <= p <= g.degree:
            raise ValueError(f"point {p} out of range 1..{g.degree}")
    prefix = list(base_hint) or sorted(s) + [p for p in range(1, g.degree + 1) if p not in s]
    chain = base_change(g, g.chain, prefix)
    inside = [b in s for b in chain.base]

    def level_ok(j: int, images: list[int]) -> bool:
        return (images[j] in s) == inside[j]

    def leaf_ok(h: Permutation) -> bool:
        return all(h(p) in s for p in s)

    return _result(g, _Tree(chain, level_ok, leaf_ok).subgroup())


def element_conjugacy(g: PermGroup, x: Permutation, y: Permutation,
                      base_hint: Sequence[int] = ()) -> Permutation | None:
    """Some h in G with ``h^-1 x h == y``, or None."""
    _check_degree(g, x, y)
    if x.cycle_type() != y.cycle_type():
        return None
    if x == y:
        return Permutation.identity(g.degree)
    chain = base_change(g, g.chain, list(base_hint) or _cycle_base(x))
    tree = _Tree(chain, _mapping_test(chain.base, x, y),
                 lambda h: h.inverse() * x * h == y)
    return tree.element()


def search(g: PermGroup, spec: SearchSpec):
    if spec.target == "centralizer":
        return centralizer(g, *spec.args, base_hint=spec.base_hint)
    if spec.target == "set_stabilizer":
        return set_stabilizer(g, *spec.args, base_hint=spec.base_hint)
    if spec.target == "conjugacy":
        return element_conjugacy(g, *spec.args, base_hint=spec.base_hint)
    raise ValueError(f"unknown search target {spec.target!r}")
