"""Block systems of transitive permutation groups (Atkinson's method)."""

from __future__ import annotations

from .bsgs import PermGroup


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def minimal_block_partition(g: PermGroup, alpha: int, beta: int) -> list[list[int]]:
    """Finest G-invariant partition with ``alpha`` and ``beta`` in one block.

    Blocks are sorted lists, ordered by least element.
    """
    n = g.degree
    for pt in (alpha, beta):
        if not 1 <= pt <= n:
            raise ValueError(f"point {pt} out of range 1..{n}")
    if alpha == beta:
        raise ValueError("alpha and beta must differ")
    if not g.is_transitive():
        raise ValueError("group is not transitive")
    parent = list(range(n + 1))
    images = [s.images for s in g.generators]
    # each merged pair's images under every generator must end up merged too
    queue = [(alpha - 1, beta - 1)]
    parent[beta] = alpha
    while queue:
        a, b = queue.pop()
        for img in images:
            x = _find(parent, img[a] + 1)
            y = _find(parent, img[b] + 1)
            if x != y:
                if y < x:
                    x, y = y, x
                parent[y] = x
                queue.append((x - 1, y - 1))
    blocks: dict[int, list[int]] = {}
    for p in range(1, n + 1):
        blocks.setdefault(_find(parent, p), []).append(p)
    return sorted(blocks.values())


def is_primitive(g: PermGroup) -> bool:
    """True when the only block systems are the trivial ones."""
    if not g.is_transitive():
        raise ValueError("primitivity is only defined for transitive groups")
    for beta in range(2, g.degree + 1):
        if len(minimal_block_partition(g, 1, beta)) > 1:
            return False
    return True
