"""Normal closure, derived and lower central series, and the predicates
built on them."""

from __future__ import annotations

from .bsgs import PermGroup, extend_chain, schreier_sims


def _nontrivial(gens):
    return [s for s in gens if not s.is_identity()]


def normal_closure(g: PermGroup, h: PermGroup) -> PermGroup:
    """Smallest normal subgroup of ``g`` containing ``h``."""
    if g.degree != h.degree:
        raise ValueError("degree mismatch")
    gens = _nontrivial(h.generators)
    chain = schreier_sims(PermGroup(gens, g.degree))
    queue = list(gens)
    while queue:
        s = queue.pop(0)
        for x in g.generators:
            c = s.conjugate(x)
            if not chain.contains(c):
                chain = extend_chain(chain, [c])
                gens.append(c)
                queue.append(c)
    return PermGroup(gens, g.degree, chain=chain)


def derived_subgroup(g: PermGroup) -> PermGroup:
    gens = g.generators
    comms = [gens[i].commutator(gens[j])
             for i in range(len(gens)) for j in range(i + 1, len(gens))]
    return normal_closure(g, PermGroup(_nontrivial(comms), g.degree))


def _commutator_with(g: PermGroup, n: PermGroup) -> PermGroup:
    """[N, G] for N normal in G."""
    comms = [a.commutator(x) for a in n.generators for x in g.generators]
    return normal_closure(g, PermGroup(_nontrivial(comms), g.degree))


def _series(g: PermGroup, step) -> list[PermGroup]:
    # stop at the trivial group or when a term repeats; the last term is kept
    terms = [g]
    while terms[-1].order() > 1:
        nxt = step(terms[-1])
        terms.append(nxt)
        if nxt.order() == terms[-2].order():
            break
    return terms


def derived_series(g: PermGroup) -> list[PermGroup]:
    return _series(g, derived_subgroup)


def lower_central_series(g: PermGroup) -> list[PermGroup]:
    return _series(g, lambda term: _commutator_with(g, term))


def is_soluble(g: PermGroup) -> bool:
    return derived_series(g)[-1].order() == 1


def is_nilpotent(g: PermGroup) -> bool:
    return lower_central_series(g)[-1].order() == 1


def is_perfect(g: PermGroup) -> bool:
    return derived_subgroup(g).order() == g.order()
