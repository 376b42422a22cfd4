import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cgtools.coset_table import (CosetLimitError, CosetTable,
                                 IncompleteTableError, compact, standardize,
                                 to_permutations, word_columns)
from cgtools.enumerator import enumerate_cosets
from cgtools.words import parse_presentation
from oracles import closure, merge_closure, standard_form

X = 0       # column of x
XI = 1      # column of x^-1


def c3_partial():
    # x: 1 -> 2 -> 3, entry 3.x undefined
    return CosetTable.from_rows([[2, 0], [3, 1], [0, 2]], 1)


def test_define_counts_coset_one():
    t = CosetTable(1)
    assert t.define(1, X) == 2
    assert t.total_defined == 2
    assert t.table[2][XI] == 1
    assert (t.current_active, t.max_active) == (2, 2)


def test_define_on_defined_entry():
    t = CosetTable(1)
    t.define(1, X)
    with pytest.raises(ValueError):
        t.define(1, X)


@pytest.mark.parametrize("cap", [1, 2, 5])
def test_capacity_error_at_next_allocation(cap):
    t = CosetTable(1, capacity=cap)
    for _ in range(cap - 1):
        t.define(t.allocated, X)
    with pytest.raises(CosetLimitError):
        t.define(t.allocated, X)
    assert t.allocated == cap


def test_max_total_limit():
    t = CosetTable(1, max_total=3)
    t.define(1, X)
    t.define(2, X)
    with pytest.raises(CosetLimitError):
        t.define(3, X)


def test_scan_complete_on_closed_c5():
    p = parse_presentation("<x | x^5>")
    t = enumerate_cosets(p).table
    assert t.scan(1, p.relators[0].letters).outcome == "complete"


def test_scan_trivially_closing_word():
    t = CosetTable(1)
    assert t.scan(1, (1, -1)).outcome == "complete"
    assert t.scan(1, (1, 1, -1, -1)).outcome == "complete"


def test_scan_deduction_c3():
    t = c3_partial()
    res = t.scan(1, (1, 1, 1))
    assert (res.outcome, res.coset, res.column, res.value) == ("deduction", 3, X, 1)
    assert t.table[3][X] == 1 and t.table[1][XI] == 3
    assert t.deductions[-1] == (3, X)


def test_scan_incomplete_without_fill_and_closes_with_fill():
    t = CosetTable(1)
    assert t.scan(1, (1, 1, 1)).outcome == "incomplete"
    res = t.scan(1, (1, 1, 1), fill=True)
    assert res.outcome == "deduction"
    assert t.image(1, (1, 1, 1)) == 1
    assert t.total_defined == 3


def test_scan_rejects_dead_row_and_empty_word():
    t = CosetTable(1)
    with pytest.raises(ValueError):
        t.scan(1, ())
    with pytest.raises(ValueError):
        t.scan(5, (1,))


def test_coincidence_reflexive():
    t = c3_partial()
    before = t.key()
    assert t.process_coincidence(2, 2) == 0
    assert t.key() == before


def test_trivial_group_coincidence():
    t = CosetTable(1)
    t.define(1, X)
    res = t.scan(1, (1,))
    assert res.outcome == "coincidence" and set(res.pair) == {1, 2}
    t.process_coincidence(*res.pair)
    assert t.current_active == 1
    assert t.live_cosets() == [1]
    assert t.table[1] == [1, 1]


def test_coincidence_cascade_matches_oracle():
    # x: 1 -> 1, 2 -> 4, 3 -> 3; merging 3 and 4 forces 2 ~ 3
    rows = [[1, 1], [4, 0], [3, 3], [0, 2]]
    t = CosetTable.from_rows(rows, 1)
    t.process_coincidence(3, 4)
    expected = merge_closure(rows, 3, 4)
    assert len(expected) == 2
    assert t.current_active == 2
    assert t.live_cosets() == [min(c) for c in expected]
    for cls in expected:
        assert {t.find(i) for i in cls} == {min(cls)}
    t.check_consistency()


@st.composite
def partial_tables(draw):
    """Random consistent partial tables for one generator (partial
    injections), plus a pair to merge."""
    n = draw(st.integers(2, 7))
    perm = draw(st.permutations(range(1, n + 1)))
    keep = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    rows = [[0, 0] for _ in range(n)]
    for i in range(n):
        if keep[i]:
            j = perm[i]
            rows[i][0] = j
            rows[j - 1][1] = i + 1
    a = draw(st.integers(1, n))
    b = draw(st.integers(1, n))
    return rows, a, b


@given(partial_tables())
def test_coincidence_matches_exhaustive_merge(case):
    rows, a, b = case
    t = CosetTable.from_rows(rows, 1)
    t.process_coincidence(a, b)
    t.check_consistency()
    expected = merge_closure(rows, a, b)
    assert t.current_active == len(expected)
    for cls in expected:
        assert {t.find(i) for i in cls} == {min(cls)}


def test_compact_identity_when_no_dead_rows():
    t = c3_partial()
    assert compact(t).key() == t.key()


def test_compact_renumbers_in_order():
    t = CosetTable.from_rows([[3, 5], [0, 0], [5, 1], [0, 0], [1, 3]], 1)
    t.parent[2] = 1
    t.parent[4] = 1
    t.current_active = 3
    c = compact(t)
    assert c.key() == ((2, 3), (3, 1), (1, 2))
    assert c.total_defined == t.total_defined
    assert compact(c).key() == c.key()
    remap = t.copy().compact_inplace()
    assert remap[3] == 2 and remap[5] == 3 and remap[2] == remap[4] == 0


def test_standardize_c3_renumbering():
    t = CosetTable.from_rows([[3, 2], [1, 3], [2, 1]], 1)
    s = standardize(t)
    assert s.key() == ((2, 3), (3, 1), (1, 2))
    assert standardize(s).key() == s.key()
    assert s.is_standard() and not t.is_standard()


def test_standardize_incomplete():
    with pytest.raises(IncompleteTableError):
        standardize(c3_partial())


def _renumber(rows, perm):
    """Apply a renumbering fixing 1: old coset i becomes perm[i-1]."""
    new = [None] * len(rows)
    for old, r in enumerate(rows, 1):
        new[perm[old - 1] - 1] = [perm[j - 1] for j in r]
    return new


SMALL = [
    ("<x | x^5>", ""),
    ("<a,b | a^2, b^2, (a*b)^2>", ""),
    ("<a,b | a^2, b^3, (a*b)^2>", "a"),
    ("<a,b | a^2, b^2, (a*b)^2>", "a*b"),
    ("<a,b | a^4, b^2, (a*b)^2>", "b"),
]


@pytest.mark.parametrize("pres,sub", SMALL)
def test_standardize_invariant_under_all_renumberings(pres, sub):
    p = parse_presentation(pres)
    t = enumerate_cosets(p, p.parse_subgroup(sub)).table
    rows = [list(t.table[i]) for i in range(1, len(t) + 1)]
    assert len(rows) <= 5
    assert standard_form(rows) == rows
    for rest in itertools.permutations(range(2, len(rows) + 1)):
        shuffled = CosetTable.from_rows(_renumber(rows, (1,) + rest), p.rank)
        assert standardize(shuffled).key() == t.key()


def test_to_permutations_c5():
    p = parse_presentation("<x | x^5>")
    (g,) = to_permutations(enumerate_cosets(p).table)
    assert g.cycle_type() == {5: 1}


def test_to_permutations_s3_order():
    p = parse_presentation("<a,b | a^2, b^3, (a*b)^2>")
    perms = to_permutations(enumerate_cosets(p).table)
    assert [g.degree for g in perms] == [6, 6]
    assert len(closure([g.images for g in perms], 6)) == 6


def test_to_permutations_incomplete():
    with pytest.raises(IncompleteTableError):
        to_permutations(c3_partial())


def test_dump_round_trip():
    p = parse_presentation("<a,b | a^2, b^3, (a*b)^2>")
    t = enumerate_cosets(p).table
    text = t.dump()
    assert text.splitlines()[0] == "cosets 6 generators 2"
    assert CosetTable.from_dump(text).key() == t.key()


@pytest.mark.parametrize("text", ["", "cosets 1 gens 1\n0 0", "cosets 2 generators 1\n2 2",
                                  "cosets 1 generators 1\n2 1", "cosets 2 generators 1\n2 0\n0 2"])
def test_from_dump_errors(text):
    with pytest.raises((ValueError, IndexError)):
        CosetTable.from_dump(text)


def test_word_columns():
    assert word_columns((1, -1, 2, -2)) == (0, 1, 2, 3)


REL = parse_presentation("<a,b | a^3, b^2, (a*b)^3>")
RELCOLS = [word_columns(r.letters) for r in REL.relators]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(["define", "scan"]), st.integers(0, 10**6),
                          st.integers(0, 10**6)), max_size=40))
def test_inverse_consistency_under_random_operations(ops):
    t = CosetTable(2, capacity=60)
    for kind, u, v in ops:
        live = t.live_cosets()
        alpha = live[u % len(live)]
        if kind == "define":
            holes = [c for c in range(4) if not t.table[alpha][c]]
            if holes and t.allocated < 60:
                t.define(alpha, holes[v % len(holes)])
        else:
            res = t.scan_columns(alpha, RELCOLS[v % len(RELCOLS)])
            if res.outcome == "coincidence":
                t.process_coincidence(*res.pair)
                live = t.live_cosets()
                assert len({t.find(i) for i in live}) == len(live)
        t.check_consistency()
        assert t.current_active == len(t.live_cosets())
        assert t.total_defined >= t.max_active >= t.current_active
