import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cgtools.coset_table import word_columns
from cgtools.enumerator import (EnumerationLimitError, Strategy,
                                enumerate_cosets, order_of_group, word_image)
from cgtools.words import SubgroupSpec, parse_presentation
from oracles import closure, from_cycles, trace

MENNICKE = "< x,y,z | x^y*x^-3, y^z*y^-2, z^x*z^-4 >"
KINDS = ["hlt", "felsch"]


def check_closed(p, h, result):
    """Rules (a) and (b) and x*x^-1 on the returned table."""
    t = result.table
    rows = [t.table[i] for i in range(1, len(t) + 1)]
    for alpha in range(1, len(rows) + 1):
        for r in p.relators:
            assert trace(rows, alpha, word_columns(r.letters)) == alpha
        for c in range(2 * p.rank):
            assert trace(rows, alpha, (c, c ^ 1)) == alpha
    for w in h.generators:
        assert trace(rows, 1, word_columns(w.letters)) == 1
    assert t.is_standard()
    assert result.index == len(rows)


@pytest.fixture(scope="module")
def mennicke_x():
    p = parse_presentation(MENNICKE)
    return p, {k: enumerate_cosets(p, p.parse_subgroup("x"), Strategy(k)) for k in KINDS}


@pytest.mark.parametrize("kind", KINDS)
def test_c5(kind):
    p = parse_presentation("<x | x^5>")
    r = enumerate_cosets(p, None, Strategy(kind))
    assert r.index == 5
    (g,) = r.table.to_permutations()
    assert g.cycle_type() == {5: 1}
    check_closed(p, SubgroupSpec(), r)


@pytest.mark.parametrize("kind", KINDS)
def test_s3_against_permutation_model(kind):
    expected = len(closure([from_cycles([(1, 2)], 3), from_cycles([(1, 2, 3)], 3)], 3))
    p = parse_presentation("<a,b | a^2, b^3, (a*b)^2>")
    r = enumerate_cosets(p, None, Strategy(kind))
    assert r.index == expected == 6
    check_closed(p, SubgroupSpec(), r)


@pytest.mark.parametrize("kind", KINDS)
def test_order_of_group_examples(kind):
    s = Strategy(kind)
    assert order_of_group(parse_presentation("<x | x^7>"), s) == 7
    d3 = len(closure([from_cycles([(1, 2)], 3), from_cycles([(2, 3)], 3)], 3))
    assert order_of_group(parse_presentation("<a,b | a^2, b^2, (a*b)^3>"), s) == d3


@pytest.mark.parametrize("kind", KINDS)
def test_mennicke_over_x(mennicke_x, kind):
    p, results = mennicke_x
    r = results[kind]
    assert r.index == 105
    check_closed(p, p.parse_subgroup("x"), r)
    perms = r.table.to_permutations()
    assert [g.degree for g in perms] == [105, 105, 105]
    assert r.max_active <= r.total_defined


def test_mennicke_strategies_agree(mennicke_x):
    _, results = mennicke_x
    assert results["hlt"].table == results["felsch"].table


def test_finiteness_bound_s3():
    p = parse_presentation("<a,b | a^2, b^3, (a*b)^2>")
    idx = enumerate_cosets(p, p.parse_subgroup("a")).index
    # |G| = [G:<a>] * |<a>| with |<a>| = 2
    assert idx == 3
    assert idx * 2 == order_of_group(p)


@pytest.mark.parametrize("kind", KINDS)
def test_word_image(kind):
    p = parse_presentation("<a,b | a^2, b^3, (a*b)^2>")
    r = enumerate_cosets(p, None, Strategy(kind))
    assert word_image(r, ()) == 1
    for rel in p.relators:
        assert r.word_image(rel) == 1
    assert word_image(r, p.parse_word("a*b*a*b").letters) == 1
    assert word_image(r, p.parse_word("a*b").letters) != 1


@pytest.mark.parametrize("kind", KINDS)
def test_limit_reports_stats(kind):
    p = parse_presentation("<a,b | a*b*a^-1*b^-1>")     # Z^2: infinite
    with pytest.raises(EnumerationLimitError) as info:
        enumerate_cosets(p, None, Strategy(kind, max_cosets=500))
    stats = info.value.stats()
    assert stats["index"] is None
    assert stats["strategy"] == kind
    assert 0 < stats["max_active"] <= stats["total_defined"]


def test_max_total_limit():
    p = parse_presentation("<x | x^50>")
    with pytest.raises(EnumerationLimitError):
        enumerate_cosets(p, None, Strategy("felsch", max_total=20))


def test_strategy_validation():
    assert Strategy("relator_driven").kind == "hlt"
    assert Strategy("deduction_driven").kind == "felsch"
    with pytest.raises(ValueError):
        Strategy("bogus")
    with pytest.raises(ValueError):
        Strategy(max_cosets=0)


def test_subgroup_word_over_other_generators():
    p = parse_presentation("<a | a^3>")
    q = parse_presentation("<b | b^2>")
    with pytest.raises(ValueError):
        enumerate_cosets(p, q.parse_subgroup("b"))


def test_trivial_and_free_cyclic_quotient():
    p = parse_presentation("<x | x>")
    assert order_of_group(p) == 1
    p = parse_presentation("<a,b | a, b>")
    assert order_of_group(p, Strategy("hlt")) == 1
    # whole group as subgroup: index 1 even though the group is infinite
    f = parse_presentation("<a,b | >")
    assert enumerate_cosets(f, f.parse_subgroup("a, b")).index == 1


def test_compaction_keeps_answer():
    # a small capacity forces compaction mid-run
    p = parse_presentation("<a,b | a^2, b^3, (a*b)^5>")
    for kind in KINDS:
        r = enumerate_cosets(p, None, Strategy(kind, max_cosets=200, compaction_threshold=0.05))
        assert r.index == 60


# Random two-generator presentations of finite groups: either the
# triangle-group exponents are spherical (1/m + 1/k + 1/j > 1) or a
# commutator relator makes the group a quotient of C_m x C_k.
finite_presentations = st.tuples(
    st.integers(1, 5), st.integers(1, 5), st.integers(1, 3),
    st.lists(st.sampled_from(["[a,b]", "a*b*a*b^-1", "(a*b^-1)^2", "a^b*a^-2"]), max_size=2),
).filter(lambda s: 1 / s[0] + 1 / s[1] + 1 / s[2] > 1 or "[a,b]" in s[3])


@settings(max_examples=25, deadline=None)
@given(finite_presentations, st.sampled_from(["", "a", "b", "a*b"]))
def test_strategy_independence(spec, sub):
    m, k, j, extra = spec
    text = f"<a,b | a^{m}, b^{k}, (a*b)^{j}" + "".join(", " + e for e in extra) + ">"
    p = parse_presentation(text)
    h = p.parse_subgroup(sub)
    hlt = enumerate_cosets(p, h, Strategy("hlt", max_cosets=50000))
    fel = enumerate_cosets(p, h, Strategy("felsch", max_cosets=50000))
    assert hlt.table == fel.table
    assert hlt.index == fel.index
    check_closed(p, h, fel)
    for g in fel.table.to_permutations():
        assert g.degree == fel.index


@pytest.mark.slow
def test_mennicke_trivial_unbounded():
    # several minutes and millions of cosets; run with -m slow
    p = parse_presentation(MENNICKE)
    r = enumerate_cosets(p, None, Strategy("felsch", max_cosets=10**7))
    assert r.index == 210
    check_closed(p, SubgroupSpec(), r)
    assert r.word_image(p.parse_word("x^2")) == 1
    assert r.word_image(p.parse_word("x")) != 1
