from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from recipenorm.errors import NoMatch
from recipenorm.fcdb import FcdbIndex, FoodRecord
from recipenorm.mapper import levenshtein, match_ingredient, match_text, similarity_index
from recipenorm.preprocess import PosSets
from synth import ADJS, NOUNS, NUMS, VERBS, random_fixture


def P(nouns=(), verbs=(), adjs=(), nums=(), lemmas=None):
    if lemmas is None:
        lemmas = tuple(nouns) + tuple(verbs) + tuple(adjs) + tuple(nums)
    return PosSets(frozenset(nouns), frozenset(verbs), frozenset(adjs), frozenset(nums),
                   tuple(lemmas))


def test_similarity_examples():
    assert similarity_index(P(["flour"]), P(["flour"])) == 0.5
    assert similarity_index(P(["flour"]), P(["sugar"])) == 0
    assert similarity_index(P(["flour", "wheat"]), P(["flour"])) == 0.25
    assert similarity_index(P(), P()) == 0


def test_similarity_matches_exact_oracle():
    i = P(["flour", "wheat"], ["bake"], ["whole"], ["2"])
    j = P(["flour"], [], ["whole", "white"], [])
    # p_n = 1/2, p_van = (1 + 1) / (4 + 2)
    assert oracles.sim(i, j) == Fraction(1, 6)
    assert similarity_index(i, j) == pytest.approx(1 / 6, abs=1e-15)


def test_levenshtein_examples():
    assert levenshtein("", "abc") == 3
    assert levenshtein("kitten", "sitting") == 3
    assert levenshtein("flour", "flour") == 0


words = st.text(alphabet="abcde ", max_size=10)


@given(words, words)
def test_levenshtein_matches_recursive_oracle(a, b):
    assert levenshtein(a, b) == oracles.lev(a, b)


@given(words, words, words)
def test_levenshtein_triangle(a, b, c):
    assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)


def sets_strategy():
    sub = lambda pool: st.frozensets(st.sampled_from(pool), max_size=4)
    return st.builds(lambda n, v, a, x: P(sorted(n), sorted(v), sorted(a), sorted(x)),
                     sub(NOUNS), sub(VERBS), sub(ADJS), sub(NUMS))


@given(sets_strategy(), sets_strategy())
def test_similarity_symmetric_and_bounded(i, j):
    s = similarity_index(i, j)
    assert 0 <= s <= 1
    assert s == similarity_index(j, i)


def db_of(*records):
    return FcdbIndex([FoodRecord(rid, "", sets) for rid, sets in records])


def test_tier_one_chosen():
    db = db_of(("A", P(["egg"], [], ["raw"])), ("B", P(["egg"])))
    res = match_ingredient(P(["egg"], [], ["raw"]), db)
    assert (res.chosen, res.tier) == ("A", 1)


def test_no_match():
    db = db_of(("A", P(["egg"])))
    with pytest.raises(NoMatch):
        match_ingredient(P(["zzzzzzzzzz"], lemmas=("zzzzzzzzzz",)), db)


def test_five_record_fixture_shared_noun():
    recs = [("A", P(["rice"], ["boil"])), ("B", P(["corn", "bean"])),
            ("C", P(["milk"], [], ["low"])), ("D", P(["ham", "pea"], [], ["raw"])),
            ("E", P(["oat"], ["dry"]))]
    ing = P(["pea", "fig"], [], ["raw"])
    res = match_ingredient(ing, db_of(*recs), cap=None)
    assert (res.chosen, res.tier) == ("D", 3)
    # p_n = 1/3, p_van = (1 + 1) / (1 + 2)
    assert res.similarity == pytest.approx(2 / 9)
    want = oracles.brute_force_match(ing, recs)
    assert [(c.id, c.tier) for c in res.candidates] == [(r[0], r[1]) for r in want]


def test_self_match_floor():
    sets = P(["egg", "milk"])
    res = match_ingredient(sets, db_of(("A", sets)))
    assert (res.tier, res.similarity) == (1, 0.5)


def test_tier_one_never_outranked():
    db, _, ings = random_fixture(3, 120, 60)
    for ing in ings:
        try:
            res = match_ingredient(ing, db, cap=None)
        except NoMatch:
            continue
        tiers = [c.tier for c in res.candidates]
        assert tiers == sorted(tiers)


def test_cap_never_changes_chosen():
    db, _, ings = random_fixture(5, 150, 40)
    for ing in ings:
        try:
            full = match_ingredient(ing, db, cap=None)
        except NoMatch:
            continue
        capped = match_ingredient(ing, db, cap=2)
        assert capped.chosen == full.chosen
        assert capped.candidates == full.candidates[:2]
        assert capped.total == full.total


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_oracle_equivalence_small(seed):
    db, recs, ings = random_fixture(seed, 30, 10)
    for ing in ings:
        want = oracles.brute_force_match(ing, recs)
        try:
            got = match_ingredient(ing, db, cap=None)
        except NoMatch:
            assert want == []
            continue
        assert [(c.id, c.tier, c.levenshtein) for c in got.candidates] == \
            [(r[0], r[1], r[3]) for r in want]


def test_self_mapping_on_fixture(lex, fixture_fcdb):
    for rec in fixture_fcdb:
        res = match_text(rec.description, fixture_fcdb, lex)
        assert res.tier == 1
        assert rec.id in [c.id for c in res.candidates if c.tier == 1]
