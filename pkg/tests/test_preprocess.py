from hypothesis import given, settings
from hypothesis import strategies as st

from recipenorm.preprocess import (NUMBER_WORDS, apply_article_rules, normalize_chars,
                                   pos_sets, preprocess_line, protect_brands,
                                   remove_redundant, replace_number_words, tokenize)


def surfaces(tokens):
    return [t.surface for t in tokens]


def test_percent_kept_after_number():
    assert normalize_chars("3.5% milk") == "3.5% milk"
    assert normalize_chars("100% juice, % off") == "100% juice, off"


def test_ampersand_and_plus():
    assert normalize_chars("M&M's chocolate") == "MandM's chocolate"
    assert normalize_chars("salt+pepper") == "salt plus pepper"


def test_hyphen_range_and_slash():
    assert normalize_chars("14 1/2- to 15-ounce") == "14 1/2 to 15-ounce"
    assert normalize_chars("10-12 eggs") == "10 to 12 eggs"
    assert normalize_chars("and/or") == "and or"


def test_vulgar_fractions():
    assert normalize_chars("½ cup") == "1/2 cup"
    assert normalize_chars("1¼ cups") == "1 1/4 cups"


@given(st.text(alphabet=st.sampled_from("ab 12/.,%&+-½()'\"!?#"), max_size=40))
@settings(max_examples=300)
def test_normalize_chars_idempotent(text):
    once = normalize_chars(text)
    assert normalize_chars(once) == once


def test_number_words():
    assert replace_number_words("two apples") == "2 apples"
    assert replace_number_words("half a lemon") == "1/2 lemon"
    assert replace_number_words("4 and a half tbsp") == "4 1/2 tbsp"
    assert replace_number_words("a dozen eggs") == "a 12 eggs"
    # hyphen-bound words are part of a name
    assert replace_number_words("one-pot stew") == "one-pot stew"


@given(st.text(alphabet=st.sampled_from("bcdgklmpqrsxyz 123.,"), max_size=40))
def test_number_words_leave_other_text_alone(text):
    # the alphabet cannot spell any number word or "half"
    assert not any(w in text for w in NUMBER_WORDS)
    assert replace_number_words(text) == text


def test_article_rules(lex):
    assert apply_article_rules("a cup of milk", lex.units) == "1 cup of milk"
    assert apply_article_rules("an apple", lex.units) == "1 apple"
    assert apply_article_rules("a 500 grams container yogurt", lex.units) == \
        "a 500 grams container yogurt"


def test_article_dropped_later(lex):
    toks = preprocess_line("a 500 grams container yogurt", lex)
    assert surfaces(toks) == ["500", "grams", "container", "yogurt"]


def test_brand_survives_pipeline(lex):
    toks = preprocess_line("1 (40 grams) packet M&M's chocolate candies", lex)
    brand = [t for t in toks if t.protected]
    assert [t.surface for t in brand] == ["M&M's"]
    assert brand[0].lemma == brand[0].surface
    # bracket kept because it holds quantity + unit; packet kept for the container rule
    assert surfaces(toks) == ["1", "40", "grams", "packet", "M&M's", "chocolate", "candies"]
    assert [t.bracketed for t in toks][1:3] == [True, True]


def test_brand_protection_placeholder(lex):
    text, spans = protect_brands("2 packets of stevia", lex.brands)
    assert "stevia" not in text.lower()
    assert spans == ["stevia"]


def test_redundant_clause_removed(lex):
    toks = preprocess_line(
        "1 lb large shallots, bulbs separated if necessary, each bulb halved lengthwise", lex)
    words = [t.surface for t in toks if not t.is_punct]
    assert words == ["1", "lb", "shallots"]


def test_bracket_without_quantity_dropped(lex):
    toks = preprocess_line("2 cups flour (sifted twice)", lex)
    assert surfaces(toks) == ["2", "cups", "flour"]


def test_empty_line(lex):
    assert preprocess_line("", lex) == []
    assert preprocess_line("   ", lex) == []


def test_tokenize_keeps_fractions_atomic(lex):
    toks = tokenize("2 1/2 cups 3.5% milk", lex.pos)
    assert surfaces(toks) == ["2", "1/2", "cups", "3.5%", "milk"]
    assert toks[2].lemma == "cup"


@given(st.lists(st.sampled_from(["finely", "chopped", "diced", "onion", "2", "cups",
                                 "large", "fresh", "tomato", ","]), max_size=12))
def test_redundant_removal_never_adds_tokens(lex, words):
    toks = tokenize(" ".join(words), lex.pos)
    assert len(remove_redundant(toks, lex.redundant)) <= len(toks)


def test_pos_sets_disjoint(lex):
    s = pos_sets(preprocess_line("2 cups whole wheat flour, baked", lex))
    groups = [s.nouns, s.verbs, s.adjectives, s.numbers]
    for a in range(4):
        for b in range(a + 1, 4):
            assert not groups[a] & groups[b]
    assert {"flour", "wheat"} <= s.nouns
