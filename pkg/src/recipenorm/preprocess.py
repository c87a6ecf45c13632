"""Text canonicalisation that runs before any extraction rule.

The order inside :func:`preprocess_line` is fixed: brand protection, character
normalisation, number words, article rules, tokenisation + lemmatisation,
redundant-phrase removal and finally bracket removal.
"""
from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass

from .lexicons import Lexicons, PosLexicon, RedundantLexicon, UnitLexicon

PUNCT = frozenset(".,;()")

VULGAR_FRACTIONS = {
    "½": "1/2", "⅓": "1/3", "⅔": "2/3", "¼": "1/4", "¾": "3/4", "⅕": "1/5",
    "⅖": "2/5", "⅗": "3/5", "⅘": "4/5", "⅙": "1/6", "⅚": "5/6", "⅐": "1/7",
    "⅛": "1/8", "⅜": "3/8", "⅝": "5/8", "⅞": "7/8", "⅑": "1/9", "⅒": "1/10",
}

NUMBER_WORDS = {
    "one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6, "seven": 7,
    "eight": 8, "nine": 9, "ten": 10, "eleven": 11, "twelve": 12, "thirteen": 13,
    "fourteen": 14, "fifteen": 15, "sixteen": 16, "seventeen": 17, "eighteen": 18,
    "nineteen": 19, "twenty": 20, "thirty": 30, "forty": 40, "fifty": 50,
    "sixty": 60, "seventy": 70, "eighty": 80, "ninety": 90, "hundred": 100,
    "dozen": 12,
}

# hyphen-bound words ("one-pot") are left alone
_B = r"(?<![\w-])"
_E = r"(?![\w-])"
_HALF_RE = re.compile(_B + r"(?:and\s+a\s+half|half\s+(?:a|an|of|from))" + _E, re.I)
_NUMBER_WORD_RE = re.compile(_B + r"(" + "|".join(NUMBER_WORDS) + r")" + _E, re.I)

_TOKEN_RE = re.compile(
    r"(?P<brand>qqbrand\d+qq)"
    r"|(?P<frac>\d+/\d+)"
    r"|(?P<num>\d+(?:\.\d+)?%?)"
    r"|(?P<word>[^\W\d_][\w']*(?:-[^\W\d_][\w']*)*)"
    r"|(?P<punct>[.,;()])"
)
QUANTITY_TOKEN_RE = re.compile(r"^(\d+|\d+\.\d+|\d+/\d+)$")


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    pos: str
    protected: bool = False
    # content of a kept "(500 grams)" group; quantity patterns never span its edge
    bracketed: bool = False

    @property
    def is_punct(self):
        return self.surface in PUNCT and not self.protected

    @property
    def low(self):
        return self.surface.lower()


TokenStream = list  # list[Token]


def protect_brands(text, brands):
    """Swap brand mentions for inert placeholders; returns (text, originals)."""
    originals = []

    def swap(m):
        originals.append(m.group(0))
        return f" qqbrand{len(originals) - 1}qq "

    return re.sub(brands._pattern, swap, text) if brands._pattern else text, originals


def normalize_chars(text: str) -> str:
    out = []
    for i, ch in enumerate(text):
        if ch in VULGAR_FRACTIONS:
            if i and text[i - 1].isdigit():
                out.append(" ")
            out.append(VULGAR_FRACTIONS[ch])
        elif ch == "⁄":  # fraction slash
            out.append("/")
        else:
            out.append(ch)
    text = unicodedata.normalize("NFC", "".join(out))
    text = text.replace("&", "and").replace("+", " plus ")
    text = re.sub(r"(?<=\d)\s*-\s*(?=\d)", " to ", text)
    text = text.translate(str.maketrans("[]{}’`", "()()''"))

    chars = []
    n = len(text)
    for i, ch in enumerate(text):
        prev = text[i - 1] if i else ""
        nxt = text[i + 1] if i + 1 < n else ""
        if ch.isalnum() or ch.isspace() or ch in ".,;()'":
            chars.append(ch)
        elif ch == "%" and prev.isdigit():
            chars.append(ch)
        elif ch == "/" and prev.isdigit() and nxt.isdigit():
            chars.append(ch)
        elif ch == "-" and prev.isalnum() and nxt.isalnum():
            chars.append(ch)
        else:
            chars.append(" ")
    return " ".join("".join(chars).split())


def replace_number_words(text: str) -> str:
    text = _HALF_RE.sub("1/2", text)
    return _NUMBER_WORD_RE.sub(lambda m: str(NUMBER_WORDS[m.group(1).lower()]), text)


def _find_unit(words, start, units: UnitLexicon):
    """Length of the longest unit surface starting at ``words[start]``, else 0."""
    for n in range(min(units.max_len, len(words) - start), 0, -1):
        if tuple(words[start:start + n]) in units.surfaces:
            return n
    return 0


def apply_article_rules(text: str, units: UnitLexicon) -> str:
    words = re.findall(r"[^\W\d_][\w'-]*|\d[\d/.%]*", text.lower())
    if not words or words[0] not in ("a", "an"):
        return text
    rest = text.split(None, 1)
    tail = rest[1] if len(rest) > 1 else ""
    if _find_unit(words, 1, units):
        return f"1 {tail}".strip()
    has_unit = any(_find_unit(words, i, units) for i in range(1, len(words)))
    has_qty = any(ch.isdigit() for ch in tail)
    if not has_unit and not has_qty:
        return f"1 {tail}".strip()
    return text


def tokenize(text: str, pos: PosLexicon, brand_surfaces=()) -> list[Token]:
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        s = m.group(0)
        if kind == "brand":
            original = brand_surfaces[int(s[7:-2])]
            tokens.append(Token(original, original, "noun", protected=True))
        elif kind == "punct":
            tokens.append(Token(s, s, "other"))
        else:
            entry = pos.lookup(s)
            tokens.append(Token(s, entry.lemma, entry.pos))
    return tokens


def _token_matches(tok: Token, word: str) -> bool:
    return not tok.protected and (tok.low == word or tok.lemma == word)


def remove_redundant(tokens, redundant: RedundantLexicon):
    """Delete every redundant phrase occurrence, longest match first."""
    out = []
    i = 0
    while i < len(tokens):
        hit = 0
        for phrase in redundant.phrases:
            n = len(phrase)
            if i + n <= len(tokens) and all(
                    _token_matches(tokens[i + k], phrase[k]) for k in range(n)):
                hit = n
                break
        if hit:
            i += hit
        else:
            out.append(tokens[i])
            i += 1
    return out


def _has_quantity_and_unit(group, units: UnitLexicon) -> bool:
    words = [t.low for t in group]
    for i, t in enumerate(group):
        if QUANTITY_TOKEN_RE.match(t.surface):
            if any(_find_unit(words, j, units) for j in range(i + 1, len(words))):
                return True
    return False


def remove_brackets(tokens, units: UnitLexicon):
    """Drop bracketed asides.

    A group that states its own measured quantity, e.g. "(500 grams)", keeps
    its content (flagged ``bracketed``) since that is often the real amount;
    anything else in brackets, e.g. "(8)" or "(about 1 breast, diced)", goes.
    """
    out = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok.surface == "(" and not tok.protected:
            depth, j = 1, i + 1
            while j < len(tokens) and depth:
                if tokens[j].surface == "(" and not tokens[j].protected:
                    depth += 1
                elif tokens[j].surface == ")" and not tokens[j].protected:
                    depth -= 1
                j += 1
            if depth:  # unbalanced: drop the stray bracket only
                i += 1
                continue
            group = [t for t in tokens[i + 1:j - 1] if t.surface not in "()"]
            if _has_quantity_and_unit(group, units):
                out.extend(Token(t.surface, t.lemma, t.pos, t.protected, True)
                           for t in group)
            i = j
        elif tok.surface == ")" and not tok.protected:
            i += 1
        else:
            out.append(tok)
            i += 1
    return out


def preprocess_line(text: str, lex: Lexicons) -> list[Token]:
    if not text or not text.strip():
        return []
    text, brands = protect_brands(text, lex.brands)
    text = normalize_chars(text)
    text = replace_number_words(text)
    text = apply_article_rules(text, lex.units)
    tokens = tokenize(text, lex.pos, brands)
    tokens = remove_redundant(tokens, lex.redundant)
    return remove_brackets(tokens, lex.units)


def render(tokens) -> str:
    """Space-joined surfaces, the inverse of tokenisation up to spacing."""
    return " ".join(t.surface for t in tokens)


@dataclass(frozen=True)
class PosSets:
    nouns: frozenset = frozenset()
    verbs: frozenset = frozenset()
    adjectives: frozenset = frozenset()
    numbers: frozenset = frozenset()
    lemmas: tuple = ()

    @property
    def lemma_set(self):
        return frozenset(self.lemmas)

    @property
    def van(self):
        return self.verbs | self.adjectives | self.numbers

    @property
    def content(self):
        return self.nouns | self.verbs | self.adjectives | self.numbers

    @property
    def concat(self):
        return " ".join(self.lemmas)


def pos_sets(tokens) -> PosSets:
    groups = {"noun": set(), "verb": set(), "adjective": set(), "number": set()}
    lemmas = []
    for tok in tokens:
        if tok.is_punct:
            continue
        lemma = tok.lemma.lower()
        lemmas.append(lemma)
        if tok.pos in groups:
            groups[tok.pos].add(lemma)
    # keep the four classes disjoint: first class seen for a lemma wins
    seen = set()
    for key in ("noun", "verb", "adjective", "number"):
        groups[key] -= seen
        seen |= groups[key]
    return PosSets(frozenset(groups["noun"]), frozenset(groups["verb"]),
                   frozenset(groups["adjective"]), frozenset(groups["number"]),
                   tuple(lemmas))


def describe(text: str, lex: Lexicons) -> PosSets:
    """Lemma and POS sets of a food description, as used for FCDB matching."""
    return pos_sets(preprocess_line(text, lex))
