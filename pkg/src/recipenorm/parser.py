"""Rule-based extraction of quantity, unit and food item from one ingredient line."""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .errors import AmbiguousQuantities, EmptyFoodItem
from .lexicons import Lexicons, RedundantLexicon, UnitLexicon
from .preprocess import (
    QUANTITY_TOKEN_RE,
    Token,
    _find_unit,
    preprocess_line,
    remove_redundant,
)

log = logging.getLogger(__name__)

CONTAINERS = ("jar", "can", "packet", "package", "box", "bottle", "container")

# unit word -> foods it is a unit for
PAIR_UNITS = {
    "clove": ("garlic",),
    "stick": ("butter", "margarine", "cinnamon", "carrot", "celery"),
    "sprig": ("rosemary", "thyme", "mint", "parsley"),
    "link": ("sausage",),
    "stalk": ("celery", "green onion", "spring onion", "broccoli", "kale", "cauliflower"),
    "sheet": ("gelatin",),
    "cube": ("stock", "butter", "margarine"),
    "head": ("cabbage", "lettuce", "cauliflower"),
}

JOIN_PHRASES = (
    ("mixed", "with"), ("mixed", "in"), ("beaten", "with"), ("dissolved", "in"),
    ("sauteed", "in"), ("diluted",), ("combined",), ("add",),
)
USER_DEFINED = (("to", "taste"), ("to", "your", "taste"), ("as", "needed"),
                ("as", "desired"), ("as", "required"), ("to", "season"))
CONNECTORS = frozenset({"and", "or", "with", "plus", "to", "in"})


@dataclass(frozen=True)
class UnitMatch:
    unit: str
    start: int
    end: int
    kind: str  # "dictionary" | "container" | "pair"


@dataclass(frozen=True)
class QuantityPattern:
    kind: str  # int | float | fraction | int_fraction | product
    value: float
    start: int
    end: int


@dataclass
class Flags:
    user_defined_qty: bool = False
    no_unit: bool = False
    container_unit: bool = False
    brand_present: bool = False
    dismissed_and: bool = False


@dataclass
class ParsedIngredient:
    food: str
    quantity: float | None = None
    unit: str | None = None
    grams: float | None = None
    grams_source: str | None = None
    flags: Flags = field(default_factory=Flags)

    def to_dict(self):
        return {"food": self.food, "qty": self.quantity, "unit": self.unit,
                "grams": self.grams, "grams_source": self.grams_source,
                "flags": asdict(self.flags)}


@dataclass
class LineResult:
    raw: str
    ingredients: list
    skipped: bool = False
    warnings: list = field(default_factory=list)

    def to_dict(self):
        return {"raw": self.raw,
                "ingredients": [i.to_dict() for i in self.ingredients],
                "skipped": self.skipped, "warnings": list(self.warnings)}


# -- helpers -----------------------------------------------------------------

def _lemmas(tokens):
    return tuple(t.lemma.lower() for t in tokens)


def _has_run(seq, phrase):
    n = len(phrase)
    return any(tuple(seq[i:i + n]) == phrase for i in range(len(seq) - n + 1))


def _is_word(tok: Token, *words):
    return not tok.protected and tok.low in words


def _number_value(tok: Token):
    """(kind, value) for a standalone numeric token, or None."""
    if tok.protected or not QUANTITY_TOKEN_RE.match(tok.surface):
        return None
    s = tok.surface
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            return None
        return "fraction", float(Fraction(int(num), int(den)))
    if "." in s:
        return "float", float(s)
    return "int", float(int(s))


def _split_on(tokens, word):
    parts, cur = [], []
    for tok in tokens:
        if _is_word(tok, word):
            parts.append(cur)
            cur = []
        else:
            cur.append(tok)
    parts.append(cur)
    return parts


# -- units --------------------------------------------------------------------

def extract_units(stream, units: UnitLexicon) -> list[UnitMatch]:
    """Dictionary units, food-specific pair units and (as a fallback) containers."""
    words = [t.low for t in stream]
    lemmas = _lemmas(stream)
    found = []
    i = 0
    while i < len(stream):
        tok = stream[i]
        if tok.protected or tok.is_punct:
            i += 1
            continue
        n = _find_unit(words, i, units)
        if n:
            found.append(UnitMatch(units.surfaces[tuple(words[i:i + n])], i, i + n,
                                   "dictionary"))
            i += n
            continue
        foods = PAIR_UNITS.get(tok.lemma)
        if foods:
            others = lemmas[:i] + ("",) + lemmas[i + 1:]
            if any(_has_run(others, tuple(f.split())) for f in foods):
                found.append(UnitMatch(tok.lemma, i, i + 1, "pair"))
        i += 1
    if not any(u.kind == "dictionary" for u in found):
        found.extend(container_spans(stream))
    return sorted(found, key=lambda u: u.start)


def container_spans(stream) -> list[UnitMatch]:
    return [UnitMatch(t.lemma, i, i + 1, "container") for i, t in enumerate(stream)
            if not t.protected and t.lemma in CONTAINERS]


# -- quantities -----------------------------------------------------------------

# adjacent numbers that multiply ("2 14.5 oz cans"); an int followed by a
# fraction is summed before this table is consulted
_PRODUCT_KINDS = {("int", "int"), ("int", "float"), ("float", "int"),
                  ("fraction", "fraction"), ("fraction", "int"), ("float", "float")}


def _factor_kind(kind):
    return "float" if kind == "int_fraction" else kind


def extract_quantities(stream) -> list[QuantityPattern]:
    atoms = []
    i = 0
    while i < len(stream):
        nv = _number_value(stream[i])
        if nv is None:
            i += 1
            continue
        kind, value = nv
        if kind == "int" and i + 1 < len(stream):
            nxt = _number_value(stream[i + 1])
            if (nxt and nxt[0] == "fraction"
                    and stream[i + 1].bracketed == stream[i].bracketed):
                atoms.append(QuantityPattern("int_fraction", value + nxt[1], i, i + 2))
                i += 2
                continue
        atoms.append(QuantityPattern(kind, value, i, i + 1))
        i += 1

    patterns = []
    j = 0
    while j < len(atoms):
        a = atoms[j]
        if j + 1 < len(atoms):
            b = atoms[j + 1]
            same_group = stream[a.start].bracketed == stream[b.start].bracketed
            pair = (_factor_kind(a.kind), _factor_kind(b.kind))
            if b.start == a.end and same_group and pair in _PRODUCT_KINDS:
                patterns.append(QuantityPattern("product", a.value * b.value,
                                                a.start, b.end))
                j += 2
                continue
        patterns.append(a)
        j += 1
    return patterns


def _unit_after(pattern, units):
    for u in units:
        if u.start == pattern.end:
            return u
    for u in units:
        if u.start >= pattern.end:
            return u
    return units[0] if units else None


def resolve_duplicate_quantities(patterns, units, stream=None, warnings=None):
    """Pick the (pattern, unit) pair that describes the ingredient amount."""
    if not patterns:
        return None, (units[0] if units else None)
    if len(patterns) == 1:
        return patterns[0], _unit_after(patterns[0], units)
    if len(patterns) > 2:
        msg = f"{AmbiguousQuantities.__name__}: {len(patterns)} quantity patterns, keeping the first"
        log.warning(msg)
        if warnings is not None:
            warnings.append(msg)
        return patterns[0], _unit_after(patterns[0], units)

    p1, p2 = patterns
    adjacent = p2.start == p1.end
    if len(units) == 1:
        (u,) = units
        if adjacent and u.start >= p2.end:
            return p2, u
        if u.start == p1.end and p2.start == u.end:
            return p1, u
    elif len(units) == 2:
        u1 = units[0]
        if u1.start == p1.end and p2.start == u1.end:
            return p1, u1
    elif not units and adjacent:
        return p1, None
    # none of the four rules applies: prefer a pattern that carries a unit
    for p in patterns:
        for u in units:
            if u.start == p.end:
                return p, u
    return p1, _unit_after(p1, units)


# -- conjunctions ---------------------------------------------------------------

def _numeric_atom_len(stream, i):
    """Token length of a numeric atom starting at ``i`` (int+fraction counts as one)."""
    if i >= len(stream) or _number_value(stream[i]) is None:
        return 0
    if (i + 1 < len(stream) and _number_value(stream[i])[0] == "int"
            and (_number_value(stream[i + 1]) or ("",))[0] == "fraction"):
        return 2
    return 1


def _collapse_ranges(stream):
    """"14 1/2 to 15 ounce" -> "14 1/2 ounce": keep the lower bound of a range."""
    out = list(stream)
    i = 1
    while i < len(out) - 1:
        if (_is_word(out[i], "to", "or") and _number_value(out[i - 1]) is not None
                and _numeric_atom_len(out, i + 1)):
            del out[i:i + 1 + _numeric_atom_len(out, i + 1)]
        else:
            i += 1
    return out


def _rewrite_join_phrases(stream):
    out = []
    i = 0
    while i < len(stream):
        for phrase in JOIN_PHRASES:
            n = len(phrase)
            if all(i + k < len(stream) and _is_word(stream[i + k], phrase[k])
                   for k in range(n)):
                out.append(Token("plus", "plus", "other"))
                i += n
                break
        else:
            out.append(stream[i])
            i += 1
    return out


def _pick_or_part(parts, units: UnitLexicon):
    per_part = [extract_units(p, units) for p in parts]
    total = sum(len(u) for u in per_part)
    if total == 0:
        return parts[0]
    if total == 1:
        return next(p for p, u in zip(parts, per_part) if u)
    with_qty = []
    for p, us in zip(parts, per_part):
        pats = extract_quantities(p)
        for u in us:
            with_qty.append((p, any(q.end == u.start for q in pats)))
    flags = [q for _, q in with_qty]
    if all(flags) or not any(flags):
        return with_qty[0][0]
    return next(p for p, q in with_qty if q)


def resolve_conjunctions(stream, units: UnitLexicon):
    """Split a line holding several ingredients; returns (streams, dismissed_and)."""
    stream = _collapse_ranges(stream)
    stream = _rewrite_join_phrases(stream)

    dismissed = False
    n_plus = sum(_is_word(t, "plus") for t in stream)
    if n_plus == 0:
        rewritten = list(stream)
        for i, tok in enumerate(stream):
            if _is_word(tok, "and", "with"):
                if extract_units(stream[:i], units) and extract_units(stream[i + 1:], units):
                    rewritten[i] = Token("plus", "plus", "other")
                elif tok.low == "and":
                    dismissed = True
        stream = rewritten

    segments = [s for s in _split_on(stream, "plus")
                if any(not t.is_punct for t in s)]
    out = []
    for seg in segments:
        if any(_is_word(t, "or") for t in seg):
            parts = [p for p in _split_on(seg, "or") if any(not t.is_punct for t in p)]
            seg = _pick_or_part(parts, units) if parts else seg
        out.append(seg)
    return out, dismissed


# -- food item --------------------------------------------------------------------

def _is_unit_word(tok: Token, units: UnitLexicon):
    return ((tok.low,) in units.surfaces or tok.lemma in CONTAINERS
            or tok.lemma in PAIR_UNITS)


def extract_food_item(stream, consumed, redundant: RedundantLexicon,
                      units: UnitLexicon | None = None):
    """Return ``(food_text, user_defined_qty)``; raises EmptyFoodItem."""
    rest = [t for i, t in enumerate(stream) if i not in consumed]
    rest = remove_redundant(rest, redundant)

    user_defined = False
    words = [t.low for t in rest]
    for phrase in USER_DEFINED:
        n = len(phrase)
        i = 0
        while i <= len(words) - n:
            if tuple(words[i:i + n]) == phrase and not any(t.protected for t in rest[i:i + n]):
                del rest[i:i + n]
                del words[i:i + n]
                user_defined = True
            else:
                i += 1

    # a clause after "." or "," is an instruction when it carries a verb
    if not any(_is_word(t, "and", "or") for t in rest):
        seen_food = False
        for i, tok in enumerate(rest):
            if tok.surface in (".", ",") and not tok.protected:
                if seen_food and any(t.pos == "verb" for t in rest[i + 1:]):
                    rest = rest[:i]
                    break
            elif not tok.is_punct:
                seen_food = True

    words_only = [t for t in rest if not t.is_punct]
    while words_only and _is_word(words_only[0], *CONNECTORS):
        words_only.pop(0)
    while words_only and _is_word(words_only[-1], *CONNECTORS):
        words_only.pop()
    if not words_only or (units is not None
                          and all(_is_unit_word(t, units) for t in words_only)):
        raise EmptyFoodItem(" ".join(t.surface for t in stream))
    return " ".join(t.surface for t in words_only), user_defined


# -- driver -------------------------------------------------------------------------

def _parse_stream(stream, lex: Lexicons, dismissed, warnings):
    units_found = extract_units(stream, lex.units)
    patterns = extract_quantities(stream)
    qty, unit = resolve_duplicate_quantities(patterns, units_found, stream, warnings)

    consumed = set()
    for p in patterns:
        consumed.update(range(p.start, p.end))
    if unit is not None:
        consumed.update(range(unit.start, unit.end))
    for u in units_found:
        if any(p.end == u.start for p in patterns):
            consumed.update(range(u.start, u.end))
    if any(u.kind == "dictionary" for u in units_found):
        for c in container_spans(stream):
            consumed.update(range(c.start, c.end))

    food, user_defined = extract_food_item(stream, consumed, lex.redundant, lex.units)
    flags = Flags(
        user_defined_qty=user_defined,
        no_unit=unit is None,
        container_unit=unit is not None and unit.kind == "container",
        brand_present=any(t.protected for t in stream),
        dismissed_and=dismissed,
    )
    return ParsedIngredient(food, qty.value if qty else None,
                            unit.unit if unit else None, flags=flags)


def parse_record(raw: str, lex: Lexicons) -> LineResult:
    """Parse one raw line, never raising for per-line problems."""
    result = LineResult(raw, [])
    tokens = preprocess_line(raw, lex)
    if not tokens:
        result.skipped = bool(raw.strip())
        if result.skipped:
            result.warnings.append("EmptyFoodItem: nothing left after pre-processing")
        return result
    streams, dismissed = resolve_conjunctions(tokens, lex.units)
    for stream in streams:
        try:
            result.ingredients.append(_parse_stream(stream, lex, dismissed, result.warnings))
        except EmptyFoodItem as exc:
            result.warnings.append(f"EmptyFoodItem: {exc}")
    result.skipped = not result.ingredients and bool(raw.strip())
    return result


def parse_line(raw: str, lex: Lexicons) -> list[ParsedIngredient]:
    return parse_record(raw, lex).ingredients
