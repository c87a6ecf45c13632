"""Loaders for the four domain dictionaries and the POS lexicon.

All files are flat text so that fixtures stay diffable:

* ``units.csv``        canonical,abbreviation,system
* ``redundant.txt``    one phrase per line
* ``brands.txt``       one brand per line
* ``conversions.csv``  unit,food_key,grams_per_unit (food_key may be empty)
* ``pos_lexicon.tsv``  token<TAB>lemma<TAB>pos_class

Lines starting with ``#`` and blank lines are ignored everywhere.
"""
from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import NamedTuple

from .errors import (
    DuplicateAbbreviation,
    EmptyLexicon,
    MalformedRow,
    MissingConversion,
    MissingFile,
    NonPositiveFactor,
)

UNIT_SYSTEMS = ("SI", "household", "apothecaries")
POS_CLASSES = ("noun", "verb", "adjective", "number", "other")

_NUMBER_RE = re.compile(r"^(\d+(\.\d+)?%?|\d+/\d+)$")


def data_path(name: str) -> Path:
    """Path of a file bundled in ``recipenorm/data``."""
    return Path(str(resources.files("recipenorm") / "data" / name))


def _lines(path):
    path = Path(path)
    if not path.is_file():
        raise MissingFile(path)
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            yield lineno, line


def _surface(text: str) -> tuple[str, ...]:
    return tuple(text.lower().split())


@dataclass(frozen=True)
class UnitLexicon:
    """Surface form (as a lowercase token tuple) -> canonical unit."""

    surfaces: dict[tuple[str, ...], str]
    systems: dict[str, str]

    @property
    def canonical(self) -> list[str]:
        return sorted(self.systems)

    @property
    def max_len(self) -> int:
        return max(len(s) for s in self.surfaces)

    def lookup(self, text: str) -> str | None:
        return self.surfaces.get(_surface(text))

    def __len__(self):
        return len(self.systems)

    def __contains__(self, unit):
        return unit in self.systems


@dataclass(frozen=True)
class RedundantLexicon:
    """Phrases to delete, stored longest-first as lowercase token tuples."""

    phrases: tuple[tuple[str, ...], ...]

    def __len__(self):
        return len(self.phrases)


@dataclass(frozen=True)
class BrandLexicon:
    brands: tuple[str, ...]
    _pattern: re.Pattern | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.brands:
            # longest first so "Dr. Pepper Zero" wins over "Dr. Pepper"
            alts = sorted(self.brands, key=lambda b: (-len(b), b.lower()))
            pat = r"(?<![\w&])(" + "|".join(re.escape(b) for b in alts) + r")(?![\w&])"
            object.__setattr__(self, "_pattern", re.compile(pat, re.IGNORECASE))

    def finditer(self, text: str):
        if self._pattern is None:
            return iter(())
        return self._pattern.finditer(text)

    def __contains__(self, text):
        return text.lower() in {b.lower() for b in self.brands}

    def __len__(self):
        return len(self.brands)


@dataclass(frozen=True)
class ConversionTable:
    """``(unit, food_key)`` -> grams per unit; ``food_key`` None is the generic row."""

    rows: dict[tuple[str, tuple[str, ...] | None], float]

    def units(self) -> set[str]:
        return {u for u, _ in self.rows}

    def lookup(self, unit: str, food_tokens=()) -> tuple[float, str] | None:
        """Return ``(grams_per_unit, source)`` or None.

        Food-specific rows shadow the generic row; among several matching
        food keys the longest one wins (ties broken alphabetically).
        """
        food_tokens = tuple(food_tokens)
        best = None
        for (u, key), factor in self.rows.items():
            if u != unit or key is None:
                continue
            if _contains_run(food_tokens, key):
                rank = (-len(key), key)
                if best is None or rank < best[0]:
                    best = (rank, factor)
        if best is not None:
            return best[1], "table_food_specific"
        generic = self.rows.get((unit, None))
        if generic is not None:
            return generic, "table_generic"
        return None


def _contains_run(tokens, key):
    n = len(key)
    return any(tokens[i:i + n] == key for i in range(len(tokens) - n + 1))


class PosEntry(NamedTuple):
    lemma: str
    pos: str


@dataclass(frozen=True)
class PosLexicon:
    entries: dict[str, PosEntry]

    def lookup(self, token: str) -> PosEntry:
        low = token.lower()
        hit = self.entries.get(low)
        if hit is not None:
            return hit
        if _NUMBER_RE.match(low):
            return PosEntry(low, "number")
        return PosEntry(low, "other")

    def __len__(self):
        return len(self.entries)


class Lexicons(NamedTuple):
    units: UnitLexicon
    redundant: RedundantLexicon
    brands: BrandLexicon
    conversions: ConversionTable
    pos: PosLexicon


def load_units(path) -> UnitLexicon:
    surfaces: dict[tuple[str, ...], str] = {}
    systems: dict[str, str] = {}
    for lineno, line in _lines(path):
        row = next(csv.reader([line]))
        if [c.strip() for c in row] == ["canonical", "abbreviation", "system"]:
            continue
        if len(row) != 3:
            raise MalformedRow(path, lineno, "expected canonical,abbreviation,system")
        canonical, abbrev, system = (c.strip() for c in row)
        canonical = canonical.lower()
        if not canonical or not abbrev:
            raise MalformedRow(path, lineno, "empty field")
        if system not in UNIT_SYSTEMS:
            raise MalformedRow(path, lineno, f"unknown system {system!r}")
        if systems.setdefault(canonical, system) != system:
            raise MalformedRow(path, lineno, f"{canonical!r} listed under two systems")
        for form in (canonical, abbrev):
            key = _surface(form)
            prev = surfaces.get(key)
            if prev is not None and prev != canonical:
                raise DuplicateAbbreviation(" ".join(key), prev, canonical)
            surfaces[key] = canonical
    if not systems:
        raise EmptyLexicon(path)
    return UnitLexicon(surfaces, systems)


def load_redundant(path) -> RedundantLexicon:
    # phrases are normalised exactly like input text so "half an hour" still matches
    from .preprocess import normalize_chars, replace_number_words

    seen: dict[tuple[str, ...], int] = {}
    for lineno, line in _lines(path):
        key = _surface(replace_number_words(normalize_chars(line)))
        if not key:
            raise MalformedRow(path, lineno, "phrase is empty after normalisation")
        if key in seen:
            raise MalformedRow(path, lineno, f"duplicate phrase (first on line {seen[key]})")
        seen[key] = lineno
    if not seen:
        raise EmptyLexicon(path)
    # stable sort keeps file order among equal lengths
    phrases = sorted(seen, key=lambda p: -len(p))
    return RedundantLexicon(tuple(phrases))


def load_brands(path) -> BrandLexicon:
    brands = []
    folded = set()
    for lineno, line in _lines(path):
        brand = line.strip()
        if brand.lower() in folded:
            raise MalformedRow(path, lineno, "duplicate brand")
        folded.add(brand.lower())
        brands.append(brand)
    if not brands:
        raise EmptyLexicon(path)
    return BrandLexicon(tuple(brands))


def load_conversions(path) -> ConversionTable:
    rows = {}
    for lineno, line in _lines(path):
        row = next(csv.reader([line]))
        if [c.strip() for c in row] == ["unit", "food_key", "grams_per_unit"]:
            continue
        if len(row) != 3:
            raise MalformedRow(path, lineno, "expected unit,food_key,grams_per_unit")
        unit, food, factor_text = (c.strip() for c in row)
        if not unit:
            raise MalformedRow(path, lineno, "empty unit")
        try:
            factor = float(factor_text)
        except ValueError:
            raise MalformedRow(path, lineno, f"bad factor {factor_text!r}") from None
        if not factor > 0:
            raise NonPositiveFactor(path, lineno, factor)
        key = (unit.lower(), _surface(food) or None)
        if key in rows:
            raise MalformedRow(path, lineno, "duplicate conversion row")
        rows[key] = factor
    if not rows:
        raise EmptyLexicon(path)
    return ConversionTable(rows)


def load_pos(path) -> PosLexicon:
    entries = {}
    for lineno, line in _lines(path):
        parts = [p.strip() for p in line.split("\t")]
        if parts == ["token", "lemma", "pos_class"]:
            continue
        if len(parts) != 3 or not parts[0] or not parts[1]:
            raise MalformedRow(path, lineno, "expected token<TAB>lemma<TAB>pos_class")
        token, lemma, pos = parts
        if pos not in POS_CLASSES:
            raise MalformedRow(path, lineno, f"unknown POS class {pos!r}")
        if token.lower() in entries:
            raise MalformedRow(path, lineno, "duplicate token")
        entries[token.lower()] = PosEntry(lemma.lower(), pos)
    if not entries:
        raise EmptyLexicon(path)
    return PosLexicon(entries)


def load_lexicons(units=None, redundant=None, brands=None, conversions=None,
                  pos=None) -> Lexicons:
    """Load all dictionaries; any path left as None uses the bundled file.

    Raises MissingConversion if a canonical unit has no conversion row.
    """
    lex = Lexicons(
        load_units(units or data_path("units.csv")),
        load_redundant(redundant or data_path("redundant.txt")),
        load_brands(brands or data_path("brands.txt")),
        load_conversions(conversions or data_path("conversions.csv")),
        load_pos(pos or data_path("pos_lexicon.tsv")),
    )
    covered = lex.conversions.units()
    for unit in lex.units.canonical:
        if unit not in covered:
            raise MissingConversion(unit)
    return lex
