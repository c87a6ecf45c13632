"""Food composition database: ingestion, de-duplication and indexes.

``fcdb.tsv`` columns: id, description, fat, protein, sugar, saturated_fat,
sodium, portions. Macronutrients are grams per 100 g; sodium is given in
milligrams per 100 g in the file and stored in grams like everything else.
Portions are ``label=grams`` pairs separated by semicolons.
"""
from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .errors import MalformedRow, MissingFile, NegativeNutrient
from .lexicons import Lexicons
from .preprocess import PosSets, pos_sets, preprocess_line

NUTRIENTS = ("fat", "protein", "sugar", "saturated_fat", "sodium")
FCDB_COLUMNS = ("id", "description") + NUTRIENTS + ("portions",)
SODIUM_MG_PER_G = 1000.0


@dataclass(frozen=True)
class FoodRecord:
    id: str
    description: str
    sets: PosSets
    nutrients: dict = field(default_factory=dict)
    portion_weights: tuple = ()

    @property
    def lemmas(self):
        return self.sets.lemma_set

    @property
    def nouns(self):
        return self.sets.nouns

    @property
    def verbs(self):
        return self.sets.verbs

    @property
    def adjectives(self):
        return self.sets.adjectives

    @property
    def numbers(self):
        return self.sets.numbers


class FcdbIndex:
    """Records keyed by id plus a noun -> ids inverted index."""

    def __init__(self, records):
        self.records: dict[str, FoodRecord] = {}
        self.noun_index: dict[str, set[str]] = {}
        self.lemma_index: dict[frozenset, list[str]] = {}
        for rec in records:
            if rec.id in self.records:
                raise ValueError(f"duplicate FCDB id {rec.id!r}")
            self.records[rec.id] = rec
            for noun in rec.nouns:
                self.noun_index.setdefault(noun, set()).add(rec.id)
            self.lemma_index.setdefault(rec.lemmas, []).append(rec.id)

    @classmethod
    def from_records(cls, records, dedup=True):
        if dedup:
            records = dedup_records(records)
        return cls(records)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records.values())

    def __getitem__(self, rid):
        return self.records[rid]


def dedup_records(records):
    """Drop records whose lemma multiset was already seen (first one wins)."""
    seen = set()
    out = []
    for rec in records:
        key = tuple(sorted(Counter(rec.sets.lemmas).items()))
        if key in seen:
            continue
        seen.add(key)
        out.append(rec)
    return out


def _parse_portions(text, path, lineno):
    portions = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        label, sep, grams = chunk.rpartition("=")
        if not sep:
            raise MalformedRow(path, lineno, f"portion {chunk!r} is not label=grams")
        try:
            value = float(grams)
        except ValueError:
            raise MalformedRow(path, lineno, f"portion grams {grams!r}") from None
        if value <= 0:
            raise MalformedRow(path, lineno, f"portion grams must be > 0: {chunk!r}")
        portions.append((label.strip(), value))
    return tuple(portions)


def make_record(rid, description, nutrients, portions, lex: Lexicons) -> FoodRecord:
    sets = pos_sets(preprocess_line(description, lex))
    return FoodRecord(rid, description, sets, dict(nutrients), tuple(portions))


def read_fcdb_rows(path):
    """Yield ``(lineno, row dict)`` from an fcdb.tsv file."""
    path = Path(path)
    if not path.is_file():
        raise MissingFile(path)
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t")
        header = None
        for lineno, row in enumerate(reader, start=1):
            if not row or row[0].startswith("#"):
                continue
            if header is None:
                header = [c.strip() for c in row]
                if tuple(header) != FCDB_COLUMNS:
                    raise MalformedRow(path, lineno, f"header must be {FCDB_COLUMNS}")
                continue
            if len(row) != len(FCDB_COLUMNS):
                raise MalformedRow(path, lineno, f"expected {len(FCDB_COLUMNS)} columns")
            yield lineno, dict(zip(FCDB_COLUMNS, row))


def load_fcdb(path, lex: Lexicons) -> FcdbIndex:
    records = []
    ids = set()
    for lineno, row in read_fcdb_rows(path):
        rid = row["id"].strip()
        if not rid or not row["description"].strip():
            raise MalformedRow(path, lineno, "empty id or description")
        if rid in ids:
            raise MalformedRow(path, lineno, f"duplicate id {rid!r}")
        ids.add(rid)
        nutrients = {}
        for name in NUTRIENTS:
            try:
                value = float(row[name]) if row[name].strip() else 0.0
            except ValueError:
                raise MalformedRow(path, lineno, f"{name}={row[name]!r}") from None
            if value < 0:
                raise NegativeNutrient(rid, name, value)
            nutrients[name] = value / SODIUM_MG_PER_G if name == "sodium" else value
        portions = _parse_portions(row["portions"], path, lineno)
        records.append(make_record(rid, row["description"].strip(), nutrients, portions, lex))
    return FcdbIndex.from_records(records)


def write_fcdb(index: FcdbIndex, path):
    """Serialise an index back to fcdb.tsv (sodium written in mg)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(FCDB_COLUMNS)
        for rec in index:
            vals = [rec.nutrients.get(n, 0.0) for n in NUTRIENTS]
            vals[-1] *= SODIUM_MG_PER_G
            portions = ";".join(f"{label}={grams!r}" for label, grams in rec.portion_weights)
            w.writerow([rec.id, rec.description, *(repr(v) for v in vals), portions])
