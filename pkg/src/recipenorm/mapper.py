"""Map ingredients to FCDB records with an ordered five-tier lexical ensemble.

A record is admitted at the first tier it satisfies:

1. same set of lemmas
2. same set of nouns and similarity_index > 0
3. shared noun and similarity_index > 0
4. shared noun/verb/adjective/number and similarity_index > 0
5. Levenshtein distance of the concatenated lemmas below the length of the
   ingredient's concatenated lemmas

Because similarity_index > 0 already implies a shared noun, tier 4 can only
fire where tier 3 would have; it is evaluated anyway to keep the cascade whole.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NoMatch
from .fcdb import FcdbIndex
from .preprocess import PosSets, describe, pos_sets  # noqa: F401  (re-exported)

DEFAULT_CAP = 10


def similarity_index(i: PosSets, j: PosSets) -> float:
    """Noun overlap times Laplace-smoothed overlap of verbs/adjectives/numbers."""
    noun_union = len(i.nouns | j.nouns)
    if not noun_union:
        return 0.0
    vi, vj = i.van, j.van
    # one integer division, so equal rationals always give equal floats and
    # ranking ties fall through to the id
    num = len(i.nouns & j.nouns) * (len(vi & vj) + 1)
    return num / (noun_union * (len(vi | vj) + 2))


def levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def _levenshtein_below(a: str, b: str, limit: int):
    """Distance if it is < limit, else None (stops early once a row exceeds it)."""
    if abs(len(a) - len(b)) >= limit:
        return None
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        if min(cur) >= limit:
            return None
        prev = cur
    return prev[-1] if prev[-1] < limit else None


@dataclass(frozen=True)
class Candidate:
    id: str
    tier: int
    similarity: float
    levenshtein: int | None = None

    def sort_key(self):
        lev = self.levenshtein if self.levenshtein is not None else -1
        return (self.tier, -self.similarity, lev, self.id)


@dataclass
class MatchResult:
    ingredient: str
    candidates: list = field(default_factory=list)
    total: int = 0

    @property
    def chosen(self):
        return self.candidates[0].id if self.candidates else None

    @property
    def tier(self):
        return self.candidates[0].tier if self.candidates else None

    @property
    def similarity(self):
        return self.candidates[0].similarity if self.candidates else None

    def to_dict(self):
        return {
            "food": self.ingredient,
            "chosen_id": self.chosen,
            "tier": self.tier,
            "similarity": self.similarity,
            "candidates": [{"id": c.id, "tier": c.tier, "similarity": c.similarity,
                            "levenshtein": c.levenshtein} for c in self.candidates],
        }


def tier_of(ing: PosSets, rec: PosSets):
    """(tier, similarity, levenshtein) for one pair, or None if no tier holds."""
    sim = similarity_index(ing, rec)
    if ing.lemma_set == rec.lemma_set:
        return 1, sim, None
    if sim > 0:
        if ing.nouns == rec.nouns:
            return 2, sim, None
        if ing.nouns & rec.nouns:
            return 3, sim, None
        if ing.content & rec.content:
            return 4, sim, None
    target = ing.concat
    lev = _levenshtein_below(rec.concat, target, len(target))
    if lev is not None:
        return 5, sim, lev
    return None


def match_ingredient(ing: PosSets, fcdb: FcdbIndex, food: str | None = None,
                     cap: int | None = DEFAULT_CAP) -> MatchResult:
    """Rank every admissible FCDB record for one ingredient; raises NoMatch."""
    found: dict[str, Candidate] = {}

    for rid in fcdb.lemma_index.get(ing.lemma_set, ()):
        found[rid] = Candidate(rid, 1, similarity_index(ing, fcdb[rid].sets))

    # tiers 2-4 all need similarity > 0, i.e. at least one shared noun
    near = set()
    for noun in ing.nouns:
        near |= fcdb.noun_index.get(noun, set())
    for rid in near - found.keys():
        hit = tier_of(ing, fcdb[rid].sets)
        if hit is not None:
            found[rid] = Candidate(rid, *hit)

    target = ing.concat
    if target:
        for rec in fcdb:
            if rec.id in found or rec.id in near:
                continue
            lev = _levenshtein_below(rec.sets.concat, target, len(target))
            if lev is not None:
                found[rec.id] = Candidate(rec.id, 5, similarity_index(ing, rec.sets), lev)

    label = food if food is not None else target
    if not found:
        raise NoMatch(label)
    ranked = sorted(found.values(), key=Candidate.sort_key)
    return MatchResult(label, ranked[:cap] if cap else ranked, total=len(ranked))


def match_text(food: str, fcdb: FcdbIndex, lex, cap=DEFAULT_CAP) -> MatchResult:
    return match_ingredient(describe(food, lex), fcdb, food=food, cap=cap)
