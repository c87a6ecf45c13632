"""Quantity -> grams via the conversion table, with FCDB portion fallback."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NegativeQuantity, NoPortionWeight, UnknownUnit
from .lexicons import ConversionTable

GRAM = "gram"


@dataclass(frozen=True)
class GramAmount:
    grams: float
    source: str  # table_generic | table_food_specific | portion_fallback | already_grams


def to_grams(qty, unit, food, table: ConversionTable, fcdb=None) -> GramAmount:
    """Convert ``qty`` of ``unit`` of ``food`` to grams.

    ``food`` is matched against food-specific rows token by token, so pass the
    lemmatised food text ("garlic", not "garlics"). ``fcdb`` is an optional
    ``(FcdbIndex, record_id)`` pair used when the unit is missing.
    """
    if qty < 0:
        raise NegativeQuantity(qty)
    if unit == GRAM:
        return GramAmount(float(qty), "already_grams")
    if unit is not None:
        hit = table.lookup(unit, food.lower().split())
        if hit is None:
            raise UnknownUnit(unit)
        factor, source = hit
        return GramAmount(qty * factor, source)
    if fcdb is not None:
        index, rid = fcdb
        rec = index[rid] if rid is not None else None
        if rec is not None and rec.portion_weights:
            # first listed portion; FCDB lists the common serving first
            return GramAmount(qty * rec.portion_weights[0][1], "portion_fallback")
    raise NoPortionWeight(food)
