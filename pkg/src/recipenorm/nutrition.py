"""Per-100 g nutrient profile of a recipe from its gram-quantified ingredients."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import EmptyRecipe, NonPositiveGrams
from .fcdb import NUTRIENTS

log = logging.getLogger(__name__)


def recipe_profile(ingredients) -> dict[str, float]:
    """Gram-weighted mean of per-100 g ingredient profiles.

    ``ingredients`` is a sequence of ``(grams, profile)`` pairs where
    ``profile`` maps nutrient name to grams per 100 g of that ingredient.
    Each ingredient contributes ``grams / total`` of its per-100 g value,
    i.e. its share of 100 g of the finished recipe.
    """
    ingredients = list(ingredients)
    if not ingredients:
        raise EmptyRecipe("recipe has no quantified ingredients")
    for k, (g, _) in enumerate(ingredients):
        if not g > 0:
            raise NonPositiveGrams(k, g)
    total = sum(g for g, _ in ingredients)
    profile = {n: sum(g * p.get(n, 0.0) for g, p in ingredients) / total
               for n in NUTRIENTS}
    if profile["saturated_fat"] > profile["fat"] + 1e-9:
        log.warning("saturated fat %.3f exceeds fat %.3f", profile["saturated_fat"],
                    profile["fat"])
    return profile


@dataclass
class Recipe:
    title: str
    ingredients: list = field(default_factory=list)  # dicts with grams + fcdb_id
    profile: dict | None = None
    total_grams: float = 0.0
    parsed_grams: float = 0.0

    @property
    def coverage(self):
        """Matched grams over all gram-quantified grams (0 when nothing parsed)."""
        return self.total_grams / self.parsed_grams if self.parsed_grams else 0.0

    def to_dict(self):
        return {"title": self.title, "total_grams": self.total_grams,
                "coverage": self.coverage, "profile": self.profile,
                "ingredients": self.ingredients}


def build_recipe(title, ingredients, fcdb) -> Recipe:
    """Assemble a Recipe from ingredient dicts carrying ``grams`` and ``fcdb_id``.

    Ingredients without grams or without a match are kept in the record but
    left out of the profile; coverage reports how much mass made it in.
    """
    used = []
    parsed = 0.0
    for ing in ingredients:
        g = ing.get("grams")
        if not g or g <= 0:
            continue
        parsed += g
        rid = ing.get("fcdb_id")
        if rid is None:
            continue
        used.append((g, fcdb[rid].nutrients))
    recipe = Recipe(title, list(ingredients), parsed_grams=parsed)
    if used:
        recipe.profile = recipe_profile(used)
        recipe.total_grams = sum(g for g, _ in used)
    return recipe
