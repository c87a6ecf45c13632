"""Ingredient and recipe vectors built from a pre-trained embedding table.

Table files use the word2vec text layout: a ``<count> <dimension>`` header
followed by ``token v1 ... vd`` lines. Spaces inside keys are written as
underscores.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import AllTokensOOV, DimensionMismatch, MalformedRow, MissingFile, ZeroTotalMass

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class EmbeddingTable:
    dimension: int
    vectors: dict  # token -> np.ndarray

    def __contains__(self, token):
        return token in self.vectors

    def __len__(self):
        return len(self.vectors)

    def __getitem__(self, token):
        return self.vectors[token]


def key_of(text: str) -> str:
    return "_".join(text.split())


def load_table(path) -> EmbeddingTable:
    path = Path(path)
    if not path.is_file():
        raise MissingFile(path)
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise MalformedRow(path, 1, "header must be '<count> <dimension>'")
        count, dim = int(header[0]), int(header[1])
        if dim <= 0:
            raise MalformedRow(path, 1, "dimension must be positive")
        vectors = {}
        for lineno, line in enumerate(fh, start=2):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != dim + 1:
                raise DimensionMismatch(f"{path}:{lineno}: expected {dim} values")
            if parts[0] in vectors:
                raise MalformedRow(path, lineno, f"duplicate token {parts[0]!r}")
            vec = np.array([float(v) for v in parts[1:]])
            if not np.all(np.isfinite(vec)):
                raise MalformedRow(path, lineno, "non-finite value")
            vectors[parts[0]] = vec
    if len(vectors) != count:
        raise MalformedRow(path, 1, f"header says {count} vectors, found {len(vectors)}")
    return EmbeddingTable(dim, vectors)


def write_table(path, vectors: dict, dimension: int):
    """Write ``key -> vector`` in lexicographic key order."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(vectors)} {dimension}\n")
        for key in sorted(vectors):
            vals = " ".join(repr(float(v)) for v in vectors[key])
            fh.write(f"{key_of(key)} {vals}\n")


def ingredient_vector(food: str, table: EmbeddingTable, mode="average", warnings=None):
    """Sum or mean of the token vectors of ``food``; OOV tokens are skipped."""
    if mode not in ("sum", "average"):
        raise ValueError(f"mode must be 'sum' or 'average', not {mode!r}")
    hits = []
    for tok in food.lower().split():
        if tok in table:
            hits.append(table[tok])
        else:
            log.debug("OOV token %r in %r", tok, food)
            if warnings is not None:
                warnings.append(f"OOV token {tok!r} in {food!r}")
    if not hits:
        raise AllTokensOOV(food)
    stacked = np.vstack(hits)
    return stacked.sum(axis=0) if mode == "sum" else stacked.mean(axis=0)


def _stack(vectors):
    vectors = [np.asarray(v, dtype=float) for v in vectors]
    if not vectors:
        raise ZeroTotalMass("no ingredient vectors")
    dims = {v.shape for v in vectors}
    if len(dims) != 1 or len(next(iter(dims))) != 1:
        raise DimensionMismatch(f"ingredient vectors have shapes {sorted(dims)}")
    return np.vstack(vectors)


def _combine(E, weights):
    # every merge goes through here so that uniform weights reproduce the plain
    # mean bit for bit
    return (weights @ E) / weights.sum()


def dh_weights(grams) -> np.ndarray:
    g = np.asarray(grams, dtype=float)
    if np.any(g < 0):
        raise ValueError("grams must be non-negative")
    if not g.sum() > 0:
        raise ZeroTotalMass("total grams must be positive")
    return g / g.sum()


def recipe_vector_dh(ingredients) -> np.ndarray:
    """Domain-heuristic recipe vector: ingredient vectors weighted by mass share.

    ``ingredients`` is a sequence of ``(grams, vector)``. The result is the
    convex combination sum_i (g_i / G) e_i, so only mass ratios matter.
    """
    ingredients = list(ingredients)
    if not ingredients:
        raise ZeroTotalMass("no ingredients")
    grams = np.array([g for g, _ in ingredients], dtype=float)
    E = _stack([v for _, v in ingredients])
    if np.any(grams < 0):
        raise ValueError("grams must be non-negative")
    top = grams.max()
    if not top > 0:
        raise ZeroTotalMass("total grams must be positive")
    return _combine(E, grams / top)


def recipe_vector_baseline(ingredients, mode="average") -> np.ndarray:
    """Unweighted sum or mean of ingredient vectors; grams, if given, are ignored."""
    vectors = [v[1] if isinstance(v, tuple) else v for v in ingredients]
    E = _stack(vectors)
    if mode == "sum":
        return E.sum(axis=0)
    if mode == "average":
        return _combine(E, np.ones(len(E)))
    raise ValueError(f"mode must be 'sum' or 'average', not {mode!r}")


def build_corpora(recipes, table: EmbeddingTable, out_dir, mode="average",
                  baseline_mode="average"):
    """Write ingredient and recipe corpora; returns a summary dict.

    ``recipes`` is an iterable of ``(key, [(food, grams), ...])``. Foods that
    are entirely out of vocabulary are skipped for that recipe, never fatal.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ing_vecs, dh, base = {}, {}, {}
    warnings = []
    for key, items in recipes:
        pairs = []
        for food, grams in items:
            k = food.lower()
            if k not in ing_vecs:
                try:
                    ing_vecs[k] = ingredient_vector(food, table, mode)
                except AllTokensOOV as exc:
                    warnings.append(f"{key}: {exc}")
                    ing_vecs[k] = None
            if ing_vecs[k] is not None and grams is not None and grams > 0:
                pairs.append((grams, ing_vecs[k]))
        if not pairs:
            warnings.append(f"{key}: no usable ingredient vectors")
            continue
        dh[key] = recipe_vector_dh(pairs)
        base[key] = recipe_vector_baseline(pairs, baseline_mode)
    ing_vecs = {k: v for k, v in ing_vecs.items() if v is not None}
    paths = {
        "ingredients": out_dir / "ingredient_embeddings.txt",
        "recipes_dh": out_dir / "recipe_embeddings_dh.txt",
        "recipes_baseline": out_dir / "recipe_embeddings_baseline.txt",
    }
    write_table(paths["ingredients"], ing_vecs, table.dimension)
    write_table(paths["recipes_dh"], dh, table.dimension)
    write_table(paths["recipes_baseline"], base, table.dimension)
    return {"paths": paths, "n_ingredients": len(ing_vecs), "n_recipes": len(dh),
            "warnings": warnings}
