"""Slow, independent reference implementations used to cross-check the package.

Nothing here imports the code under test; the oracles only read plain
attributes (nouns, verbs, adjectives, numbers, lemmas) off whatever objects
they are given.
"""
from fractions import Fraction
from functools import lru_cache


def lev(a, b):
    """Edit distance by memoised recursion (not the row DP used in the package)."""
    @lru_cache(maxsize=None)
    def d(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        return min(d(i - 1, j) + 1, d(i, j - 1) + 1, d(i - 1, j - 1) + (a[i - 1] != b[j - 1]))
    return d(len(a), len(b))


def sim(i, j):
    """Similarity index as an exact Fraction."""
    ni, nj = set(i.nouns), set(j.nouns)
    if not ni | nj:
        return Fraction(0)
    p_n = Fraction(len(ni & nj), len(ni | nj))
    vi = set(i.verbs) | set(i.adjectives) | set(i.numbers)
    vj = set(j.verbs) | set(j.adjectives) | set(j.numbers)
    return p_n * Fraction(len(vi & vj) + 1, len(vi | vj) + 2)


def tier(ing, rec):
    s = sim(ing, rec)
    if set(ing.lemmas) == set(rec.lemmas):
        return 1, s, None
    content_i = set(ing.nouns) | set(ing.verbs) | set(ing.adjectives) | set(ing.numbers)
    content_r = set(rec.nouns) | set(rec.verbs) | set(rec.adjectives) | set(rec.numbers)
    if s > 0 and set(ing.nouns) == set(rec.nouns):
        return 2, s, None
    if s > 0 and set(ing.nouns) & set(rec.nouns):
        return 3, s, None
    if s > 0 and content_i & content_r:
        return 4, s, None
    a, b = " ".join(rec.lemmas), " ".join(ing.lemmas)
    d = lev(a, b)
    if d < len(b):
        return 5, s, d
    return None


def brute_force_match(ing, records):
    """Every record scored by every tier; returns [(id, tier, sim, lev)] ranked."""
    out = []
    for rid, sets in records:
        t = tier(ing, sets)
        if t is not None:
            out.append((rid, *t))
    out.sort(key=lambda c: (c[1], -c[2], -1 if c[3] is None else c[3], c[0]))
    return out


def weighted_profile(ingredients, nutrient):
    """Gram-weighted mean in exact arithmetic."""
    total = sum(Fraction(g) for g, _ in ingredients)
    return sum(Fraction(g) * Fraction(p[nutrient]) for g, p in ingredients) / total


def solve(A, b):
    """Gauss-Jordan elimination over Fractions; A is a list of rows."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        M[c] = [x / M[c][c] for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                M[r] = [x - M[r][c] * y for x, y in zip(M[r], M[c])]
    return [row[-1] for row in M]


def normal_equations(X, y, lam=0):
    """(X'X + lam I)^-1 X'y by hand, exact."""
    d = len(X[0])
    XtX = [[sum(Fraction(r[i]) * Fraction(r[j]) for r in X) + (lam if i == j else 0)
            for j in range(d)] for i in range(d)]
    Xty = [sum(Fraction(r[i]) * Fraction(v) for r, v in zip(X, y)) for i in range(d)]
    return solve(XtX, Xty)
