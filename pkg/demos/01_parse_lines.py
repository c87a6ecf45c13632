"""
Parsing ingredient lines
========================

Raw recipe lines go in, (quantity, unit, food) triples come out.
"""
from recipenorm.lexicons import load_lexicons
from recipenorm.parser import parse_record

lex = load_lexicons()  # bundled units, phrases, brands, conversions, POS table

lines = [
    "2 cups whole wheat flour",
    "15 grams baking powder",
    "300 milliliters 3.5% milk",
    "1 (500 grams) container Greek yogurt",     # bracketed amount wins
    "5 to 6 anchovies add 1 teaspoon red pepper flakes",  # split into two
    "half a lemon",
    "salt, to taste",
]

for raw in lines:
    res = parse_record(raw, lex)
    print(raw)
    for ing in res.ingredients:
        print("   ->", ing.quantity, ing.unit, repr(ing.food))
    for w in res.warnings:
        print("   !", w)
