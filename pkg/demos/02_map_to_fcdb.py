"""
Mapping foods to a composition database
=======================================

Each food is described by its noun / verb / adjective / number lemma sets and
matched against every record through the tiered cascade.
"""
from recipenorm.fcdb import load_fcdb
from recipenorm.lexicons import data_path, load_lexicons
from recipenorm.mapper import match_text, similarity_index
from recipenorm.preprocess import describe

lex = load_lexicons()
db = load_fcdb(data_path("fixtures/fcdb.tsv"), lex)
print(len(db), "records loaded")

# the score behind tiers 2-4
a, b = describe("whole wheat flour", lex), describe("flour", lex)
print("similarity(whole wheat flour, flour) =", similarity_index(a, b))

for food in ["flour whole wheat", "milk", "eggs", "cocoa powder", "chickn breast"]:
    res = match_text(food, db, lex, cap=3)
    best = db[res.chosen]
    print(f"{food!r:22} tier {res.tier}  {best.id} {best.description}")
    for c in res.candidates[1:]:
        print(" " * 26, "also", c.id, "tier", c.tier, round(c.similarity, 3))
