"""
From household measures to a per-100 g profile
==============================================
"""
from recipenorm.conversion import to_grams
from recipenorm.fcdb import load_fcdb
from recipenorm.lexicons import data_path, load_lexicons
from recipenorm.nutrition import recipe_profile

lex = load_lexicons()
db = load_fcdb(data_path("fixtures/fcdb.tsv"), lex)

print(to_grams(2, "cup", "flour", lex.conversions))   # food-specific row
print(to_grams(2, "cup", "water", lex.conversions))   # generic row
print(to_grams(150, "gram", "sugar", lex.conversions))
print(to_grams(2, None, "egg", lex.conversions, fcdb=(db, "F006")))  # portion weight

# mass-weighted mean: 50 g at 2, 150 g at 8, 300 g at 1 gives 3.2 g fat / 100 g
print(recipe_profile([(50, {"fat": 2}), (150, {"fat": 8}), (300, {"fat": 1})]))

# the same on real records
parts = [(250.0, db["F004"].nutrients), (100.0, db["F006"].nutrients)]
for k, v in recipe_profile(parts).items():
    print(f"  {k:12} {v:8.2f}")
