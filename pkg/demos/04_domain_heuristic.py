"""
Recipe vectors with and without the mass weighting
==================================================

A recipe vector is a combination of its ingredient vectors. The plain version
averages them; the weighted one lets each ingredient count in proportion to
its grams.
"""
import numpy as np

from recipenorm.embeddings import dh_weights, recipe_vector_baseline, recipe_vector_dh

rng = np.random.default_rng(0)
vecs = rng.normal(size=(3, 4))
grams = np.array([500.0, 20.0, 5.0])   # flour, butter, salt

print("weights", dh_weights(grams))
pairs = list(zip(grams, vecs))
print("weighted", recipe_vector_dh(pairs))
print("average ", recipe_vector_baseline(pairs))

# scaling the whole recipe changes nothing
print("x10     ", recipe_vector_dh(list(zip(grams * 10, vecs))))

# equal grams: both vectors coincide exactly
same = [(100.0, v) for v in vecs]
print("equal grams identical:",
      np.array_equal(recipe_vector_dh(same), recipe_vector_baseline(same)))
