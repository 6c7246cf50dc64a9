"""
Searching for extremal graphs
=============================

Exhaustive enumeration for small orders, seeded hill climbing beyond.
"""

# %%
import sys

from graphspec.functional import All, KrFree, preset
from graphspec.search import SearchPolicy, exhaustive, phi_table, stochastic, write_csv

F = preset("mu1+mu2")
rec = exhaustive(5, F, All())
print(rec.to_dict())

# %%
# phi(n) = max F / n, small orders exactly.
write_csv(phi_table(F, All(), range(2, 7)), out=sys.stdout)

# %%
# At n = 21 hill climbing already finds graphs with mu_1 + mu_2 > 21.
best = []
rec = stochastic(21, F, All(), seed=1, restarts=4, steps=500, callback=lambda r, v: best.append(v))
print(f"value={rec.value:.4f} after {rec.evaluations} evaluations, {len(best)} accepted flips")

# %%
# Restricting to triangle-free graphs.
rec = stochastic(12, preset("mu1+mun"), KrFree(3), seed=0, restarts=4, steps=500)
print(rec.to_dict())

# %%
# Larger orders with the first restart seeded from the construction.
policy = SearchPolicy(restarts=1, steps=20, seed=0, seed_with_gernert=True)
write_csv(phi_table(F, All(), [21], policy), out=sys.stdout)
