"""
A graph with mu_1 + mu_2 above its order
========================================

K_{5k} joined to two disjoint copies of K_{8k} has order 21k and
mu_1 + mu_2 = (29k - 4 + k sqrt(329)) / 2 > 21k.
"""

# %%
from graphspec.constructions import (
    LIMIT_RATIO,
    UPPER_RATIO,
    GernertParams,
    gernert_certificate,
    gernert_graph,
    gernert_predicted_value,
)
from graphspec.formats import to_graph6

G = gernert_graph(GernertParams(1, 21))
print(G, to_graph6(G))

# %%
cert = gernert_certificate(1)
print("passed:", cert.passed)
for key in ("mu1", "mu2", "value", "predicted", "abs_error"):
    print(f"  {key:10s} {cert.info[key]}")

# %%
# The ratio value / (21k) increases towards (29 + sqrt 329) / 42,
# still short of the upper bound 2 / sqrt 3.
for k in (1, 2, 5, 10, 20, 100):
    print(f"k={k:3d}  ratio={gernert_predicted_value(k) / (21 * k):.7f}")
print(f"limit={LIMIT_RATIO:.7f}  upper={UPPER_RATIO:.7f}")
