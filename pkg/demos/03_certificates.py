"""
Numerical certificates
======================

Each check lists its sub-inequalities, the smallest slack (margin) and the
numerical slack it allows.
"""

# %%
from graphspec import graph as gc
from graphspec import verify
from graphspec.functional import All, preset
from graphspec.sampling import random_graph, rng_for

rng = rng_for(0, "demo")
G = random_graph(9, rng)

for report in (
    verify.check_blowup_spectrum_clique(G, 3),
    verify.check_lemma_blowup_bounds(G, 2, 3),
    verify.check_vertex_deletion_bounds(G, 4),
    verify.check_subset_deletion_bounds(G, [0, 5]),
    verify.check_interlacing(G, 4),
    verify.check_prop1_chain(G),
):
    print(f"{report.name:28s} passed={report.passed} margin={report.margin:+.4f} slack={report.numerical_slack:.1e}")

# %%
# The four steps behind mu_1 + mu_2 <= 2n / sqrt(3).
for d in verify.check_prop1_chain(G).details:
    print(f"  {d.label:20s} {d.lhs:10.4f} <= {d.rhs:10.4f}")

# %%
# Amplification: blow the diamond up to order 12; F(G1)/N matches F(G)/n.
diamond = gc.complete(4).flip(2, 3)
rep = verify.amplify(diamond, preset("mu1+mu2"), All(), 12, c_ref=0.65, eps=0.01)
print(rep.to_dict())

# %%
# Seeded suites, as run by `graphspec verify`.
reports = verify.run_suite("all", trials=10, seed=7)
print(sum(r.passed for r in reports), "of", len(reports), "checks passed")
