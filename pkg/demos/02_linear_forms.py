"""
Linear forms of extremal eigenvalues
====================================

A form F weights the k largest and k smallest eigenvalues of a graph and of
its complement. Presets cover the classical objectives.
"""

# %%
from graphspec import graph as gc
from graphspec.functional import (
    KrFree,
    LinearForm,
    RPartite,
    coefficient_norm,
    evaluate,
    member,
    preset,
)

C5 = gc.Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
for name in ("mu1+mun", "mu1-mun", "mu1+mu2", "mu1+cmu1"):
    print(f"{name:9s} on the 5-cycle:", round(evaluate(preset(name), C5), 6))

# %%
# Custom coefficients: 2 mu_1 - mu_n(complement).
F = LinearForm.make(alpha=[2], delta=[-1])
G = gc.join(gc.empty(2), gc.complete(3))
print("F(G) =", evaluate(F, G), " |F(G)| <= M n =", coefficient_norm(F) * G.n)

# %%
# Forms are linear and can be serialized for the CLI's --form-file.
H = preset("mu1+mu2") + 0.5 * LinearForm.make(alpha=[0, 0], gamma=[1, 0])
print(H.to_json())

# %%
# Families are closed under blow-ups and under adding isolated vertices.
for P in (KrFree(3), RPartite(2), RPartite(3)):
    print(P, member(P, C5), member(P, gc.blowup_independent(C5, 3)), member(P, gc.add_isolated(C5, 4)))
