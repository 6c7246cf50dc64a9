"""
Graphs, blow-ups and their spectra
==================================

Build small graphs, blow them up, and look at the adjacency spectrum.
"""

# %%
import numpy as np

from graphspec import graph as gc
from graphspec.formats import from_graph6, to_graph6
from graphspec.spectra import eigenvalues

# A triangle has spectrum [2, -1, -1].
K3 = gc.complete(3)
print("K3:", eigenvalues(K3).to_list())

# %%
# Blowing up K2 with independent sets of size 2 gives the 4-cycle.
C4 = gc.blowup_independent(gc.complete(2), 2)
print("C4 edges:", C4.edges())
print("C4 spectrum:", eigenvalues(C4).to_list())

# %%
# Independent blow-ups scale the spectrum by t and add zeros;
# clique blow-ups map each eigenvalue x to t*x + t - 1 and add -1's.
G = gc.join(gc.empty(1), gc.complete(3))
t = 3
base = eigenvalues(G).values
print("t * spec(G):         ", np.round(t * base, 6))
print("spec(G^(t)) (top n): ", np.round(eigenvalues(gc.blowup_independent(G, t)).values[: G.n], 6))
print("t*spec(G) + t - 1:   ", np.round(t * base + t - 1, 6))
print("spec(G^[t]) (top n): ", np.round(eigenvalues(gc.blowup_clique(G, t)).values[: G.n], 6))

# %%
# Every spectrum carries its own error bound, used as slack by the checks.
S = eigenvalues(gc.blowup_clique(G, t))
print(f"tol = {S.tol:.2e} after {S.sweeps} Jacobi sweeps")

# %%
# graph6 round trip, as used for witnesses.
s = to_graph6(C4)
print("graph6:", s, from_graph6(s) == C4)
