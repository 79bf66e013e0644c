"""
The exact oracle on small graphs
================================

Longest paths, their counts, and minimum transversals, from a path up to
the checked-in 12-vertex fixture whose longest paths avoid every single
vertex.
"""

# %%
# A handful of familiar graphs first.
import numpy as np

from lptrans.generators import fixture_walther_zamfirescu
from lptrans.oracle import count_longest_paths, enumerate_longest_paths, exact_lpt, is_transversal
from lptrans.recognizers import complete_graph, cycle_graph, path_graph

for name, g in [("P6", path_graph(6)), ("C7", cycle_graph(7)), ("K6", complete_graph(6))]:
    report = enumerate_longest_paths(g)
    k, witness = exact_lpt(g)
    print(f"{name}: longest path length {report.length}, {len(report)} paths, lpt {k} via {sorted(witness)}")

# %%
# Counting does not need the paths themselves, so it reaches much further.
for n in (8, 12, 16):
    print(f"K{n}: {count_longest_paths(complete_graph(n))} Hamiltonian paths")

# %%
# The fixture: every vertex is missed by some longest path, yet two vertices suffice.
g = fixture_walther_zamfirescu()
report = enumerate_longest_paths(g)
print(f"fixture: n={g.n} m={g.m} longest path length {report.length}, {len(report)} longest paths")

hits = np.zeros(g.n, dtype=int)
for path in report.paths:
    hits[list(path)] += 1
print("paths through each vertex:", hits.tolist())
print("single-vertex transversals:", [v for v in range(g.n) if is_transversal(g, {v})])

k, witness = exact_lpt(g)
print(f"minimum transversal size {k}: {sorted(witness)}")
