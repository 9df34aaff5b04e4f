"""Reading the cycles of a graph off the spectrum of its line graph.

Two triangles joined by a bridge: the line graph has -2 as a simple
eigenvalue because the pre-line graph has two odd cycles. The backward
flow, rescaled by e^{-2t}, settles on the corresponding projector.
"""

import numpy as np

from adjflow import detect_cycle_structure, incidence, line_graph, minus_two_multiplicity_formula
from adjflow.detect import minus_two_flow
from adjflow.graph import adjacency_int
from adjflow.named import c4_pendant, path, two_triangles

np.set_printoptions(precision=4, suppress=True, linewidth=110)

H = two_triangles()
M = line_graph(H)
print("pre-line edges      :", H.edges)
print("line-graph vertices :", M.line.vertices)

# the adjacency of L(H) is a Gram matrix of incidence columns, shifted by 2
J = incidence(H).matrix
print("A = J^T J - 2I      :", np.array_equal(adjacency_int(M.line), J.T @ J - 2 * np.eye(H.m, dtype=int)))

rep = detect_cycle_structure(H)
print("multiplicity of -2  :", rep.multiplicity_formula, "(formula)", rep.multiplicity_spectral, "(spectrum)")
print("classification      :", rep.classification)
u = rep.eigenbasis[0]
print("eigenvector / u[0]  :", u / u[0])
print("10 * projector:\n", 10 * rep.projector.entries)

# e^{-2t} e^{-tA} converges to the projector; the error decays like e^{-t * gap}
for t in (1.0, 5.0, 20.0):
    err = np.abs(minus_two_flow(M.line, t) - rep.projector.entries).max()
    print(f"t = {t:5.1f}  |e^(-2t) e^(-tA) - P| = {err:.3e}")

# an even cycle alone also gives -2; a tree gives nothing
for name, G in (("C4 + pendant", c4_pendant()), ("P4 (tree)", path(4))):
    print(f"{name:14s} -> multiplicity {minus_two_multiplicity_formula(G)}")
