"""Quasilinear flows and generalised line graphs.

A_p u = J^T(|Ju|^{p-2} Ju) - 2^{p-1} u is the gradient of an energy; on
even cycles it has the constant and alternating eigenfunctions with
eigenvalues +-2^{p-1}. Generalised line graphs add pairs of petal columns
to the incidence matrix; the -2 multiplicity formula then counts petals.
"""

import numpy as np

from adjflow import generalized_line_graph, line_graph, p_apply, p_energy
from adjflow.extensions import compare_multiplicities, p_energy_gradient_fd
from adjflow.named import cycle

M = line_graph(cycle(8))
one = np.ones(8)
alt = np.array([(-1.0) ** k for k in range(8)])
for p in (1.5, 3.0, 4.0):
    print(f"p = {p}:  A_p 1 = {p_apply(M, p, one)[0]:+.4f}  A_p alt / alt = {(p_apply(M, p, alt) / alt)[0]:+.4f}  2^(p-1) = {2 ** (p - 1):.4f}")

u = np.random.default_rng(1).standard_normal(8)
grad_err = np.abs(p_energy_gradient_fd(M, 3.0, u) - p_apply(M, 3.0, u)).max()
print("finite-difference gradient error:", grad_err)
print("energy before / after one Euler step:", p_energy(M, 3.0, u), p_energy(M, 3.0, u - 1e-3 * p_apply(M, 3.0, u)))

for petals in ({}, {"1": 1}, {"1": 2}):
    S = generalized_line_graph(cycle(4), petals)
    c = compare_multiplicities(S)
    print(f"C4 petals {petals!s:10s} |V(G)| = {S.G.n}  formula {c.petal_formula}  with beta {c.bipartite_corrected}  spectrum {c.spectral}")
