"""Forward and backward flows on small graphs.

The forward flow e^{tA} is positive and, rescaled by e^{-t lambda_max},
tends to the Perron projector. The backward flow e^{-tA} has negative
entries; rescaled by e^{t lambda_min} it tends to the bottom projector.
"""

import math

import numpy as np

from adjflow import evolve, perron_vector, positivity_report, rescaled_limit
from adjflow.dynamics import ordering_chain_violation
from adjflow.named import cycle, path, paw

np.set_printoptions(precision=5, suppress=True)

# P2 by hand: e^{tA} = [[cosh t, sinh t], [sinh t, cosh t]]
print("e^{A}(1, 0) on P2  :", evolve(path(2), [1, 0], 1.0), "expected", (math.cosh(1), math.sinh(1)))

rep = positivity_report(path(2), 1.0)
print("backward min entry :", rep.backward_min_entry, "= -sinh 1 =", -math.sinh(1))

# C4 is 2-regular, so the forward limit is the averaging matrix
lim = rescaled_limit(cycle(4), "forward")
print("C4 forward rate    :", lim.rescale_rate)
print(lim.limit.entries)

# non-regular example: residual sits exactly on the envelope e^{-t * gap}
G = paw()
for k in (1, 5, 10):
    gap = rescaled_limit(G, "forward").gap
    r = rescaled_limit(G, "forward", t=k / gap)
    print(f"t = {k}/gap   residual {r.residual:.3e}   envelope {r.envelope:.3e}")
print("Perron vector      :", perron_vector(G))

# the entrywise ordering chain between adjacency, Laplacian and signless Laplacian flows
print("ordering chain margin at t = 1:", ordering_chain_violation(G, 1.0), "(<= 0 holds)")
