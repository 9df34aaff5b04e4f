"""Heat kernels of Z and Z^2 against finite sections.

On Z the kernel of e^{tA} is I_{|v-w|}(2t). A finite box only counts the
walks that stay inside it, so its entries approach the kernel from below
as the box grows.
"""

import math

from adjflow import LatticeSpec, bessel_i, truncation_compare, z_kernel, zn_kernel

print("I_1(1)   =", bessel_i(1, 1.0))
print("I_0(2)   =", bessel_i(0, 2.0))

for R in (5, 10, 20, 40):
    rep = truncation_compare(LatticeSpec(1, R), [(5, 5)], 1.0)
    row = rep.rows[0]
    print(f"R = {R:2d}  section {row.section:.15f}  kernel {row.closed_form:.15f}  gap {row.abs_gap:.2e}")

rep = truncation_compare(LatticeSpec(2, 12), [((0, 0), (1, 2)), ((3, 3), (3, 3))], 0.5)
print(rep.to_csv())
print("monotone in R:", rep.monotone)

# the rescaled diagonal decays like (4 pi t)^(-1/2): no eigenvalue at the top of [-2, 2]
for t in (1, 5, 10, 20):
    print(f"t = {t:2d}  e^(-2t) K(0,0) = {math.exp(-2 * t) * z_kernel(0, 0, t):.5f}   1/sqrt(4 pi t) = {1 / math.sqrt(4 * math.pi * t):.5f}")
print("Z^2 diagonal = square of Z diagonal:", zn_kernel((0, 0), (0, 0), 1.0), z_kernel(0, 0, 1.0) ** 2)
