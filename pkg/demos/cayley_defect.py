"""Defect subspaces and the Cayley transform on a seeded random instance.

Checks numerically that ranges and defect spaces of A at z match those of
A^{-1} at 1/z, and that the two Cayley transforms differ by the phase zbar/z.
"""

import numpy as np

from symext.cayley import cayley, defect_data, inverse_cayley
from symext.instances import InstanceSpec, gen_symmetric
from symext.operators import graph_distance, inverse_op

a = gen_symmetric(InstanceSpec(ambient_dim=6, defect=2, seed=7))
a_inv = inverse_op(a)
print(f"instance: d = {a.ambient_dim}, dim D(A) = {a.domain.dim}")

for z in (1j, 0.8 - 0.5j, -1.3 + 0.4j):
    dd = defect_data(a, z)
    dd_inv = defect_data(a_inv, 1.0 / z)
    print(f"\nz = {z}")
    print(f"  defect numbers         {dd.defect_numbers}")
    print(f"  dist M_z(A), M_1/z(A^-1)   {dd.m_z.distance(dd_inv.m_z):.2e}")
    print(f"  dist N_z(A), N_1/z(A^-1)   {dd.n_z.distance(dd_inv.n_z):.2e}")

    u = cayley(a, z)
    u_inv = cayley(a_inv, 1.0 / z)
    worst = 0.0
    for j in range(u.domain.dim):
        f = u.domain.frame[:, j]
        worst = max(worst, np.linalg.norm(
            u.apply(f) - (np.conj(z) / z) * u_inv.apply(f)))
    print(f"  U_z(A) vs (zbar/z) U_1/z(A^-1)  {worst:.2e}")

    back = inverse_cayley(u, z)
    print(f"  inverse Cayley round trip  {graph_distance(back, a):.2e}")
