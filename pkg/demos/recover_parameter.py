"""Reading the contraction parameter back off a given extension.

Any quasi-self-adjoint extension B of A determines its parameter through
D(T) = N_z intersect R(B - z); for diagonal extensions diag(1, b) of the
worked operator the parameter is the Cayley-type value (b + i)/(b - i).
"""

import numpy as np

from symext.instances import InstanceSpec, gen_symmetric
from symext.cayley import defect_data
from symext.neumann import extend, recover_parameter
from symext.operators import graph_distance, operator_from_generators, operator_from_matrix

e1 = np.array([[1.0], [0.0]], dtype=complex)
a = operator_from_generators(e1, e1)

print("extension diag(1, b)  ->  recovered c, predicted (b+i)/(b-i)")
for b in (3.0, -1.0, 0.5, 7.0, 0.0):
    ext = operator_from_matrix(np.diag([1.0, b]).astype(complex))
    parameter = recover_parameter(a, ext, 1j)
    c = parameter.t.compression()[0, 0]
    predicted = (b + 1j) / (b - 1j)
    print(f"b = {b:>5}: c = {c:.6f}, predicted {predicted:.6f}, "
          f"|difference| = {abs(c - predicted):.2e}")

# round trip on a seeded instance: extend, recover, extend again
a = gen_symmetric(InstanceSpec(ambient_dim=6, defect=2, seed=9))
dd = defect_data(a, 1j)
rng = np.random.default_rng(1)
raw = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
from symext.neumann import ContractionParameter
parameter = ContractionParameter.from_matrix(dd, raw / (1.4 * np.linalg.norm(raw, 2)))
report = extend(a, 1j, parameter, dd=dd)
recovered = recover_parameter(a, report.b, 1j)
again = extend(a, 1j, recovered, dd=dd)
print(f"\nseeded instance: classification {report.classification}")
print(f"parameter round trip distance {graph_distance(parameter.t, recovered.t):.2e}")
print(f"extension round trip distance {graph_distance(report.b, again.b):.2e}")
