"""The 2x2 worked family: every extension of e1 -> e1 on span{e1} in C^2.

One complex contraction c parametrizes all quasi-self-adjoint extensions at
z = i; the script prints the extension matrix, its classification, and the
invertibility verdict across the unit circle and the disk interior.
"""

import numpy as np

from symext.cayley import defect_data
from symext.invertibility import check_invertibility
from symext.neumann import ContractionParameter, extend
from symext.operators import operator_from_generators

e1 = np.array([[1.0], [0.0]], dtype=complex)
a = operator_from_generators(e1, e1)
dd = defect_data(a, 1j)
print(f"base operator: dim D(A) = {a.domain.dim}, defect numbers = {dd.defect_numbers}")
print()

for c in (1j, -1j, -1.0, 0.5, 0.0, 0.3 - 0.4j):
    parameter = ContractionParameter.from_matrix(dd, np.array([[c]], dtype=complex))
    report = extend(a, 1j, parameter, dd=dd)
    b22 = report.b.to_matrix()[1, 1]
    verdict = check_invertibility(a, 1j, parameter)
    print(f"c = {c!s:>12}: B = diag(1, {b22:.3f}), {report.classification:<20}"
          f" invertible = {verdict.direct}")
    if verdict.witness is not None:
        print(f"{'':>16} kernel witness {np.round(verdict.witness, 6)}")
    assert verdict.agree

# c = 1 pins the parameter to the forbidden operator: no extension exists
parameter = ContractionParameter.from_matrix(dd, np.array([[1.0]], dtype=complex))
try:
    extend(a, 1j, parameter, dd=dd)
except Exception as exc:
    print(f"\nc = 1 rejected: {exc}")
