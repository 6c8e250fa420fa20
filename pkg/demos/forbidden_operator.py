"""The forbidden operator and why some parameters admit no extension.

A parameter T is admissible exactly when it avoids the forbidden operator
X_z(A) everywhere on its domain; the script shows the collision for the
worked family at c = 1 and measures margins for nearby parameters.
"""

import numpy as np

from symext.cayley import defect_data, forbidden_operator, is_admissible
from symext.instances import InstanceSpec, gen_symmetric
from symext.neumann import ContractionParameter
from symext.operators import operator_from_generators

e1 = np.array([[1.0], [0.0]], dtype=complex)
a = operator_from_generators(e1, e1)
dd = defect_data(a, 1j)
x = forbidden_operator(a, 1j)
psi = dd.n_z.frame[:, 0]
print(f"worked operator: X_i maps {np.round(psi, 3)} to {np.round(x.apply(psi), 3)}")

for c in (1.0, 1.0 + 1e-8, np.exp(0.3j), -1.0, 0.5j):
    t = ContractionParameter.from_matrix(dd, np.array([[c]], dtype=complex)).t
    res = is_admissible(a, 1j, t)
    print(f"c = {c!s:>22}: admissible = {res.admissible!s:<5} margin = {res.margin:.3e}")

# on a random instance the forbidden operator fills the whole defect space,
# and random strict contractions clear it with a visible margin
a = gen_symmetric(InstanceSpec(ambient_dim=5, defect=2, seed=3))
dd = defect_data(a, 1j)
x = forbidden_operator(a, 1j)
print(f"\nrandom instance: dim D(X) = {x.domain.dim} (equals defect {dd.defect_numbers[0]})")
rng = np.random.default_rng(0)
for k in range(3):
    raw = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    mat = raw / (1.5 * np.linalg.norm(raw, 2))
    t = ContractionParameter.from_matrix(dd, mat).t
    res = is_admissible(a, 1j, t)
    print(f"draw {k}: admissible = {res.admissible} margin = {res.margin:.3e}")
