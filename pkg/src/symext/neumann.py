"""Extension construction from contraction parameters, and parameter recovery.

Given symmetric A, non-real z, and an admissible non-expanding T from N_z to
N_zbar, the extension is

    D(B) = D(A) (+) (T - E) D(T),    B(f + T psi - psi) = A f + z T psi - zbar psi.

Isometric parameters give symmetric extensions; general non-expanding ones give
dissipative extensions for z in the lower half-plane and accumulative ones for
z in the upper half-plane. The inverse direction recovers T from B via
D(T) = N_z ∩ R(B - z) and T subset (B - zbar)(B - z)^{-1}.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cayley import DefectData, defect_data, is_admissible, require_offaxis
from .errors import NotAdmissible, NotAnExtension
from .operators import (DomainOperator, graph_contains, is_injective,
                        is_symmetric, kernel_witness, operator_from_generators)
from .subspaces import Subspace, orthonormalize

# Graph inclusion uses a fixed, looser tolerance than rank decisions.
GRAPH_INCLUSION_TOL = 1e-8

SYMMETRIC = "symmetric"
SELF_ADJOINT = "self-adjoint"
DISSIPATIVE = "dissipative"
ACCUMULATIVE = "accumulative"

ISOMETRIC = "isometric"
STRICTLY_CONTRACTIVE = "strictly-contractive"
MIXED = "mixed"


@dataclass(frozen=True, eq=False)
class ContractionParameter:
    """Non-expanding map from a subspace of N_z into N_zbar, with base point z."""

    z: complex
    t: DomainOperator
    kind: str

    def __post_init__(self):
        require_offaxis(self.z)
        if self.t.domain_dim:
            s = np.linalg.svd(self.t.action, compute_uv=False)
            if s[0] > 1.0 + 1e-8:
                raise ValueError(f"parameter is expanding: top singular value {s[0]:.3e}")

    @classmethod
    def from_operator(cls, z: complex, t: DomainOperator) -> "ContractionParameter":
        return cls(z, t, _parameter_kind(t))

    @classmethod
    def from_matrix(cls, dd: DefectData, matrix) -> "ContractionParameter":
        """Parameter from a matrix written in the defect frames at z and zbar.

        ``matrix`` has shape (dim N_zbar, t) over a domain spanned by the first
        t defect-frame columns, or (dim N_zbar, dim N_z) for a full domain.
        """
        matrix = np.asarray(matrix, dtype=complex)
        t_dim = matrix.shape[1]
        dom = Subspace(dd.n_z.ambient_dim, dd.n_z.frame[:, :t_dim], dd.n_z.tol)
        action = dd.n_zbar.frame @ matrix
        return cls.from_operator(dd.z, DomainOperator(dd.n_z.ambient_dim, dom, action))

    @classmethod
    def empty(cls, z: complex, ambient_dim: int) -> "ContractionParameter":
        dom = Subspace(ambient_dim, np.zeros((ambient_dim, 0), complex))
        return cls(z, DomainOperator(ambient_dim, dom, np.zeros((ambient_dim, 0), complex)),
                   ISOMETRIC)


def _parameter_kind(t: DomainOperator) -> str:
    if t.domain_dim == 0:
        return ISOMETRIC
    gram = t.action.conj().T @ t.action
    if np.allclose(gram, np.eye(t.domain_dim), atol=1e-10):
        return ISOMETRIC
    s = np.linalg.svd(t.action, compute_uv=False)
    if s[0] < 1.0 - 1e-10:
        return STRICTLY_CONTRACTIVE
    return MIXED


def classify_operator(b: DomainOperator) -> str:
    """Definition-level class of B from the spectrum of Im of its compression."""
    if is_symmetric(b):
        return SELF_ADJOINT if b.is_total() else SYMMETRIC
    k = b.compression()
    imag = (k - k.conj().T) / 2j
    eigs = np.linalg.eigvalsh(imag)
    slack = 1e-10 * max(1.0, np.linalg.norm(k, 2))
    if eigs.size == 0 or eigs[0] >= -slack:
        return DISSIPATIVE
    if eigs[-1] <= slack:
        return ACCUMULATIVE
    raise ValueError("operator is neither dissipative nor accumulative")


@dataclass(frozen=True, eq=False)
class ExtensionReport:
    """Result of one extension step."""

    b: DomainOperator
    parameter: ContractionParameter
    classification: str
    invertible: bool
    defect_numbers_of_b: tuple
    witnesses: dict


def extend(a: DomainOperator, z: complex, parameter: ContractionParameter,
           dd: Optional[DefectData] = None) -> ExtensionReport:
    """Build the extension B determined by the parameter at base point z.

    Raises NotAdmissible (with the kernel witness) when the parameter admits a
    fixed vector, in which case the formula would not define an operator.
    """
    z = require_offaxis(z)
    if parameter.z != z:
        raise ValueError("parameter base point does not match z")
    if dd is None:
        dd = defect_data(a, z)
    t = parameter.t
    adm = is_admissible(a, z, t, dd=dd)
    if not adm.admissible:
        raise NotAdmissible("parameter admits a fixed vector", witness=adm.witness)
    p, q = t.domain.frame, t.action
    generators = np.hstack([a.domain.frame, q - p])
    images = np.hstack([a.action, z * q - np.conj(z) * p])
    b = operator_from_generators(generators, images, tol=a.tol)
    if not graph_contains(b, a, tol=GRAPH_INCLUSION_TOL):
        raise NotAnExtension("constructed operator does not extend the base")
    invertible = is_injective(b)
    witnesses = {}
    if not invertible:
        witnesses["kernel"] = kernel_witness(b)
    # B need not be symmetric, so count codimensions of the shifted ranges directly
    defects = tuple(
        b.ambient_dim - orthonormalize(b.action - w * b.domain.frame,
                                       ambient_dim=b.ambient_dim, tol=b.tol).dim
        for w in (z, np.conj(z)))
    return ExtensionReport(b, parameter, classify_operator(b), invertible,
                           defects, witnesses)


def classify(report: ExtensionReport) -> str:
    """Recompute the classification from the extension itself."""
    return classify_operator(report.b)


def recover_parameter(a: DomainOperator, b: DomainOperator, z: complex) -> ContractionParameter:
    """Parameter whose extension of A at z is B.

    D(T) = N_z ∩ R(B - z); T psi solves backwards through (B - z) and applies
    (B - zbar). Requires graph(A) inside graph(B).
    """
    z = require_offaxis(z)
    if not graph_contains(b, a, tol=GRAPH_INCLUSION_TOL):
        raise NotAnExtension("operator does not extend the base")
    dd = defect_data(a, z)
    shifted = b.action - z * b.domain.frame
    range_bz = orthonormalize(shifted, ambient_dim=b.ambient_dim, tol=b.tol)
    t_domain = dd.n_z.intersect(range_bz)
    if t_domain.dim == 0:
        return ContractionParameter.empty(z, a.ambient_dim)
    coeffs = np.linalg.lstsq(shifted, t_domain.frame, rcond=None)[0]
    resid = np.linalg.norm(shifted @ coeffs - t_domain.frame, 2)
    if resid > 1e-8:
        raise NotAnExtension("defect directions are not reached by (B - z)")
    images = (b.action - np.conj(z) * b.domain.frame) @ coeffs
    out = images - dd.n_zbar.frame @ (dd.n_zbar.frame.conj().T @ images)
    if np.linalg.norm(out, 2) > 1e-8 * max(1.0, np.linalg.norm(images, 2)):
        raise NotAnExtension("recovered images leave the defect space at zbar")
    t = DomainOperator(a.ambient_dim, t_domain, images)
    return ContractionParameter.from_operator(z, t)
