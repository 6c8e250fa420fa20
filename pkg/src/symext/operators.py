"""Linear operators with explicit, possibly non-dense domains, and linear relations.

An operator is a pair (domain frame, action matrix): the j-th action column is
the image of the j-th frame column. Everything an operator does is expressed in
these domain coordinates, so non-dense domains need no special casing.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainViolation, NotInvertible
from .subspaces import DEFAULT_TOL, Subspace, fix_phase, orthonormalize


@dataclass(frozen=True, eq=False)
class DomainOperator:
    """Operator A: D(A) -> C^d with D(A) an explicit subspace of C^d.

    ``action`` is d x dim D(A); column j is A applied to domain frame column j.
    """

    ambient_dim: int
    domain: Subspace
    action: np.ndarray

    def __post_init__(self):
        if self.domain.ambient_dim != self.ambient_dim:
            raise ValueError("domain lives in a different ambient space")
        action = np.array(self.action, dtype=complex)
        if action.shape != (self.ambient_dim, self.domain.dim):
            raise ValueError("action must be ambient_dim x dim(domain)")
        action.setflags(write=False)
        object.__setattr__(self, "action", action)

    @property
    def domain_dim(self) -> int:
        return self.domain.dim

    @property
    def tol(self) -> float:
        return self.domain.tol

    def is_total(self) -> bool:
        return self.domain.dim == self.ambient_dim

    def compression(self) -> np.ndarray:
        """F^H (action): the operator seen in domain coordinates (k x k)."""
        return self.domain.frame.conj().T @ self.action

    def to_matrix(self) -> np.ndarray:
        """Standard-basis matrix; defined for total operators only."""
        if not self.is_total():
            raise DomainViolation("operator is not defined on all of C^d")
        return self.action @ self.domain.frame.conj().T

    def apply(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=complex).reshape(-1)
        if not self.domain.contains(v):
            raise DomainViolation("vector is not in the domain")
        return self.action @ (self.domain.frame.conj().T @ v)


def make_operator(domain: Subspace, action) -> DomainOperator:
    return DomainOperator(domain.ambient_dim, domain, np.asarray(action, dtype=complex))


def identity_operator(d: int, tol=DEFAULT_TOL) -> DomainOperator:
    eye = np.eye(d, dtype=complex)
    return DomainOperator(d, Subspace(d, eye, tol), eye)


def operator_from_matrix(m: np.ndarray, tol=DEFAULT_TOL) -> DomainOperator:
    """Total operator from a square matrix."""
    m = np.asarray(m, dtype=complex)
    d = m.shape[0]
    return DomainOperator(d, Subspace(d, np.eye(d, dtype=complex), tol), m)


def operator_from_generators(generators, images, tol=DEFAULT_TOL) -> DomainOperator:
    """Operator sending generator column j to image column j.

    The generators must be linearly independent (checked by singular values);
    the domain is their orthonormalized span.
    """
    gen = np.asarray(generators, dtype=complex)
    img = np.asarray(images, dtype=complex)
    if gen.shape != img.shape:
        raise ValueError("generators and images must have matching shapes")
    d, k = gen.shape
    dom = orthonormalize(gen, ambient_dim=d, tol=tol)
    if dom.dim != k:
        raise ValueError("generators are linearly dependent; the map is ill-defined")
    coeffs = np.linalg.lstsq(gen, dom.frame, rcond=None)[0]
    return DomainOperator(d, dom, img @ coeffs)


def is_symmetric(a: DomainOperator, tol=None) -> bool:
    """(Av, w) = (v, Aw) on the domain, i.e. the compression is Hermitian."""
    if a.domain_dim == 0:
        return True
    tol = a.tol if tol is None else tol
    k = a.compression()
    scale = max(1.0, np.linalg.norm(a.action, 2))
    return bool(np.linalg.norm(k - k.conj().T, 2) <= 10 * tol * scale)


def is_injective(a: DomainOperator, tol=None) -> bool:
    if a.domain_dim == 0:
        return True
    tol = a.tol if tol is None else tol
    s = np.linalg.svd(a.action, compute_uv=False)
    return bool(s[-1] > tol * max(1.0, s[0]))


def kernel_witness(a: DomainOperator) -> np.ndarray:
    """Unit kernel-direction estimate: smallest right singular vector, phase-fixed."""
    if a.domain_dim == 0:
        raise NotInvertible("empty domain has no kernel direction")
    _, _, vh = np.linalg.svd(a.action)
    return fix_phase(a.domain.frame @ vh[-1].conj())


def inverse_op(a: DomainOperator, tol=None) -> DomainOperator:
    """Inverse with domain R(A); requires ker A = {0}."""
    if not is_injective(a, tol):
        raise NotInvertible("operator has a nontrivial kernel")
    if a.domain_dim == 0:
        return DomainOperator(a.ambient_dim, a.domain, a.action)
    return operator_from_generators(a.action, a.domain.frame, tol=a.tol if tol is None else tol)


def is_isometric(a: DomainOperator, tol=None) -> bool:
    if a.domain_dim == 0:
        return True
    tol = a.tol if tol is None else tol
    k = a.domain_dim
    gram = a.action.conj().T @ a.action
    return bool(np.linalg.norm(gram - np.eye(k), 2) <= 100 * tol)


def is_nonexpanding(a: DomainOperator, tol=None) -> bool:
    tol = a.tol if tol is None else tol
    if a.domain_dim == 0:
        return True
    s = np.linalg.svd(a.action, compute_uv=False)
    return bool(s[0] <= 1.0 + 100 * tol)


def negate(a: DomainOperator) -> DomainOperator:
    return DomainOperator(a.ambient_dim, a.domain, -a.action)


def scale_op(a: DomainOperator, alpha: complex) -> DomainOperator:
    return DomainOperator(a.ambient_dim, a.domain, alpha * a.action)


def direct_sum_op(a: DomainOperator, b: DomainOperator) -> DomainOperator:
    """Block-diagonal operator on C^{d_a + d_b}."""
    da, db = a.ambient_dim, b.ambient_dim
    ka, kb = a.domain_dim, b.domain_dim
    frame = np.zeros((da + db, ka + kb), dtype=complex)
    frame[:da, :ka] = a.domain.frame
    frame[da:, ka:] = b.domain.frame
    action = np.zeros((da + db, ka + kb), dtype=complex)
    action[:da, :ka] = a.action
    action[da:, ka:] = b.action
    return DomainOperator(da + db, Subspace(da + db, frame, a.tol), action)


def restrict(a: DomainOperator, s: Subspace) -> DomainOperator:
    """Restriction of A to a subspace of its domain."""
    if not a.domain.contains_subspace(s):
        raise DomainViolation("subspace is not contained in the domain")
    coords = a.domain.frame.conj().T @ s.frame
    return DomainOperator(a.ambient_dim, s, a.action @ coords)


def compose(outer: DomainOperator, inner: DomainOperator) -> DomainOperator:
    """outer ∘ inner on {v in D(inner) : inner v in D(outer)}."""
    if outer.ambient_dim != inner.ambient_dim:
        raise ValueError("ambient dimensions differ")
    d = inner.ambient_dim
    if inner.domain_dim == 0:
        return DomainOperator(d, inner.domain, inner.action)
    # domain coordinates c with (I - P_outer) inner.action c = 0
    resid = inner.action - outer.domain.frame @ (outer.domain.frame.conj().T @ inner.action)
    _, s, vh = np.linalg.svd(resid, full_matrices=True)
    scale = max(np.linalg.norm(inner.action, 2), 1.0)
    rank = int(np.sum(s > inner.tol * scale))
    null = vh[rank:].conj().T
    if null.shape[1] == 0:
        empty = Subspace(d, np.zeros((d, 0), complex), inner.tol)
        return DomainOperator(d, empty, np.zeros((d, 0), complex))
    gen = inner.domain.frame @ null
    mid = outer.domain.frame.conj().T @ (inner.action @ null)
    img = outer.action @ mid
    return operator_from_generators(gen, img, tol=inner.tol)


@dataclass(frozen=True, eq=False)
class LinearRelation:
    """Subspace of C^d x C^d, the graph-level generalization of an operator."""

    ambient_dim: int
    graph: Subspace

    def __post_init__(self):
        if self.graph.ambient_dim != 2 * self.ambient_dim:
            raise ValueError("graph must live in C^{2d}")

    @classmethod
    def from_operator(cls, a: DomainOperator) -> "LinearRelation":
        stacked = np.vstack([a.domain.frame, a.action])
        return cls(a.ambient_dim, orthonormalize(stacked, ambient_dim=2 * a.ambient_dim, tol=a.tol))

    @classmethod
    def from_pairs(cls, domain_vectors, image_vectors, ambient_dim, tol=DEFAULT_TOL) -> "LinearRelation":
        top = np.asarray(domain_vectors, dtype=complex).reshape(ambient_dim, -1)
        bot = np.asarray(image_vectors, dtype=complex).reshape(ambient_dim, -1)
        return cls(ambient_dim, orthonormalize(np.vstack([top, bot]),
                                               ambient_dim=2 * ambient_dim, tol=tol))

    @property
    def dim(self) -> int:
        return self.graph.dim

    def _halves(self):
        d = self.ambient_dim
        return self.graph.frame[:d, :], self.graph.frame[d:, :]

    def domain_space(self) -> Subspace:
        top, _ = self._halves()
        return orthonormalize(top, ambient_dim=self.ambient_dim, tol=self.graph.tol)

    def multivalued_part(self) -> Subspace:
        """Images paired with 0: the vertical component of the graph."""
        top, bot = self._halves()
        if self.dim == 0:
            return Subspace(self.ambient_dim, np.zeros((self.ambient_dim, 0), complex), self.graph.tol)
        _, s, vh = np.linalg.svd(top, full_matrices=True)
        scale = max(1.0, s[0]) if s.size else 1.0
        rank = int(np.sum(s > self.graph.tol * scale)) if s.size else 0
        null = vh[rank:].conj().T
        return orthonormalize(bot @ null, ambient_dim=self.ambient_dim, tol=self.graph.tol)

    def is_operator(self) -> bool:
        return self.multivalued_part().dim == 0

    def to_operator(self) -> DomainOperator:
        """Convert to a DomainOperator; requires a trivial multivalued part."""
        if not self.is_operator():
            raise NotInvertible("relation is multivalued")
        top, bot = self._halves()
        if self.dim == 0:
            empty = Subspace(self.ambient_dim, np.zeros((self.ambient_dim, 0), complex), self.graph.tol)
            return DomainOperator(self.ambient_dim, empty, np.zeros((self.ambient_dim, 0), complex))
        return operator_from_generators(top, bot, tol=self.graph.tol)


def graph(a: DomainOperator) -> LinearRelation:
    return LinearRelation.from_operator(a)


def relation_is_operator(r: LinearRelation) -> bool:
    return r.is_operator()


def graph_distance(a, b) -> float:
    """Projector gap between graphs; accepts operators or relations."""
    ga = a if isinstance(a, LinearRelation) else graph(a)
    gb = b if isinstance(b, LinearRelation) else graph(b)
    return ga.graph.distance(gb.graph)


def graph_contains(big, small, tol=1e-8) -> bool:
    """Whether graph(small) sits inside graph(big) within tol."""
    gb = big if isinstance(big, LinearRelation) else graph(big)
    gs = small if isinstance(small, LinearRelation) else graph(small)
    if gs.dim == 0:
        return True
    resid = gs.graph.frame - gb.graph.frame @ (gb.graph.frame.conj().T @ gs.graph.frame)
    return bool(np.linalg.norm(resid, 2) <= tol)
