"""Subspaces of C^d held as orthonormal frames, plus the sector geometry.

All rank decisions in the toolkit funnel through ``orthonormalize`` and use
one global default tolerance, relative to the largest singular value.
"""

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-10

# A spectral parameter closer than this to the real axis is rejected.
REAL_AXIS_GUARD = 1e-8


def _as_complex_matrix(vectors, ambient_dim=None):
    """Coerce a matrix, a sequence of vectors, or an empty list to a d x k array."""
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        m = np.array(vectors, dtype=complex)
    else:
        cols = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
        if cols:
            m = np.column_stack(cols)
        else:
            if ambient_dim is None:
                raise ValueError("ambient_dim required for an empty vector list")
            m = np.zeros((ambient_dim, 0), dtype=complex)
    if ambient_dim is not None and m.shape[0] != ambient_dim:
        raise ValueError(f"expected ambient dimension {ambient_dim}, got {m.shape[0]}")
    return m


def fix_phase(v, cutoff=1e-8):
    """Rotate a vector so its first non-negligible coordinate is real positive."""
    v = np.asarray(v, dtype=complex)
    nv = np.linalg.norm(v)
    if nv == 0:
        return v
    idx = int(np.argmax(np.abs(v) > cutoff * nv))
    ph = v[idx] / abs(v[idx])
    return v * np.conj(ph)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of C^d, stored as a d x k matrix with orthonormal columns."""

    ambient_dim: int
    frame: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        frame = np.array(self.frame, dtype=complex)
        if frame.ndim != 2 or frame.shape[0] != self.ambient_dim:
            raise ValueError("frame must be ambient_dim x k")
        gram = frame.conj().T @ frame
        if not np.allclose(gram, np.eye(frame.shape[1]), atol=max(self.tol, 1e-12) * 10):
            raise ValueError("frame columns are not orthonormal")
        frame.setflags(write=False)
        object.__setattr__(self, "frame", frame)

    @property
    def dim(self) -> int:
        return self.frame.shape[1]

    def projector(self) -> np.ndarray:
        return self.frame @ self.frame.conj().T

    def project(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=complex).reshape(-1)
        return self.frame @ (self.frame.conj().T @ v)

    def contains(self, v, tol=None) -> bool:
        v = np.asarray(v, dtype=complex).reshape(-1)
        tol = self.tol if tol is None else tol
        nv = np.linalg.norm(v)
        if nv == 0:
            return True
        return np.linalg.norm(v - self.project(v)) <= 10 * tol * max(1.0, nv)

    def contains_subspace(self, other: "Subspace", tol=None) -> bool:
        tol = self.tol if tol is None else tol
        if other.dim == 0:
            return True
        resid = other.frame - self.frame @ (self.frame.conj().T @ other.frame)
        return np.linalg.norm(resid, 2) <= 10 * tol

    def complement(self) -> "Subspace":
        """Orthogonal complement in the same ambient space."""
        if self.dim == 0:
            return Subspace(self.ambient_dim, np.eye(self.ambient_dim, dtype=complex), self.tol)
        u, _, _ = np.linalg.svd(self.frame, full_matrices=True)
        return Subspace(self.ambient_dim, u[:, self.dim:], self.tol)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via principal angles: directions with cosine >= 1 - tol."""
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimensions differ")
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.ambient_dim, np.zeros((self.ambient_dim, 0), complex), self.tol)
        u, s, _ = np.linalg.svd(self.frame.conj().T @ other.frame, full_matrices=False)
        keep = s >= 1.0 - self.tol
        if not np.any(keep):
            return Subspace(self.ambient_dim, np.zeros((self.ambient_dim, 0), complex), self.tol)
        return orthonormalize(self.frame @ u[:, keep], tol=self.tol)

    def __add__(self, other: "Subspace") -> "Subspace":
        """Span of the union."""
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimensions differ")
        return orthonormalize(np.hstack([self.frame, other.frame]),
                              ambient_dim=self.ambient_dim, tol=self.tol)

    def distance(self, other: "Subspace") -> float:
        """Operator-norm gap between the orthogonal projectors."""
        return float(np.linalg.norm(self.projector() - other.projector(), 2))


def orthonormalize(vectors, ambient_dim=None, tol=DEFAULT_TOL) -> Subspace:
    """Orthonormal frame for the span of the given vectors.

    Rank is decided by singular values exceeding ``tol`` times the largest
    singular value. Dependent and zero vectors are dropped silently.
    """
    m = _as_complex_matrix(vectors, ambient_dim)
    d = m.shape[0]
    if m.shape[1] == 0:
        return Subspace(d, np.zeros((d, 0), complex), tol)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    rank = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    return Subspace(d, u[:, :rank], tol)


def direct_sum_embed(dims):
    """Canonical isometric embeddings of C^{d_i} into C^{sum d_i}.

    Returns (embeddings, projections); ``embeddings[i]`` is (D x d_i) and
    ``projections[i]`` its adjoint.
    """
    total = int(sum(dims))
    embeds = []
    offset = 0
    for d in dims:
        e = np.zeros((total, d), dtype=complex)
        e[offset:offset + d, :] = np.eye(d)
        e.setflags(write=False)
        embeds.append(e)
        offset += d
    projections = [e.conj().T for e in embeds]
    return embeds, projections


@dataclass(frozen=True)
class SectorSpec:
    """Nontangential approach region to 0 inside one open half-plane.

    Rays are sampled at angles theta with eps < |theta| < pi - eps and
    sign(sin theta) matching ``half_plane_sign``; radii decrease toward 0.
    """

    half_plane_sign: int
    epsilon: float = np.pi / 6
    ray_angles: tuple = ()
    radii: tuple = ()

    def __post_init__(self):
        if self.half_plane_sign not in (-1, 1):
            raise ValueError("half_plane_sign must be +1 or -1")
        if not 0 < self.epsilon < np.pi / 2:
            raise ValueError("epsilon must lie in (0, pi/2)")
        for th in self.ray_angles:
            if not (self.epsilon < abs(th) < np.pi - self.epsilon):
                raise ValueError(f"ray angle {th} outside the sector")
            if np.sign(np.sin(th)) != self.half_plane_sign:
                raise ValueError(f"ray angle {th} is in the wrong half-plane")
        if any(r <= 0 for r in self.radii):
            raise ValueError("radii must be positive")
        if list(self.radii) != sorted(self.radii, reverse=True):
            raise ValueError("radii must strictly decrease")

    @classmethod
    def default_for(cls, lambda0, epsilon=np.pi / 6, n_radii=8, ratio=0.25):
        """Three rays spread across the sector, geometric radii toward 0."""
        sign = 1 if lambda0.imag > 0 else -1
        angles = tuple(sign * th for th in (np.pi / 4, np.pi / 2, 3 * np.pi / 4))
        r0 = 0.25 * abs(lambda0)
        radii = tuple(r0 * ratio ** k for k in range(n_radii))
        return cls(sign, epsilon, angles, radii)

    def sample_points(self):
        """All lambda = r e^{i theta} on the sector grid, grouped by ray."""
        return {th: tuple(r * np.exp(1j * th) for r in self.radii) for th in self.ray_angles}
