"""Compressed resolvents of exit-space extensions and their boundary conditions.

An exit-space extension embeds the original space H = C^d isometrically into
C^{d+e} where a self-adjoint total Atilde extends the base operator. Its
compressed resolvent is R_lam = P_H (Atilde - lam)^{-1} |_H. The same data can
be read through a lam-dependent contraction F(lam) from N_{lam0} to
N_{lam0 bar}: the chain

    L_lam = {h : (Atilde - lam) h in H}
    B_lam = P_H Atilde (P_H|_{L_lam})^{-1}
    F(lam) = (B_lam - lam0bar)(B_lam - lam0)^{-1} restricted to N_{lam0}

recovers R_lam as (A_{F(lam)} - lam)^{-1} in the half-plane of lam0, and as
(A_{F(lam bar)^*} - lam)^{-1} in the other. The boundary condition tested by
``i_admissibility_test`` singles out the parameter families arising from
invertible extensions: F is rejected when some nonzero psi reaches the scaled
forbidden-operator limit at 0 with a bounded norm-loss rate.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cayley import defect_data, forbidden_operator, require_offaxis
from .errors import (InsufficientSamples, ProjectionDegenerate,
                     ResolventSingular, SpectrumHit)
from .neumann import ContractionParameter, extend
from .operators import (DomainOperator, inverse_op, operator_from_generators,
                        operator_from_matrix)
from .subspaces import DEFAULT_TOL, SectorSpec, Subspace, fix_phase


def _half_plane(lam: complex, lambda0: complex) -> bool:
    return np.sign(lam.imag) == np.sign(lambda0.imag)


@dataclass(frozen=True, eq=False)
class EmbeddedExtension:
    """Self-adjoint total extension on C^{d+e} with the embedding of H = C^d."""

    base: DomainOperator
    atilde: DomainOperator
    embed: np.ndarray
    exit_dim: int

    def __post_init__(self):
        embed = np.array(self.embed, dtype=complex)
        d = self.base.ambient_dim
        # loosening atilde.tol loosens the structural gates in step
        gate = max(1e-8, 10.0 * self.atilde.tol)
        if embed.shape != (d + self.exit_dim, d):
            raise ValueError("embedding has the wrong shape")
        if not np.allclose(embed.conj().T @ embed, np.eye(d), atol=max(1e-10, self.atilde.tol)):
            raise ValueError("embedding is not isometric")
        if not self.atilde.is_total() or self.atilde.ambient_dim != d + self.exit_dim:
            raise ValueError("extension must be total on C^{d+e}")
        m = self.atilde.to_matrix()
        if np.linalg.norm(m - m.conj().T, 2) > gate * max(1.0, np.linalg.norm(m, 2)):
            raise ValueError("extension is not self-adjoint")
        lifted_domain = embed @ self.base.domain.frame
        if lifted_domain.shape[1] and np.linalg.norm(
                m @ lifted_domain - embed @ self.base.action, 2) > gate * max(
                1.0, np.linalg.norm(self.base.action, 2)):
            raise ValueError("extension does not extend the embedded base operator")
        embed.setflags(write=False)
        object.__setattr__(self, "embed", embed)

    @classmethod
    def canonical(cls, base: DomainOperator, atilde: DomainOperator) -> "EmbeddedExtension":
        return cls(base, atilde, np.eye(base.ambient_dim, dtype=complex), 0)

    @classmethod
    def from_chain(cls, chain) -> "EmbeddedExtension":
        d = chain.base.ambient_dim
        total = chain.final.ambient_dim
        embed = np.zeros((total, d), dtype=complex)
        embed[:d, :] = np.eye(d)
        return cls(chain.base, chain.final, embed, chain.exit_dim)

    def atilde_matrix(self) -> np.ndarray:
        return self.atilde.to_matrix()

    def inverse_pair(self) -> "EmbeddedExtension":
        """The same picture for A^{-1} inside Atilde^{-1}."""
        m = self.atilde_matrix()
        s = np.linalg.svd(m, compute_uv=False)
        if s[-1] <= DEFAULT_TOL * s[0]:
            raise SpectrumHit("extension is not invertible")
        return EmbeddedExtension(inverse_op(self.base),
                                 operator_from_matrix(np.linalg.inv(m), tol=self.atilde.tol),
                                 self.embed, self.exit_dim)


def compressed_resolvent(ext: EmbeddedExtension, lam: complex) -> np.ndarray:
    """P_H (Atilde - lam)^{-1} restricted to H, as a d x d matrix."""
    m = ext.atilde_matrix()
    shifted = m - lam * np.eye(m.shape[0])
    s = np.linalg.svd(shifted, compute_uv=False)
    if s[-1] <= 1e-10 * max(1.0, s[0]):
        raise SpectrumHit(f"{lam} is numerically an eigenvalue of the extension")
    return ext.embed.conj().T @ np.linalg.solve(shifted, ext.embed)


def script_l(ext: EmbeddedExtension, lam: complex) -> Subspace:
    """L_lam = {h in C^{d+e} : (Atilde - lam) h in embedded H}."""
    m = ext.atilde_matrix()
    total = m.shape[0]
    h_embedded = Subspace(total, ext.embed, ext.atilde.tol)
    q = h_embedded.complement().frame
    constraint = q.conj().T @ (m - lam * np.eye(total))
    if constraint.shape[0] == 0:
        return Subspace(total, np.eye(total, dtype=complex), ext.atilde.tol)
    _, s, vh = np.linalg.svd(constraint, full_matrices=True)
    scale = s[0] if s.size and s[0] > 0 else 1.0
    rank = int(np.sum(s > ext.atilde.tol * scale))
    return Subspace(total, vh[rank:].conj().T, ext.atilde.tol)


def frak_b(ext: EmbeddedExtension, lam: complex) -> DomainOperator:
    """B_lam = P_H Atilde (P_H|_{L_lam})^{-1}, an operator on C^d."""
    l_space = script_l(ext, lam)
    g = l_space.frame
    proj = ext.embed.conj().T @ g
    if proj.shape[1]:
        s = np.linalg.svd(proj, compute_uv=False)
        # injective only if every column direction survives: full column rank
        if proj.shape[1] > proj.shape[0] or s[-1] <= 1e-10 * max(1.0, s[0]):
            raise ProjectionDegenerate(
                f"projection onto H is not injective on the constrained space at {lam}")
    images = ext.embed.conj().T @ (ext.atilde_matrix() @ g)
    return operator_from_generators(proj, images, tol=ext.base.tol)


def frak_f(ext: EmbeddedExtension, lam: complex, lambda0: complex,
           frames: Optional[tuple] = None) -> np.ndarray:
    """Matrix of (B_lam - lam0bar)(B_lam - lam0)^{-1} on N_{lam0}.

    Written in the defect frames of the base operator at lam0 (or the frames
    supplied by the caller); verified non-expanding.
    """
    lambda0 = require_offaxis(lambda0)
    if not _half_plane(complex(lam), lambda0):
        raise ValueError(
            f"frak_f is contractive only in the half-plane of {lambda0}; got {lam}")
    if frames is None:
        dd = defect_data(ext.base, lambda0)
        frames = (dd.n_z.frame, dd.n_zbar.frame)
    n_frame, nbar_frame = frames
    bop = frak_b(ext, lam)
    fb, act = bop.domain.frame, bop.action
    down = act - lambda0 * fb
    up = act - np.conj(lambda0) * fb
    out = np.zeros((nbar_frame.shape[1], n_frame.shape[1]), dtype=complex)
    for j in range(n_frame.shape[1]):
        nu = n_frame[:, j]
        c, *_ = np.linalg.lstsq(down, nu, rcond=None)
        if np.linalg.norm(down @ c - nu) > 1e-8:
            raise ProjectionDegenerate(
                f"defect vector falls outside the range of (B_lam - lam0) at {lam}")
        img = up @ c
        coords = nbar_frame.conj().T @ img
        if np.linalg.norm(img - nbar_frame @ coords) > 1e-8 * max(1.0, np.linalg.norm(img)):
            raise ProjectionDegenerate("quotient image leaves the defect space at lam0 bar")
        out[:, j] = coords
    if out.size:
        top = np.linalg.svd(out, compute_uv=False)[0]
        if top > 1.0 + 1e-7:
            raise ProjectionDegenerate(f"quotient is expanding (norm {top:.6f}) at {lam}")
    return out


@dataclass(frozen=True, eq=False)
class ParameterFunction:
    """lam-sampled family of contractions from N_{lam0} into N_{lam0 bar}.

    Matrices are written in the defect frames carried here, so samples taken
    from an extension and samples fed back into the Shtraus formula agree on
    their meaning.
    """

    lambda0: complex
    domain_frame: np.ndarray
    range_frame: np.ndarray
    samples: dict
    provenance: str = "user"
    constant_matrix: Optional[np.ndarray] = None

    def sample_at(self, lam: complex) -> np.ndarray:
        if self.constant_matrix is not None:
            return self.constant_matrix
        for key, value in self.samples.items():
            if abs(key - lam) <= 1e-9:
                return value
        raise KeyError(f"no sample stored at {lam}")

    def sampled_points(self):
        return tuple(self.samples.keys())

    @classmethod
    def constant(cls, a: DomainOperator, lambda0: complex, matrix) -> "ParameterFunction":
        dd = defect_data(a, lambda0)
        matrix = np.asarray(matrix, dtype=complex)
        return cls(lambda0, dd.n_z.frame, dd.n_zbar.frame, {}, "constant", matrix)

    @classmethod
    def from_extension(cls, ext: EmbeddedExtension, lambda0: complex, lams) -> "ParameterFunction":
        dd = defect_data(ext.base, lambda0)
        frames = (dd.n_z.frame, dd.n_zbar.frame)
        samples = {complex(lam): frak_f(ext, lam, lambda0, frames) for lam in lams}
        return cls(lambda0, *frames, samples, "from-extension")

    @classmethod
    def from_samples(cls, a: DomainOperator, lambda0: complex, samples: dict) -> "ParameterFunction":
        dd = defect_data(a, lambda0)
        clean = {complex(k): np.asarray(v, dtype=complex) for k, v in samples.items()}
        return cls(lambda0, dd.n_z.frame, dd.n_zbar.frame, clean, "user")


def _extension_matrix_for(a: DomainOperator, base_point: complex, dom_frame, rng_frame,
                          matrix) -> np.ndarray:
    """Total extension of A at the given base point from a frame-coded parameter."""
    t = DomainOperator(a.ambient_dim, Subspace(a.ambient_dim, dom_frame, a.tol),
                       rng_frame @ matrix)
    parameter = ContractionParameter.from_operator(base_point, t)
    report = extend(a, base_point, parameter)
    if not report.b.is_total():
        raise ResolventSingular("extension is not total; resolvent formula needs a full domain")
    return report.b.to_matrix()


def shtraus_resolvent(a: DomainOperator, lambda0: complex, f: ParameterFunction,
                      lam: complex) -> np.ndarray:
    """(A_{F(lam)} - lam)^{-1} in the half-plane of lam0, adjoint branch opposite.

    For lam bar in the half-plane of lam0 the extension is built at base point
    lam0 bar from the frame-adjoint of F(lam bar).
    """
    lambda0 = require_offaxis(lambda0)
    lam = require_offaxis(complex(lam))
    if _half_plane(lam, lambda0):
        matrix = f.sample_at(lam)
        b_mat = _extension_matrix_for(a, lambda0, f.domain_frame, f.range_frame, matrix)
    else:
        # conj(lam) sits in the half-plane of lam0: adjoint branch
        matrix = f.sample_at(np.conj(lam))
        b_mat = _extension_matrix_for(a, np.conj(lambda0), f.range_frame, f.domain_frame,
                                      matrix.conj().T)
    shifted = b_mat - lam * np.eye(a.ambient_dim)
    s = np.linalg.svd(shifted, compute_uv=False)
    if s[-1] <= 1e-12 * max(1.0, s[0]):
        raise ResolventSingular(f"extension minus {lam} is singular")
    return np.linalg.inv(shifted)


def default_lambda_grid(lambda0: complex, atilde_matrix: Optional[np.ndarray] = None,
                        points_per_circle: int = 12):
    """Two circles around lam0 at radii 0.3 and 0.9 of |Im lam0|, inside its half-plane.

    Points within 1e-6 of an eigenvalue of the extension (or of 0) are dropped.
    """
    lambda0 = require_offaxis(lambda0)
    eigs = np.array([])
    if atilde_matrix is not None:
        eigs = np.linalg.eigvalsh(atilde_matrix)
    grid = []
    for factor in (0.3, 0.9):
        r = factor * abs(lambda0.imag)
        for j in range(points_per_circle):
            lam = lambda0 + r * np.exp(2j * np.pi * (j + 0.5) / points_per_circle)
            if abs(lam.imag) < 1e-6 or not _half_plane(lam, lambda0):
                continue
            if abs(lam) < 1e-6:
                continue
            if eigs.size and np.min(np.abs(eigs - lam)) < 1e-6:
                continue
            grid.append(lam)
    return tuple(grid)


@dataclass(frozen=True, eq=False)
class IAdmissibilityVerdict:
    """Outcome of the boundary-condition test at 0.

    ``admissible`` is False only with a concrete unit witness psi in N_{lam0}
    whose limit residual and rate proxy are both inside the reported bounds.
    """

    admissible: bool
    witness: Optional[np.ndarray]
    limit_estimate: Optional[np.ndarray]
    rate_estimates: dict
    ray_disagreement: float
    kernel_margin: float
    witness_limit_residual: Optional[float]
    witness_rate_proxy: Optional[float]
    tolerances: dict


def _neville_to_zero(radii, matrices):
    """Polynomial extrapolation of matrix samples to radius 0 (last four radii)."""
    rs = list(radii)[-4:]
    vals = [np.asarray(m, dtype=complex) for m in list(matrices)[-4:]]
    n = len(rs)
    tableau = list(vals)
    for level in range(1, n):
        nxt = []
        for i in range(n - level):
            ri, rk = rs[i], rs[i + level]
            nxt.append((ri * tableau[i + 1] - rk * tableau[i]) / (ri - rk))
        tableau = nxt
    return tableau[0]


def i_admissibility_test(a: DomainOperator, lambda0: complex, f: ParameterFunction,
                         sector: Optional[SectorSpec] = None, rate_bound: float = 1e3,
                         limit_tol: float = 1e-8, agreement_tol: float = 1e-6,
                         kernel_tol: float = 1e-8) -> IAdmissibilityVerdict:
    """Test whether F satisfies the invertible-extension boundary condition.

    Along each sector ray, F is extrapolated to 0; a nonzero psi rejects F when
    (F(0+) - (lam0bar/lam0) X) psi = 0 within ``limit_tol`` (X the forbidden
    operator of A^{-1} at 1/lam0) and the discrete rate proxy
    (1/|lam|)(||psi|| - ||F(lam) psi||) stays below ``rate_bound`` at the two
    smallest radii. When D(X) = {0} every parameter passes immediately.
    """
    lambda0 = require_offaxis(lambda0)
    if sector is None:
        sector = SectorSpec.default_for(lambda0)
    tolerances = {"rate_bound": rate_bound, "limit_tol": limit_tol,
                  "agreement_tol": agreement_tol, "kernel_tol": kernel_tol}
    if len(sector.radii) < 4:
        raise InsufficientSamples("need at least four radii for the limit estimate")
    a_inv = inverse_op(a)
    x = forbidden_operator(a_inv, 1.0 / lambda0)
    if x.domain.dim == 0:
        return IAdmissibilityVerdict(True, None, None, {}, 0.0, float("inf"),
                                     None, None, tolerances)
    if not x.single_valued:
        raise ProjectionDegenerate("forbidden operator of the inverse is multivalued")

    n_frame, nbar_frame = f.domain_frame, f.range_frame
    rays = {}
    per_ray_samples = {}
    for theta, points in sector.sample_points().items():
        mats = [f.sample_at(lam) for lam in points]
        per_ray_samples[theta] = (points, mats)
        rays[theta] = _neville_to_zero(sector.radii, mats)
    estimates = list(rays.values())
    disagreement = 0.0
    for i in range(len(estimates)):
        for j in range(i + 1, len(estimates)):
            disagreement = max(disagreement, float(np.linalg.norm(estimates[i] - estimates[j], 2)))
    f0 = sum(estimates) / len(estimates)

    # scaled forbidden operator in the same frames, restricted to D(X)
    scale = np.conj(lambda0) / lambda0
    dom_coords = n_frame.conj().T @ x.domain.frame
    x_imgs = np.column_stack([x.apply(x.domain.frame[:, j]) for j in range(x.domain.dim)])
    img_coords = nbar_frame.conj().T @ x_imgs
    k_mat = f0 @ dom_coords - scale * img_coords

    _, s, vh = np.linalg.svd(k_mat)
    kernel_margin = float(s[-1]) if s.size else float("inf")
    kernel_dirs = [vh[i].conj() for i in range(len(s)) if s[i] <= kernel_tol * max(1.0, s[0])]

    two_smallest = sector.radii[-2:]
    witness = None
    witness_resid = None
    witness_proxy = None
    rate_estimates = {}
    for direction in kernel_dirs:
        psi = fix_phase(x.domain.frame @ direction)
        psi = psi / np.linalg.norm(psi)
        psi_coords = n_frame.conj().T @ psi
        limit_resid = max(
            float(np.linalg.norm(est @ psi_coords - scale * (nbar_frame.conj().T @ x.apply(psi))))
            for est in estimates)
        proxies = {}
        min_proxy = float("inf")
        for theta, (points, mats) in per_ray_samples.items():
            ray_proxies = []
            for lam, mat in zip(points, mats):
                p = (1.0 - float(np.linalg.norm(mat @ psi_coords))) / abs(lam)
                ray_proxies.append(p)
                if abs(lam) <= max(two_smallest) * (1 + 1e-12):
                    min_proxy = min(min_proxy, p)
            proxies[theta] = tuple(ray_proxies)
        if limit_resid <= limit_tol and min_proxy < rate_bound:
            witness = psi
            witness_resid = limit_resid
            witness_proxy = min_proxy
            rate_estimates = proxies
            break
    return IAdmissibilityVerdict(witness is None, witness, f0, rate_estimates,
                                 disagreement, kernel_margin, witness_resid,
                                 witness_proxy, tolerances)
