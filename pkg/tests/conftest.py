"""Shared fixtures: the worked 2x2 family and seeded random instances."""

import numpy as np
import pytest

import symext as sx


@pytest.fixture
def worked_a():
    """A: e1 -> e1 on span{e1} in C^2; defect (1,1) at every non-real z."""
    col = np.array([[1.0], [0.0]], dtype=complex)
    return sx.operator_from_generators(col, col)


@pytest.fixture
def worked_dd(worked_a):
    return sx.defect_data(worked_a, 1j)


def worked_parameter(dd, c):
    """T: e2 -> c*e2 in the defect frames of the worked family."""
    return sx.ContractionParameter.from_matrix(dd, np.array([[c]], dtype=complex))


def random_instance(seed, max_dim=8, max_defect=3):
    """Seeded (A, z) draw with 1 <= defect <= min(d-1, max_defect)."""
    rng = np.random.default_rng(seed)
    d = int(rng.integers(2, max_dim + 1))
    n = int(rng.integers(1, min(d - 1, max_defect) + 1))
    a = sx.gen_symmetric(sx.InstanceSpec(ambient_dim=d, defect=n, seed=seed))
    z = complex(rng.uniform(-1.5, 1.5), rng.uniform(0.3, 1.5) * rng.choice([-1, 1]))
    return a, z, n


def random_contraction(rng, dd, strict=True):
    """Random parameter matrix in the defect frames, top singular value < 1."""
    n, nb = dd.defect_numbers
    raw = rng.standard_normal((nb, n)) + 1j * rng.standard_normal((nb, n))
    s = np.linalg.svd(raw, compute_uv=False)
    denom = s[0] * rng.uniform(1.05, 2.5) if strict else max(s[0], 1e-12)
    return sx.ContractionParameter.from_matrix(dd, raw / denom)
