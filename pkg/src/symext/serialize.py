"""JSON encoding of the toolkit's value types (schema version 1).

Complex scalars are [re, im] pairs; matrices are row-major nested lists with
[re, im] leaves. Encoding is canonical (sorted keys, two-space indent), so the
same objects always produce the same bytes.
"""

import json

import numpy as np

from .operators import DomainOperator
from .resolvents import EmbeddedExtension, ParameterFunction
from .subspaces import DEFAULT_TOL, Subspace

SCHEMA_VERSION = 1


def encode_complex(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def decode_complex(data) -> complex:
    re, im = data
    return complex(re, im)


def encode_matrix(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[encode_complex(v) for v in row] for row in m]


def decode_matrix(data) -> np.ndarray:
    rows = [[decode_complex(v) for v in row] for row in data]
    if not rows:
        return np.zeros((0, 0), dtype=complex)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    return np.array(rows, dtype=complex).reshape(len(rows), width)


def encode_subspace(s: Subspace) -> dict:
    return {"ambient_dim": s.ambient_dim, "frame": encode_matrix(s.frame)}


def decode_subspace(data, tol=DEFAULT_TOL) -> Subspace:
    d = int(data["ambient_dim"])
    frame = decode_matrix(data["frame"])
    if frame.shape[0] != d:
        raise ValueError("frame rows do not match the ambient dimension")
    return Subspace(d, frame, tol)


def encode_operator(a: DomainOperator) -> dict:
    return {
        "ambient_dim": a.ambient_dim,
        "domain_frame": encode_matrix(a.domain.frame),
        "action": encode_matrix(a.action),
    }


def decode_operator(data, tol=DEFAULT_TOL) -> DomainOperator:
    d = int(data["ambient_dim"])
    frame = decode_matrix(data["domain_frame"])
    action = decode_matrix(data["action"])
    if frame.shape[0] != d or action.shape[0] != d:
        raise ValueError("matrix rows do not match the ambient dimension")
    return DomainOperator(d, Subspace(d, frame, tol), action)


def operator_file(a: DomainOperator, extra: dict | None = None) -> dict:
    doc = {"schema": SCHEMA_VERSION, "kind": "operator", **encode_operator(a)}
    if extra:
        doc.update(extra)
    return doc


def parameter_file(parameter) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": "parameter",
        "base_point": encode_complex(parameter.z),
        "parameter_kind": parameter.kind,
        **encode_operator(parameter.t),
    }


def decode_parameter(data, tol=DEFAULT_TOL):
    from .neumann import ContractionParameter
    _expect_kind(data, "parameter")
    t = decode_operator(data, tol)
    return ContractionParameter.from_operator(decode_complex(data["base_point"]), t)


def embedded_extension_file(ext: EmbeddedExtension, extra: dict | None = None) -> dict:
    doc = {
        "schema": SCHEMA_VERSION,
        "kind": "embedded_extension",
        "exit_dim": ext.exit_dim,
        "base": encode_operator(ext.base),
        "extension": encode_operator(ext.atilde),
        "embedding": encode_matrix(ext.embed),
    }
    if extra:
        doc.update(extra)
    return doc


def decode_embedded_extension(data, tol=DEFAULT_TOL) -> EmbeddedExtension:
    _expect_kind(data, "embedded_extension")
    base = decode_operator(data["base"], tol)
    atilde = decode_operator(data["extension"], tol)
    embed = decode_matrix(data["embedding"])
    return EmbeddedExtension(base, atilde, embed, int(data["exit_dim"]))


def chain_file(chain) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": "extension_chain",
        "z": encode_complex(chain.z),
        "seed": chain.seed,
        "doubled": chain.doubled,
        "exit_dim": chain.exit_dim,
        "base": encode_operator(chain.base),
        "final": encode_operator(chain.final),
        "steps": [
            {
                "parameter": parameter_file(step.parameter),
                "operator": encode_operator(step.operator),
                "defect_numbers": list(step.defect_numbers),
            }
            for step in chain.steps
        ],
    }


def parameter_function_file(f: ParameterFunction) -> dict:
    doc = {
        "schema": SCHEMA_VERSION,
        "kind": "parameter_function",
        "lambda0": encode_complex(f.lambda0),
        "provenance": f.provenance,
        "domain_frame": encode_matrix(f.domain_frame),
        "range_frame": encode_matrix(f.range_frame),
        "samples": [
            {"lambda": encode_complex(k), "matrix": encode_matrix(v)}
            for k, v in sorted(f.samples.items(), key=lambda kv: (kv[0].real, kv[0].imag))
        ],
    }
    if f.constant_matrix is not None:
        doc["constant_matrix"] = encode_matrix(f.constant_matrix)
    return doc


def _expect_kind(data, kind):
    if data.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {data.get('schema')!r}")
    if data.get("kind") != kind:
        raise ValueError(f"expected a {kind} document, found {data.get('kind')!r}")


def load_operator(data, tol=DEFAULT_TOL) -> DomainOperator:
    _expect_kind(data, "operator")
    return decode_operator(data, tol)


def json_dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
