"""Command-line scenario runner.

Exit codes: 0 success, 1 file or schema problems, 2 infeasible instance
parameters, 3 parameter rejected as not admissible (a unit witness is printed
to stderr as JSON), 4 the three invertibility tests disagree beyond the
borderline band.
"""

import argparse
import csv
import json
import sys

import numpy as np

from . import checks, serialize
from .errors import NotAdmissible, SpecInfeasible, SymextError
from .instances import InstanceSpec, gen_symmetric, truncated_shift
from .invertibility import build_invertible_selfadjoint, check_invertibility
from .neumann import extend
from .resolvents import (EmbeddedExtension, ParameterFunction,
                         compressed_resolvent, default_lambda_grid,
                         shtraus_resolvent)
from .subspaces import DEFAULT_TOL

EXIT_OK = 0
EXIT_IO = 1
EXIT_INFEASIBLE = 2
EXIT_NOT_ADMISSIBLE = 3
EXIT_DISAGREEMENT = 4

# margins inside this band are borderline; outside it, disagreement is an error
BORDERLINE_LOW = 1e-9
BORDERLINE_HIGH = 1e-6


def _parse_complex(text: str) -> complex:
    try:
        re_part, im_part = text.split(",")
        return complex(float(re_part), float(im_part))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}") from exc


def _parse_window(text: str):
    lo, hi = (float(p) for p in text.split(","))
    return (lo, hi)


def _read_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _write_output(doc, path=None):
    text = serialize.json_dump(doc)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _encode_vector(v):
    return [serialize.encode_complex(x) for x in np.asarray(v).reshape(-1)]


def cmd_gen(args) -> int:
    if args.shift is not None:
        op = truncated_shift(args.shift, tol=args.tol)
        extra = {
            "construction": "truncated-shift",
            "note": ("finite section of the unilateral-shift model; the genuine "
                     "(0, 1)-defect operator needs infinite dimension"),
            "seed": args.seed,
        }
    else:
        spec = InstanceSpec(args.dim, args.defect, args.dense_range,
                            tuple(args.window), args.seed)
        op = gen_symmetric(spec, tol=args.tol)
        extra = {
            "instance_spec": {
                "ambient_dim": spec.ambient_dim,
                "defect": spec.defect,
                "dense_range": spec.dense_range,
                "spectrum_window": list(spec.spectrum_window),
                "seed": spec.seed,
            }
        }
    extra["tolerances"] = {"rank_tol": args.tol}
    _write_output(serialize.operator_file(op, extra), args.output)
    return EXIT_OK


def cmd_extend(args) -> int:
    op = serialize.load_operator(_read_json(args.operator), tol=args.tol)
    parameter = serialize.decode_parameter(_read_json(args.param), tol=args.tol)
    z = args.z if args.z is not None else parameter.z
    if args.z is not None and abs(parameter.z - args.z) > 1e-12:
        raise ValueError("--z disagrees with the parameter file base point")
    report = extend(op, z, parameter)
    doc = {
        "schema": serialize.SCHEMA_VERSION,
        "kind": "extension_report",
        "z": serialize.encode_complex(z),
        "classification": report.classification,
        "invertible": report.invertible,
        "defect_numbers_of_b": list(report.defect_numbers_of_b),
        "b": serialize.encode_operator(report.b),
        "witnesses": {k: _encode_vector(v) for k, v in report.witnesses.items()},
        "tolerances": {"rank_tol": args.tol},
    }
    _write_output(doc, args.output)
    return EXIT_OK


def cmd_check_invert(args) -> int:
    op = serialize.load_operator(_read_json(args.operator), tol=args.tol)
    parameter = serialize.decode_parameter(_read_json(args.param), tol=args.tol)
    z = args.z if args.z is not None else parameter.z
    verdict = check_invertibility(op, z, parameter)
    doc = {
        "schema": serialize.SCHEMA_VERSION,
        "kind": "invertibility_verdict",
        "z": serialize.encode_complex(z),
        "direct": verdict.direct,
        "via_admissibility": verdict.via_admissibility,
        "via_forbidden": verdict.via_forbidden,
        "agree": verdict.agree,
        "margins": {k: (None if np.isinf(v) else v) for k, v in verdict.margins.items()},
        "witness": None if verdict.witness is None else _encode_vector(verdict.witness),
        "tolerances": {"rank_tol": args.tol, "borderline_band": [BORDERLINE_LOW, BORDERLINE_HIGH]},
    }
    _write_output(doc, args.output)
    if not verdict.agree:
        finite = [v for v in verdict.margins.values() if not np.isinf(v)]
        borderline = any(BORDERLINE_LOW < m < BORDERLINE_HIGH for m in finite)
        if not borderline:
            return EXIT_DISAGREEMENT
    return EXIT_OK


def cmd_build_sa(args) -> int:
    op = serialize.load_operator(_read_json(args.operator), tol=args.tol)
    chain = build_invertible_selfadjoint(op, args.z, seed=args.seed,
                                         double_first=args.double)
    ext = EmbeddedExtension.from_chain(chain)
    _write_output(serialize.embedded_extension_file(
        ext, {"tolerances": {"rank_tol": args.tol}}), args.output)
    if args.chain:
        chain_doc = serialize.chain_file(chain)
        chain_doc["tolerances"] = {"rank_tol": args.tol}
        _write_output(chain_doc, args.chain)
    return EXIT_OK


def _grid_for(args, ext, lambda0):
    if args.grid:
        return tuple(_parse_complex(p) for p in args.grid.split(";"))
    return default_lambda_grid(lambda0, ext.atilde_matrix())


def cmd_resolvent(args) -> int:
    op = serialize.load_operator(_read_json(args.operator), tol=args.tol)
    ext = serialize.decode_embedded_extension(_read_json(args.extension), tol=args.tol)
    lambda0 = args.lambda0
    grid = _grid_for(args, ext, lambda0)
    f = ParameterFunction.from_extension(ext, lambda0, grid)
    rows = []
    points = []
    worst = 0.0
    for lam in grid:
        entry = {"lambda": serialize.encode_complex(lam)}
        try:
            compressed = compressed_resolvent(ext, lam)
            direct = shtraus_resolvent(op, lambda0, f, lam)
            deviation = float(np.linalg.norm(compressed - direct, 2))
            worst = max(worst, deviation)
            entry["deviation"] = deviation
            rows.append((lam, compressed))
        except SymextError as exc:
            entry["skipped"] = f"{type(exc).__name__}: {exc}"
        points.append(entry)
    if args.csv:
        _write_resolvent_csv(args.csv, rows, op.ambient_dim)
    doc = {
        "schema": serialize.SCHEMA_VERSION,
        "kind": "resolvent_comparison",
        "lambda0": serialize.encode_complex(lambda0),
        "points": points,
        "max_deviation": worst,
        "tolerances": {"rank_tol": args.tol, "agreement_tol": 1e-8},
        "agree": worst < 1e-8,
    }
    _write_output(doc, args.output)
    return EXIT_OK


def _write_resolvent_csv(path, rows, d):
    header = ["lambda_re", "lambda_im"]
    for i in range(d):
        for j in range(d):
            header.extend([f"R{i}{j}_re", f"R{i}{j}_im"])
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for lam, matrix in rows:
            line = [repr(float(lam.real)), repr(float(lam.imag))]
            for i in range(d):
                for j in range(d):
                    line.extend([repr(float(matrix[i, j].real)),
                                 repr(float(matrix[i, j].imag))])
            writer.writerow(line)


def cmd_verify(args) -> int:
    op = serialize.load_operator(_read_json(args.operator), tol=args.tol)
    ext = None
    if args.extension:
        ext = serialize.decode_embedded_extension(_read_json(args.extension), tol=args.tol)
    results = checks.run_suite(op, ext, lambda0=args.lambda0, seed=args.seed)
    doc = {
        "schema": serialize.SCHEMA_VERSION,
        "kind": "verification_report",
        "suite": args.suite,
        "checks": [
            {"name": r.name, "passed": r.passed, "max_error": r.max_error,
             "note": r.note, "skipped": r.skipped}
            for r in results
        ],
        "all_passed": all(r.passed for r in results),
        "tolerances": {"rank_tol": args.tol, "cayley_tol": checks.CAYLEY_TOL,
                       "resolvent_tol": checks.RESOLVENT_TOL, "roundtrip_tol": checks.ROUNDTRIP_TOL},
    }
    _write_output(doc, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symext",
        description="Extensions of symmetric operators with non-dense domains in C^d")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                       help="relative rank tolerance (default %(default)g)")
        p.add_argument("-o", "--output", help="write the JSON report here instead of stdout")

    p = sub.add_parser("gen", help="generate a seeded symmetric operator instance")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--defect", type=int, default=1)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--dense-range", dest="dense_range", action="store_true", default=None)
    group.add_argument("--no-dense-range", dest="dense_range", action="store_false")
    p.add_argument("--window", type=_parse_window, default=(0.5, 2.0),
                   help="eigenvalue window 'lo,hi' excluding 0")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shift", type=int, default=None,
                   help="emit the truncated-shift model of this size instead")
    add_common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("extend", help="build the extension for a parameter file")
    p.add_argument("operator")
    p.add_argument("--z", type=_parse_complex, default=None)
    p.add_argument("--param", required=True)
    add_common(p)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("check-invert", help="run the three-way invertibility criterion")
    p.add_argument("operator")
    p.add_argument("--z", type=_parse_complex, default=None)
    p.add_argument("--param", required=True)
    add_common(p)
    p.set_defaults(func=cmd_check_invert)

    p = sub.add_parser("build-sa", help="construct an invertible self-adjoint extension chain")
    p.add_argument("operator")
    p.add_argument("--z", type=_parse_complex, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--double", action="store_true",
                   help="start from A (+) (-A) on the doubled space")
    p.add_argument("--chain", default=None, help="write the step-by-step chain JSON here")
    add_common(p)
    p.set_defaults(func=cmd_build_sa)

    p = sub.add_parser("resolvent", help="compare compressed and parameter-formula resolvents")
    p.add_argument("operator")
    p.add_argument("extension")
    p.add_argument("--lambda0", type=_parse_complex, required=True)
    p.add_argument("--grid", default=None, help="semicolon-separated 're,im' points")
    p.add_argument("--csv", default=None, help="write the resolvent grid as CSV here")
    add_common(p)
    p.set_defaults(func=cmd_resolvent)

    p = sub.add_parser("verify", help="run the identity-check suite")
    p.add_argument("operator")
    p.add_argument("extension", nargs="?", default=None)
    p.add_argument("--lambda0", type=_parse_complex, default=1j)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suite", default="all", choices=["all"])
    add_common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecInfeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except NotAdmissible as exc:
        doc = {"error": "not admissible", "detail": str(exc),
               "witness": None if exc.witness is None else _encode_vector(exc.witness)}
        print(serialize.json_dump(doc), file=sys.stderr, end="")
        return EXIT_NOT_ADMISSIBLE
    except (OSError, json.JSONDecodeError, ValueError, KeyError, SymextError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
