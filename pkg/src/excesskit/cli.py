"""Command line interface.

Subcommands
-----------
check-design   four 2-design conditions of a point set
excess         harmonic decomposition, excess bound, equality certificate
scheme         association scheme axioms and eigenstructure
embed          spherical embedding of a scheme through one idempotent
graph-excess   spectral excess analysis of a graph
fixtures       built-in example documents

Every analysis subcommand prints its JSON report on stdout and a short
human summary on stderr; ``--json OUT`` additionally writes the report
to a file.  ``embed`` instead prints the embedded pointset document on
stdout so it can be piped into ``check-design`` or ``excess``.  Reports
carry the command, a digest of the input, the tolerances in force, and
the exit code, and are deterministic byte for byte.

Exit codes: 0 when the run certifies or verifies, 1 for a valid run
with a negative verdict, 2 for input or configuration errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Any

import numpy as np

from .excess import (
    excess_from_decomposition,
    predegree_system,
    project_onto_algebra,
)
from .exceptions import (
    DisconnectedGraphError,
    ExcessKitError,
    NotRegularError,
)
from .fixtures import fixture_document, fixture_kind, fixture_names
from .graphdual import distance_matrices, graph_excess_analysis, load_graph
from .harmonic import harmonic_decomposition
from .orthopoly import poly_string
from .pointset import check_two_design, load_pointset
from .scheme import (
    bose_mesner_eigenstructure,
    krein_parameters,
    load_scheme,
    qpoly_ordering,
    spherical_embedding,
    verify_scheme,
)
from .tolerances import ToleranceConfig

_PASS_VERDICTS = {"design-verified", "scheme-verified", "equality-certified"}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol-cluster", type=float, default=1e-8, metavar="T",
                   help="gap tolerance for clustering nearly equal values")
    p.add_argument("--tol-rank", type=float, default=1e-9, metavar="T",
                   help="relative singular value cutoff for rank decisions")
    p.add_argument("--tol-cert", type=float, default=1e-8, metavar="T",
                   help="residual threshold for certificates")
    p.add_argument("--json", dest="json_out", metavar="OUT",
                   help="also write the JSON report to this file")
    p.add_argument("--dump-matrices", action="store_true",
                   help="include full matrices in the report")


def _tol(args: argparse.Namespace) -> ToleranceConfig:
    return ToleranceConfig(
        cluster=args.tol_cluster, rank=args.tol_rank, cert=args.tol_cert
    )


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"no such file: {path}")
    return p.read_text()


def _base_payload(command: str, args: argparse.Namespace, text: str) -> dict[str, Any]:
    return {
        "command": command,
        "input_sha256": hashlib.sha256(text.encode()).hexdigest(),
        "tolerances": {
            "cluster": args.tol_cluster,
            "rank": args.tol_rank,
            "cert": args.tol_cert,
        },
    }


def _matrix(M: np.ndarray) -> list[list[float]]:
    return np.asarray(M).tolist()


def _finish(
    args: argparse.Namespace,
    payload: dict[str, Any],
    lines: list[str],
    stdout_json: bool = True,
) -> int:
    verdict = payload.get("verdict", "error")
    code = 0 if verdict in _PASS_VERDICTS else 1
    payload["exit_code"] = code
    text = json.dumps(payload, indent=2, sort_keys=True)
    if stdout_json:
        print(text)
    for line in lines:
        print(line, file=sys.stderr)
    if getattr(args, "json_out", None):
        Path(args.json_out).write_text(text + "\n")
    return code


def cmd_check_design(args: argparse.Namespace) -> int:
    text = _read_source(args.input)
    X = load_pointset(json.loads(text), verify=False)
    report = check_two_design(X, _tol(args))
    payload = {**_base_payload("check-design", args, text), **report.as_dict()}
    lines = [
        f"point set: n={report.n} points in dimension {report.dimension} "
        f"(squared radius {report.radius_sq:g})",
    ]
    labels = {
        "equal_norms": f"max norm deviation {report.norm_residual:.3e}",
        "min_separation": f"separation margin {report.separation_margin:.3e}",
        "centered": f"row sum residual {report.centering_residual:.3e}",
        "projector": f"idempotency residual {report.projector_residual:.3e}",
    }
    for key, ok in report.conditions.items():
        lines.append(f"  {key:<15} {'pass' if ok else 'FAIL'}  ({labels[key]})")
    lines.append(f"verdict: {report.verdict}")
    return _finish(args, payload, lines)


def cmd_excess(args: argparse.Namespace) -> int:
    tol = _tol(args)
    text = _read_source(args.input)
    X = load_pointset(json.loads(text), verify=False)
    design = check_two_design(X, tol)
    base = _base_payload("excess", args, text)
    if not design.passed:
        payload = {
            **base,
            "design": design.as_dict(),
            "verdict": "design-refuted",
        }
        failed = [k for k, ok in design.conditions.items() if not ok]
        lines = [
            f"point set fails 2-design condition(s): {', '.join(failed)}",
            "verdict: design-refuted",
        ]
        return _finish(args, payload, lines)

    decomp = harmonic_decomposition(X, tol, require_design=True)
    system = predegree_system(decomp.profile)
    report = excess_from_decomposition(decomp, system, tol)
    profile = decomp.profile
    payload = {
        **base,
        "design": design.as_dict(),
        "radius_sq": profile.radius_sq,
        "inner_products": profile.values.tolist(),
        "pair_counts": profile.counts.tolist(),
        "harmonic_dims": list(decomp.dims),
        "predegree_polynomials": [list(p.coef) for p in system.polys],
        "predegree_strings": [poly_string(p) for p in system.polys],
        **report.as_dict(),
    }
    if args.dump_matrices:
        payload["projectors"] = [_matrix(F) for F in decomp.projectors]
        payload["snapped_gram"] = _matrix(profile.snapped_gram())
        payload["projected_top"] = _matrix(project_onto_algebra(decomp, system))
    shown = [profile.radius_sq] + profile.values[::-1].tolist()
    lines = [
        f"point set: n={report.n} in dimension {report.dimension}; "
        f"s={report.s} distinct inner products, degree S={report.degree}",
        "inner products (radius first): "
        + ", ".join(f"{v:g}" for v in shown),
        f"harmonic dimensions: {list(decomp.dims)}",
        f"mean excess {report.mu:.12g} vs bound {report.bound:.12g} "
        f"(gap {report.gap:.3e})",
    ]
    if not report.hypothesis_met:
        lines.append(
            f"degree S={report.degree} < s={report.s}: the excess bound "
            "hypothesis does not hold for this set"
        )
    else:
        lines.append(
            "idempotent residuals: "
            + ", ".join(f"{r:.3e}" for r in report.residuals)
        )
    lines.append(f"verdict: {report.verdict}")
    return _finish(args, payload, lines)


def cmd_scheme(args: argparse.Namespace) -> int:
    tol = _tol(args)
    text = _read_source(args.input)
    R = load_scheme(json.loads(text))
    report = verify_scheme(R)
    payload = {**_base_payload("scheme", args, text), **report.as_dict()}
    lines = [f"scheme candidate: n={report.n}, {report.d + 1} classes"]
    for key, ok in report.axioms.items():
        lines.append(f"  {key:<10} {'pass' if ok else 'FAIL'}")
    if not report.passed:
        lines.append(f"witness: {report.witness}")
        lines.append("verdict: scheme-refuted")
        return _finish(args, payload, lines)

    eig = bose_mesner_eigenstructure(R, tol)
    orderings = [
        qpoly_ordering(eig, index, tol).as_dict()
        for index in range(eig.d + 1)
    ]
    payload.update(
        {
            "multiplicities": list(eig.multiplicities),
            "P": _matrix(eig.P),
            "Q": _matrix(eig.Q),
            "qpoly_orderings": orderings,
        }
    )
    if args.dump_matrices:
        payload["idempotents"] = [_matrix(E) for E in eig.idempotents]
        payload["intersection_numbers"] = report.intersection_numbers.tolist()
        payload["krein"] = krein_parameters(eig).tolist()
    lines.append(f"valencies: {report.valencies.tolist()}")
    lines.append(f"multiplicities: {list(eig.multiplicities)}")
    lines.append("eigenmatrix P:")
    lines.extend("  " + "  ".join(f"{v:10.6g}" for v in row) for row in eig.P)
    for entry in orderings[1:]:
        state = (
            "generates a Q-polynomial ordering " + str(entry["order"])
            if entry["exists"]
            else f"no Q-polynomial ordering ({entry['reason']})"
        )
        lines.append(f"idempotent {entry['index']}: {state}")
    lines.append("verdict: scheme-verified")
    return _finish(args, payload, lines)


def cmd_embed(args: argparse.Namespace) -> int:
    tol = _tol(args)
    text = _read_source(args.input)
    R = load_scheme(json.loads(text))
    report = verify_scheme(R)
    base = _base_payload("embed", args, text)
    if not report.passed:
        payload = {**base, **report.as_dict()}
        lines = [f"witness: {report.witness}", "verdict: scheme-refuted"]
        return _finish(args, payload, lines)
    eig = bose_mesner_eigenstructure(R, tol)
    X = spherical_embedding(eig, args.idempotent)
    doc = {
        "type": "pointset",
        "dimension": int(X.shape[1]),
        "points": X.tolist(),
        "normalize": False,
    }
    payload = {
        **base,
        "idempotent": args.idempotent,
        "multiplicity": int(X.shape[1]),
        "pointset": doc,
        "verdict": "scheme-verified",
    }
    lines = [
        f"embedded n={X.shape[0]} classes through idempotent "
        f"{args.idempotent} into dimension {X.shape[1]}",
    ]
    # stdout carries the pointset document itself so the output can be
    # piped straight into check-design or excess.
    code = _finish(args, payload, lines, stdout_json=False)
    print(json.dumps(doc, indent=2, sort_keys=True))
    return code


def cmd_graph_excess(args: argparse.Namespace) -> int:
    tol = _tol(args)
    text = _read_source(args.input)
    A = load_graph(json.loads(text))
    base = _base_payload("graph-excess", args, text)
    try:
        report = graph_excess_analysis(A, tol)
    except (DisconnectedGraphError, NotRegularError) as exc:
        payload = {**base, "verdict": "hypothesis-unmet", "reason": str(exc)}
        return _finish(args, payload, [f"hypothesis failure: {exc}",
                                       "verdict: hypothesis-unmet"])
    payload = {**base, **report.as_dict()}
    if args.dump_matrices:
        payload["distance_matrices"] = [
            _matrix(M) for M in distance_matrices(A)
        ]
    lines = [
        f"graph: n={report.n}, valency {report.valency}, "
        f"{report.d + 1} distinct eigenvalues, diameter {report.diameter}",
        f"eigenvalues: "
        + ", ".join(
            f"{v:g} (x{int(k)})"
            for v, k in zip(report.eigenvalues, report.multiplicities)
        ),
        f"mean distance-{report.d} excess {report.mean_excess:.12g} vs "
        f"bound {report.bound:.12g} (gap {report.gap:.3e})",
        f"distance matrix residuals: "
        + ", ".join(f"{r:.3e}" for r in report.residuals),
        f"distance-regular: {'yes' if report.drg else 'no'}",
        f"verdict: {report.verdict}",
    ]
    if not report.hypothesis_met:
        lines.insert(-1, (
            f"diameter {report.diameter} < d={report.d}: the distance "
            "partition stops short of the spectrum"
        ))
    return _finish(args, payload, lines)


def cmd_fixtures(args: argparse.Namespace) -> int:
    names = fixture_names() if args.only is None else [args.only]
    if args.only is not None and args.only not in fixture_names():
        raise KeyError(f"unknown fixture {args.only!r}")
    if args.dir is None:
        for name in names:
            print(f"{name:<14} {fixture_kind(name)}")
        return 0
    out_dir = Path(args.dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in names:
        doc = fixture_document(name)
        path = out_dir / f"{name}.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="excesskit",
        description=(
            "Excess bounds and certificates for spherical 2-designs, "
            "association schemes, and graphs."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-design", help="verify the 2-design conditions")
    p.add_argument("input", help="pointset JSON file, or - for stdin")
    _add_common(p)
    p.set_defaults(func=cmd_check_design)

    p = sub.add_parser("excess", help="excess bound and equality certificate")
    p.add_argument("input", help="pointset JSON file, or - for stdin")
    _add_common(p)
    p.set_defaults(func=cmd_excess)

    p = sub.add_parser("scheme", help="verify an association scheme")
    p.add_argument("input", help="scheme JSON file, or - for stdin")
    _add_common(p)
    p.set_defaults(func=cmd_scheme)

    p = sub.add_parser("embed", help="spherical embedding of a scheme")
    p.add_argument("input", help="scheme JSON file, or - for stdin")
    p.add_argument("--idempotent", type=int, default=1, metavar="K",
                   help="index of the generating idempotent (default 1)")
    _add_common(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("graph-excess", help="spectral excess analysis")
    p.add_argument("input", help="graph JSON file, or - for stdin")
    _add_common(p)
    p.set_defaults(func=cmd_graph_excess)

    p = sub.add_parser("fixtures", help="built-in example documents")
    p.add_argument("dir", nargs="?", metavar="DIR",
                   help="write fixture documents into DIR (default: list them)")
    p.add_argument("--only", metavar="NAME", help="restrict to one fixture")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ExcessKitError, ValueError, KeyError, OSError) as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(json.dumps({"verdict": "error", "message": str(message),
                          "exit_code": 2}, indent=2, sort_keys=True))
        print(f"error: {message}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
