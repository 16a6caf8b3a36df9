"""Command-line front end.

Exit status: 0 on success, 1 on a domain or verification failure, 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .compound import compound, higher_adjugate
from .errors import EigenwedgeError
from .matrix import Matrix
from .matrixio import parse_matrix_file
from .recovery import hermitian_ev_magnitudes, verify_theorem
from .scalars import EXACT, FLOAT, TolerancePolicy, format_scalar, parse_exact, to_scalar
from .spectral import EIGEN_TOL, charpoly_faddeev, charpoly_via_adjugates, spectrum
from .suite import DEFAULT_SEED, check_matrix, run_suite


def _fmt(z) -> str:
    if isinstance(z, Fraction):
        return str(z) if z.denominator == 1 else f"{float(z):.17g}"
    if isinstance(z, (int, float)) and not isinstance(z, bool):
        return repr(z)
    return format_scalar(z)


def _matrix_doc(M: Matrix) -> list[list[str]]:
    return [[_fmt(a) for a in M.row(i)] for i in range(M.nrows)]


def _matrix_table(M: Matrix) -> str:
    cells = _matrix_doc(M)
    if not cells or not cells[0]:
        return "(empty)"
    width = max(len(c) for r in cells for c in r)
    return "\n".join("  ".join(c.rjust(width) for c in r) for r in cells)


def _emit(args, doc: dict, table: str):
    if args.format == "json":
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(table.rstrip("\n") + "\n")


def _load(args) -> Matrix:
    return parse_matrix_file(args.matrix, args.mode)


def _tol(args) -> TolerancePolicy:
    return TolerancePolicy(relative_eps=args.tol) if args.tol is not None else EIGEN_TOL


def parse_lambda(text: str, mode: str):
    """``re,im`` (or a bare real) as a scalar; exact mode takes fraction syntax."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) > 2 or not all(parts):
        raise argparse.ArgumentTypeError(f"--lambda expects 're,im', got {text!r}")
    if len(parts) == 1:
        parts.append("0")
    if mode == EXACT:
        re_, im_ = parse_exact(parts[0]), parse_exact(parts[1])
        if re_.im or im_.im:
            raise argparse.ArgumentTypeError("--lambda parts must be real")
        return to_scalar(re_ + im_ * parse_exact("i"), EXACT)
    return complex(float(parts[0]), float(parts[1]))


# -- commands ------------------------------------------------------------------


def cmd_compound(args) -> int:
    A = _load(args)
    C = compound(A, args.k)
    _emit(args, {"command": "compound", "k": args.k, "mode": A.mode, "matrix": _matrix_doc(C)}, _matrix_table(C))
    return 0


def cmd_adjugate(args) -> int:
    A = _load(args)
    M = higher_adjugate(A, args.k)
    _emit(args, {"command": "adjugate", "k": args.k, "mode": A.mode, "matrix": _matrix_doc(M)}, _matrix_table(M))
    return 0


def cmd_charpoly(args) -> int:
    A = _load(args)
    p = charpoly_faddeev(A) if args.method == "faddeev" else charpoly_via_adjugates(A)
    coeffs = [_fmt(c) for c in p.coeffs]
    terms = " + ".join(f"({c})*t^{k}" for k, c in enumerate(coeffs))
    _emit(args, {"command": "charpoly", "mode": A.mode, "method": args.method, "coefficients": coeffs},
          f"P(t) = det(A - tI) = {terms}")
    return 0


def _spectrum_rows(entries):
    return [
        {
            "eigenvalue": _fmt(e.eigenvalue),
            "algebraic_multiplicity": e.algebraic_multiplicity,
            "geometric_multiplicity": e.geometric_multiplicity,
            "cluster_radius": _fmt(float(e.cluster_radius)),
        }
        for e in entries
    ]


def cmd_eigvals(args) -> int:
    A = _load(args)
    rows = _spectrum_rows(spectrum(A, _tol(args), cluster_tol=args.cluster_tol))
    lines = ["eigenvalue  alg  geo  radius"] + [
        f"{r['eigenvalue']}  {r['algebraic_multiplicity']}  {r['geometric_multiplicity']}  {r['cluster_radius']}"
        for r in rows
    ]
    _emit(args, {"command": "eigvals", "mode": A.mode, "spectrum": rows}, "\n".join(lines))
    return 0


def _recovery_doc(A: Matrix, lam, tol, k):
    from .recovery import recover_wedge

    res = recover_wedge(A, lam, tol, k)
    rep = verify_theorem(A, lam, tol, k)
    return {
        "eigenvalue": _fmt(res.eigenvalue),
        "k": res.k,
        "scale": _fmt(res.scale),
        "v": [_fmt(c) for c in res.v.coords],
        "w": [_fmt(c) for c in res.w.coords],
        "right_basis": _matrix_doc(res.right_basis),
        "left_basis": _matrix_doc(res.left_basis),
        "residuals": {name: _fmt(val) for name, val in rep.residuals().items()},
    }


def _recovery_table(doc: dict) -> str:
    lines = [
        f"eigenvalue {doc['eigenvalue']}  k={doc['k']}  scale={doc['scale']}",
        "v = (" + ", ".join(doc["v"]) + ")",
        "w = (" + ", ".join(doc["w"]) + ")",
    ]
    lines += [f"  {name}: {val}" for name, val in doc["residuals"].items()]
    return "\n".join(lines)


def cmd_eigrecover(args) -> int:
    A = _load(args)
    tol = _tol(args)
    if args.auto:
        docs, status = [], 0
        for e in spectrum(A, tol, cluster_tol=args.cluster_tol):
            target = A if (A.exact and not isinstance(e.eigenvalue, complex)) else A.to_mode(FLOAT)
            try:
                docs.append(_recovery_doc(target, e.eigenvalue, tol, None))
            except EigenwedgeError as exc:
                status = 1
                docs.append({"eigenvalue": _fmt(e.eigenvalue), "error": f"{type(exc).__name__}: {exc}"})
        table = "\n\n".join(d["error"].join([f"eigenvalue {d['eigenvalue']}: ", ""]) if "error" in d
                            else _recovery_table(d) for d in docs)
        _emit(args, {"command": "eigrecover", "mode": A.mode, "results": docs}, table)
        return status
    try:
        lam = parse_lambda(args.lam, A.mode)
    except (argparse.ArgumentTypeError, ValueError) as exc:
        print(f"eigenwedge eigrecover: error: bad --lambda: {exc}", file=sys.stderr)
        return 2
    doc = _recovery_doc(A, lam, tol, args.k)
    _emit(args, {"command": "eigrecover", "mode": A.mode, "results": [doc]}, _recovery_table(doc))
    return 0


def cmd_hermitian_ev(args) -> int:
    A = _load(args)
    res = hermitian_ev_magnitudes(A, cluster_tol=args.cluster_tol or 1e-6)
    doc = {
        "command": "hermitian-ev",
        "eigenvalues": [_fmt(x) for x in res.eigenvalues],
        "magnitudes": [[_fmt(x) for x in row] for row in res.table],
    }
    lines = ["|v_ij|^2 (row i: eigenvalue, column j: component)"]
    for lam, row in zip(res.eigenvalues, res.table):
        lines.append(f"{lam:+.12g}: " + "  ".join(f"{x:.12g}" for x in row))
    _emit(args, doc, "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    if args.matrix is not None:
        A = _load(args)
        if args.corrupt:
            print("eigenwedge verify: error: --corrupt applies to the random suite only", file=sys.stderr)
            return 2
        report = check_matrix(A, seed=args.seed)
    else:
        report = run_suite(trials=args.trials, dim_max=args.dim_max, seed=args.seed, corrupt=args.corrupt)
    doc = {"command": "verify", **report.as_dict()}
    lines = [f"seed {report.seed}"]
    for r in report.results:
        lines.append(
            f"{'PASS' if r.passed else 'FAIL'}  {r.name:<36} residual={_fmt(r.residual):<24} "
            f"threshold={_fmt(r.threshold)}  trials={r.trials}" + (f"  [{r.detail}]" if r.detail else "")
        )
    lines.append(f"{'ALL PASSED' if report.passed else 'FAILURES'} in {report.seconds:.2f}s")
    _emit(args, doc, "\n".join(lines))
    return 0 if report.passed else 1


# -- argument parsing ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--mode", choices=(EXACT, FLOAT), default=None,
                        help="convert the loaded matrix to this scalar mode")
    common.add_argument("--tol", type=float, default=None, help="relative tolerance for float rank decisions")

    parser = argparse.ArgumentParser(prog="eigenwedge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compound", parents=[common], help="k-th compound matrix")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("matrix")
    p.set_defaults(func=cmd_compound)

    p = sub.add_parser("adjugate", parents=[common], help="k-th higher adjugate")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("matrix")
    p.set_defaults(func=cmd_adjugate)

    p = sub.add_parser("charpoly", parents=[common], help="coefficients of det(A - tI)")
    p.add_argument("--method", choices=("adjugate", "faddeev"), default="adjugate")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("eigvals", parents=[common], help="eigenvalues with multiplicities")
    p.add_argument("--cluster-tol", type=float, default=None)
    p.add_argument("matrix")
    p.set_defaults(func=cmd_eigvals)

    p = sub.add_parser("eigrecover", parents=[common], help="eigenvector wedges from adj_k(A - lam I)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--lambda", dest="lam", metavar="RE,IM")
    group.add_argument("--auto", action="store_true", help="recover every eigenvalue found")
    p.add_argument("-k", type=int, default=None, help="multiplicity (default: detected)")
    p.add_argument("--cluster-tol", type=float, default=None)
    p.add_argument("matrix")
    p.set_defaults(func=cmd_eigrecover)

    p = sub.add_parser("hermitian-ev", parents=[common], help="|v_ij|^2 from eigenvalues of a Hermitian matrix")
    p.add_argument("--cluster-tol", type=float, default=None)
    p.add_argument("matrix")
    p.set_defaults(func=cmd_hermitian_ev)

    p = sub.add_parser("verify", parents=[common], help="run the identity suite")
    p.add_argument("matrix", nargs="?", default=None)
    p.add_argument("--trials", type=int, default=40)
    p.add_argument("--dim-max", type=int, default=5)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--corrupt", action="store_true", help="perturb one constructed matrix entry (self-test)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EigenwedgeError as exc:
        if getattr(args, "format", "table") == "json":
            json.dump({"command": args.command, "error": type(exc).__name__, "message": str(exc)}, sys.stdout)
            sys.stdout.write("\n")
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
