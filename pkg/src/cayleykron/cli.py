"""Command-line front end.

Every invocation prints one JSON report on stdout and exits with 0 when the
checked identity holds (or the computation succeeded), 1 when it fails as a
mathematical answer, and 2 on operational errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .cayley import cayley, cayley_spectral, inverse_cayley, pauli_hermitian, phase_coincidence
from .errors import CayleyKronError, NoRealCompanion, NotFactorable, NotRankOne, ParseError, ZeroEigenvalue
from .kron_analogue import g_map, in_domain, kron_sum
from .linalg import Tolerances, adjoint, as_matrix, check_hermitian, kron, max_norm
from .predicates import (
    companion_eigenvalues,
    e13_residual,
    identity_power_equal,
    multipartite_direct,
    multipartite_sufficient,
    theorem3_check,
)
from .separability import kron_factorize, theorem1_classify, theorem2_hermitian_factor

EXIT_HOLDS, EXIT_FAILS, EXIT_ERROR = 0, 1, 2
MATRIX_FIELDS = ("rows", "cols", "data")


class UsageError(Exception):
    pass


# -- matrix interchange format -------------------------------------------------

def matrix_from_json(doc, where="<input>") -> np.ndarray:
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: top level must be an object")
    keys = set(doc)
    missing = [k for k in MATRIX_FIELDS if k not in keys]
    unknown = sorted(keys - set(MATRIX_FIELDS))
    if missing or unknown:
        raise ParseError(f"{where}: missing fields {missing}, unknown fields {unknown}")
    rows, cols, data = doc["rows"], doc["cols"], doc["data"]
    for name, val in (("rows", rows), ("cols", cols)):
        if isinstance(val, bool) or not isinstance(val, int) or val < 1:
            raise ParseError(f"{where}: field '{name}' must be a positive integer, got {val!r}")
    if not isinstance(data, list):
        raise ParseError(f"{where}: field 'data' must be a list")
    if len(data) != rows * cols:
        raise ParseError(f"{where}: field 'data' has {len(data)} entries, expected {rows}*{cols}")
    entries = []
    for j, pair in enumerate(data):
        ok = (
            isinstance(pair, list)
            and len(pair) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        )
        if not ok:
            raise ParseError(f"{where}: data[{j}] must be a [re, im] pair of numbers")
        if not all(math.isfinite(x) for x in pair):
            raise ParseError(f"{where}: data[{j}] is not finite")
        entries.append(complex(pair[0], pair[1]))
    return np.array(entries, dtype=np.complex128).reshape(rows, cols)


def parse_matrix(source) -> np.ndarray:
    """Read a matrix from a path, or from stdin when ``source`` is '-'."""
    where = "<stdin>" if source == "-" else str(source)
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text()
    except OSError as exc:
        raise ParseError(f"{where}: {exc.strerror or exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{where}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return matrix_from_json(doc, where)


def matrix_to_json(a) -> dict:
    a = as_matrix(a)
    return {
        "rows": a.shape[0],
        "cols": a.shape[1],
        "data": [[float(z.real), float(z.imag)] for z in a.ravel()],
    }


def dumps(obj) -> str:
    """JSON text with every float written to 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise ValueError(f"cannot serialize non-finite value {x}")
        text = format(x, ".17g")
        return text if any(c in text for c in ".en") else text + ".0"
    return json.dumps(obj)


# -- reports ---------------------------------------------------------------------

def report(command, inputs, verdict, tol, case=None, residuals=None, outputs=None, message=None) -> dict:
    return {
        "command": command,
        "inputs": [str(p) for p in inputs],
        "verdict": verdict,
        "case": case,
        "residuals": {k: float(v) for k, v in (residuals or {}).items()},
        "outputs": {k: matrix_to_json(v) for k, v in (outputs or {}).items()},
        "tolerances": tol.as_dict(),
        "message": message,
    }


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"{args.command} requires --{name.replace('_', '-')}")


def _inputs(args):
    paths = [p for p in (args.a, args.b) if p is not None]
    return paths + list(args.inputs or [])


def _load_ab(args):
    _need(args, "a", "b")
    return parse_matrix(args.a), parse_matrix(args.b)


# -- commands --------------------------------------------------------------------

def cmd_cayley(args, tol):
    _need(args, "a")
    a = parse_matrix(args.a)
    u = cayley(a, tol)
    res = {
        "unitarity": max_norm(adjoint(u) @ u - np.eye(u.shape[0])),
        "spectral_agreement": max_norm(u - cayley_spectral(a, tol)),
    }
    return "holds", None, res, {"U": u}


def cmd_inv_cayley(args, tol):
    _need(args, "a")
    u = parse_matrix(args.a)
    a = inverse_cayley(u, tol)
    return "holds", None, {"round_trip": max_norm(cayley(a, tol) - u)}, {"A": a}


def cmd_kron(args, tol):
    a, b = _load_ab(args)
    return "holds", None, {}, {"K": kron(a, b)}


def cmd_kron_sum(args, tol):
    a, b = _load_ab(args)
    return "holds", None, {}, {"F": kron_sum(a, b)}


def cmd_gmap(args, tol):
    a, b = _load_ab(args)
    g = g_map(a, b, tol)
    target = kron(cayley(a, tol), cayley(b, tol))
    res = {
        "identity": max_norm(cayley(g, tol) - target),
        "variant_agreement": max_norm(g - g_map(a, b, tol, "alternate")),
        "hermiticity": max_norm(g - adjoint(g)),
        "domain_distance": in_domain(a, b, tol).distance,
    }
    return "holds", None, res, {"G": g}


def cmd_classify(args, tol):
    a, b = _load_ab(args)
    cls = theorem1_classify(a, b, tol)
    verdict = "holds" if cls.factorable else "fails"
    return verdict, cls.verdict.value, {"quadruple_condition": cls.residual}, {}


def cmd_factorize(args, tol):
    if args.a is not None and args.b is not None:
        a, b = _load_ab(args)
        mat = cayley(kron(a, b), tol)
        m, n = a.shape[0], b.shape[0]
    else:
        _need(args, "inputs", "m")
        if len(args.inputs) != 1:
            raise UsageError("factorize takes exactly one --inputs matrix")
        mat = parse_matrix(args.inputs[0])
        m = args.m
        if mat.shape[0] % m:
            raise UsageError(f"--m {m} does not divide matrix size {mat.shape[0]}")
        n = mat.shape[0] // m
    try:
        c, d = kron_factorize(mat, m, n, tol)
    except NotRankOne as exc:
        return "fails", "NotRankOne", {"rank_one": exc.residual}, {}
    return "holds", None, {"reconstruction": max_norm(kron(c, d) - mat)}, {"C": c, "D": d}


def cmd_hfactor(args, tol):
    a, b = _load_ab(args)
    try:
        c, d = theorem2_hermitian_factor(a, b, tol)
    except NotFactorable:
        return "fails", "NotFactorable", {}, {}
    res = {"identity": max_norm(kron(cayley(c, tol), cayley(d, tol)) - cayley(kron(a, b), tol))}
    return "holds", theorem1_classify(a, b, tol).verdict.value, res, {"C": c, "D": d}


def cmd_t3(args, tol):
    a, b = _load_ab(args)
    v = theorem3_check(a, b, tol)
    res = {"pair_condition": v.residual, "direct": v.direct_residual}
    return ("holds" if v.holds else "fails"), v.case, res, {}


def cmd_companion(args, tol):
    _need(args, "value")
    try:
        roots = companion_eigenvalues(args.value, tol)
    except (ZeroEigenvalue, NoRealCompanion) as exc:
        return "fails", type(exc).__name__, {}, {}
    res = {"pair_condition": max(abs(e13_residual(args.value, r)) for r in roots)}
    return "holds", None, res, {"roots": np.array([roots])}


def cmd_multi(args, tol):
    _need(args, "inputs")
    mats = [parse_matrix(p) for p in args.inputs]
    direct = multipartite_direct(mats, tol)
    sufficient = multipartite_sufficient(mats, tol)
    if direct.holds:
        case = "SufficientChain" if sufficient else "DirectOnly"
    else:
        case = None
    return ("holds" if direct.holds else "fails"), case, {"direct": direct.residual}, {}


def cmd_idpow(args, tol):
    _need(args, "m", "k")
    if args.m < 1 or args.k < 1:
        raise UsageError("--m and --k must be positive")
    holds = identity_power_equal(args.m, args.k)
    return ("holds" if holds else "fails"), None, {}, {}


def cmd_phase2x2(args, tol):
    if args.params is not None:
        a, b, c, d = args.params
    else:
        _need(args, "a")
        h = parse_matrix(args.a)
        if h.shape != (2, 2):
            raise UsageError("phase2x2 needs a 2x2 matrix")
        check_hermitian(h, tol)
        a = float((h[0, 0] + h[1, 1]).real) / 2
        d = float((h[0, 0] - h[1, 1]).real) / 2
        b, c = float(h[1, 0].real), float(h[1, 0].imag)
    phi = phase_coincidence(a, b, c, d, tol)
    if phi is None:
        return "fails", None, {}, {}
    h = pauli_hermitian(a, b, c, d)
    res = {"phase": phi, "deviation": max_norm(cayley(h, tol) - np.exp(1j * phi) * h)}
    return "holds", None, res, {}


COMMANDS = {
    "cayley": (cmd_cayley, "Cayley transform of a Hermitian matrix (--a)"),
    "inv-cayley": (cmd_inv_cayley, "inverse Cayley transform of a unitary matrix (--a)"),
    "kron": (cmd_kron, "Kronecker product of --a and --b"),
    "kron-sum": (cmd_kron_sum, "Kronecker sum of --a and --b"),
    "gmap": (cmd_gmap, "Hermitian G with U_G = U_A (x) U_B"),
    "classify": (cmd_classify, "is U_{A(x)B} a Kronecker product? (spectral test)"),
    "factorize": (cmd_factorize, "split U_{A(x)B}, or --inputs M with --m, as kron(C, D)"),
    "hfactor": (cmd_hfactor, "Hermitian C, D with U_{A(x)B} = U_C (x) U_D"),
    "t3": (cmd_t3, "does U_{A(x)B} = U_A (x) U_B hold?"),
    "companion": (cmd_companion, "companion eigenvalues of --value"),
    "multi": (cmd_multi, "multipartite product identity over --inputs"),
    "idpow": (cmd_idpow, "product identity for the --k fold power of I_--m"),
    "phase2x2": (cmd_phase2x2, "does U_H equal H up to a phase? (--a or --params a b c d)"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--a", metavar="PATH")
    common.add_argument("--b", metavar="PATH")
    common.add_argument("--inputs", nargs="+", metavar="PATH")
    common.add_argument("--tol", type=float, help="tol_eq; the other tolerances scale with it")
    common.add_argument("--tol-cluster", type=float)
    common.add_argument("--tol-conv", type=float)
    common.add_argument("--m", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--value", type=float)
    common.add_argument("--params", nargs=4, type=float, metavar=("A", "B", "C", "D"))
    common.add_argument("--out", nargs="+", metavar="PATH",
                        help="write output matrices, in order, to these files")
    parser = _Parser(prog="cayleykron", description="Cayley transforms and Kronecker products.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    command = argv[0] if argv else ""
    inputs = []
    tol = Tolerances()
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        inputs = _inputs(args)
        tol = Tolerances.scaled(args.tol, args.tol_cluster, args.tol_conv)
        handler = COMMANDS[command][0]
        verdict, case, residuals, outputs = handler(args, tol)
        for path, mat in zip(args.out or [], outputs.values()):
            Path(path).write_text(dumps(matrix_to_json(mat)) + "\n")
        doc = report(command, inputs, verdict, tol, case, residuals, outputs)
    except (UsageError, CayleyKronError, ValueError, OSError) as exc:
        message = f"{type(exc).__name__}: {exc}"
        print(f"cayleykron: {message}", file=stderr)
        doc = report(command, inputs, "error", tol, message=message)
    stdout.write(dumps(doc) + "\n")
    return {"holds": EXIT_HOLDS, "fails": EXIT_FAILS}.get(doc["verdict"], EXIT_ERROR)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
