"""Command-line interface: ``qloops <subcommand> ...``.

Exit codes: 0 success, 2 rejected input, 3 verification failure.  Errors are
reported as a JSON object on standard error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .align import align
from .config import ModulusConfig, ToleranceConfig
from .errors import NotIntegralRepresentative, QLoopsError, RejectedInput, VerificationError
from .intertwiner import certificate_conjugator, hom_dimension_measured
from .invariant import (EllipticInvariant, EPoint, classify_full, dual_data,
                        hom_dimension_formula, invariants_equal, sum_data, synthesize,
                        tensor_data)
from .resonance import SymbolicEigenvalue, resonance_exact
from .series import LaurentMatrix, from_json, matrix_to_json, to_json
from .testkit import run_harness

EXIT_OK, EXIT_REJECTED, EXIT_VERIFY = 0, 2, 3


# -- deterministic JSON output -------------------------------------------

def _fmt(x):
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError("non-finite number in output")
        if x == 0:
            x = 0.0  # no negative zero
        return format(x, ".17g")
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, dict):
        return "{" + ", ".join(json.dumps(str(k)) + ": " + _fmt(v) for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    if isinstance(x, (np.floating, np.integer)):
        return _fmt(x.item())
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(doc) -> str:
    return _fmt(doc) + "\n"


# -- configuration -------------------------------------------------------

def _common_parser():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("configuration")
    g.add_argument("--tau-re", type=float, default=0.3)
    g.add_argument("--tau-im", type=float, default=1.1)
    g.add_argument("--eps-eig", type=float, default=1e-9)
    g.add_argument("--eps-res", type=float, default=1e-6)
    g.add_argument("--dmax", type=int, default=24)
    g.add_argument("--lmax", type=int, default=64)
    g.add_argument("--trunc", type=int, default=32)
    g.add_argument("--mode", choices=("numeric", "exact"), default="numeric")
    g.add_argument("--seed", type=int, default=1)
    g.add_argument("--trials", type=int, default=50)
    g.add_argument("-o", "--output", default=None, help="write the result here instead of stdout")
    return p


def build_parser():
    common = _common_parser()
    p = argparse.ArgumentParser(prog="qloops", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("align", parents=[common]).add_argument("loop")
    sub.add_parser("classify", parents=[common]).add_argument("loop")
    for name in ("equiv", "homdim"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("a")
        sp.add_argument("b")
    sub.add_parser("synth", parents=[common]).add_argument("invariant")
    sp = sub.add_parser("tensor", parents=[common])
    sp.add_argument("invariants", nargs="+")
    sp = sub.add_parser("sum", parents=[common])
    sp.add_argument("invariants", nargs="+")
    sub.add_parser("dual", parents=[common]).add_argument("invariant")
    sub.add_parser("selftest", parents=[common])
    return p


def _config(args):
    try:
        cfg = ModulusConfig(complex(args.tau_re, args.tau_im))
        tol = ToleranceConfig(eps_eig=args.eps_eig, eps_res=args.eps_res, d_max=args.dmax,
                              l_max=args.lmax, trunc=args.trunc)
    except ValueError as exc:
        raise RejectedInput(str(exc)) from exc
    return cfg, tol


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise RejectedInput(f"cannot read {path}: {exc}") from exc


def _read_loop(path):
    doc = _read_json(path)
    try:
        return from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise RejectedInput(f"{path}: malformed loop document: {exc}") from exc


def _read_invariant(path):
    doc = _read_json(path)
    try:
        return EllipticInvariant.from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise RejectedInput(f"{path}: malformed invariant document: {exc}") from exc


def _tau(cfg):
    return [cfg.tau.real, cfg.tau.imag]


def _complex_list(v):
    return [[float(complex(x).real), float(complex(x).imag)] for x in v]


# -- subcommands ---------------------------------------------------------

def cmd_align(args, cfg, tol):
    a = _read_loop(args.loop)
    af, conj = align(a, cfg, tol)
    return {"tau": _tau(cfg),
            "aligned": {"K": af.K, "eigs": _complex_list(af.eigs), "a0": matrix_to_json(af.a0),
                        "xs": [matrix_to_json(x) for x in af.xs],
                        "basis": matrix_to_json(af.basis),
                        "polynomial": to_json(af.polynomial())},
            "conjugator": to_json(conj)}


def _invariant_doc(cfg, inv):
    doc = {"tau": _tau(cfg)}
    doc.update(inv.to_json())
    return doc


def cmd_classify(args, cfg, tol):
    if args.mode == "exact":
        return _classify_exact(args, cfg)
    a = _read_loop(args.loop)
    cl = classify_full(a, cfg, tol)
    doc = _invariant_doc(cfg, cl.invariant)
    dp = cl.invariant.det_point()
    doc["det_point"] = {"t_tau": dp.t_tau, "t_one": dp.t_one}
    dd = cl.descent
    doc["descent"] = {"m": dd.m, "phi": list(dd.phi), "basis": matrix_to_json(dd.basis),
                      "c": matrix_to_json(dd.c), "theta_a": matrix_to_json(dd.theta_a)}
    return doc


def _classify_exact(args, cfg):
    doc = _read_json(args.loop)
    try:
        ents = [SymbolicEigenvalue.from_json(e) for e in doc]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise RejectedInput(f"{args.loop}: malformed symbolic eigenvalue list: {exc}") from exc
    if not ents:
        raise RejectedInput("empty eigenvalue list")
    ex = resonance_exact(ents)
    out = []
    for e in ents:
        # a diagonal constant splits into line bundles at lambda mod q^Z
        out.append({"tag": e.tag, "t_tau": str(e.r % 1), "t_one": str(e.r1 % 1), "size": 1})
    out.sort(key=lambda d: (d["tag"] or "", Fraction(d["t_tau"]), Fraction(d["t_one"])))
    return {"tau": _tau(cfg), "mode": "exact", "rank": len(ents), "m": ex.m,
            "phi": list(ex.phi), "r": [str(x) for x in ex.r],
            "L_basis": [list(v) for v in ex.split.L_basis],
            "complement_basis": [list(v) for v in ex.split.complement_basis],
            "entries": out}


def cmd_equiv(args, cfg, tol):
    a, b = _read_loop(args.a), _read_loop(args.b)
    c1, c2 = classify_full(a, cfg, tol), classify_full(b, cfg, tol)
    eq = invariants_equal(c1.invariant, c2.invariant, tol.eps_res)
    cert, between = None, None
    if eq:
        if a.exact and b.exact and a.shape == b.shape:
            g = certificate_conjugator(a, b, cfg, tol, trials=32, seed=args.seed)
            between = "inputs"
        else:
            g = None
        if g is None:
            g = certificate_conjugator(c1.aligned.original_polynomial(),
                                       c2.aligned.original_polynomial(), cfg, tol,
                                       trials=32, seed=args.seed)
            between = "aligned_forms"
        cert = to_json(g) if g is not None else None
        if g is None:
            between = None
    return {"tau": _tau(cfg), "equivalent": eq, "certificate": cert,
            "certificate_between": between,
            "invariants": [c1.invariant.to_json(), c2.invariant.to_json()]}


def cmd_homdim(args, cfg, tol):
    a, b = _read_loop(args.a), _read_loop(args.b)
    c1, c2 = classify_full(a, cfg, tol), classify_full(b, cfg, tol)
    measured = hom_dimension_measured(c1.aligned.original_polynomial(),
                                      c2.aligned.original_polynomial(), cfg, tol)
    formula = hom_dimension_formula(c1.invariant, c2.invariant, tol.eps_res)
    return {"tau": _tau(cfg), "measured": measured, "formula": formula}


def cmd_synth(args, cfg, tol):
    inv = _read_invariant(args.invariant)
    if inv.rank < 1:
        raise RejectedInput("invariant has rank 0")
    doc = {"tau": _tau(cfg)}
    doc.update(to_json(synthesize(inv, cfg)))
    return doc


def cmd_tensor(args, cfg, tol):
    invs = [_read_invariant(p) for p in args.invariants]
    out = invs[0]
    for x in invs[1:]:
        out = tensor_data(out, x)
    return _invariant_doc(cfg, out)


def cmd_sum(args, cfg, tol):
    invs = [_read_invariant(p) for p in args.invariants]
    out = invs[0]
    for x in invs[1:]:
        out = sum_data(out, x)
    return _invariant_doc(cfg, out)


def cmd_dual(args, cfg, tol):
    return _invariant_doc(cfg, dual_data(_read_invariant(args.invariant)))


COMMANDS = {"align": cmd_align, "classify": cmd_classify, "equiv": cmd_equiv,
            "homdim": cmd_homdim, "synth": cmd_synth, "tensor": cmd_tensor,
            "sum": cmd_sum, "dual": cmd_dual}


def _error_doc(exc):
    doc = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, NotIntegralRepresentative) and exc.entry is not None:
        doc["entry"] = exc.entry
    return doc


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_REJECTED if exc.code not in (0, None) else EXIT_OK
    try:
        cfg, tol = _config(args)
        if args.command == "selftest":
            recs = list(run_harness(args.seed, args.trials, cfg, tol))
            text = "".join(dumps(r) for r in recs)
            code = EXIT_OK if all(r["pass"] for r in recs) else EXIT_VERIFY
        else:
            text = dumps(COMMANDS[args.command](args, cfg, tol))
            code = EXIT_OK
    except RejectedInput as exc:
        stderr.write(dumps(_error_doc(exc)))
        return EXIT_REJECTED
    except (VerificationError, QLoopsError) as exc:
        stderr.write(dumps(_error_doc(exc)))
        return EXIT_VERIFY
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
