"""tangentcodes command line.

Exit codes: 0 success, 1 usage or parse error, 2 mathematical precondition failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

import numpy as np

from . import formats as fm
from . import linalg as la
from .codes import CodeError, LinearCode, _exponent, is_cyclic, weight
from .construct import (ConstructionError, constant_tangent_variety, cyclic_assembly,
                        cyclic_plus_noncyclic, hamming_variety, interpolated_variety, is_hamming_matrix,
                        variety_from_code)
from .decode import DecodeError, check_tables, decode, precompute
from .gf import Field, FieldError
from .groebner import GroebnerBudgetError
from .poly import PolyCapError, PolyError
from .suites import SUITES
from .variety import AffineVariety, EnumerationBudgetError, VarietyError


class UsageError(Exception):
    pass


class MathError(Exception):
    pass


# --- argument helpers -------------------------------------------------------------------------

_TERM = re.compile(r"^\s*(\d*)\s*\*?\s*(t(?:\s*\^\s*(\d+))?)?\s*$")


def parse_modulus(text: str, p: int, M: int) -> list[int]:
    """``t^3+t+1`` or a coefficient list ``1:1:0:1`` (low to high)."""
    if ":" in text or text.isdigit() and len(text) == 1:
        return [int(c) for c in text.split(":")]
    coeffs = [0] * (M + 1)
    for part in re.split(r"(?=[+-])", text.replace(" ", "")):
        if not part:
            continue
        sign = -1 if part[0] == "-" else 1
        body = part.lstrip("+-")
        m = _TERM.match(body)
        if not m or not body:
            raise UsageError(f"bad modulus term {part!r}")
        c = int(m.group(1)) if m.group(1) else 1
        k = (int(m.group(3)) if m.group(3) else 1) if m.group(2) else 0
        if k > M:
            raise UsageError(f"modulus degree exceeds M = {M}")
        coeffs[k] = (coeffs[k] + sign * c) % p
    return coeffs


def parse_ambient(text: str | None) -> Field | None:
    if text is None:
        return None
    parts = text.split(",", 2)
    try:
        p, M = int(parts[0]), int(parts[1])
    except (ValueError, IndexError):
        raise UsageError(f"--ambient expects p,M[,modulus], got {text!r}")
    mod = parse_modulus(parts[2], p, M) if len(parts) == 3 else None
    try:
        return Field(p, M, mod)
    except FieldError as exc:
        raise UsageError(str(exc))


def ambient_for_q(amb: Field | None, q: int) -> Field:
    if amb is not None:
        return amb
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            x = q
            while x % p == 0:
                x //= p
                e += 1
            if x != 1:
                raise UsageError(f"q = {q} is not a prime power")
            return Field(p, e)
    raise UsageError(f"bad q = {q}")


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}")


def emit(doc: dict, out: str | None) -> None:
    text = fm.dumps(doc)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def parse_point(F: Field, text: str) -> list[int]:
    try:
        return fm.vec_in(F, text)
    except fm.FormatError as exc:
        raise UsageError(str(exc))


def parse_indices(text: str) -> list[int]:
    try:
        return [int(x) - 1 for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad index list {text!r}")


def budgets(args) -> dict:
    return {"max_basis": args.budget_groebner, "max_degree": args.budget_degree}


# --- commands ---------------------------------------------------------------------------------

def cmd_tangent(args) -> dict:
    X = fm.variety_from_json(load_json(args.variety), parse_ambient(args.ambient))
    F = X.field
    a = parse_point(F, args.point)
    if len(a) != X.n:
        raise UsageError(f"point has {len(a)} coordinates, expected {X.n}")
    if not X.contains(a):
        raise MathError("point is not on the variety")
    tc = X.tangent_code(a)
    C = tc.code
    try:
        d = C.min_distance()
    except CodeError:
        d = None
    return {"parity_check": fm.mat_out(F, C.H), "n": C.n, "k": C.k, "d": d, "delta": tc.delta,
            "field": f"GF({F.p}^{C.m})"}


def _report_variety(X: AffineVariety, checks: dict) -> dict:
    doc = fm.variety_to_json(X)
    doc["verification"] = checks
    return doc


def _sample_report(X: AffineVariety, s: int, count: int, seed: int, test) -> dict:
    rng = np.random.default_rng(seed)
    pts = X.sample_points(s, count, rng)
    good = sum(1 for a in pts if test(a))
    return {"sampled": len(pts), "passed": good, "seed": seed, "extension": s}


def cmd_construct(args) -> dict:
    amb = parse_ambient(args.ambient)
    kind = args.kind
    if kind == "hamming":
        if args.q is None or args.r is None:
            raise UsageError("construct hamming needs --q and --r")
        F = ambient_for_q(amb, args.q)
        X = hamming_variety(F, args.q, args.r)
        pts = X.rational_points(1, args.budget_enum)
        ham = sum(1 for a in pts if is_hamming_matrix(F, X.jacobian_at(a), args.r))
        word = X.meta["universal_word"]
        contains = all(X.tangent_code(a).code.contains(word) for a in pts)
        return _report_variety(X, {"points": len(pts), "hamming_points": ham, "universal_word_everywhere": contains})
    if kind in ("constant", "from-code"):
        if not args.code:
            raise UsageError(f"construct {kind} needs --code")
        C = fm.code_from_json(load_json(args.code), amb)
        if kind == "constant":
            X = constant_tangent_variety(C, seed=args.seed)
            rep = _sample_report(X, 1, 20, args.seed, lambda a: X.tangent_code(a).code == C)
            return _report_variety(X, {"constant_code_samples": rep})
        if not args.sigma:
            raise UsageError("construct from-code needs --sigma")
        X = variety_from_code(C, parse_indices(args.sigma))
        sig = X.meta["sigma"]

        def has_word(a):
            J = X.jacobian_at(a)
            return la.rank(X.field, la.submatrix_columns(J, sig)) < len(sig)
        rep = _sample_report(X, 1, 20, args.seed, has_word)
        return _report_variety(X, {"tangent_at_origin_is_code": X.tangent_code([0] * X.n).code == C.with_field(X.e),
                                   "sigma_word_samples": rep})
    if kind == "interpolate":
        if not args.family:
            raise UsageError("construct interpolate needs --family")
        fam = fm.family_from_json(load_json(args.family), amb)
        X = interpolated_variety(fam)
        return _report_variety(X, {"jacobian_matches_family": True, "family_size": len(fam.points)})
    if kind == "cyclic":
        if args.n is None:
            raise UsageError("construct cyclic needs --n")
        if amb is None:
            raise UsageError("construct cyclic needs --ambient containing the splitting field")
        if args.k is None:
            out = []
            for spec, X in cyclic_assembly(amb, amb.p, args.n, seed=args.seed):
                out.append(_report_variety(X, {"degree": spec.degree,
                                               "cyclic_at_origin": is_cyclic(X.tangent_code([0] * X.n).code)}))
            return {"varieties": out, "count": len(out)}
        fam, gens = cyclic_plus_noncyclic(amb, amb.p, args.n, args.k, args.count, seed=args.seed)
        X = AffineVariety(amb, _exponent(amb, fam.q), gens, args.k,
                          meta={"construction": "cyclic-plus-noncyclic"})
        cyc = sum(1 for H in fam.matrices if is_cyclic(LinearCode(amb, args.n, H)))
        doc = _report_variety(X, {"family_size": len(fam.points), "cyclic": cyc,
                                  "non_cyclic": len(fam.points) - cyc, "jacobian_matches_family": True})
        doc["family"] = fm.family_to_json(fam)
        return doc
    raise UsageError(f"unknown construction {kind!r}")


def cmd_precompute(args) -> dict:
    X = fm.variety_from_json(load_json(args.variety), parse_ambient(args.ambient))
    if not 1 <= args.t <= X.n:
        raise UsageError(f"--t must lie in 1..{X.n}")
    try:
        T = precompute(X, args.t, jobs=args.jobs, **budgets(args))
    except ValueError as exc:
        raise MathError(str(exc))
    rng = np.random.default_rng(args.seed)
    pts = [[int(x) for x in rng.integers(0, X.field.order, X.n)] for _ in range(20)]
    doc = fm.tables_to_json(T)
    doc["verification"] = {"adjugate_identity": check_tables(T, pts), "failed_tuples": len(T.failed()),
                           "seed": args.seed}
    return doc


def cmd_decode(args) -> dict:
    T = fm.tables_from_json(load_json(args.tables), parse_ambient(args.ambient))
    F = T.X.field
    a = parse_point(F, args.point)
    w = parse_point(F, args.word)
    if len(a) != T.n or len(w) != T.n:
        raise UsageError(f"point and word need {T.n} coordinates")
    v, e, i = decode(T, a, w)
    return {"codeword": fm.vec_out(F, v), "error": fm.vec_out(F, e), "support": [c + 1 for c in i],
            "weight": weight(e)}


def cmd_verify(args) -> dict:
    fn = SUITES[args.suite]
    kw = {"seed": args.seed}
    if args.count is not None:
        if args.suite in ("duality", "weights", "deform", "from-code", "nmds"):
            kw["count"] = args.count
        elif args.suite in ("ops", "decode-roundtrip", "isometry"):
            kw["points"] = args.count
        elif args.suite == "interpolate":
            kw["size"] = args.count
    return fn(**kw)


# --- parser ---------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ambient", help="ambient field p,M[,modulus], e.g. 2,3,t^3+t+1")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--budget-enum", type=int, default=2 ** 24, help="point enumeration budget")
    common.add_argument("--budget-groebner", type=int, default=4096, help="maximum Groebner basis size")
    common.add_argument("--budget-degree", type=int, default=64, help="maximum polynomial degree")
    common.add_argument("-o", "--output", help="write JSON here instead of stdout")

    ap = argparse.ArgumentParser(prog="tangentcodes", description="Tangent codes of affine varieties over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tangent", parents=[common], help="tangent code at a point")
    p.add_argument("variety")
    p.add_argument("--point", required=True, help="comma-separated element literals")
    p.set_defaults(func=cmd_tangent)

    p = sub.add_parser("construct", parents=[common], help="build a variety")
    p.add_argument("kind", choices=["hamming", "constant", "from-code", "interpolate", "cyclic"])
    p.add_argument("--q", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--code")
    p.add_argument("--sigma", help="1-based support, e.g. 1,2,4")
    p.add_argument("--family")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--count", type=int, default=1, help="non-cyclic codes to add (cyclic with --k)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("precompute", parents=[common], help="decoder tables")
    p.add_argument("variety")
    p.add_argument("--t", type=int, default=1)
    p.set_defaults(func=cmd_precompute)

    p = sub.add_parser("decode", parents=[common], help="decode a received word")
    p.add_argument("tables")
    p.add_argument("--point", required=True)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--count", type=int)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        doc = args.func(args)
    except PolyCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, fm.FormatError, PolyError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (MathError, DecodeError, ConstructionError, VarietyError, CodeError, GroebnerBudgetError,
            EnumerationBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    emit(doc, args.output)
    if args.command == "verify" and not doc.get("pass"):
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
