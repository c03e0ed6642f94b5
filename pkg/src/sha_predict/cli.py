"""Command-line front end.

Every subcommand prints a plain-text report by default or, with ``--json``,
an envelope ``{"command", "version", "inputs", "result", "warnings"}`` in
which every number is a decimal string.

Exit codes: 0 success, 2 bad input, 3 search or size bound hit, 4 network
or payload failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import fields, is_dataclass, replace
from fractions import Fraction
from pathlib import Path

from . import __version__
from .abelian import AbelianGroupStructure
from .arith import ContinuedFraction, QuadIrrational, cf_expand, fundamental_pell, quad
from .config import DEFAULT_LIMITS, LmfdbConfig
from .errors import BoundExceeded, FetchError, ParseError
from .latmac import MonicIntPolynomial, ideal_class_matrices, similar_over_Z
from .lmfdb import LmfdbClient, compare_report
from .matrices import IntMatrix
from .minkowski import question_mark, question_mark_quad, scale_embedding
from .orders import QuadOrder, class_number_order, is_fundamental, split_discriminant
from .qforms import (BinaryQuadraticForm, class_group_definite, class_numbers_indefinite,
                     enumerate_reduced, wide_classes_indefinite)
from .sha import (companion_Fr, companion_L, declared_charpoly, sha_cm_curve,
                  sha_from_class_group)

__all__ = ["main", "parse_literal", "run", "to_json"]

EXIT_OK, EXIT_INPUT, EXIT_BOUND, EXIT_NETWORK = 0, 2, 3, 4


# --------------------------------------------------------------------------
# literals
# --------------------------------------------------------------------------

_TERM = re.compile(r"([+-]?)(?:(\d*)\*?sqrt\(?(\d+)\)?|(\d+))")


def parse_literal(text: str):
    """Exact number from ``"(a+b*sqrtD)/c"``, ``"sqrtD-k"`` or ``"p/q"``.

    >>> print(parse_literal("sqrt2-1"))
    -1+sqrt2
    >>> parse_literal("3/7")
    Fraction(3, 7)
    """
    if re.search(r"\w\s+\w", text):
        raise ValueError(f"cannot parse number {text!r}")
    s = re.sub(r"\s+", "", text)
    m = re.fullmatch(r"\((.+)\)/(\d+)|(.+?)(?:/(\d+))?", s)
    if not s or m is None:
        raise ValueError(f"cannot parse number {text!r}")
    num, den = (m.group(1), m.group(2)) if m.group(1) else (m.group(3), m.group(4))
    c = int(den) if den else 1
    a, b, D = 0, 0, 0
    pos = 0
    while pos < len(num):
        t = _TERM.match(num, pos)
        if t is None or t.end() == pos or (pos and not t.group(1)):
            raise ValueError(f"cannot parse number {text!r}")
        sign = -1 if t.group(1) == "-" else 1
        if t.group(3) is not None:
            if D:
                raise ValueError(f"at most one square-root term allowed in {text!r}")
            b, D = sign * int(t.group(2) or 1), int(t.group(3))
        else:
            a += sign * int(t.group(4))
        pos = t.end()
    return quad(a, b, c, D) if D else Fraction(a, c)


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


# --------------------------------------------------------------------------
# JSON encoding
# --------------------------------------------------------------------------

def to_json(obj):
    """Convert results to JSON-ready data with numbers as decimal strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, (Fraction, QuadIrrational, ContinuedFraction, Path)):
        return str(obj)
    if isinstance(obj, AbelianGroupStructure):
        return {"divisors": [str(d) for d in obj.elementary_divisors],
                "order": str(obj.order), "text": str(obj)}
    if isinstance(obj, IntMatrix):
        return [[str(x) for x in r] for r in obj.rows]
    if isinstance(obj, BinaryQuadraticForm):
        return [str(x) for x in obj]
    if isinstance(obj, QuadOrder):
        return {"d_K": str(obj.d_K), "f": str(obj.f), "disc": str(obj.disc)}
    if is_dataclass(obj):
        out = {f.name: to_json(getattr(obj, f.name)) for f in fields(obj)}
        if hasattr(type(obj), "order") and isinstance(getattr(obj, "order"), int):
            out["order"] = str(obj.order)
        return out
    if isinstance(obj, dict):
        return {str(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_json(x) for x in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


# --------------------------------------------------------------------------
# subcommands: each returns (result, text lines, warnings)
# --------------------------------------------------------------------------

def cmd_classgroup(args):
    disc = args.disc
    if disc < 0:
        G = class_group_definite(disc, args.max_class_number)
        forms = enumerate_reduced(disc)
        result = {"disc": disc, "definite": True, "structure": G, "h": G.order, "reduced_forms": forms}
        lines = [f"disc {disc}: Cl = {G}, h = {G.order}",
                 "reduced forms: " + " ".join(str(tuple(f)) for f in forms)]
        return result, lines, []
    h_narrow, h_wide = class_numbers_indefinite(disc)
    unit = fundamental_pell(disc, DEFAULT_LIMITS.pell_steps)
    reps = [cls[0] for cls in wide_classes_indefinite(disc)]
    result = {"disc": disc, "definite": False, "h_narrow": h_narrow, "h_wide": h_wide,
              "fundamental_unit": {"x": unit.x, "y": unit.y, "norm": unit.norm},
              "wide_class_representatives": reps}
    lines = [f"disc {disc}: h_narrow = {h_narrow}, h_wide = {h_wide}",
             f"fundamental unit ({unit.x} + {unit.y}*sqrt{disc})/2, norm {unit.norm:+d}",
             "wide classes: " + " ".join(str(tuple(f)) for f in reps)]
    return result, lines, []


def cmd_order_h(args):
    if not is_fundamental(args.dk):
        raise ValueError(f"{args.dk} is not a fundamental discriminant")
    o = QuadOrder(args.dk, args.f)
    h = class_number_order(o)
    result = {"order": o, "h": h, "kind": "wide" if o.is_real else "definite"}
    return result, [f"{o} (disc {o.disc}): h = {h}"], []


def cmd_latmac(args):
    poly = MonicIntPolynomial.parse(args.poly)
    mats = ideal_class_matrices(poly, include_overorders=args.include_overorders)
    d_K, F = split_discriminant(poly.disc)
    linked = []
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            U = similar_over_Z(mats[i], mats[j], args.conj_bound)
            if U is not None:
                linked.append({"i": i, "j": j, "conjugator": U})
    warnings = [f"matrices {p['i']} and {p['j']} are similar" for p in linked]
    result = {"polynomial": str(poly), "disc": poly.disc, "d_K": d_K, "conductor": F,
              "matrices": [{"matrix": m, "charpoly": m.charpoly()} for m in mats],
              "count": len(mats), "conj_bound": args.conj_bound,
              "similar_pairs": linked}
    lines = [f"{poly}: disc {poly.disc} = {F}^2 * {d_K}, {len(mats)} class matrices"]
    lines += [f"  {m}" for m in mats]
    lines.append(f"pairwise similar within conjugator bound {args.conj_bound}: {len(linked)}")
    return result, lines, warnings


def cmd_minkowski(args):
    x = parse_literal(args.value)
    if isinstance(x, Fraction):
        image = question_mark(x)
    else:
        image = question_mark_quad(x)
    cf = cf_expand(x)
    result = {"value": x, "continued_fraction": cf, "image": image}
    return result, [f"?({x}) = {image}    cf {cf}"], []


def cmd_scale(args):
    theta = parse_literal(args.theta)
    if not isinstance(theta, QuadIrrational):
        raise ValueError("theta must be a quadratic irrational")
    pts = scale_embedding(theta, args.bound)
    rows = [{"m": m, "n": n, "value": v, "image": img} for (m, n), v, img in pts]
    lines = [f"{'m':>4} {'n':>4}  {'value':<24} image"]
    lines += [f"{r['m']:>4} {r['n']:>4}  {str(r['value']):<24} {r['image']}" for r in rows]
    return {"theta": theta, "bound": args.bound, "points": rows}, lines, []


def cmd_sha_cm(args):
    rep = sha_cm_curve(args.D, args.f, conductor_bound=args.conductor_bound,
                       require_lambda=not args.allow_missing_lambda)
    lines = [f"R = {rep.R} (disc {rep.R.disc}), Cl(R) = {rep.cl_R}"]
    if rep.Lambda is None:
        lines.append("Lambda: none within the conductor bound")
    else:
        lines.append(f"Lambda = Z + {rep.f_prime}*O_k, k = Q(sqrt{args.D}), h = {rep.h_Lambda}")
    lines.append(f"Sha = {rep.sha.result}, order {rep.sha.order}")
    return rep, lines, list(rep.warnings)


def cmd_sha_from_cl(args):
    orders = _int_list(args.divisors)
    if any(o < 1 for o in orders):
        raise ValueError("cyclic orders must be positive")
    G = AbelianGroupStructure.from_cyclic_orders(orders)
    pred = sha_from_class_group(G)
    lines = [f"Cl = {G}, k = {pred.k} ({pred.parity})",
             f"Sha = {pred.result}, order {pred.order}"]
    return pred, lines, []


def cmd_companion(args):
    a = _int_list(args.coeffs)
    if args.kind == "L":
        M = companion_L(a, args.p)
    else:
        M = companion_Fr(a, args.p, hasse=args.hasse)
    cp = M.charpoly()
    declared = declared_charpoly(a, args.p, args.kind)
    warnings = [] if cp == declared else [f"charpoly {cp} differs from declared {declared}"]
    result = {"kind": args.kind, "matrix": M, "charpoly": cp, "declared_charpoly": declared,
              "matches": cp == declared}
    return result, [str(M), f"charpoly {list(cp)}"], warnings


def cmd_lmfdb_compare(args):
    config = LmfdbConfig.load(args.config)
    if args.cache_dir is not None:
        config = replace(config, cache_dir=Path(args.cache_dir))
    client = LmfdbClient(config, offline=args.offline)
    predictions, records, warnings = [], [], []
    for D in _int_list(args.D_list):
        rep = sha_cm_curve(D, args.f, conductor_bound=args.conductor_bound,
                           require_lambda=False)
        predictions.append(rep)
        warnings += [f"D={D}: {w}" for w in rep.warnings]
        records += client.fetch({"cm": rep.R.disc},
                                 "refresh" if args.refresh else "prefer-cache")
    report = compare_report(predictions, records)
    lines = [f"{'label':<12} {'cm':>6} {'D':>5} {'f':>3} {'pred':>6} {'analytic':>8}  match"]
    for r in report.rows:
        lines.append(f"{r.label or '-':<12} {r.cm_disc:>6} {r.D:>5} {r.f:>3} "
                     f"{r.predicted_order:>6} {str(r.analytic_order or '-'):>8}  {r.match}")
    s = report.summary
    lines.append(f"yes {s['yes']}  no {s['no']}  unknown {s['unknown']}  "
                 "(informational: analytic Sha is not a test of the prediction)")
    return report.to_dict(), lines, warnings


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON envelope")
    common.add_argument("--quiet", action="store_true", help="suppress warnings on stderr")

    p = _Parser(prog="sha-predict", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("classgroup", parents=[common], help="class group of a discriminant")
    s.add_argument("--disc", type=int, required=True)
    s.add_argument("--max-class-number", type=int, default=DEFAULT_LIMITS.class_number)
    s.set_defaults(func=cmd_classgroup)

    s = sub.add_parser("order-h", parents=[common], help="class number of a quadratic order")
    s.add_argument("--dk", type=int, required=True, help="fundamental discriminant")
    s.add_argument("--f", type=int, default=1, help="conductor")
    s.set_defaults(func=cmd_order_h)

    s = sub.add_parser("latmac", parents=[common], help="ideal-class matrices for x^2+c1*x+c0")
    s.add_argument("--poly", required=True)
    s.add_argument("--include-overorders", action="store_true",
                   help="also list modules over larger orders (all similarity classes)")
    s.add_argument("--conj-bound", type=int, default=10,
                   help="entry bound when checking representatives for similarity")
    s.set_defaults(func=cmd_latmac)

    s = sub.add_parser("minkowski", parents=[common], help="exact ?(x)")
    s.add_argument("--value", required=True)
    s.set_defaults(func=cmd_minkowski)

    s = sub.add_parser("scale", parents=[common], help="?-images of [0,1] & (Z + Z*theta)")
    s.add_argument("--theta", required=True)
    s.add_argument("--bound", type=int, default=3)
    s.set_defaults(func=cmd_scale)

    def cm_args(s):
        s.add_argument("--f", type=int, default=1, help="conductor of R")
        s.add_argument("--conductor-bound", type=int, default=None,
                       help="largest f' tried for Lambda")

    s = sub.add_parser("sha-cm", parents=[common], help="Sha for a CM curve")
    s.add_argument("--D", type=int, required=True)
    cm_args(s)
    s.add_argument("--allow-missing-lambda", action="store_true",
                   help="report Sha even when no matching Lambda is found")
    s.set_defaults(func=cmd_sha_cm)

    s = sub.add_parser("sha-from-cl", parents=[common], help="Sha from a class group")
    s.add_argument("--divisors", required=True, help="cyclic orders, e.g. 2,6")
    s.set_defaults(func=cmd_sha_from_cl)

    s = sub.add_parser("companion", parents=[common], help="L_v or Fr_v matrix")
    s.add_argument("--coeffs", required=True, help="a1,...,a_{2n-1}")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--kind", choices=["L", "Fr"], default="L")
    s.add_argument("--hasse", action="store_true", help="enforce |a1| <= 2 sqrt(p) for 2x2 Fr")
    s.set_defaults(func=cmd_companion)

    s = sub.add_parser("lmfdb-compare", parents=[common],
                       help="compare predictions with LMFDB analytic Sha")
    s.add_argument("--D-list", dest="D_list", required=True, help="e.g. 3,7,23")
    cm_args(s)
    s.add_argument("--offline", action="store_true", help="serve from cache only")
    s.add_argument("--refresh", action="store_true", help="refetch even when cached")
    s.add_argument("--cache-dir", default=None)
    s.add_argument("--config", default=None, help="JSON config file")
    s.set_defaults(func=cmd_lmfdb_compare)
    return p


def _inputs(args) -> dict:
    skip = {"func", "json", "quiet", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv=None, stdout=None, stderr=None) -> int:
    """Execute one command; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        result, lines, warnings = args.func(args)
    except BoundExceeded as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_BOUND
    except (FetchError, ParseError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_NETWORK
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    if args.json:
        env = {"command": args.command, "version": __version__,
               "inputs": to_json(_inputs(args)), "result": to_json(result),
               "warnings": list(warnings)}
        stdout.write(json.dumps(env, indent=2, sort_keys=True) + "\n")
    else:
        stdout.write("\n".join(lines) + "\n")
    if warnings and not args.quiet:
        for w in warnings:
            print(f"warning: {w}", file=stderr)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
