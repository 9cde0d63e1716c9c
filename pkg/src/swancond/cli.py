"""Command-line front end.

Every subcommand reads a JSON document (a file path, or ``-`` for stdin) and
writes JSON to stdout.  Exit status: 0 on success, 2 on input errors, 3 when
an internal invariant fails.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from collections import Counter
from fractions import Fraction

from .covectors import covector_from_exprs, minimal_lifting, swan_conductor
from .errors import ConductorError, InputError
from .forms import refined_swan
from .kfield import KField
from .parse import parse_k
from .piexp import lift_comonomial, pi_exponential, pi_tower
from .radius import compare_conductors, formal_irregularity, formal_slope, newton_polygon, operator_points, radius_function
from .sampling import random_covector
from .witt import WittVector

FIELD_KEYS = {"p", "h", "r", "ext_poly"}


def _check_keys(doc, allowed):
    if not isinstance(doc, dict):
        raise InputError("the input document must be a JSON object")
    unknown = set(doc) - allowed
    if unknown:
        raise InputError(f"unknown fields: {sorted(unknown)}")


def _field(doc) -> KField:
    try:
        return KField(int(doc["p"]), int(doc.get("h", 1)), int(doc.get("r", 0)), doc.get("ext_poly"))
    except KeyError as exc:
        raise InputError(f"missing field {exc}") from None


def _character(doc):
    _check_keys(doc, FIELD_KEYS | {"covector", "tame"})
    K = _field(doc)
    if not isinstance(doc.get("covector"), list):
        raise InputError("'covector' must be a list of expressions")
    return minimal_lifting(covector_from_exprs(K, doc["covector"]), doc.get("tame"))


def _witt_pair(doc):
    _check_keys(doc, FIELD_KEYS | {"a", "b"})
    K = _field(doc)
    vecs = []
    for key in ("a", "b"):
        if not isinstance(doc.get(key), list):
            raise InputError(f"'{key}' must be a list of expressions")
        vecs.append(WittVector([parse_k(K, e) for e in doc[key]], K.p, K.zero()))
    return vecs


def _valuations(doc):
    if isinstance(doc, dict):
        _check_keys(doc, {"valuations"})
        doc = doc.get("valuations")
    if not isinstance(doc, list):
        raise InputError("expected a list of valuations")
    out = []
    for v in doc:
        if v is None or v in ("inf", "oo"):
            out.append(None)
        else:
            try:
                out.append(int(v))
            except (TypeError, ValueError):
                raise InputError(f"bad valuation {v!r}") from None
    return out


def cmd_witt_add(doc, args):
    a, b = _witt_pair(doc)
    return {"sum": [str(c) for c in a + b]}


def cmd_witt_mul(doc, args):
    a, b = _witt_pair(doc)
    return {"product": [str(c) for c in a * b]}


def cmd_sw(doc, args):
    return {"sw": swan_conductor(_character(doc))}


def cmd_minlift(doc, args):
    return _character(doc).to_json()


def cmd_rsw(doc, args):
    return refined_swan(_character(doc)).to_json()


def cmd_radius(doc, args):
    c = _character(doc)
    T = radius_function(c)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["r", "logT"])
            for x in T.sample_points(32):
                w.writerow([float(x), float(T(x))])
    out = T.to_json()
    out["sw_nabla"] = compare_conductors(c).sw_nabla
    return out


def cmd_newton(doc, args):
    vals = _valuations(doc)
    poly = newton_polygon(operator_points(vals))
    return {"irr": formal_irregularity(vals), "slope": str(formal_slope(vals)), "vertices": poly.to_json()}


def cmd_piexp(doc, args):
    c = _character(doc)
    if not c.wild:
        return {"order": args.order, "series": {"1": "1"}}
    M = max(cm.m for cm in c.comonomials())
    tower = pi_tower(c.K.p, M)
    lifts = [lift_comonomial(cm) for cm in c.comonomials()]
    series = None
    for cm, lift in zip(c.comonomials(), lifts):
        # each factor uses its own level inside the common tower
        e = pi_exponential(lift, args.order, _sub_tower(tower, cm.m))
        series = e if series is None else series * e
    return {"order": args.order, "level": M, "series": series.to_json()}


def _sub_tower(tower, m):
    from .piexp import PiTower
    return PiTower(tower.field, tower.pis[tower.m - m:])


def cmd_compare(doc, args):
    return compare_conductors(_character(doc)).to_json()


def fuzz_compare(seed: int, count: int, primes=(2, 3, 5), max_m: int = 2, max_n: int = 9,
                 max_r: int = 2, max_terms: int = 3) -> dict:
    """Compare sw and sw^∇ on ``count`` seeded random characters."""
    if any(p not in (2, 3, 5) for p in primes) or not 0 <= max_m <= 2 or not 1 <= max_n <= 9 \
            or not 0 <= max_r <= 2:
        raise InputError("bounds must satisfy p in {2,3,5}, m <= 2, n <= 9, r <= 2")
    rng = random.Random(seed)
    hist = Counter()
    mismatches = []
    for i in range(count):
        K = KField(rng.choice(list(primes)), 1, rng.randint(0, max_r))
        f = random_covector(rng, K, max_m, max_n, max_terms)
        res = compare_conductors(minimal_lifting(f))
        hist[res.sw] += 1
        if not res.equal:
            mismatches.append({"index": i, "p": K.p, "r": K.r, "covector": [str(x) for x in f.coords],
                               "sw": res.sw, "sw_nabla": res.sw_nabla})
    return {"seed": seed, "count": count, "mismatches": len(mismatches), "failures": mismatches,
            "histogram": {str(k): hist[k] for k in sorted(hist)}}


def cmd_fuzz(doc, args):
    primes = tuple(args.p) if args.p else (2, 3, 5)
    return fuzz_compare(args.seed, args.count, primes, args.max_m, args.max_n, args.r)


COMMANDS = {
    "witt-add": cmd_witt_add, "witt-mul": cmd_witt_mul, "sw": cmd_sw, "minlift": cmd_minlift,
    "rsw": cmd_rsw, "radius": cmd_radius, "newton": cmd_newton, "piexp": cmd_piexp,
    "compare": cmd_compare, "fuzz-compare": cmd_fuzz,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="swancond", description="Swan conductors of rank-one wild characters.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        if name != "fuzz-compare":
            sp.add_argument("input", help="JSON document path, or - for stdin")
        if name == "radius":
            sp.add_argument("--csv", help="write r,logT samples to this path")
        if name == "piexp":
            sp.add_argument("--order", type=int, default=8)
        if name == "fuzz-compare":
            sp.add_argument("--seed", type=int, default=1)
            sp.add_argument("--count", type=int, default=100)
            sp.add_argument("--p", type=int, action="append", choices=(2, 3, 5))
            sp.add_argument("--max-m", type=int, default=2)
            sp.add_argument("--max-n", type=int, default=9)
            sp.add_argument("--r", type=int, default=2)
    return ap


def _read(path):
    text = sys.stdin.read() if path == "-" else open(path).read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(type(o).__name__)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        doc = _read(args.input) if hasattr(args, "input") else None
        result = COMMANDS[args.command](doc, args)
        code = 0
    except ConductorError as exc:
        result = {"error": exc.code, "detail": str(exc)}
        code = 3 if exc.internal else 2
    except OSError as exc:
        result = {"error": "io_error", "detail": str(exc)}
        code = 2
    json.dump(result, out, sort_keys=True, default=_default)
    out.write("\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
