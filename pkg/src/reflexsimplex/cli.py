"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check failed or answered no,
2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import claims, families
from .ehrhart import count_points, ehrhart_data, validate_delta
from .eulerian import eulerian_descents, eulerian_recurrence
from .exact_math import CapabilityError
from .polytope import LatticePolytope
from .reflexive import dual_polytope, find_equivalence, is_self_dual, reflexivity_report
from .triangulation import (
    Triangulation,
    check_covering,
    check_flag,
    check_regular_with_heights,
    check_unimodular,
    search_rfu,
)

OK, CHECK_FAILED, USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _read_json(path: str, what: str):
    try:
        text = Path(path).read_text()
    except FileNotFoundError:
        raise InputError(f"{what}: file not found: {path}") from None
    except OSError as exc:
        raise InputError(f"{what}: cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: malformed JSON in {path}: {exc}") from None


def _polytope(path: str, what: str = "--in") -> LatticePolytope:
    data = _read_json(path, what)
    if not isinstance(data, dict):
        raise InputError(f"{what}: expected a JSON object with a 'vertices' field")
    try:
        return LatticePolytope.from_json(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{what}: {exc}") from None


def cmd_family(args):
    P = families.FAMILIES[args.kind](args.n)
    out = P.to_json()
    out["labels"] = list(P.labels)
    text = f"{args.kind} n={args.n}: vertices {out['vertices']}"
    return OK, out, text


def cmd_ehrhart(args):
    P = _polytope(args.input)
    data = ehrhart_data(P)
    max_k = P.dim if args.max_k is None else args.max_k
    if max_k < 0:
        raise InputError("--max-k must be >= 0")
    counts = {str(k): count_points(P, k) for k in range(max_k + 1)}
    poly = [str(c) for c in data.ehrhart_poly.coeffs]
    out = {"dim": P.dim, "counts": counts, "ehrhart": poly, "delta": list(data.delta_vector)}
    text = f"i(P,k) = {data.ehrhart_poly}\ncounts {counts}\ndelta = {data.delta}"
    return OK, out, text


def cmd_delta(args):
    P = _polytope(args.input)
    if args.validate:
        rep = validate_delta(P, args.reciprocity)
        out = {
            "delta": list(rep.delta.padded(P.dim + 1)),
            "checks": {k: {"ok": c.ok, "witness": c.witness} for k, c in rep.checks.items()},
        }
        lines = [str(rep.delta)] + [f"  {k}: {'ok' if c.ok else 'FAILED'} ({c.witness})" for k, c in rep.checks.items()]
        return (OK if rep.all_passed else CHECK_FAILED), out, "\n".join(lines)
    data = ehrhart_data(P, args.reciprocity)
    return OK, {"delta": list(data.delta_vector)}, str(data.delta)


def cmd_eulerian(args):
    fn = eulerian_recurrence if args.method == "recurrence" else eulerian_descents
    poly = fn(args.n).poly
    return OK, {"n": args.n, "method": args.method, "eulerian": list(poly.coeffs)}, str(poly)


def cmd_is_reflexive(args):
    rep = reflexivity_report(_polytope(args.input))
    out = {
        "reflexive": bool(rep),
        "unique_interior_origin": rep.unique_interior_origin,
        "facet_offsets_one": rep.offsets_one,
        "interior_points": [list(p) for p in rep.interior_points],
    }
    return (OK if rep else CHECK_FAILED), out, f"reflexive: {bool(rep)}"


def cmd_dual(args):
    D = dual_polytope(_polytope(args.input))
    return OK, D.to_json(), f"dual vertices {[list(v) for v in D.vertices]}"


def cmd_equiv(args):
    m = find_equivalence(_polytope(args.in1, "--in1"), _polytope(args.in2, "--in2"))
    out = {"equivalent": m is not None, "map": m.to_json() if m else None}
    return (OK if m else CHECK_FAILED), out, f"equivalent: {m is not None}" + (f" via {m.to_json()}" if m else "")


def cmd_self_dual(args):
    m = is_self_dual(_polytope(args.input))
    out = {"self_dual": m is not None, "map": m.to_json() if m else None}
    return (OK if m else CHECK_FAILED), out, f"self-dual: {m is not None}" + (f" via {m.to_json()}" if m else "")


def cmd_verify(args):
    kwargs = {"use_reciprocity": True} if args.reciprocity and args.theorem == "delta-eulerian" else {}
    res = claims.THEOREMS[args.theorem](args.n, **kwargs)
    return (OK if res.passed else CHECK_FAILED), res.to_json(), res.line()


def cmd_check_tri(args):
    P = _polytope(args.poly, "--poly")
    data = _read_json(args.tri, "--tri")
    try:
        T = Triangulation.from_json(data)
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise InputError(f"--tri: {exc}") from None
    if T.config.dim != P.dim:
        raise InputError(f"--tri: 'points' have dimension {T.config.dim}, polytope has {P.dim}")
    sub = args.allow_sub_configuration
    cov = check_covering(T, P, allow_sub_configuration=sub)
    checks = {
        "covering": bool(cov),
        "uses_all_points": cov.uses_all_points,
        "unimodular": check_unimodular(T),
        "flag": check_flag(T),
    }
    if T.heights is not None:
        checks["regular"] = bool(check_regular_with_heights(T, allow_sub_configuration=sub))
    ok = all(v for k, v in checks.items() if k != "uses_all_points" or not sub)
    text = "\n".join(f"{k}: {v}" for k, v in checks.items())
    return (OK if ok else CHECK_FAILED), {"checks": checks, "pass": ok}, text


def cmd_search_rfu(args):
    P = _polytope(args.poly, "--poly")
    cert = search_rfu(P, args.trials, args.seed)
    if cert is None:
        out = {"result": "absent", "trials": args.trials, "seed": args.seed}
        return CHECK_FAILED, out, f"absent after {args.trials} trials (seed {args.seed})"
    out = {"result": "found", **cert.to_json()}
    return OK, out, f"found at trial {cert.trial}: {len(cert.triangulation.cells)} cells"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="human-readable text instead of JSON")
    p = argparse.ArgumentParser(prog="reflexsimplex", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    s = verb("family", help="construct Q_n, R_n or the reduced R_n")
    s.add_argument("kind", choices=sorted(families.FAMILIES))
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(fn=cmd_family)

    s = verb("ehrhart", help="lattice-point counts and Ehrhart polynomial")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--max-k", type=int, default=None)
    s.set_defaults(fn=cmd_ehrhart)

    s = verb("delta", help="delta-polynomial")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--validate", action="store_true")
    s.add_argument("--reciprocity", action="store_true", help="reflexive fast path")
    s.set_defaults(fn=cmd_delta)

    s = verb("eulerian", help="Eulerian polynomial A_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--method", choices=["recurrence", "descents"], default="recurrence")
    s.set_defaults(fn=cmd_eulerian)

    for name, fn in (("is-reflexive", cmd_is_reflexive), ("dual", cmd_dual), ("self-dual", cmd_self_dual)):
        s = verb(name)
        s.add_argument("--in", dest="input", required=True)
        s.set_defaults(fn=fn)

    s = verb("equiv", help="unimodular equivalence of two simplices")
    s.add_argument("--in1", required=True)
    s.add_argument("--in2", required=True)
    s.set_defaults(fn=cmd_equiv)

    s = verb("verify", help="check one structural claim for a given n")
    s.add_argument("--theorem", choices=sorted(claims.THEOREMS), required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--reciprocity", action="store_true")
    s.set_defaults(fn=cmd_verify)

    s = verb("check-tri", help="certify a triangulation")
    s.add_argument("--poly", required=True)
    s.add_argument("--tri", required=True)
    s.add_argument("--allow-sub-configuration", action="store_true")
    s.set_defaults(fn=cmd_check_tri)

    s = verb("search-rfu", help="random search for a regular flag unimodular triangulation")
    s.add_argument("--poly", required=True)
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=cmd_search_rfu)
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        code, out, text = args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (ValueError, CapabilityError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    print(text if getattr(args, "pretty", False) else json.dumps(out), file=stdout)
    return code


def main(argv=None) -> None:
    try:
        code = run(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else USAGE
    sys.exit(code)


if __name__ == "__main__":
    main()
