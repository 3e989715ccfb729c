"""Command-line front end: ``lgcompact <command> ...``.

Exit codes: 0 ok, 2 invalid input, 3 search or size cap exceeded,
4 origin not interior, 5 verification routes disagree, 6 unsupported
configuration.  Payload goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
import time
from fractions import Fraction

from lgcompact import __version__
from lgcompact.catalog import CATALOG, is_model_spec, parse_wci, resolve
from lgcompact.errors import (
    LGError,
    NotNiceError,
    OriginNotInteriorError,
    SearchCapExceeded,
    UnsupportedConfiguration,
)
from lgcompact.laurent import newton_polytope, parse_laurent, period_sequence
from lgcompact.pencil import (
    ComponentsVerdict,
    central_fiber_report,
    compactified_pencil,
    fiber_report,
    flop_obstruction,
    hodge_target,
)
from lgcompact.polytope import (
    convex_hull,
    integral_boundary_points,
    is_reflexive,
    parse_vertex_list,
    polar_dual,
)
from lgcompact.wci import dual_matrix, find_nef_partitions, givental_polynomial

SCHEMA_VERSION = 1

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_ORIGIN, EXIT_DISAGREE, EXIT_UNSUPPORTED = 0, 2, 3, 4, 5, 6


class CapError(LGError):
    pass


def _num(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else str(x)


def _emit_json(payload, out):
    doc = {"schema_version": SCHEMA_VERSION}
    doc.update(payload)
    out.write(json.dumps(doc, indent=2) + "\n")


def _point(p):
    return "(" + ",".join(str(x) for x in p) + ")"


def _check_dim(n, args):
    if n > args.max_dim:
        raise CapError(f"dimension {n} exceeds the cap {args.max_dim} (see --max-dim)")


# ---------------------------------------------------------------------------


def cmd_periods(args, out):
    if args.terms > args.max_terms:
        raise CapError(f"{args.terms} terms requested, cap is {args.max_terms} (see --max-terms)")
    if args.terms < 1:
        raise ValueError("--terms must be positive")
    if is_model_spec(args.target):
        model, partition, _ = resolve(args.target)
        f = givental_polynomial(model, partition).polynomial
    else:
        f = parse_laurent(args.target)
    _check_dim(f.num_vars, args)
    seq = period_sequence(f, args.terms, engine=args.engine)
    if args.format == "json":
        _emit_json({"polynomial": str(f), "engine": args.engine,
                    "periods": [_num(c) for c in seq]}, out)
    else:
        for c in seq:
            out.write(f"{_num(c)}\n")
    return EXIT_OK


def _target_polytope(target):
    """Newton polytope of a model or polynomial, or the hull of a vertex list.

    The second value tells whether the target is a model spec."""
    if is_model_spec(target):
        model, partition, _ = resolve(target)
        return newton_polytope(givental_polynomial(model, partition).polynomial), True
    if ";" in target or not any(ch.isalpha() for ch in target):
        return convex_hull(parse_vertex_list(target)), False
    return newton_polytope(parse_laurent(target)), False


def cmd_polytope(args, out):
    P, is_model = _target_polytope(args.target)
    _check_dim(P.dim, args)
    op = args.op
    if op == "newton":
        payload = {"op": op, "polytope": P.to_json()}
        text = "\n".join(_point(v) for v in P.vertices)
    elif op == "dual":
        D = polar_dual(P)
        payload = {"op": op, "polytope": D.to_json()}
        text = "\n".join(_point(v) for v in D.vertices)
    elif op == "reflexive":
        r = is_reflexive(P) if P.has_interior_origin() else False
        payload = {"op": op, "reflexive": r}
        text = "true" if r else "false"
    else:
        # for a model the relevant polytope is the dual of its Newton polytope
        Q = polar_dual(P) if is_model else P
        pts = integral_boundary_points(Q)
        payload = {"op": op, "polytope": "dual" if is_model else "given",
                   "count": len(pts), "points": [list(p) for p in pts]}
        text = f"{len(pts)} points\n" + "\n".join(_point(p) for p in pts)
    if args.format == "json":
        _emit_json(payload, out)
    else:
        out.write(text + "\n")
    return EXIT_OK


def cmd_nef(args, out):
    model = parse_wci(args.weights, min_dim=0)
    if len(model.weights) > args.max_weights:
        raise CapError(f"{len(model.weights)} weights exceed the cap {args.max_weights}")
    parts = find_nef_partitions(model, cap=args.max_weights)
    any_nice = any(p.nice for p in parts)
    if args.format == "json":
        _emit_json({"model": model.to_json(), "partitions": [p.to_json() for p in parts],
                    "nice_exists": any_nice}, out)
        return EXIT_OK
    out.write(f"{model.spec()}  index {model.index}  dim {model.dim}\n")
    if not parts:
        out.write("no nef-partition\n")
    for p in parts:
        flags = [f for f, ok in (("nice", p.nice), ("strong", p.strong)) if ok]
        out.write(f"{p.describe()}  {'+'.join(flags) or '-'}\n")
    if parts and not any_nice:
        out.write("no nice partition (no unit weight available for I_0)\n")
    return EXIT_OK


def cmd_givental(args, out):
    model, partition, _ = resolve(args.model)
    g = givental_polynomial(model, partition)
    rows = dual_matrix(model, partition)
    if args.format == "json":
        payload = g.to_json()
        payload["dual_matrix"] = [r.to_json() for r in rows]
        _emit_json(payload, out)
        return EXIT_OK
    out.write(f"{model.spec()}  {partition.describe()}\n")
    out.write(f"f = {g.polynomial}\n")
    out.write("dual matrix rows:\n")
    for r in rows:
        out.write(f"  {r.label:>8}  " + "  ".join(f"{str(x):>6}" for x in r.entries) + "\n")
    return EXIT_OK


def _verify_one(name, conjecture, hodge=None, skip_unsupported=False):
    """Return ``(payload, ok)``.  With ``skip_unsupported`` a check that
    cannot run is recorded as skipped instead of raising."""
    model, partition, entry = resolve(name)
    if model.index != 1:
        raise UnsupportedConfiguration(f"{model.spec()} has index {model.index}, need 1")
    payload = {"model": model.spec(), "partition": partition.describe()}
    ok = True
    if conjecture in (1, None):
        rep = fiber_report(model, partition)
        c1: ComponentsVerdict = rep.conjecture1
        payload["infinity"] = rep.infinity.to_json()
        payload["conjecture1"] = c1.to_json()
        ok = ok and c1.holds
    if conjecture in (2, None):
        h = hodge if hodge is not None else (entry.get("hodge_number") if entry else None)
        pencil = compactified_pencil(model, partition)
        if not pencil.counting_supported or h is None:
            reason = ("no Hodge number known (pass --hodge)" if pencil.counting_supported
                      else f"central fiber counting unsupported for ambient {pencil.ambient}")
            if not skip_unsupported:
                if pencil.counting_supported:
                    raise ValueError(reason)
                raise UnsupportedConfiguration(reason)
            payload["conjecture2"] = {"skipped": reason}
        else:
            rep = fiber_report(model, partition, hodge_target(model.dim, h))
            payload["central"] = rep.central.to_json()
            payload["conjecture2"] = rep.conjecture2.to_json()
            ok = ok and rep.conjecture2.holds
    if entry is not None and "flop_obstructed" in entry.expected:
        a, d = _covering_params(entry.name)
        payload["flop"] = flop_obstruction(a, d).to_json()
    return payload, ok


def _covering_params(name):
    a, d = name.split(":")[1].split(",")
    return int(a), int(d)


def _verify_text(p):
    lines = [f"{p['model']}  {p['partition']}"]
    if "conjecture1" in p:
        c = p["conjecture1"]
        lines.append(f"  conjecture 1: routes {tuple(c['routes'])}  "
                     f"{'holds' if c['holds'] else 'FAILS'}")
        inf = p["infinity"]
        sing = inf["singularity"] or ("smooth" if inf["singular"] is False else "undetermined")
        lines.append(f"    infinity: {inf['components']} components, {sing}")
    if "conjecture2" in p:
        c = p["conjecture2"]
        if "skipped" in c:
            lines.append(f"  conjecture 2: skipped ({c['skipped']})")
        else:
            lines.append(f"  conjecture 2: kappa {c['kappa']}, expected {c['expected']}  "
                         f"{'holds' if c['holds'] else 'FAILS'}")
    if "flop" in p:
        f = p["flop"]
        lines.append(f"  flop: {'obstructed' if f['obstructed'] else 'not obstructed'}"
                     f" ({f['reason']})")
    return "\n".join(lines) + "\n"


def cmd_verify(args, out):
    conj = args.conjecture
    if args.model == "all":
        results, ok = [], True
        for name, entry in CATALOG.items():
            p, good = _verify_one(name, conj, skip_unsupported=True)
            p["name"] = name
            results.append(p)
            ok = ok and good
        if args.format == "json":
            _emit_json({"results": results, "holds": ok}, out)
        else:
            for p in results:
                out.write(f"[{p['name']}] " + _verify_text(p))
        return EXIT_OK if ok else EXIT_DISAGREE
    p, ok = _verify_one(args.model, conj, hodge=args.hodge)
    if args.format == "json":
        p["holds"] = ok
        _emit_json(p, out)
    else:
        out.write(_verify_text(p))
    return EXIT_OK if ok else EXIT_DISAGREE


def cmd_dynkin(args, out):
    name = args.model
    if name not in ("dp1", "dp2", "dp3"):
        raise ValueError(f"unknown surface model {name!r}; choose dp1, dp2 or dp3")
    e = CATALOG[name]
    rep = central_fiber_report(compactified_pencil(e.model, e.preferred_partition))
    g = rep.adjacency
    if args.format == "dot":
        out.write(g.to_dot(name))
    elif args.format == "json":
        _emit_json({"model": name, "label": rep.dynkin_label, "arms": list(rep.arms),
                    "nodes": [{"id": n, "mult": m} for n, m in g.nodes],
                    "edges": [list(e) for e in g.edges]}, out)
    else:
        arms = ",".join(map(str, rep.arms))
        out.write(f"label {rep.dynkin_label}, arms {{{arms}}}, {len(g.nodes)} nodes\n")
    return EXIT_OK


def cmd_catalog(args, out):
    if args.json or args.format == "json":
        _emit_json({"entries": [e.to_json() for e in CATALOG.values()]}, out)
        return EXIT_OK
    for e in CATALOG.values():
        eq = f"  (equivalent to {e.equivalent_to})" if e.equivalent_to else ""
        out.write(f"{e.name:<14} {e.model.spec():<22} {e.description}{eq}\n")
        for k, v in e.expected.items():
            val = v.to_json()["value"]
            out.write(f"    {k:<22} {json.dumps(val)}  [{v.provenance}]\n")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--meta", action="store_true",
                        help="write run metadata as JSON to stderr")
    common.add_argument("--max-dim", type=int, default=8, help="dimension cap (default 8)")

    def fmt(p, choices=("text", "json")):
        p.add_argument("--format", choices=choices, default=choices[0])

    parser = argparse.ArgumentParser(
        prog="lgcompact",
        description="Exact computations for Givental-type Landau-Ginzburg models.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("periods", parents=[common],
                       help="constant terms [f^u] of a polynomial or model")
    p.add_argument("target", help="Laurent polynomial text or model spec")
    p.add_argument("--terms", type=int, default=6)
    p.add_argument("--engine", choices=("naive", "pruned"), default="naive")
    p.add_argument("--max-terms", type=int, default=20)
    fmt(p)
    p.set_defaults(func=cmd_periods)

    p = sub.add_parser("polytope", parents=[common], help="Newton and dual polytopes")
    p.add_argument("target", help="model spec, polynomial text or vertex list '1,0; 0,1; -1,-1'")
    p.add_argument("--op", choices=("newton", "dual", "reflexive", "boundary-points"),
                   default="newton")
    fmt(p)
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("nef", parents=[common], help="nef-partitions of weights;degrees")
    p.add_argument("weights", help="e.g. 1,1,1,1,3;6")
    p.add_argument("--max-weights", type=int, default=20)
    fmt(p)
    p.set_defaults(func=cmd_nef)

    p = sub.add_parser("givental", parents=[common],
                       help="Givental-type polynomial and dual matrix")
    p.add_argument("model")
    fmt(p)
    p.set_defaults(func=cmd_givental)

    p = sub.add_parser("verify", parents=[common], help="check the fiber conjectures")
    p.add_argument("model", help="model spec or 'all'")
    p.add_argument("--conjecture", type=int, choices=(1, 2), default=None)
    p.add_argument("--hodge", type=int, default=None,
                   help="h^{1,n-1} (n >= 3) or h^{1,1} (surfaces) if not in the catalog")
    fmt(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dynkin", parents=[common], help="central fiber of a del Pezzo model")
    p.add_argument("model")
    fmt(p, ("text", "dot", "json"))
    p.set_defaults(func=cmd_dynkin)

    p = sub.add_parser("catalog", parents=[common], help="list catalog entries")
    p.add_argument("--json", action="store_true")
    fmt(p)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        code = args.func(args, out)
    except (SearchCapExceeded, CapError) as e:
        err.write(f"error: {e}\n")
        code = EXIT_CAP
    except OriginNotInteriorError as e:
        err.write(f"error: {e}\n")
        code = EXIT_ORIGIN
    except (UnsupportedConfiguration, NotNiceError) as e:
        err.write(f"error: {e}\n")
        code = EXIT_UNSUPPORTED if isinstance(e, UnsupportedConfiguration) else EXIT_INPUT
    except (LGError, ValueError) as e:
        err.write(f"error: {e}\n")
        code = EXIT_INPUT
    if args.meta:
        err.write(json.dumps({"version": __version__, "command": args.command,
                              "python": platform.python_version(),
                              "elapsed_s": round(time.perf_counter() - t0, 6),
                              "exit": code}) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
