"""Command-line entry point.

Exit codes: 0 success/pass, 1 check failed, 2 input error, 3 budget or
margin error. Every error prints one JSON line to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import io as rio
from .bounds import (FAMILIES, check_bipartite_lemma, check_crossing_cone, check_k23_condition,
                     check_link_inequality, check_perp_disjunction, records_to_csv, records_to_json,
                     scaling_experiment)
from .complexes import build_rips, complex_to_json
from .constructions import (ConstructionParams, MatchingFamily, ap3_free_set, construct_even_p, construct_s2,
                            construct_s2km1, quasi_rips_from_matchings, rs_matching_family, two_clique_gadget)
from .cycles import h1_cycle_basis, refine_epsilon_simple
from .errors import InputError, RipsError
from .geometry import ThresholdPolicy
from .homology import FieldSpec, betti_numbers

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _emit_error(code: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": code, "message": " ".join(str(message).split())}) + "\n")


def _write(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return rio.dumps(obj)


def _point(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"cannot parse point {text!r}") from None


def _policy(args) -> ThresholdPolicy:
    return ThresholdPolicy(threshold=args.threshold)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InputError(f"cannot parse integer list {text!r}") from None


# --- subcommands ---------------------------------------------------------------

def cmd_betti(args) -> int:
    cloud = rio.read_cloud(args.cloud)
    cap = args.dim_cap if args.dim_cap is not None else args.pmax + 1
    cx = build_rips(cloud, _policy(args), cap)
    bv = betti_numbers(cx, args.pmax, FieldSpec(args.field))
    if args.format == "csv":
        _write(args, "p,betti\n" + "".join(f"{p},{b}\n" for p, b in enumerate(bv.betti)))
    else:
        out = bv.to_json()
        out["f_vector"] = cx.f_vector
        _write(args, _json(out))
    return EXIT_OK


def cmd_construct(args) -> int:
    fam = args.family
    params = ConstructionParams(k=args.k or 1, n=args.n or 0, epsilon_c=args.epsilon_c, delta=args.delta)
    if fam == "s2":
        k = args.k if args.k is not None else (None if args.n is None else math.isqrt(args.n // 3))
        if k is None:
            raise InputError("construct s2 needs --k or --n")
        cloud = construct_s2(k, params)
    elif fam == "s2km1":
        if args.n is None:
            raise InputError("construct s2km1 needs --n")
        cloud = construct_s2km1(args.n, args.k or 1, params)
    elif fam == "even-p":
        if args.n is None or args.p is None:
            raise InputError("construct even-p needs --n and --p")
        cloud = construct_even_p(args.n, args.p, params).cloud
    else:
        if args.n is None:
            raise InputError("construct quasi-rs needs --n (the progression range N)")
        family = rs_matching_family(ap3_free_set(args.n, args.method), args.n)
        qr = quasi_rips_from_matchings(family, args.cap_third, witness_alpha=args.alpha)
        payload = {
            "version": 1,
            "complex": complex_to_json(qr.complex),
            "family": family.to_json(),
            "note": qr.note,
            "parts": {"U": list(qr.U), "V": list(qr.V), "N": list(qr.N)},
        }
        if qr.witness is not None:
            payload["witness"] = {
                "alpha": qr.witness.alpha,
                "cloud": rio.cloud_to_json(qr.witness.cloud),
                "optional_edges": sorted(list(e) for e in qr.witness.optional_edge_policy.edges),
            }
        text = _json(payload)
        if args.out:
            Path(args.out).write_text(text + "\n")
        else:
            _write(args, text)
        return EXIT_OK
    fmt = args.format
    if args.out:
        fmt = "json" if Path(args.out).suffix.lower() == ".json" else fmt
        Path(args.out).write_text(_json(rio.cloud_to_json(cloud)) + "\n" if fmt == "json" else rio.cloud_to_csv(cloud))
    else:
        _write(args, _json(rio.cloud_to_json(cloud)) if fmt == "json" else rio.cloud_to_csv(cloud))
    return EXIT_OK


def cmd_check(args) -> int:
    which = args.check
    field_ = FieldSpec(args.field)
    if which == "link-inequality":
        if not args.cloud:
            raise InputError("check link-inequality needs --cloud FILE")
        cloud = rio.read_cloud(args.cloud)
        res = check_link_inequality(cloud, args.vertex, args.p, field_, _policy(args))
        out = {"check": which, "holds": res.holds, "whole": res.whole, "without_vertex": res.without_vertex,
               "link": res.link}
        ok = res.holds
    elif which == "crossing":
        if not args.points:
            raise InputError("check crossing needs --points u1;v1;u2;v2")
        pts = [_point(s) for s in args.points.split(";")]
        ok = check_crossing_cone(pts, _policy(args))
        out = {"check": which, "holds": ok}
    elif which == "k23":
        if not args.graph:
            raise InputError("check k23 needs --graph FILE")
        fam = MatchingFamily.from_json(json.loads(Path(args.graph).read_text()))
        rep = check_k23_condition(fam.graph, range(fam.n_u), range(fam.n_u, fam.n_u + fam.n_v))
        out = {"check": which, "holds": rep.holds, "edge_count": rep.edge_count, "bound": rep.bound,
               "ratio": rep.ratio}
        ok = rep.holds
    elif which == "perp":
        if not (args.u and args.v and args.eps):
            raise InputError("check perp needs --u FILE --v FILE --eps E")
        U, V = rio.read_cloud(args.u), rio.read_cloud(args.v)
        pairs = check_perp_disjunction(U, V, args.eps, args.alpha_threshold,
                                       _point(args.pu) if args.pu else None, _point(args.pv) if args.pv else None)
        violations = [list(p.pair) for p in pairs if p.violates]
        out = {"check": which, "holds": not violations, "pairs": len(pairs), "violations": violations,
               "max_dot_nonmonotone": max([p.dot for p in pairs if not p.monotone], default=0.0)}
        ok = not violations
    else:
        if args.u_size is None or args.v_size is None:
            raise InputError("check bipartite needs --u-size and --v-size")
        cross = []
        for tok in (args.cross or "").split(","):
            if tok.strip():
                try:
                    i, j = tok.split(":")
                    cross.append((int(i), int(j)))
                except ValueError:
                    raise InputError(f"bad cross edge {tok!r}; use i:j") from None
        rep = check_bipartite_lemma(two_clique_gadget(args.u_size, args.v_size, cross), field_)
        out = {"check": which, **rep}
        ok = rep["holds"] and rep["basis_independent"] and rep["basis_spanning"]
    out["version"] = 1
    _write(args, _json(out))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_cycle_basis(args) -> int:
    cloud = rio.read_cloud(args.cloud)
    cx = build_rips(cloud, _policy(args), 2)
    field_ = FieldSpec(args.field)
    basis = h1_cycle_basis(cx, field_)
    out = basis.to_json()
    if args.epsilon is not None:
        res = refine_epsilon_simple(basis, cloud, args.epsilon, field_)
        out = res.basis.to_json()
        out["non_epsilon_simple"] = res.non_epsilon_simple
        out["epsilon"] = args.epsilon
    _write(args, _json(out))
    return EXIT_OK


def cmd_experiment(args) -> int:
    records, summary = scaling_experiment(args.family.replace("-", "_"), _int_list(args.sizes), args.p,
                                          FieldSpec(args.field), args.seed, args.k, args.jobs,
                                          timing=not args.omit_timing)
    if args.format == "csv":
        _write(args, records_to_csv(records) + _json(summary))
    else:
        _write(args, _json({"version": 1, "records": records_to_json(records), "summary": summary}))
    return EXIT_OK


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--field", type=int, default=2, help="prime field characteristic (default 2)")
    common.add_argument("--output", help="write output to this file instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json", help="output format")
    common.add_argument("--threshold", type=float, default=1.0, help="Rips distance threshold (default 1)")

    parser = _Parser(prog="ripsbetti", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("betti", parents=[common], help="Betti numbers of the Rips complex of a point cloud")
    p.add_argument("--cloud", required=True, help="point cloud file (CSV or JSON)")
    p.add_argument("--pmax", type=int, required=True, help="highest Betti number to compute")
    p.add_argument("--dim-cap", type=int, help="face dimension cap (default pmax + 1)")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("construct", parents=[common], help="emit one of the extremal configurations")
    p.add_argument("family", choices=("s2", "s2km1", "even-p", "quasi-rs"))
    p.add_argument("--k", type=int, help="cluster/grid parameter")
    p.add_argument("--n", type=int, help="point budget (progression range N for quasi-rs)")
    p.add_argument("--p", type=int, help="homological degree (even-p)")
    p.add_argument("--out", help="output file; .json selects JSON, anything else CSV")
    p.add_argument("--epsilon-c", type=float, help="stacking offset override")
    p.add_argument("--delta", type=float, help="angular step override")
    p.add_argument("--method", choices=("greedy", "behrend"), default="greedy", help="AP3-free generator (quasi-rs)")
    p.add_argument("--cap-third", type=int, help="size cap for each part (quasi-rs)")
    p.add_argument("--alpha", type=float, help="emit a planar quasi-Rips witness for this alpha (quasi-rs)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", parents=[common], help="run a lemma checker; exit 0 on pass, 1 on failure")
    p.add_argument("check", choices=("link-inequality", "crossing", "k23", "perp", "bipartite"))
    p.add_argument("--cloud", help="point cloud (link-inequality)")
    p.add_argument("--vertex", type=int, default=0, help="vertex to remove (link-inequality)")
    p.add_argument("--p", type=int, default=1, help="degree (link-inequality)")
    p.add_argument("--points", help="u1;v1;u2;v2 as x,y pairs (crossing)")
    p.add_argument("--graph", help="bipartite graph JSON {U, V, edges} (k23)")
    p.add_argument("--u", help="cluster U point cloud (perp)")
    p.add_argument("--v", help="cluster V point cloud (perp)")
    p.add_argument("--eps", type=float, help="cluster radius (perp)")
    p.add_argument("--alpha-threshold", type=float, default=0.25, help="dot-product threshold (perp)")
    p.add_argument("--pu", help="centre of U as x,y (perp; default centroid)")
    p.add_argument("--pv", help="centre of V as x,y (perp; default centroid)")
    p.add_argument("--u-size", type=int, help="|U| (bipartite)")
    p.add_argument("--v-size", type=int, help="|V| (bipartite)")
    p.add_argument("--cross", help="cross edges as i:j,i:j with part-local indices (bipartite)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("cycle-basis", parents=[common], help="simple, chord-free H1 basis of a Rips complex")
    p.add_argument("--cloud", required=True, help="point cloud file")
    p.add_argument("--epsilon", type=float, help="refine toward epsilon-simple cycles with this cube size")
    p.set_defaults(func=cmd_cycle_basis)

    p = sub.add_parser("experiment", parents=[common], help="Betti growth over a family of constructions")
    p.add_argument("--family", required=True, choices=FAMILIES + tuple(f.replace("_", "-") for f in FAMILIES))
    p.add_argument("--sizes", required=True, help="comma-separated sizes")
    p.add_argument("--p", type=int, help="homological degree (default per family)")
    p.add_argument("--k", type=int, default=1, help="number of rotated copies (s2km1)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--omit-timing", action="store_true", help="write wall_time as 0 for byte-stable output")
    p.set_defaults(func=cmd_experiment)
    return parser


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "field", 2) is not None:
            FieldSpec(args.field)
        return args.func(args)
    except RipsError as exc:
        _emit_error(exc.code, str(exc))
        return exc.exit_status
    except OSError as exc:
        _emit_error("io_error", str(exc))
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
