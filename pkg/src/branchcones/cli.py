"""Command-line interface: batch counting runs, verification, and export.

Every counting subcommand can be asked to check itself against the
character oracle with ``--verify``; a disagreement is an invariant breach
and exits with status 4.  Resource-cap overruns exit with status 3 and bad
arguments with status 2, each carrying a machine-readable error object on
stdout.  Results are emitted as single-line JSON with a fixed key order, so
identical invocations produce identical bytes.

Jobs can also be described as JSON files (see ``branchcones job``); unknown
fields in a job file are rejected.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import bz as bzmod
from . import cones, lattice, oracle
from .rootsys import (
    act_word,
    build_root_system,
    dual_weight,
    fundamental_weight,
    simple_reflection,
    w0_word,
)
from .itrails import d_vector, enumerate_itrails, minuscule_weight_diagram


class VerificationError(RuntimeError):
    """A count disagreed with the oracle (or an internal invariant broke)."""


# ---------------------------------------------------------------------------
# argument helpers


def _parse_weight(text: str, rank: int) -> tuple[int, ...]:
    try:
        vec = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"malformed weight {text!r}; expected comma-separated integers")
    if len(vec) != rank:
        raise ValueError(f"weight {text!r} has {len(vec)} coordinates, expected {rank}")
    return vec


def _parse_weight_list(text: str, rank: int) -> list[tuple[int, ...]]:
    return [_parse_weight(part, rank) for part in text.split(";")]


def _parse_word(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _parse_subset(text: str) -> frozenset[int]:
    return frozenset(int(x) for x in text.split(","))


def _parse_strings(text: str) -> dict[int, tuple[int, ...]]:
    out = {}
    for part in text.split(";"):
        vertex, _, word = part.partition(":")
        out[int(vertex)] = _parse_word(word)
    return out


def _variant(args) -> cones.ConeVariant:
    return cones.ConeVariant(
        string_bound=getattr(args, "string_bound", "upper"),
        mu_from_sum=getattr(args, "mu_sign", "sum") == "sum",
        beta_trail_sign=1 if getattr(args, "beta_sign", "plus") == "plus" else -1,
    )


def _add_variant_flags(sub) -> None:
    sub.add_argument("--string-bound", dest="string_bound", choices=("upper", "lower"),
                     default="upper")
    sub.add_argument("--mu-sign", dest="mu_sign", choices=("sum", "alt"), default="sum")
    sub.add_argument("--beta-sign", dest="beta_sign", choices=("plus", "minus"),
                     default="plus")


def _add_common_flags(sub) -> None:
    sub.add_argument("--verify", action="store_true")
    sub.add_argument("--threads", type=int, default=1)
    sub.add_argument("--point-cap", dest="point_cap", type=int, default=None)
    sub.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="branchcones")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("dim", help="string-cone slice count (vs Weyl dimension)")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--word", default=None)
    _add_variant_flags(p)
    _add_common_flags(p)

    p = subs.add_parser("lr", help="tensor-cone slice count (vs tensor oracle)")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--word", default=None)
    _add_variant_flags(p)
    _add_common_flags(p)

    p = subs.add_parser("branch", help="Levi-cone slice counts (vs branching oracle)")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--levi", required=True, help="comma-separated simple indices")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--eta", default=None)
    _add_variant_flags(p)
    _add_common_flags(p)

    p = subs.add_parser("invariant", help="tree fiber cone / quilt invariant counts")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--tree", required=True, help="edge list such as 0-4,1-4,4-5,2-5,3-5")
    p.add_argument("--weights", required=True, help="semicolon-separated leaf weights")
    p.add_argument("--method", choices=("cone", "quilt", "both"), default="both")
    p.add_argument("--strings", default=None, help="per-vertex words, e.g. 4:1,2,1;5:2,1,2")
    _add_variant_flags(p)
    _add_common_flags(p)

    p = subs.add_parser("bz", help="triangle-diagram fillings for SL(m)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--weights", required=True, help="three weights, semicolon-separated")
    p.add_argument("--list", dest="list_fillings", action="store_true")
    _add_common_flags(p)

    p = subs.add_parser("cone-export", help="write a cone in plain-text H-representation")
    p.add_argument("--kind", choices=("string", "c3", "levi", "tree"), required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--word", default=None)
    p.add_argument("--levi", default=None)
    p.add_argument("--tree", default=None)
    p.add_argument("--strings", default=None)
    p.add_argument("--out", required=True)
    _add_variant_flags(p)

    p = subs.add_parser("itrails", help="list trails and coefficient vectors")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--rep", type=int, required=True, help="fundamental index j")
    p.add_argument("--word", default=None)
    p.add_argument("--family", choices=("cone", "beta"), default="cone")
    p.add_argument("--source", default=None)
    p.add_argument("--target", default=None)
    p.add_argument("--out", default=None)

    p = subs.add_parser("maps-check", help="face/degeneracy evaluation identities")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--out", default=None)

    p = subs.add_parser("job", help="run a JSON job file")
    p.add_argument("path")

    return parser


# ---------------------------------------------------------------------------
# runners


def _run_dim(args) -> dict:
    rs = build_root_system(args.rank)
    lam = _parse_weight(args.lam, rs.rank)
    word = _parse_word(args.word) if args.word else w0_word(rs)
    cone = cones.string_cone(rs, word, _variant(args))
    poly = lattice.slice_cone(cone, {"lambda": lam})
    count = lattice.count_points(poly, cap=args.point_cap, threads=args.threads)
    result = {"count": count}
    if args.verify:
        expected = oracle.irrep_dimension(rs, lam)
        result["oracle"] = expected
        result["agree"] = count == expected
        if not result["agree"]:
            raise VerificationError(json.dumps(result))
    return result


def _run_lr(args) -> dict:
    rs = build_root_system(args.rank)
    lam = _parse_weight(args.lam, rs.rank)
    beta = _parse_weight(args.beta, rs.rank)
    mu = _parse_weight(args.mu, rs.rank)
    word = _parse_word(args.word) if args.word else w0_word(rs)
    cone = cones.triple_cone(rs, word, _variant(args))
    poly = lattice.slice_cone(cone, {"lambda": lam, "beta": beta, "mu": mu})
    count = lattice.count_points(poly, cap=args.point_cap, threads=args.threads)
    expected = oracle.tensor_multiplicity(rs, lam, beta, mu)
    result = {"count": count, "oracle": expected, "agree": count == expected}
    if args.verify and not result["agree"]:
        raise VerificationError(json.dumps(result))
    return result


def _eta_histogram(poly, points) -> dict:
    indices = [
        i for i, label in enumerate(poly.var_labels) if label.startswith("eta[")
    ]
    counts: dict[tuple[int, ...], int] = {}
    for pt in points:
        eta = tuple(pt[i] for i in indices)
        counts[eta] = counts.get(eta, 0) + 1
    return counts


def _run_branch(args) -> dict:
    rs = build_root_system(args.rank)
    subset = _parse_subset(args.levi)
    lam = _parse_weight(args.lam, rs.rank)
    cone = cones.levi_cone(rs, subset, variant=_variant(args))
    poly = lattice.slice_cone(cone, {"lambda": lam})
    points = lattice.enumerate_points(poly, cap=args.point_cap, threads=args.threads)
    histogram = _eta_histogram(poly, points)
    expected = dict(oracle.levi_branching(rs, subset, lam))
    if args.eta is not None:
        eta = _parse_weight(args.eta, rs.rank)
        count = histogram.get(eta, 0)
        result = {"count": count}
        if args.verify:
            result["oracle"] = expected.get(eta, 0)
            result["agree"] = count == result["oracle"]
            if not result["agree"]:
                raise VerificationError(json.dumps(result))
        return result
    rows = [
        {"eta": list(eta), "count": c} for eta, c in sorted(histogram.items())
    ]
    result: dict = {"results": rows, "total": sum(histogram.values())}
    if args.verify:
        agree = histogram == expected
        result["agree"] = agree
        if not agree:
            raise VerificationError(json.dumps(result))
    return result


def _run_invariant(args) -> dict:
    rs = build_root_system(args.rank)
    tree = cones.parse_tree(args.tree)
    weights = _parse_weight_list(args.weights, rs.rank)
    if len(weights) != len(tree.leaves):
        raise ValueError(
            f"{len(tree.leaves)} leaf weights required, got {len(weights)}"
        )
    result: dict = {}
    if args.method in ("cone", "both"):
        strings = _parse_strings(args.strings) if args.strings else None
        cone = cones.tree_fiber_cone(rs, tree, strings, _variant(args))
        fixed = {
            cones.leaf_edge_block(tree, leaf): w
            for leaf, w in zip(tree.leaves, weights)
        }
        poly = lattice.slice_cone(cone, fixed)
        result["cone"] = lattice.count_points(
            poly, cap=args.point_cap, threads=args.threads
        )
    if args.method in ("quilt", "both"):
        result["quilt"] = bzmod.count_quilts(rs.rank + 1, tree, weights)
    if args.verify:
        expected = oracle.multi_tensor_invariant_dim(rs, weights)
        result["oracle"] = expected
        result["agree"] = all(
            result[k] == expected for k in ("cone", "quilt") if k in result
        )
        if not result["agree"]:
            raise VerificationError(json.dumps(result))
    return result


def _run_bz(args) -> dict:
    template = bzmod.bz_template(args.m)
    weights = _parse_weight_list(args.weights, args.m - 1)
    if len(weights) != 3:
        raise ValueError("exactly three boundary weights are required")
    fillings = bzmod.enumerate_bz(template, *weights)
    result: dict = {"count": len(fillings)}
    if args.list_fillings:
        result["fillings"] = [bzmod.filling_to_json(template, f) for f in fillings]
    if args.verify:
        rs = build_root_system(args.m - 1)
        expected = oracle.tensor_multiplicity(
            rs, weights[0], weights[1], dual_weight(rs, weights[2])
        )
        result["oracle"] = expected
        result["agree"] = result["count"] == expected
        if not result["agree"]:
            raise VerificationError(json.dumps(result))
    return result


def _run_cone_export(args) -> dict:
    rs = build_root_system(args.rank)
    variant = _variant(args)
    word = _parse_word(args.word) if args.word else w0_word(rs)
    if args.kind == "string":
        cone = cones.string_cone(rs, word, variant)
    elif args.kind == "c3":
        cone = cones.triple_cone(rs, word, variant)
    elif args.kind == "levi":
        if not args.levi:
            raise ValueError("--levi is required for kind=levi")
        cone = cones.levi_cone(rs, _parse_subset(args.levi), variant=variant)
    else:
        if not args.tree:
            raise ValueError("--tree is required for kind=tree")
        tree = cones.parse_tree(args.tree)
        strings = _parse_strings(args.strings) if args.strings else None
        cone = cones.tree_fiber_cone(rs, tree, strings, variant)
    text = cones.cone_hrep_text(cone)
    sidecar = cones.cone_blocks_sidecar(cone)
    with open(args.out, "w") as fh:
        fh.write(text)
    sidecar_path = args.out + ".blocks.json"
    with open(sidecar_path, "w") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return {
        "out": args.out,
        "sidecar": sidecar_path,
        "rows": len(cone.ineqs) + 2 * len(cone.eqs),
        "dimension": cone.dimension,
    }


def _run_itrails(args) -> dict:
    rs = build_root_system(args.rank)
    word = _parse_word(args.word) if args.word else w0_word(rs)
    j = args.rep
    diagram = minuscule_weight_diagram(rs, j)
    omega = fundamental_weight(rs, j)
    if args.source and args.target:
        gamma = _parse_weight(args.source, rs.rank)
        eta = _parse_weight(args.target, rs.rank)
    elif args.family == "cone":
        gamma = omega
        eta = act_word(rs, word, simple_reflection(rs, j, omega))
    else:
        gamma = simple_reflection(rs, j, omega)
        eta = act_word(rs, word, omega)
    trails = enumerate_itrails(diagram, word, gamma, eta)
    return {
        "rep": j,
        "word": list(word),
        "source": list(gamma),
        "target": list(eta),
        "trails": [
            {
                "weights": [list(w) for w in t.weights],
                "steps": list(t.steps),
                "d": [str(x) for x in d_vector(rs, t)],
            }
            for t in trails
        ],
    }


def _run_maps_check(args) -> dict:
    rs = build_root_system(args.rank)
    rng = random.Random(args.seed)

    def rand_coweight():
        return tuple(
            Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(rs.rank)
        )

    def rand_weight():
        return tuple(
            Fraction(rng.randint(-12, 12), rng.randint(1, 7)) for _ in range(rs.rank)
        )

    failures = 0
    checked = 0
    for k in (2, 3, 4):
        for _ in range(args.samples):
            rho = cones.coweight_tuple(
                [rs] * (k + 1), [rand_coweight() for _ in range(k + 1)]
            )
            # face: inserting a zero slot pairs it with a deleted weight
            pos = rng.randint(1, k)
            lambdas = [rand_weight() for _ in range(k + 2)]
            lhs = cones.coweight_value(cones.face_pullback(rho, pos), lambdas)
            rhs = cones.coweight_value(
                rho, lambdas[:pos] + lambdas[pos + 1 :]
            )
            checked += 1
            if lhs != rhs:
                failures += 1
            # degeneracy: merging two slots pairs them with a duplicated weight
            pos = rng.randint(0, k - 1)
            lambdas = [rand_weight() for _ in range(k)]
            lhs = cones.coweight_value(cones.degeneracy_pullback(rho, pos), lambdas)
            dup = lambdas[: pos + 1] + [lambdas[pos]] + lambdas[pos + 1 :]
            rhs = cones.coweight_value(rho, dup)
            checked += 1
            if lhs != rhs:
                failures += 1
    result = {"checked": checked, "failures": failures, "seed": args.seed}
    if failures:
        raise VerificationError(json.dumps(result))
    return result


_JOB_KEYS = {
    "command", "rank", "m", "lambda", "beta", "mu", "eta", "levi", "word",
    "weights", "tree", "strings", "method", "rep", "family", "source",
    "target", "seed", "samples", "verify", "threads", "point_cap", "out",
    "kind", "list", "string_bound", "mu_sign", "beta_sign",
}


def _job_to_argv(job: dict) -> list[str]:
    unknown = set(job) - _JOB_KEYS
    if unknown:
        raise ValueError(f"unknown job fields: {sorted(unknown)}")
    if "command" not in job:
        raise ValueError("job file must name a command")
    argv = [str(job["command"])]
    for key, value in job.items():
        if key == "command":
            continue
        flag = "--" + key.replace("_", "-")
        if isinstance(value, bool):
            if value:
                argv.append(flag)
        elif isinstance(value, list):
            if value and isinstance(value[0], list):
                argv.extend([flag, ";".join(",".join(str(c) for c in w) for w in value)])
            else:
                argv.extend([flag, ",".join(str(c) for c in value)])
        else:
            argv.extend([flag, str(value)])
    return argv


_RUNNERS = {
    "dim": _run_dim,
    "lr": _run_lr,
    "branch": _run_branch,
    "invariant": _run_invariant,
    "bz": _run_bz,
    "cone-export": _run_cone_export,
    "itrails": _run_itrails,
    "maps-check": _run_maps_check,
}


def _emit(obj: dict, out_path: str | None) -> None:
    text = json.dumps(obj)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    print(text)


def cli_dispatch(argv) -> int:
    """Parse arguments, run the job, print JSON; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "job":
        try:
            with open(args.path) as fh:
                job = json.load(fh)
            return cli_dispatch(_job_to_argv(job))
        except (OSError, ValueError) as exc:
            _emit({"error": {"code": "invalid-argument", "message": str(exc)}}, None)
            return 2
    runner = _RUNNERS[args.command]
    try:
        result = runner(args)
    except VerificationError as exc:
        _emit({"error": {"code": "verify-failed", "message": str(exc)}}, None)
        return 4
    except lattice.ResourceLimitError as exc:
        _emit({"error": {"code": "resource-limit", "message": str(exc)}}, None)
        return 3
    except (ValueError, NotImplementedError, lattice.UnboundedRegionError) as exc:
        _emit({"error": {"code": "invalid-argument", "message": str(exc)}}, None)
        return 2
    _emit(result, getattr(args, "out", None) if args.command != "cone-export" else None)
    return 0


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
