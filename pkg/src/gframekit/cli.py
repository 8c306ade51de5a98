"""Command-line front end.

Every command prints one JSON report on stdout. Exit codes: 0 when the
checked property holds, 2 when it fails, 1 on input or usage errors.
"""

import argparse
import dataclasses
import enum
import hashlib
import json
import os
import sys
import time

import numpy as np

from . import __version__, tolerances
from .classify import classify
from .duality import DualPair, canonical_dual, reconstruct, tight_transform, verify_dual_pair
from .errors import GFrameError, NotAFrame, NotDualPair, ParseError, SingularSplitting, UnknownIndex, ValidationError
from .excess import classify_removal, exactness
from .formats import (
    dumps_gframe,
    dumps_vector_frame,
    loads_forms,
    loads_gframe,
    loads_operator,
    loads_vector_frame,
    read_text,
    write_text,
)
from .generators import GeneratorSpec
from .gframe import frame_operator, optimal_bounds
from .induced import equivalence_report, induced_sequence
from .resolution import Variant, atom_rank_profile, resolution_ok, resolve
from .splitting import splitting_constants, verify_sandwich

EXIT_OK, EXIT_INPUT, EXIT_FAIL = 0, 1, 2


class _Fail(Exception):
    """Property check failed; carries the partial results."""

    def __init__(self, results):
        super().__init__("property failed")
        self.results = results


def jsonable(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return jsonable(np.stack([obj.real, obj.imag], axis=-1))
        return obj.tolist()
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if np.isfinite(x) else repr(x)
    return obj


def checked(value, tol):
    """A numeric result with the tolerance it was asserted under."""
    return {"value": float(value), "tol": tol, "ok": bool(value <= tol)}


class Context:
    def __init__(self, args):
        self.args = args
        self.inputs = {}

    def read(self, path):
        text = read_text(path)
        self.inputs[path] = hashlib.sha256(text.encode("utf-8")).hexdigest()
        return text

    def gframe(self, path):
        return loads_gframe(self.read(path))


def _tolerances():
    return {
        "rank": tolerances.rank_tol(),
        "tight": tolerances.TIGHT_TOL,
        "orthonormal": tolerances.ORTHONORMAL_TOL,
        "dual": tolerances.DUAL_TOL,
        "eigenvalue_one": tolerances.EIGENVALUE_ONE_TOL,
        "resolution": tolerances.RESOLUTION_TOL,
        "canonical": tolerances.CANONICAL_TOL,
    }


# -- commands ---------------------------------------------------------------

def cmd_check(ctx):
    report = classify(ctx.gframe(ctx.args.file))
    results = {"classification": report}
    if not report.is_frame:
        raise _Fail(results)
    return results


def cmd_bounds(ctx):
    f = ctx.gframe(ctx.args.file)
    report = classify(f)
    results = {"bounds": optimal_bounds(f), "is_frame": report.is_frame, "is_tight": report.is_tight}
    if not report.is_frame:
        raise _Fail(results)
    return results


def _roundtrip(g, out):
    if out:
        write_text(out, dumps_gframe(g))
    return loads_gframe(dumps_gframe(g))


def cmd_dual(ctx):
    f = ctx.gframe(ctx.args.file)
    dual = _roundtrip(canonical_dual(f), ctx.args.out)
    pair = verify_dual_pair(f, dual)
    back = canonical_dual(dual)
    back_res = max(float(np.abs(a - b).max(initial=0.0)) for a, b in zip(f.blocks, back.blocks)) if len(f) else 0.0
    bounds, dual_bounds = optimal_bounds(f), optimal_bounds(dual)
    return {
        "output": ctx.args.out,
        "dual_pair_residual": checked(pair.residual, tolerances.DUAL_TOL),
        "dual_of_dual_residual": checked(back_res, 1e-9),
        "bounds": bounds,
        "dual_bounds": dual_bounds,
    }


def cmd_tight(ctx):
    f = ctx.gframe(ctx.args.file)
    q = _roundtrip(tight_transform(f), ctx.args.out)
    s = frame_operator(q).s
    return {
        "output": ctx.args.out,
        "parseval_residual": checked(float(np.linalg.norm(s - np.eye(f.dim_u))), 1e-9),
        "bounds": optimal_bounds(q),
    }


def cmd_induced(ctx):
    f = ctx.gframe(ctx.args.file)
    report = equivalence_report(f)
    if ctx.args.out:
        write_text(ctx.args.out, dumps_vector_frame(induced_sequence(f)))
    results = {"output": ctx.args.out, "equivalence": report,
               "operator_residual": checked(report.operator_residual, 1e-11)}
    if not report.agrees:
        raise _Fail(results)
    return results


def cmd_remove(ctx):
    f = ctx.gframe(ctx.args.file)
    verdict = classify_removal(f, ctx.args.index)
    results = {"verdict": verdict, "agrees_with_reclassification": verdict.agrees}
    if verdict.certificate_residual is not None:
        results["certificate_residual"] = checked(verdict.certificate_residual, tolerances.EIGENVALUE_ONE_TOL)
    if verdict.verdict != "StillGFrame":
        raise _Fail(results)
    return results


def cmd_exact(ctx):
    report = exactness(ctx.gframe(ctx.args.file), threads=ctx.args.threads)
    results = {"exact": report.exact,
               "verdicts": [{"index": v.removed_index, "verdict": v.verdict} for v in report.verdicts]}
    if not report.exact:
        raise _Fail(results)
    return results


def cmd_resolve(ctx):
    f = ctx.gframe(ctx.args.file)
    t = loads_operator(ctx.read(ctx.args.operator))
    dual = ctx.gframe(ctx.args.dual) if ctx.args.dual else canonical_dual(f)
    r = resolve(DualPair(f, dual), t, Variant(ctx.args.variant))
    tol = tolerances.RESOLUTION_TOL * max(1.0, float(np.linalg.norm(t)))
    results = {
        "variant": r.variant,
        "atoms": [
            {"index": j, "norm": float(np.linalg.norm(a)), "rank": rank}
            for j, a, rank in zip(r.indices, r.atoms, atom_rank_profile(r))
        ],
        "residual": checked(r.residual, tol),
    }
    if not resolution_ok(r, t):
        raise _Fail(results)
    return results


def cmd_splitting(ctx):
    f = ctx.gframe(ctx.args.file)
    indices, forms = loads_forms(ctx.read(ctx.args.forms))
    if indices != f.indices:
        raise ValidationError("forms", f"form indices {list(indices)} do not match frame indices {list(f.indices)}")
    bounds = optimal_bounds(f)
    consts = splitting_constants(f, forms)
    sandwich = verify_sandwich(f, forms)
    results = {
        "constants": consts,
        "form_constants": {"c1": forms.c1, "c2": forms.c2},
        "frame_bounds": bounds,
        "sandwich": sandwich,
    }
    if not sandwich.holds:
        raise _Fail(results)
    return results


def cmd_verify_pair(ctx):
    a = ctx.gframe(ctx.args.first)
    b = ctx.gframe(ctx.args.second)
    check = verify_dual_pair(a, b)
    results = {"is_dual": check.is_dual, "residual": checked(check.residual, check.tol)}
    if check.is_dual:
        x = np.random.default_rng(0).standard_normal(a.dim_u).astype(complex)
        pair = DualPair(a, b)
        err = max(np.linalg.norm(reconstruct(pair, x, o) - x) for o in ("primal", "dual"))
        results["reconstruction_error"] = checked(err / np.linalg.norm(x), 1e-9)
    else:
        raise _Fail(results)
    return results


def _parse_sets(text):
    return [[int(c) for c in part.split(",") if c.strip()] for part in text.split("/")]


def _parse_ints(text):
    return [int(c) for c in text.split(",") if c.strip()]


def generator_spec(args):
    kind = args.kind
    p = {}
    if kind == "identity":
        p = {"dim": args.dim}
    elif kind == "partition":
        p = {"dim": args.dim, "sets": _parse_sets(args.sets)}
    elif kind == "random":
        p = {"dim": args.dim, "dims": _parse_ints(args.dims), "seed": args.seed,
             "conditioning": args.conditioning}
        if args.rank is not None:
            p["rank"] = args.rank
    elif kind == "grouped":
        p = {"dim": args.dim, "group": args.group, "overlap": args.overlap, "seed": args.seed,
             "pad": args.pad, "conditioning": args.conditioning}
    elif kind == "gabor":
        p = {"length": args.length, "a": args.a, "b": args.b, "seed": args.seed}
        if args.window == "delta":
            p["window"] = "delta"
    elif kind == "vectors":
        vf = loads_vector_frame(read_text(args.vectors))
        p = {"vectors": vf.vectors}
    elif kind == "operator":
        p = {"matrix": loads_operator(read_text(args.operator))}
    return GeneratorSpec(kind, p)


def cmd_gen(ctx):
    spec = generator_spec(ctx.args)
    f = spec.build()
    text = dumps_gframe(f)
    if not loads_gframe(text).allclose(f, atol=0.0):
        raise AssertionError("generated frame does not round-trip")
    if ctx.args.out:
        write_text(ctx.args.out, text)
    else:
        sys.stdout.write(text)
        return None
    return {"output": ctx.args.out, "spec": spec.to_dict(), "dim_u": f.dim_u, "dims": f.dims}


COMMANDS = {
    "check": cmd_check,
    "bounds": cmd_bounds,
    "dual": cmd_dual,
    "tight": cmd_tight,
    "induced": cmd_induced,
    "remove": cmd_remove,
    "exact": cmd_exact,
    "resolve": cmd_resolve,
    "splitting": cmd_splitting,
    "gen": cmd_gen,
    "verify-pair": cmd_verify_pair,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="gframekit", description="Finite-dimensional g-frame toolkit.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--tol", type=float, default=None,
                        help="relative rank/frame threshold (default 1e-10, env GFRAMEKIT_TOL)")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for per-element checks")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in [("check", "classify a g-frame"), ("bounds", "optimal frame bounds"),
                           ("exact", "exactness via single-element removal")]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
    for name, helptext in [("dual", "canonical dual g-frame"), ("tight", "Parseval transform"),
                           ("induced", "induced vector sequence and equivalence check")]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        p.add_argument("--out")

    p = sub.add_parser("remove", help="remove one element and classify the rest")
    p.add_argument("file")
    p.add_argument("--index", type=int, required=True)

    p = sub.add_parser("resolve", help="atomic resolution of an operator")
    p.add_argument("file")
    p.add_argument("--operator", required=True)
    p.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.T_PRIMAL_DUAL.value)
    p.add_argument("--dual", help="dual g-frame file (default: canonical dual)")

    p = sub.add_parser("splitting", help="stable space splitting constants")
    p.add_argument("file")
    p.add_argument("--forms", required=True)

    p = sub.add_parser("verify-pair", help="check that two g-frames are dual")
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("gen", help="write a generated g-frame file")
    p.add_argument("kind", choices=["identity", "mercedes", "partition", "random", "grouped",
                                    "gabor", "vectors", "operator"])
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--sets", default="1")
    p.add_argument("--dims", default="1,1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--conditioning", type=float, default=1.0)
    p.add_argument("--rank", type=int)
    p.add_argument("--group", type=int, default=1)
    p.add_argument("--overlap", type=int, default=0)
    p.add_argument("--pad", type=int, default=0)
    p.add_argument("--length", type=int, default=4)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--window", choices=["random", "delta"], default="random")
    p.add_argument("--vectors", help="vector-frame file (kind=vectors)")
    p.add_argument("--operator", help="operator file (kind=operator)")
    p.add_argument("--out")
    return parser


def _emit(report):
    sys.stdout.write(json.dumps(jsonable(report), indent=2) + "\n")


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.tol is not None and not 0.0 < args.tol < 1.0:
        print("error: --tol must lie in (0, 1)", file=sys.stderr)
        return EXIT_INPUT
    saved = os.environ.get("GFRAMEKIT_TOL")
    if args.tol is not None:
        os.environ["GFRAMEKIT_TOL"] = repr(args.tol)
    try:
        return _run(args)
    finally:
        if saved is None:
            os.environ.pop("GFRAMEKIT_TOL", None)
        else:
            os.environ["GFRAMEKIT_TOL"] = saved


def _run(args):
    ctx = Context(args)
    report = {"command": args.command,
              "args": {k: v for k, v in vars(args).items() if k != "command"}}
    start = time.perf_counter()
    code = EXIT_OK
    try:
        results = COMMANDS[args.command](ctx)
        if results is None:
            return EXIT_OK
        report["results"] = results
    except _Fail as fail:
        report["results"] = fail.results
        code = EXIT_FAIL
    except (NotAFrame, NotDualPair, SingularSplitting) as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_FAIL
    except (ParseError, ValidationError, UnknownIndex, GFrameError, ValueError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        report["error"] = {"type": type(exc).__name__, "message": message}
        print(f"error: {type(exc).__name__}: {message}", file=sys.stderr)
        code = EXIT_INPUT
    report["inputs"] = ctx.inputs
    report["tolerances"] = _tolerances()
    report["wall_time_s"] = round(time.perf_counter() - start, 6)
    _emit(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
