"""Command line: ``finoperad factor | check | betti | suite``.

Every subcommand prints one JSON report on standard output and exits 0 on
pass, 1 on failure (the report lists witnesses) and 2 on bad input or an
exceeded budget. Elapsed time goes to standard error so that reports are
byte-identical across runs.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import acceptance, bimodule, dayconv, finseg, monoids, operad, segal
from .errors import BudgetExceeded, CheckFailed, FinOperadError, IncompleteData, InvalidInput
from .fincat import completion, nerve, serialize
from .fincat.fibration import check_grothendieck_fibration
from .fincat.monoidal import check_cartesian_criterion
from .fincat.standard import build_standard

CHECK_KINDS = ("segal", "operad", "bimodule", "dayconv", "fibration", "cartesian")
EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2
MAX_WITNESSES = 25


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    return repr(x)


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, default=_jsonable)


def load_json(arg: str):
    """Inline JSON, a path to a JSON file, or '-' for standard input."""
    try:
        if arg == "-":
            return json.load(sys.stdin)
        text = arg.strip()
        if text[:1] in "{[" or not os.path.exists(arg):
            return json.loads(arg)
        with open(arg, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from None


def _require(data, key: str, where: str):
    if not isinstance(data, dict) or key not in data:
        raise InvalidInput(f"{where}: missing field '{key}'")
    return data[key]


def report(command: str, witnesses: list, **extra) -> dict:
    """Witness lists keep their order and are cut at MAX_WITNESSES."""
    return {
        "command": command,
        "status": "pass" if not witnesses else "fail",
        "witnesses": witnesses[:MAX_WITNESSES],
        "witness_count": len(witnesses),
        **extra,
    }


# ---------------------------------------------------------------- factor

def cmd_factor(args) -> dict:
    f = finseg.from_json(load_json(args.input))
    u, v = finseg.factor_inert_active(f)
    certificate = len(finseg.factorizations(f))
    witnesses = [] if finseg.compose(v, u) == f else [{"reason": "factorization does not recompose"}]
    return report("factor", witnesses, inert=finseg.to_json(u), active=finseg.to_json(v), factorizations=certificate)


# ---------------------------------------------------------------- check

def _check_segal(data, args) -> dict:
    N = args.truncation if args.truncation is not None else 4
    if isinstance(data, dict) and "monoid" in data:
        M = segal.comm_monoid_to_gamma(monoids.CommMonoid.from_json(data["monoid"]), N)
    elif isinstance(data, dict) and "constant" in data:
        M = segal.constant_gamma(data["constant"], N)
    else:
        M = segal.GammaSet.from_json(data)
    witnesses = M.validate() + segal.check_gamma_segal(M)
    extra = {"truncation": M.N}
    if not witnesses and M.N >= 3:
        extra["monoid"] = segal.gamma_to_comm_monoid(M).to_json()
    return report("check segal", witnesses, **extra)


def _check_operad(data, args) -> dict:
    bound = args.bound if args.bound is not None else 3
    O = operad.from_json(data)
    return report("check operad", operad.check_axioms(O, bound), operad=O.name, bound=bound)


def _check_bimodule(data, args) -> dict:
    N = args.truncation if args.truncation is not None else 2
    bm = bimodule.Bimodule.from_json(data)
    laws = bm.validate()
    if laws:
        return report("check bimodule", [dict(w, condition="bimodule laws") for w in laws], truncation=N)
    result = bimodule.prebimodule_check(bimodule.bimodule_to_prebimodule(bm, N))
    witnesses = [dict(w, condition=k) for k, ws in result.items() for w in ws]
    return report("check bimodule", witnesses, truncation=N, conditions={k: not ws for k, ws in result.items()})


def _check_dayconv(data, args) -> dict:
    if isinstance(data, dict) and "random" in data:
        result = dayconv.day_battery(int(data["random"]))
        witnesses = [dict(w, check=k) for k, ws in result.items() for w in ws]
        return report("check dayconv", witnesses, checks=sorted(result))
    M = serialize.monoidal_from_json(_require(data, "category", "dayconv input"))
    ctx = dayconv.DayContext(M)
    names = [k for k in ("F", "G", "H") if k in data]
    if len(names) < 2:
        raise InvalidInput("dayconv input: give presheaves 'F' and 'G' (and optionally 'H')")
    P = {k: serialize.setfunctor_from_json(data[k], ctx.Cop) for k in names}
    witnesses = []
    for k, X in P.items():
        witnesses += [dict(w, presheaf=k) for w in X.validate()]
    if witnesses:
        return report("check dayconv", witnesses)
    F, G = P["F"], P["G"]
    checks = {
        "left unit": dayconv.left_unitor(ctx, G)[1],
        "right unit": dayconv.right_unitor(ctx, F)[1],
        "coend oracle": dayconv.compare_with_oracle(ctx, dayconv.day_convolve(ctx, F, G)),
    }
    if "H" in P:
        checks["associativity"] = dayconv.associator_check(ctx, F, G, P["H"])[1]
    yoneda = []
    for a in ctx.C.objects:
        for b in ctx.C.objects:
            yoneda += [dict(w, objects=[a, b]) for w in dayconv.yoneda_comparison(ctx, a, b)[1]]
    checks["monoidal Yoneda"] = yoneda
    conv = dayconv.day_convolve(ctx, F, G).presheaf
    sizes = [[serialize._plain(c), conv.size(c)] for c in ctx.C.objects]
    witnesses = [dict(w, check=k) for k, ws in checks.items() for w in ws]
    return report("check dayconv", witnesses, convolution_sizes=sizes, checks=sorted(checks))


def _check_fibration(data, args) -> dict:
    if isinstance(data, dict) and "standard" in data:
        name = str(data["standard"])
        N = int(data.get("N", args.bound if args.bound is not None else 3))
        _, p = build_standard(name, N)
        if p is None:
            raise InvalidInput(f"standard category {name!r} has no projection to pointed finite sets")
    else:
        E = serialize.fincat_from_json(_require(data, "source", "fibration input"))
        B = serialize.fincat_from_json(_require(data, "target", "fibration input"))
        p = serialize.functor_from_json(_require(data, "functor", "fibration input"), E, B)
        bad = p.validate()
        if bad:
            raise InvalidInput(f"fibration input: functor is not a functor ({bad[0]})")
    result = check_grothendieck_fibration(p)
    return report("check fibration", result.witnesses(), checked=result.checked)


def _check_cartesian(data, args) -> dict:
    M = serialize.monoidal_from_json(data)
    pairs = _require(data, "diagonals", "cartesian input")
    diagonals = {serialize._key(a): serialize._key(d) for a, d in pairs}
    result = check_cartesian_criterion(M, diagonals)
    return report("check cartesian", result["witnesses"], product_checked=result["product_checked"])


CHECKS = {
    "segal": _check_segal,
    "operad": _check_operad,
    "bimodule": _check_bimodule,
    "dayconv": _check_dayconv,
    "fibration": _check_fibration,
    "cartesian": _check_cartesian,
}


def cmd_check(args) -> dict:
    return CHECKS[args.kind](load_json(args.input), args)


# ---------------------------------------------------------------- betti

def cmd_betti(args) -> dict:
    data = load_json(args.input)
    budget = args.budget
    if isinstance(data, dict) and "square_completion" in data:
        inst = completion.SquareInstance.from_json(data["square_completion"])
        summary = completion.completion_betti(inst, args.d, budget)
        source = {"square_completion": inst.to_json()}
    elif isinstance(data, dict) and "standard" in data:
        C, _ = build_standard(str(data["standard"]), int(data.get("N", 2)))
        summary = nerve.nerve_betti(C, args.d, budget)
        source = {"standard": data["standard"], "N": int(data.get("N", 2))}
    else:
        summary = nerve.nerve_betti(serialize.fincat_from_json(data), args.d, budget)
        source = {"category": True}
    witnesses = []
    if args.expect_contractible:
        want = (1,) + (0,) * args.d
        if tuple(summary.betti) != want:
            witnesses.append({"expected": list(want), "betti": list(summary.betti)})
    return report("betti", witnesses, **summary.to_json(), simplices=list(summary.simplices), source=source)


# ---------------------------------------------------------------- suite

def cmd_suite(args) -> dict:
    def progress(result):
        mark = "PASS" if result.passed else "FAIL"
        print(f"{mark} {result.name} ({result.seconds:.2f} s)", file=sys.stderr)

    results = acceptance.run_suite(args.profile, args.only, progress)
    witnesses = [{"criterion": r.name, "first": r.witnesses[0]} for r in results if not r.passed]
    return report(f"suite {args.profile}", witnesses, criteria=[r.to_json() for r in results])


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finoperad", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json-out", metavar="PATH", help="also write the report to PATH")
        return p

    p = common(sub.add_parser("factor", help="inert-active factorization of a pointed map"))
    p.add_argument("input", help='pointed map JSON, e.g. {"m":3,"n":2,"values":[2,0,2]}')
    p.set_defaults(func=cmd_factor)

    p = common(sub.add_parser("check", help="run one structural check"))
    p.add_argument("kind", choices=CHECK_KINDS)
    p.add_argument("input", help="JSON text, a JSON file, or - for standard input")
    p.add_argument("--bound", type=int)
    p.add_argument("--truncation", type=int)
    p.set_defaults(func=cmd_check)

    p = common(sub.add_parser("betti", help="Betti numbers of a nerve"))
    p.add_argument("input", help='category JSON, {"square_completion": {...}} or {"standard": name, "N": n}')
    p.add_argument("-d", type=int, default=2, help="top dimension (default 2)")
    p.add_argument("--budget", type=int, help=f"simplex budget (default $FINOPERAD_BUDGET or {nerve.DEFAULT_BUDGET})")
    p.add_argument("--expect-contractible", action="store_true")
    p.set_defaults(func=cmd_betti)

    p = common(sub.add_parser("suite", help="the acceptance battery"))
    p.add_argument("profile", choices=acceptance.PROFILES, nargs="?", default="quick")
    p.add_argument("--only", nargs="+", choices=[k for k, _ in acceptance.CRITERIA])
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        out = args.func(args)
        code = EXIT_PASS if out["status"] == "pass" else EXIT_FAIL
    except (UsageError, InvalidInput, IncompleteData, BudgetExceeded, CheckFailed, FinOperadError) as exc:
        kind = "budget" if isinstance(exc, BudgetExceeded) else "input"
        out = {"command": args.command, "status": "error", "error": f"{kind}: {exc}", "witnesses": []}
        if isinstance(exc, CheckFailed):
            out["witnesses"] = exc.witnesses
        code = EXIT_ERROR
    text = dumps(out)
    print(text)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(f"elapsed_ms: {1000 * (time.perf_counter() - start):.0f}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
