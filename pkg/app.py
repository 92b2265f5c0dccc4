"""
grograde command-line interface.

    python app.py lpa report data/example_graph.json -p 2
    python app.py coh compute data/module_z2_trivial_z3.json -n 2 --backend snf --json

Exit status: 0 when every verdict holds, 1 when a mathematical check is
falsified, 2 on input errors.
"""
import argparse
import json
import logging
import os
import sys
from typing import Any, Callable, Dict, List, Tuple

# Add the root directory to Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import numpy as np
from pydantic import ValidationError
from rich.console import Console

from config import config
from src.algebra import (
    GradedAlgebra,
    check_center_identity,
    check_epsilon_definition,
    check_epsilon_properties,
    epsilon_report,
    is_strongly_graded,
    m_iso_sweep,
    strong_by_identity,
    support,
)
from src.cohomology import CochainGroup, check_delta_squared, check_h0_condition, cohomology
from src.crossed import classify
from src.errors import GrogradeError, InvalidParams
from src.finalg import (
    FiniteCommRing,
    check_idem_ideal_bijection,
    ideal_of,
    idempotents,
    multiplicative_monoid,
    units,
)
from src.formats import load_action, load_algebra, load_graph, load_groupoid, load_module, load_ring, write_json
from src.groupoid import composable_tuples
from src.leavitt import check_relations, export_algebra, lpa_build, lpa_report
from src.report import CheckResult, Report, digest_files, render
from src.skew import build_skew_ring, check_partial_functor, is_global
from utils.async_helper import timed
from utils.logger_setup import initialize_logging

logger = logging.getLogger('grograde.app')

# (inputs, verdicts, results, witnesses)
Outcome = Tuple[List[str], Dict[str, bool], Dict[str, Any], Dict[str, Any]]


def _plain(value: Any) -> Any:
    """Turn numpy scalars/arrays and tuple keys into JSON-ready values."""
    if isinstance(value, CheckResult):
        return _plain(value.model_dump())
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, dict):
        return {("|".join(map(str, k)) if isinstance(k, tuple) else str(k)): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _record(check: CheckResult, verdicts: Dict[str, bool], witnesses: Dict[str, Any]) -> None:
    verdicts[check.name] = check.passed
    if not check.passed:
        witnesses[check.name] = _plain(check.witness)


def _threads(args) -> int:
    return max(1, args.threads) if args.threads else config.THREADS


def _graded(path: str, groupoid: str = None) -> GradedAlgebra:
    S = load_algebra(path, groupoid)
    if not isinstance(S, GradedAlgebra):
        raise InvalidParams("a grading is needed: pass --groupoid or add `groupoid` and `deg` to the file")
    return S


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_groupoid_validate(args) -> Outcome:
    G = load_groupoid(args.file)
    results = {
        "objects": list(G.objects),
        "morphisms": len(G),
        "composable_pairs": len(composable_tuples(G, 2)),
    }
    return [args.file], {"groupoid": True}, results, {}


def cmd_ring_validate(args) -> Outcome:
    A = load_ring(args.file)
    results: Dict[str, Any] = {"size": A.size, "kind": "ring" if isinstance(A, FiniteCommRing) else "monoid"}
    M = multiplicative_monoid(A) if isinstance(A, FiniteCommRing) else A
    U = units(M)
    results["units"] = {"order": U.order, "invariant_factors": U.invariant_factors()}
    if isinstance(A, FiniteCommRing):
        results["characteristic_prime"] = A.characteristic_prime()
    return [args.file], {"table": True}, results, {}


def cmd_ring_idempotents(args) -> Outcome:
    A = load_ring(args.file)
    results: Dict[str, Any] = {
        "idempotents": idempotents(A),
        "ideals": {x: list(ideal_of(A, x).elems) for x in idempotents(A)},
    }
    verdicts, witnesses = {}, {}
    if isinstance(A, FiniteCommRing):
        check = check_idem_ideal_bijection(A, args.cap)
        _record(check, verdicts, witnesses)
        results["unital_ideals"] = check.details["ideals"]
        results["subset_search"] = check.details["subset_search"]
    return [args.file], verdicts, results, witnesses


def cmd_alg_check_grading(args) -> Outcome:
    S = _graded(args.file, args.groupoid)
    live, G_live = support(S)
    results = {
        "dimension": S.dim,
        "components": {g: len(S.component(g)) for g in S.G.ids},
        "support_objects": live,
        "support_morphisms": len(G_live),
    }
    return _inputs(args), {"grading": True, "identity_in_base": True}, results, {}


def cmd_alg_epsilons(args) -> Outcome:
    S = _graded(args.file, args.groupoid)
    verdicts, witnesses, results = {}, {}, {}
    eps_check, eps = epsilon_report(S)
    _record(eps_check, verdicts, witnesses)
    if eps is None:
        results["epsilon_failure"] = eps_check.details.get("message")
        return _inputs(args), verdicts, results, witnesses
    results["epsilons"] = eps_check.details["epsilons"]
    for check in (check_epsilon_properties(S, eps), check_epsilon_definition(S, eps),
                  check_center_identity(S, eps)):
        _record(check, verdicts, witnesses)
    sweep = m_iso_sweep(S, eps, _threads(args))
    failed = [pair for pair, check in sweep.items() if not check.passed]
    verdicts["m_iso"] = not failed
    if failed:
        witnesses["m_iso"] = {"pair": list(failed[0]), "details": _plain(sweep[failed[0]].details)}
    results["m_iso_pairs"] = len(sweep)
    return _inputs(args), verdicts, results, witnesses


def cmd_alg_strong(args) -> Outcome:
    S = _graded(args.file, args.groupoid)
    strong = is_strongly_graded(S)
    by_identity = strong_by_identity(S)
    results = {"strong": strong.passed, "checked_pairs": strong.checked}
    witnesses = {}
    if not strong.passed:
        witnesses["strong"] = {"pair": strong.witness, **strong.details}
    verdicts = {"strong_criteria_agree": strong.passed == by_identity.passed}
    return _inputs(args), verdicts, results, witnesses


def _skew_summary(act, ring) -> Tuple[Dict[str, bool], Dict[str, Any], Dict[str, Any]]:
    S = ring.graded
    strong = is_strongly_graded(S)
    global_action = is_global(act)
    verdicts = {"epsilon_strong": True, "strong_iff_global": strong.passed == global_action}
    results = {
        "dimension": S.dim,
        "global": global_action,
        "strong": strong.passed,
        "epsilons": {g: S.alg.format(ring.eps[g]) for g in S.G.ids},
    }
    witnesses = {} if strong.passed else {"strong": strong.witness}
    return verdicts, results, witnesses


def cmd_skew_build(args) -> Outcome:
    act = load_action(args.file)
    ring = build_skew_ring(act)
    verdicts, results, witnesses = _skew_summary(act, ring)
    if args.out:
        raw = ring.graded.alg.to_raw()
        raw["deg"] = {str(i): g for i, g in enumerate(ring.graded.deg)}
        raw["groupoid"] = act.G.to_raw()
        write_json(args.out, raw)
        results["out"] = args.out
    return [args.file], verdicts, results, witnesses


def cmd_skew_check(args) -> Outcome:
    act = load_action(args.file)
    verdicts, witnesses = {"action": True}, {}
    _record(check_partial_functor(act), verdicts, witnesses)
    ring = build_skew_ring(act)
    more_verdicts, results, more_witnesses = _skew_summary(act, ring)
    verdicts.update(more_verdicts)
    witnesses.update(more_witnesses)
    return [args.file], verdicts, results, witnesses


def cmd_lpa_report(args) -> Outcome:
    E = load_graph(args.file)
    report = lpa_report(E, args.p, _threads(args))
    L = report.pop("algebra")
    verdicts, witnesses = {}, {}
    _record(check_relations(L), verdicts, witnesses)
    _record(report.pop("epsilon_strong"), verdicts, witnesses)
    verdicts["epsilons_agree"] = report.pop("epsilons_agree")
    verdicts["epsilons_self_adjoint"] = report.pop("epsilons_self_adjoint")
    strong = report.pop("strong")
    report["strong"] = strong.passed
    if not strong.passed:
        witnesses["strong"] = _plain(strong.witness)
    return [args.file], verdicts, _plain(report), witnesses


def cmd_lpa_export(args) -> Outcome:
    E = load_graph(args.file)
    L = lpa_build(E, args.p)
    write_json(args.out, export_algebra(L))
    return [args.file], {}, {"dimension": L.graded.dim, "out": args.out}, {}


def cmd_coh_compute(args) -> Outcome:
    M = load_module(args.file)
    H = cohomology(M, args.n, backend=args.backend, cap=args.cap, progress=args.progress)
    Cn = CochainGroup(M, args.n)
    results = H.summary()
    results["representatives"] = [Cn.format(f) for f in H.representatives]

    verdicts = {}
    rng = np.random.default_rng(config.RANDOM_SEED)
    samples = [Cn.random(rng) for _ in range(min(20, Cn.order))]
    verdicts["delta_squared"] = all(check_delta_squared(M, f) for f in samples)
    if args.n == 0:
        verdicts["h0_condition"] = all(check_h0_condition(M, b) for b in H.representatives)
    return [args.file], verdicts, results, {}


def cmd_classify(args) -> Outcome:
    S = _graded(args.file, args.groupoid)
    eps_check, eps = epsilon_report(S)
    if eps is None:
        return _inputs(args), {"epsilon_strong": False}, {}, {"epsilon_strong": _plain(eps_check.witness)}

    def progress(done, total, step):
        logger.info(f"classify: {step} ({done}/{total})")

    result = classify(S, eps, sample=args.sample, cap=args.cap, backend=args.backend,
                      threads=_threads(args), progress_callback=progress if args.progress else None)
    verdicts = {"epsilon_strong": True, "bijective": bool(result.pop("bijective"))}
    results = _plain(result)
    results["h2_order"] = result["h2"]["order"]
    return _inputs(args), verdicts, results, {}


def _inputs(args) -> List[str]:
    return [args.file] + ([args.groupoid] if getattr(args, "groupoid", None) else [])


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads for independent checks (env GROGRADE_THREADS)")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")
    common.add_argument("--progress", action="store_true", help="show progress for long runs")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")

    parser = argparse.ArgumentParser(prog="grograde", description=__doc__.splitlines()[1])
    sub = parser.add_subparsers(dest="group", required=True)

    def leaf(subparsers, name, handler: Callable, help_text: str):
        p = subparsers.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file")
        p.set_defaults(handler=handler)
        return p

    groupoid = sub.add_parser("groupoid", help="finite groupoids").add_subparsers(dest="action", required=True)
    leaf(groupoid, "validate", cmd_groupoid_validate, "validate a groupoid file")

    ring = sub.add_parser("ring", help="finite commutative rings and monoids").add_subparsers(dest="action",
                                                                                            required=True)
    leaf(ring, "validate", cmd_ring_validate, "validate a ring or monoid file")
    p = leaf(ring, "idempotents", cmd_ring_idempotents, "idempotents and unital ideals")
    p.add_argument("--cap", type=int, default=None, help="largest ring for subset search of ideals")

    alg = sub.add_parser("alg", help="graded algebras").add_subparsers(dest="action", required=True)
    for name, handler, text in (("check-grading", cmd_alg_check_grading, "verify a grading"),
                                ("epsilons", cmd_alg_epsilons, "epsilon-strong grading checks"),
                                ("strong", cmd_alg_strong, "strong grading check")):
        p = leaf(alg, name, handler, text)
        p.add_argument("--groupoid", default=None)

    skew = sub.add_parser("skew", help="partial skew groupoid rings").add_subparsers(dest="action", required=True)
    p = leaf(skew, "build", cmd_skew_build, "build the skew ring of an action")
    p.add_argument("--out", default=None, help="write the skew ring as an algebra file")
    leaf(skew, "check", cmd_skew_check, "check an action and its skew ring")

    lpa = sub.add_parser("lpa", help="Leavitt path algebras of acyclic graphs").add_subparsers(dest="action",
                                                                                              required=True)
    p = leaf(lpa, "report", cmd_lpa_report, "grading report for L(E)")
    p.add_argument("-p", type=int, default=2, help="prime field")
    p = leaf(lpa, "export", cmd_lpa_export, "write L(E) as a graded algebra file")
    p.add_argument("-p", type=int, default=2, help="prime field")
    p.add_argument("--out", required=True)

    coh = sub.add_parser("coh", help="partial groupoid cohomology").add_subparsers(dest="action", required=True)
    p = leaf(coh, "compute", cmd_coh_compute, "compute H^n of a module")
    p.add_argument("-n", type=int, required=True, help="degree")
    p.add_argument("--backend", choices=["enumerate", "snf"], default=None)
    p.add_argument("--cap", type=int, default=None, help="bound on |C^n| for enumeration")

    p = sub.add_parser("classify", parents=[common], help="H^2 against twisted crossed products")
    p.add_argument("file")
    p.add_argument("--groupoid", default=None)
    p.add_argument("--sample", type=int, default=None)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--backend", choices=["enumerate", "snf"], default=None)
    p.set_defaults(handler=cmd_classify)
    return parser


def _command_echo(args) -> List[str]:
    return [x for x in (args.group, getattr(args, "action", None)) if x]


def main(argv=None, console: Console = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    initialize_logging(args.verbose)
    console = console or Console()

    try:
        (inputs, verdicts, results, witnesses), seconds = timed(args.handler)(args)
        report = Report(
            command=_command_echo(args),
            inputs_digest=digest_files(inputs),
            verdicts=verdicts,
            results=_plain(results),
            witnesses=_plain(witnesses),
            timing={"total": seconds} if args.timing else None,
        )
    except GrogradeError as e:
        logger.debug(f"{type(e).__name__}: {e.message}")
        _emit_error(args, console, e.to_dict())
        return e.exit_code
    except ValidationError as e:
        _emit_error(args, console, {"error": "ValidationError", "message": str(e).splitlines()[0],
                                    "witness": _plain([err["loc"] for err in e.errors()])})
        return 2
    except (OSError, ValueError) as e:
        _emit_error(args, console, {"error": type(e).__name__, "message": str(e), "witness": None})
        return 2

    if args.json:
        console.file.write(report.to_json() + "\n")
    else:
        render(report, console)
    return 0 if report.ok else 1


def _emit_error(args, console: Console, payload: Dict[str, Any]) -> None:
    if args.json:
        console.file.write(json.dumps(_plain(payload), sort_keys=True, ensure_ascii=False) + "\n")
    else:
        console.print(f"[red]{payload['error']}[/red]: {payload['message']}")
        if payload.get("witness") is not None:
            console.print(f"witness: {json.dumps(_plain(payload['witness']), ensure_ascii=False)}")


if __name__ == "__main__":
    sys.exit(main())
