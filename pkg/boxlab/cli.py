"""Command line interface.

Every subcommand prints (or writes to --output) a report
{"boxlab_version", "versions", "config", "payload", "payload_sha256",
"timing"}. Exit codes: 0 success, 1 invalid input, 2 budget exceeded or
no convergence, 3 verification failure.
"""
import argparse
import hashlib
import logging
import sys
from timeit import default_timer as timer
from typing import List, Optional

from boxlab import __version__
from boxlab.boxspace import parse_schedule, verify_filtration
from boxlab.cayley import CayleyGraph, all_pairs_diameter, compute_metrics, distance_spectrum
from boxlab.coarse_invariants import load_sequence, ratio_bounded_matching
from boxlab.common.boxlab_dataclasses import (
    FAMILIES,
    GroupSpec,
    RunConfig,
    default_max_vertices,
)
from boxlab.common.exceptions import BoxlabError, InvalidInputError, VerificationFailure
from boxlab.common.logging_config import setup_logging
from boxlab.controllers import BoxSpaceController
from boxlab.subgroup_counting import (
    census_to_rows,
    census_z2d4_closedform,
    census_z2d4_extensions,
    census_z2d4_oracle,
    census_z_cross_z2,
    compare_censuses,
    growth_inequality_check,
    sigma_census,
    sqrt_bound_failures,
)
from boxlab.subgroup_counting.fullbox import fullbox_cycle_retraction
from boxlab.utils import canonical_json, make_report, parse_rational, rows_to_csv_text
from boxlab.verification import verify_all
from boxlab.wreath_isometry import LampBijection, all_identity_fixing_bijections, verify_isomorphism

logger = logging.getLogger(__name__)

GLOBAL_OPTIONS = (
    "debug",
    "logfile",
    "no_color",
    "format",
    "output",
    "max_vertices",
    "max_subset_order",
    "tolerance",
    "handler",
    "subcommand",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInputError(message)


def spec_from_args(args) -> GroupSpec:
    """Builds the GroupSpec named by --family and its parameters"""

    def need(name):
        value = getattr(args, name)
        if value is None:
            raise InvalidInputError(f"--family {args.family} needs --{name}")
        return value

    family = args.family
    if family == "cyclic" or family.startswith("wreath-"):
        return GroupSpec(family, (need("n"),))
    if family in ("sol", "heisenberg"):
        return GroupSpec(family, (need("modulus"),))
    if family == "sl":
        return GroupSpec.sl(need("m"), need("modulus"))
    if family == "lamplighter":
        return GroupSpec.lamplighter(need("k"))
    if family == "zxz2":
        eps = args.eps or "0"
        return GroupSpec.zxz2(need("n"), None if eps == "full" else int(eps))
    raise InvalidInputError(f"Unknown family {family!r}")


def cmd_quotient(args, config: RunConfig):
    spec = spec_from_args(args)
    start = timer()
    graph = CayleyGraph.build(spec, max_size=config.max_vertices)
    elapsed = timer() - start
    digest = hashlib.sha256()
    for u, v, g in graph.edge_list():
        digest.update(f"{u} {v} {g}\n".encode())
    if config.output_path:
        graph.write_edge_list(config.output_path)
        graph.write_json_envelope(config.output_path + ".json")
    payload = {
        "spec": spec.to_json(),
        "order": graph.order,
        "degree": graph.degree,
        "generators": [list(s) for s in graph.gens],
        "edge_list_sha256": digest.hexdigest(),
        "edge_list": config.output_path,
    }
    return payload, {"build": elapsed}, None


def cmd_metrics(args, config: RunConfig):
    spec = spec_from_args(args)
    start = timer()
    graph = CayleyGraph.build(spec, max_size=config.max_vertices)
    metrics = compute_metrics(
        graph,
        max_subset_order=config.max_subset_order,
        tol=config.tolerance,
        spectral=not args.no_spectral,
    )
    payload = {
        "spec": spec.to_json(),
        "metrics": metrics.to_json(),
        "distance_spectrum": distance_spectrum(graph),
    }
    if args.check:
        check = all_pairs_diameter(graph)
        payload["all_pairs_diameter"] = check
        if check != metrics.diameter:
            raise VerificationFailure(
                f"BFS diameter {metrics.diameter} differs from all pairs diameter {check}"
            )
    return payload, {"total": timer() - start}, None


def _controller(args, config: RunConfig, alpha, K, spectral: bool) -> BoxSpaceController:
    return BoxSpaceController(
        filtration=parse_schedule(args.schedule),
        count=args.kmax,
        alpha=alpha,
        K=K,
        executor_type=args.executor,
        max_vertices=config.max_vertices,
        max_subset_order=config.max_subset_order,
        tolerance=config.tolerance,
        spectral=spectral,
    )


def cmd_boxspace(args, config: RunConfig):
    alpha = parse_rational(args.alpha) if args.alpha else None
    K = parse_rational(args.K) if args.K else None
    controller = _controller(args, config, alpha, K, spectral=not args.no_spectral)
    result = controller.run()
    timing = result.pop("timing")
    if args.verify_filtration:
        result["filtration_check"] = verify_filtration(
            controller.filtration, args.kmax, args.radius, config.max_vertices
        )
    csv_text = rows_to_csv_text(BoxSpaceController.CSV_HEADER, result["components"])
    dalpha = result["evaluation"]["dalpha"]
    if dalpha is not None and not dalpha["verdict"]:
        return result, timing, csv_text, "D_alpha check failed"
    return result, timing, csv_text


def cmd_dalpha(args, config: RunConfig):
    controller = _controller(args, config, None, None, spectral=False)
    result = controller.run()
    payload = {
        "filtration": result["filtration"],
        "orders": [row["order"] for row in result["components"]],
        "diameters": [row["diameter"] for row in result["components"]],
        "estimate": result["evaluation"]["estimate"],
    }
    return payload, result["timing"], None


def cmd_distinguish(args, config: RunConfig):
    selectors = [f"nks:{s}" for s in args.nks or []]
    selectors += [f"sl:{s}" for s in args.sl or []]
    selectors += list(args.seq or [])
    if len(selectors) != 2:
        raise InvalidInputError(f"exactly two sequences are needed, got {len(selectors)}")
    R = parse_rational(args.ratio)
    (label_a, seq_a), (label_b, seq_b) = (load_sequence(s, args.horizon) for s in selectors)
    start = timer()
    verdict = ratio_bounded_matching(seq_a, seq_b, args.disp, R, args.horizon)
    payload = {"sequences": [label_a, label_b], "verdict": verdict.to_json()}
    return payload, {"matching": timer() - start}, None


def cmd_count(args, config: RunConfig):
    group, maxN = args.group, args.max
    payload = {"group": group, "max": maxN}
    failure = None
    if group == "z2d4":
        census = census_z2d4_closedform(maxN)
        payload["sqrt_bound_failures"] = sqrt_bound_failures(census)
        if args.oracle:
            oracle = census_z2d4_oracle(maxN)
            extensions = census_z2d4_extensions(maxN)
            payload["oracle"] = census_to_rows(oracle)
            payload["oracle_vs_extensions"] = compare_censuses(oracle, extensions)
            payload["closed_form_vs_oracle"] = compare_censuses(census, oracle)
            if payload["oracle_vs_extensions"]:
                raise VerificationFailure("the two independent oracles disagree")
            if payload["closed_form_vs_oracle"]:
                failure = f"closed form differs from the oracle at {payload['closed_form_vs_oracle']}"
        if payload["sqrt_bound_failures"]:
            failure = f"sqrt(n) <= s_n <= 10 sqrt(n) fails at {payload['sqrt_bound_failures'][:10]}"
    elif group == "z2":
        census = sigma_census(maxN)
    else:
        census, K = census_z_cross_z2(maxN)
        payload["K"] = K
    payload["census"] = census_to_rows(census)
    if args.growth:
        A, B = (parse_rational(x) for x in args.growth.split(","))
        horizon = args.horizon or int(maxN / B)
        payload["growth"] = growth_inequality_check(
            sigma_census(horizon), census, A, B, horizon, find_violation=True
        )
    csv_text = rows_to_csv_text(["n", "a_n", "s_n", "provenance"], payload["census"])
    if failure:
        return payload, {}, csv_text, failure
    return payload, {}, csv_text


def cmd_isometry(args, config: RunConfig):
    if args.bijection:
        b = LampBijection(tuple(int(v) for v in args.bijection.split(",")))
    else:
        b = all_identity_fixing_bijections()[0]
    start = timer()
    verdict = verify_isomorphism(b, args.n)
    payload = {"bijection": list(b.table), **verdict}
    timing = {"elapsed": timer() - start}
    if not verdict["isomorphic"]:
        return payload, timing, None, f"the induced map is not an isomorphism for n = {args.n}"
    return payload, timing, None


def cmd_fullbox(args, config: RunConfig):
    start = timer()
    report = fullbox_cycle_retraction(args.max)
    csv_text = rows_to_csv_text(["n", "eps", "order", "A", "additive_gap"], report["quotients"])
    return report, {"total": timer() - start}, csv_text


def cmd_verify_all(args, config: RunConfig):
    outcome = verify_all(quick=args.quick)
    payload = outcome["payload"]
    if not payload["passed"]:
        failed = [s["name"] for s in payload["suites"] if not s["passed"]]
        return payload, outcome["timing"], None, f"suites failed: {', '.join(failed)}"
    return payload, outcome["timing"], None


def _add_family_options(parser):
    parser.add_argument("--family", required=True, choices=FAMILIES)
    parser.add_argument("--n", type=int, help="cycle length for cyclic, wreath and zxz2")
    parser.add_argument("--modulus", type=int, help="N for sol, sl and heisenberg")
    parser.add_argument("--m", type=int, help="matrix size for sl")
    parser.add_argument("--k", type=int, help="level for lamplighter")
    parser.add_argument("--eps", choices=("0", "1", "full"), help="zxz2 subgroup")


def _add_schedule_options(parser):
    parser.add_argument("--schedule", required=True, help="e.g. sol:5^k, lamplighter, z:3/2, sl:2,2^k")
    parser.add_argument("--kmax", type=int, required=True)
    parser.add_argument("--executor", choices=("local", "serial"), default="serial")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="boxlab", description="Box spaces of residually finite groups")
    parser.add_argument("--version", action="version", version=f"boxlab {__version__}")
    parser.add_argument("--debug", action="store_true")
    parser.add_argument("--logfile")
    parser.add_argument("--no-color", action="store_true")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--output", help="report path, stdout when omitted")
    parser.add_argument("--max-vertices", type=int, default=None)
    parser.add_argument("--max-subset-order", type=int, default=22)
    parser.add_argument("--tolerance", type=float, default=1e-9)
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("quotient", help="build a Cayley graph and write its edge list")
    _add_family_options(p)
    p.set_defaults(handler=cmd_quotient)

    p = sub.add_parser("metrics", help="coarse invariants of one quotient")
    _add_family_options(p)
    p.add_argument("--check", action="store_true", help="compare with all pairs BFS")
    p.add_argument("--no-spectral", action="store_true")
    p.set_defaults(handler=cmd_metrics)

    p = sub.add_parser("boxspace", help="build a box space and check D_alpha")
    _add_schedule_options(p)
    p.add_argument("--alpha")
    p.add_argument("--K")
    p.add_argument("--no-spectral", action="store_true")
    p.add_argument("--verify-filtration", action="store_true")
    p.add_argument("--radius", type=int, default=6)
    p.set_defaults(handler=cmd_boxspace)

    p = sub.add_parser("dalpha", help="estimate alpha for a schedule")
    _add_schedule_options(p)
    p.set_defaults(handler=cmd_dalpha)

    p = sub.add_parser("distinguish", help="ratio bounded matching of two volume sequences")
    p.add_argument("--nks", action="append", help="rational s of N_k(s) = 2^floor(ks)")
    p.add_argument("--sl", action="append", help="m,p for |SL_m(Z/p^k)|")
    p.add_argument("--seq", action="append", help="built-in selector or file of integers")
    p.add_argument("--disp", type=int, required=True)
    p.add_argument("--ratio", required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.set_defaults(handler=cmd_distinguish)

    p = sub.add_parser("count", help="normal subgroup census")
    p.add_argument("--group", choices=("z2d4", "z2", "zxz2"), required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--growth", help="A,B for the growth inequality against Z^2")
    p.add_argument("--horizon", type=int)
    p.set_defaults(handler=cmd_count)

    p = sub.add_parser("isometry", help="wreath product Cayley graph isomorphism")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bijection", help="images of 0,1,2,3 in Z/2 x Z/2 as masks")
    p.set_defaults(handler=cmd_isometry)

    p = sub.add_parser("fullbox", help="cycle retraction of the quotients of Z x Z/2")
    p.add_argument("--group", choices=("zxz2",), default="zxz2")
    p.add_argument("--max", type=int, default=200)
    p.set_defaults(handler=cmd_fullbox)

    p = sub.add_parser("verify-all", help="run every verification suite")
    p.add_argument("--quick", action="store_true")
    p.set_defaults(handler=cmd_verify_all)
    return parser


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="UTF8", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        setup_logging(logfile=args.logfile, debug=args.debug, no_color=args.no_color)
        config = RunConfig(
            subcommand=args.subcommand,
            options={k: v for k, v in vars(args).items() if k not in GLOBAL_OPTIONS},
            max_vertices=args.max_vertices or default_max_vertices(),
            max_subset_order=args.max_subset_order,
            tolerance=args.tolerance,
            output_format=args.format,
            output_path=args.output,
        )
        outcome = args.handler(args, config)
        payload, timing, csv_text = outcome[:3]
        failure = outcome[3] if len(outcome) > 3 else None
        if config.output_format == "csv":
            if csv_text is None:
                raise InvalidInputError(
                    f"csv output is available for boxspace, count and fullbox, not {args.subcommand}"
                )
            text = csv_text
        else:
            text = canonical_json(make_report(config.to_json(), payload, timing)) + "\n"
        # the edge list itself goes to --output for quotient
        _emit(text, None if args.subcommand == "quotient" else config.output_path)
        if failure:
            raise VerificationFailure(failure)
    except BoxlabError as exp:
        print(f"boxlab: error: {exp}", file=sys.stderr)
        logger.debug("command failed", exc_info=True)
        return exp.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
