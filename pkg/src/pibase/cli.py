# encoding: utf-8

"""The ``pibase`` command line.

Every subcommand prints its result on stdout, as text or (``--format json``) as
a JSON object with a versioned ``schema`` and the resolved ``config``. Domain
errors exit with 1 and a one-line diagnostic, usage errors with 2.
"""

import argparse
import json
import logging
import os
import sys
from typing import Callable, Dict, List, Sequence, Tuple

from . import __version__, ordinal, settings
from .canonical_phi import phi_check_condition2, phi_eval, phi_witness
from .exceptions import ConfigurationError, NotATopologyError, PibaseError
from .finite_space import FiniteSpace, enumerate_topologies, kuratowski_violations
from .invariants import (
    invariants,
    is_free_sequence,
    max_free_sequence,
    min_order_table,
    min_pibase_order,
    star_report,
)
from .lemma24 import hull_family, lemma24_bruteforce, lemma24_extract
from .ordinal import CardinalLevel
from .pairing import f_delta, f_delta_witness, pair, parse_pattern, unpair
from .shapirovskii import DEFAULT_MAX_STEPS, def21_check, shapirovskii_build
from .sigma_forms import (
    delta_prime,
    gamma,
    gamma_successor,
    has_successor_cofinality,
    sigma_eval,
    sigma_nf,
)
from .space_oracles import finite_space_from_selector, oracle_from_selector

logger = logging.getLogger(__name__)

# A handler returns the JSON payload and its text rendering
Outcome = Tuple[dict, str]
Handler = Callable[[argparse.Namespace], Outcome]

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural number, found {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, found {value}")
    return value


def _kappa(args: argparse.Namespace) -> CardinalLevel:
    return CardinalLevel.aleph(args.kappa)


def _ord(text: str) -> ordinal.OrdinalTerm:
    return ordinal.parse(text)


# =====================
# =  ORDINALS         =
# =====================


def _ord_command(args: argparse.Namespace) -> Outcome:
    a = _ord(args.a)
    if args.op == "normalize":
        result = {"value": str(a)}
    elif args.op in ("add", "mul"):
        operation = ordinal.add if args.op == "add" else ordinal.mul
        result = {"value": str(operation(a, _ord(args.b)))}
    elif args.op == "cmp":
        comparison = ordinal.compare(a, _ord(args.b))
        result = {"value": {-1: "<", 0: "=", 1: ">"}[comparison.value]}
    elif args.op == "card":
        result = {"value": str(ordinal.cardinality(a))}
    elif args.op == "cf":
        result = {"value": str(ordinal.cofinality(a))}
    else:
        quotient, remainder = ordinal.div_by_cardinal(a, _kappa(args))
        result = {"quotient": str(quotient), "remainder": str(remainder)}
    if "value" in result:
        return result, result["value"]
    return result, f"{result['quotient']} remainder {result['remainder']}"


# =====================
# =  SIGMA FORMS      =
# =====================


def _sigma_command(args: argparse.Namespace) -> Outcome:
    k = _kappa(args)
    d = _ord(args.d)
    if args.op == "eval":
        value = str(sigma_eval(k, d))
        return {"value": value}, value
    if args.op == "nf":
        form = sigma_nf(k, d)
        result = {
            "form": str(form),
            "alphas": [str(alpha) for alpha in form.alphas],
            "delta": str(form.delta),
        }
        return result, str(form)
    if args.op == "gamma":
        value = str(gamma(k, d))
        return {"value": value}, value
    if args.op == "dprime":
        value = str(delta_prime(k, d))
        return {"value": value}, value
    strong = has_successor_cofinality(k, d)
    result = {"successor_cofinality": strong, "gamma_successor": str(gamma_successor(k, d))}
    text = (
        f"cf({d}) = {k.successor()}: {'yes' if strong else 'no'}\n"
        f"gamma_successor = {result['gamma_successor']}"
    )
    return result, text


# =====================
# =  PAIRING          =
# =====================


def _pair_command(args: argparse.Namespace) -> Outcome:
    value = str(pair(_ord(args.a), _ord(args.b)))
    return {"value": value}, value


def _unpair_command(args: argparse.Namespace) -> Outcome:
    first, second = unpair(_ord(args.c))
    return {"first": str(first), "second": str(second)}, f"({first}, {second})"


def _pattern_result(pattern) -> Outcome:
    return {"pattern": pattern.to_records()}, str(pattern)


def _fdelta_command(args: argparse.Namespace) -> Outcome:
    return _pattern_result(f_delta(_kappa(args), _ord(args.delta), _ord(args.xi)))


def _fdelta_witness_command(args: argparse.Namespace) -> Outcome:
    bound = _ord(args.bound) if args.bound else None
    xi = f_delta_witness(
        _kappa(args), _ord(args.delta), parse_pattern(args.pattern), bound=bound
    )
    return {"value": str(xi)}, str(xi)


# =====================
# =  CANONICAL PHI    =
# =====================


def _phi_command(args: argparse.Namespace) -> Outcome:
    k = _kappa(args)
    if args.op == "eval":
        return _pattern_result(phi_eval(k, _ord(args.xi)))
    d = _ord(args.delta)
    if args.op == "witness":
        xi = phi_witness(k, d, parse_pattern(args.pattern))
        return {"value": str(xi)}, str(xi)
    report = phi_check_condition2(k, d, samples=args.samples, seed=args.seed)
    text = (
        f"{report.status.upper()}: {report.checked} patterns, {len(report.failures)} "
        f"failures (delta={report.delta}, gamma={report.gamma}, kappa={report.kappa})"
    )
    for failure in report.failures:
        text += f"\n  {failure.pattern}: {failure.message}"
    return report.to_dict(), text


# =====================
# =  TOPOLOGY LAB     =
# =====================


def _finite_space(args: argparse.Namespace) -> FiniteSpace:
    space = finite_space_from_selector(args.space)
    violations = kuratowski_violations(space)
    if violations:
        raise NotATopologyError(f"The closure of {space} breaks {violations[0]}")
    return space


def _top_invariants(args: argparse.Namespace) -> Outcome:
    space = _finite_space(args)
    report = invariants(space, with_min_order=args.with_min_order)
    result = report.to_dict()
    lines = [f"|X| = {report.size}"]
    for key in ("d", "s", "t", "F", "m"):
        if key in result:
            entry = result[key]
            lines.append(f"{key} = {entry['value']}  witness: {' '.join(entry['witness'])}")
    lines.append(f"pi_character = {report.global_pi_character}")
    return result, "\n".join(lines)


def _names(text: str) -> List[str]:
    return [name.strip() for name in text.split(",") if name.strip()]


def _top_free_seq(args: argparse.Namespace) -> Outcome:
    space = _finite_space(args)
    if args.sequence is not None:
        sequence = _names(args.sequence)
        free = is_free_sequence(space, sequence)
        return (
            {"sequence": sequence, "free": free},
            f"({','.join(sequence)}) is {'' if free else 'not '}a free sequence",
        )
    sequence = list(max_free_sequence(space))
    return (
        {"sequence": sequence, "length": len(sequence)},
        f"F = {len(sequence)}: ({','.join(sequence)})",
    )


def _top_lemma24(args: argparse.Namespace) -> Outcome:
    if args.op == "brute":
        table = lemma24_bruteforce(args.points, n_jobs=args.jobs)
        result = {
            "points": args.points,
            "topologies": int(table["topology"].nunique()) if len(table) else 0,
            "rows": json.loads(table.to_json(orient="records")),
        }
        failing = table[~table["a_implies_b"] | ~table["b_implies_a"]] if len(table) else table
        text = (
            f"{result['topologies']} topologies, {len(table)} rows, "
            f"{len(failing)} with a failing implication"
        )
        if len(failing):
            text += "\n" + failing.to_string(index=False)
        return result, text
    space = _finite_space(args)
    subset = space.mask_of(_names(args.subset)) if args.subset else space.full
    if args.family:
        family = [space.mask_of(_names(member)) for member in args.family.split(";")]
    else:
        family = list(hull_family(space, subset, args.bound))
    outcome = lemma24_extract(space, subset, family, args.bound)
    result = outcome.to_dict(space)
    if outcome.kind == "cover":
        text = "Cover: " + " ".join(
            "{" + ",".join(member) + "}" for member in result["members"]
        )
    else:
        text = "FreeSeq: (" + ",".join(result["points"]) + ")"
    return result, text


def _top_build(args: argparse.Namespace) -> Outcome:
    oracle = oracle_from_selector(args.space)
    prefix = shapirovskii_build(
        oracle,
        kappa_analog=args.kappa_analog,
        max_steps=args.steps,
        require_complete=args.require_complete,
        best_effort=args.best_effort,
    )
    if args.command_name == "build":
        lines = [
            f"{record.stage}: {record.point} [{record.branch}] "
            + " ".join(oracle.describe(member) for member in prefix.families[record.stage])
            for record in prefix.provenance
        ]
        lines.append(f"complete: {prefix.complete}")
        return prefix.to_dict(oracle), "\n".join(lines)
    report = def21_check(prefix, oracle)
    lines = []
    for condition in report.conditions:
        line = f"({condition.name}) {condition.status.upper()} [{condition.method}]"
        line += f" {condition.checked} checks, {len(condition.violations)} violations"
        if condition.note:
            line += f": {condition.note}"
        lines.append(line)
        lines.extend(f"  {violation}" for violation in condition.violations)
    return report.to_dict(), "\n".join(lines)


def _top_min_order(args: argparse.Namespace) -> Outcome:
    if args.all_up_to is not None:
        if args.all_up_to > 4:
            raise ConfigurationError("--all-up-to is limited to 4 points")
        spaces = [
            space for n in range(args.all_up_to + 1) for space in enumerate_topologies(n)
        ]
        table = min_order_table(spaces, n_jobs=args.jobs)
        result = {"rows": json.loads(table.to_json(orient="records"))}
        return result, table.to_string(index=False)
    space = _finite_space(args)
    order = min_pibase_order(space)
    star = star_report(space)
    result = dict(star.to_dict(), pibase=list(order.witness))
    text = (
        f"m = {order.value}  witness: {' '.join(order.witness)}\n"
        f"d = {star.density}, s = {star.spread}\n"
        f"d <= m*s: {star.literal}, d <= (m+1)*s: {star.successor}, "
        f"max(m+1, s) < d: {star.star_premise}"
    )
    return result, text


# =====================
# =  PARSER           =
# =====================


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json"), default="text", help="Output format"
    )
    common.add_argument(
        "--log-level",
        choices=_LOG_LEVELS,
        default=None,
        help=f"Logging level on stderr (default: ${settings.LOG_LEVEL_ENV_VAR} or "
        f"{settings.DEFAULT_LOG_LEVEL})",
    )
    common.add_argument(
        "--kappa",
        type=_natural,
        default=0,
        help="kappa as a cardinal level: 0 is w, 1 is w1, ...",
    )
    return common


def _add(subparsers, name: str, handler: Handler, common, command: str, **kwargs):
    parser = subparsers.add_parser(name, parents=[common], **kwargs)
    parser.set_defaults(handler=handler, command=command, command_name=name)
    return parser


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="pibase",
        description="Ordinal notations, canonical kappa-functions and finite topology tools",
    )
    parser.add_argument("--version", action="version", version=f"pibase {__version__}")
    commands = parser.add_subparsers(dest="group", metavar="COMMAND")
    commands.required = True

    ord_parser = _add(commands, "ord", _ord_command, common, "ord", help="Ordinal arithmetic")
    ord_parser.add_argument(
        "op", choices=("normalize", "add", "mul", "cmp", "card", "cf", "div")
    )
    ord_parser.add_argument("a", help="Ordinal expression, e.g. 'w1*2 + w^2 + 3'")
    ord_parser.add_argument("b", nargs="?", help="Second ordinal of add, mul and cmp")

    sigma_parser = _add(
        commands, "sigma", _sigma_command, common, "sigma", help="sigma_kappa normal forms"
    )
    sigma_parser.add_argument("op", choices=("eval", "nf", "gamma", "dprime", "strong"))
    sigma_parser.add_argument("d", help="Ordinal expression")

    pair_parser = _add(commands, "pair", _pair_command, common, "pair", help="Pair two ordinals")
    pair_parser.add_argument("a")
    pair_parser.add_argument("b")
    unpair_parser = _add(
        commands, "unpair", _unpair_command, common, "unpair", help="Split a pair code"
    )
    unpair_parser.add_argument("c")

    fdelta_parser = _add(
        commands, "fdelta", _fdelta_command, common, "fdelta", help="Evaluate f_delta"
    )
    fdelta_parser.add_argument("--delta", required=True)
    fdelta_parser.add_argument("--xi", required=True)
    witness_parser = _add(
        commands,
        "fdelta-witness",
        _fdelta_witness_command,
        common,
        "fdelta-witness",
        help="Find an argument of f_delta with a given pattern",
    )
    witness_parser.add_argument("--delta", required=True)
    witness_parser.add_argument("--bound", default=None)
    witness_parser.add_argument(
        "--pattern", required=True, help="Pattern literal, e.g. '(w,0);(3,1)'"
    )

    phi_parser = _add(
        commands, "phi", _phi_command, common, "phi", help="The canonical kappa-function"
    )
    phi_parser.add_argument("op", choices=("eval", "witness", "check2"))
    phi_parser.add_argument("xi", nargs="?", help="Ordinal of eval")
    phi_parser.add_argument(
        "--delta", default=None, help="Block base of witness and check2"
    )
    phi_parser.add_argument("--pattern", default=None, help="Pattern of witness")
    phi_parser.add_argument("--samples", type=_natural, default=settings.DEFAULT_SAMPLES)
    phi_parser.add_argument("--seed", type=_natural, default=settings.DEFAULT_SEED)

    top_parser = commands.add_parser("top", help="Finite topology lab")
    top_commands = top_parser.add_subparsers(dest="top_command", metavar="TOPCOMMAND")
    top_commands.required = True
    space_help = "rationals | ordinal:EXPR | file:PATH | discrete:N | indiscrete:N | sierpinski"

    inv_parser = _add(
        top_commands, "invariants", _top_invariants, common, "top-invariants"
    )
    inv_parser.add_argument("--space", required=True, help=space_help)
    inv_parser.add_argument("--with-min-order", action="store_true")

    free_parser = _add(top_commands, "free-seq", _top_free_seq, common, "top-free-seq")
    free_parser.add_argument("--space", required=True, help=space_help)
    free_parser.add_argument("--sequence", default=None, help="Points to check, e.g. 'b,a'")

    lemma_parser = _add(top_commands, "lemma24", _top_lemma24, common, "top-lemma24")
    lemma_parser.add_argument("op", choices=("extract", "brute"))
    lemma_parser.add_argument("--space", default=None, help=space_help)
    lemma_parser.add_argument("--subset", default=None, help="Y, e.g. 'a,b' (default: X)")
    lemma_parser.add_argument(
        "--family", default=None, help="Open family, e.g. 'a,b;c' (default: hull family)"
    )
    lemma_parser.add_argument("--bound", type=_natural, default=1)
    lemma_parser.add_argument("--points", type=_natural, default=2)
    lemma_parser.add_argument("--jobs", type=int, default=settings.N_JOBS)

    for name, command in (("build", "top-build"), ("check", "top-check")):
        build_parser_ = _add(top_commands, name, _top_build, common, command)
        build_parser_.add_argument("--space", required=True, help=space_help)
        build_parser_.add_argument("--steps", type=_natural, default=DEFAULT_MAX_STEPS)
        build_parser_.add_argument("--kappa-analog", type=_natural, default=None)
        build_parser_.add_argument("--require-complete", action="store_true")
        build_parser_.add_argument("--best-effort", action="store_true")

    min_parser = _add(top_commands, "min-order", _top_min_order, common, "top-min-order")
    min_parser.add_argument("--space", default=None, help=space_help)
    min_parser.add_argument("--all-up-to", type=_natural, default=None)
    min_parser.add_argument("--jobs", type=int, default=settings.N_JOBS)
    return parser


# =====================
# =  ENTRY POINT      =
# =====================


def _missing_operand(args: argparse.Namespace) -> str:
    """Return what the subcommand lacks among its conditional operands, or ''."""
    if args.command == "ord" and args.op in ("add", "mul", "cmp") and args.b is None:
        return f"ord {args.op} needs two ordinals"
    if args.command == "phi":
        if args.op == "eval":
            return "" if args.xi is not None else "phi eval needs an ordinal"
        if args.xi is not None:
            return f"phi {args.op} takes no positional ordinal"
        if args.delta is None:
            return f"phi {args.op} needs --delta"
        if args.op == "witness" and args.pattern is None:
            return "phi witness needs --pattern"
    if args.command == "top-lemma24" and args.op == "extract" and args.space is None:
        return "top lemma24 extract needs --space"
    if args.command == "top-min-order" and args.space is None and args.all_up_to is None:
        return "top min-order needs --space or --all-up-to"
    return ""


def _configure_logging(level: str = None):
    level = level or os.environ.get(settings.LOG_LEVEL_ENV_VAR) or settings.DEFAULT_LOG_LEVEL
    if level.upper() not in _LOG_LEVELS:
        raise ConfigurationError(
            f"{settings.LOG_LEVEL_ENV_VAR} must be one of {', '.join(_LOG_LEVELS)}, "
            f"found {level!r}"
        )
    logging.basicConfig(
        level=level.upper(),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def resolved_config(args: argparse.Namespace) -> Dict[str, object]:
    """Return the options of the run, with maxLevel resolved from the environment."""
    hidden = {"handler", "command", "command_name", "group", "top_command", "format", "log_level"}
    config = {key: value for key, value in vars(args).items() if key not in hidden}
    config["max_level"] = settings.max_level()
    return config


def run(argv: Sequence[str] = None) -> int:
    """Run the command line on ``argv`` and return the exit code.

    Parameters
    ----------
    argv : Sequence[str], optional
        Arguments without the program name. Default is None, meaning ``sys.argv[1:]``

    Returns
    -------
    int
        0 on success, 1 on a domain error, 2 on a usage error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        missing = _missing_operand(args)
        if missing:
            parser.error(missing)
    except SystemExit as err:
        return 0 if err.code is None else err.code

    try:
        _configure_logging(args.log_level)
        config = resolved_config(args)
        payload, text = args.handler(args)
    except PibaseError as err:
        logger.debug("%s failed", args.command, exc_info=True)
        print(f"pibase: error: {err}", file=sys.stderr)
        return 1

    if args.format == "json":
        document = {
            "schema": f"{settings.JSON_SCHEMA_PREFIX}/{args.command}/{settings.JSON_SCHEMA_VERSION}",
            "config": config,
            "result": payload,
        }
        print(json.dumps(document, sort_keys=True, indent=2, default=str))
    else:
        print(
            "config: " + " ".join(f"{key}={config[key]}" for key in sorted(config)),
            file=sys.stderr,
        )
        print(text)
    return 0


def main():
    sys.exit(run())
