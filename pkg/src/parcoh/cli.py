"""Command-line front end: ``parcoh <command> [instance] [flags]``.

Exit status is 0 when every check passes, 1 when a mathematical check
fails (the report carries a witness), and 2 on input errors.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from typing import Callable

from .algebroid import (
    BaseMismatch,
    MissingCoalgebraOnA,
    build_algebroid,
    build_cleaving_maps,
    build_smash_algebroid,
    verify_algebroid,
    verify_algebroid_cleft,
    verify_partial_cleft,
)
from .catalog import UnknownCatalogName
from .cohomology import (
    BadDegree,
    BudgetExceeded,
    ComplexError,
    FieldUnsupported,
    NotFiniteField,
    budget_from_env,
    coboundary,
    coboundary_sweedler,
    sweedler_cost,
    sweedler_feasible,
    enumerate_cohomology,
    klein_four_family,
    reduce_modulo_units,
)
from .convolution import NotInIdeal, NotInvertible, idempotent, in_ideal, is_invertible, random_invertible
from .crossed_product import (
    CrossedProduct,
    _check_assoc,
    _check_unit,
    build_crossed_product,
    check_associativity_iff_cocycle,
    check_unital_iff_normalized,
    cocycle_condition,
    is_normalized,
    validate_coaction,
    validate_crossed_product,
    validate_twisted,
)
from .hopf import validate_hopf
from .io import CommandReport, InstanceDescriptor, SchemaError, dump_cochain, emit_report, load_cochain, parse_instance
from .linalg import QQ, field_from_name
from .partial_action import brute_force_base_field_actions, enumerate_base_field_actions, subgroup_label, validate_partial_action
from .properties import SuiteConfig, first_difference, property_suite
from .report import ValidationReport

BRUTE_FORCE_MAX_ORDER = 4
INPUT_ERRORS = (
    SchemaError,
    UnknownCatalogName,
    BudgetExceeded,
    NotFiniteField,
    FieldUnsupported,
    BadDegree,
    MissingCoalgebraOnA,
    BaseMismatch,
    NotInIdeal,
    NotInvertible,
)


def _require(desc: InstanceDescriptor | None) -> InstanceDescriptor:
    if desc is None:
        raise SchemaError("/", "this command needs an instance descriptor")
    return desc


# ----------------------------------------------------------------- commands


def cmd_validate(args, desc, rep: CommandReport) -> None:
    desc = _require(desc)
    rep.sections.append(validate_hopf(desc.hopf))
    rep.sections.append(validate_partial_action(desc.action))
    if desc.twist is not None:
        rep.sections.append(validate_twisted(desc.twist))


def cmd_classify(args, desc, rep: CommandReport) -> None:
    desc = _require(desc)
    H = desc.hopf
    G = H.group
    if G is None:
        raise SchemaError("/hopf", "classification needs kG or (kG)*")
    found = enumerate_base_field_actions(H)
    labels = [subgroup_label(G, L) for L, _ in found]
    invertible = [L for L in G.subgroups
                  if H.kind == "group" or not H.field.characteristic or len(L) % H.field.characteristic]
    rep.data["actions"] = len(found)
    rep.data["subgroups"] = labels
    sec = ValidationReport("classification")
    sec.add("every enumerated action satisfies the axioms",
            all(validate_partial_action(pa).ok for _, pa in found))
    sec.add("count matches the subgroup lattice", len(found) == len(invertible),
            {"actions": len(found), "subgroups": len(invertible)})
    if H.field.is_finite and G.order <= BRUTE_FORCE_MAX_ORDER:
        key = lambda values: [v.value for v in values]
        brute = sorted(brute_force_base_field_actions(H), key=key)
        mine = sorted((tuple(pa.act[h][0][0] for h in range(H.dim)) for _, pa in found), key=key)
        rep.data["brute_force_actions"] = len(brute)
        sec.add(f"exhaustive search over {H.field.name} agrees", brute == mine,
                {"brute_force": brute, "enumerated": mine})
    rep.sections.append(sec)


def _load_degree(desc, path: str, n: int):
    f = load_cochain(desc.action, path)
    if f.degree != n:
        raise SchemaError("/degree", f"expected a degree {n} cochain, got {f.degree}")
    return f


def cmd_cocycle_check(args, desc, rep: CommandReport) -> None:
    desc = _require(desc)
    f = _load_degree(desc, args.cochain, args.n)
    sec = ValidationReport(f"{args.n}-cocycle check")
    sec.add("in the ideal e_n * Hom", in_ideal(f))
    if not sec.ok:
        rep.sections.append(sec)
        return
    if not sec.add("invertible", is_invertible(f)):
        rep.sections.append(sec)
        return
    df = coboundary(f)
    target = idempotent(desc.action, args.n + 1)
    sec.add(f"delta_{args.n} f = e_{args.n + 1}", df == target, first_difference(df, target))
    if args.n <= 2 and sweedler_feasible(desc.action, args.n):
        sec.add("operator form agrees with Sweedler expansion", coboundary_sweedler(f) == df)
    elif args.n <= 2:
        rep.data["sweedler_check"] = f"skipped ({sweedler_cost(desc.action, args.n)} terms)"
    if args.n == 2:
        ok, wit = cocycle_condition(f)
        sec.add("twisted cocycle identity on basis triples", ok, wit)
        rep.data["normalized"] = "yes" if is_normalized(f)[0] else "no"
    rep.sections.append(sec)


def cmd_coboundary(args, desc, rep: CommandReport) -> None:
    desc = _require(desc)
    if args.cochain:
        f = _load_degree(desc, args.cochain, args.n)
    else:
        f = random_invertible(desc.action, args.n, random.Random(args.seed))
        rep.data["seed"] = args.seed
    df = coboundary(f)
    sec = ValidationReport(f"delta_{args.n}")
    sec.add(f"delta_{args.n + 1}(delta_{args.n} f) = e_{args.n + 2}", coboundary(df) == idempotent(desc.action, args.n + 2))
    rep.sections.append(sec)
    rep.data["input"] = dump_cochain(f)
    rep.data["coboundary"] = dump_cochain(df)


def cmd_cohomology(args, desc, rep: CommandReport) -> None:
    desc = _require(desc)
    budget = args.budget if args.budget is not None else budget_from_env()
    table = enumerate_cohomology(desc.action, args.n, budget)
    orders = table.orders
    rep.data["orders"] = f"|C^{args.n}|={orders['C']} |Z^{args.n}|={orders['Z']} |B^{args.n}|={orders['B']} |H^{args.n}|={orders['H']}"
    rep.data["class_orders"] = table.class_orders
    sec = ValidationReport(f"H^{args.n}")
    sec.add("|Z| = |B| * |H|", orders["Z"] == orders["B"] * orders["H"])
    if args.n >= 1:
        try:
            red = reduce_modulo_units(table)
            rep.data["reduced_orders"] = (f"|C~^{args.n}|={red.cochains} |Z~^{args.n}|={red.cocycles} "
                                          f"|B~^{args.n}|={red.coboundaries} |H~^{args.n}|={red.cohomology}")
            sec.add("reduced and unreduced cohomology have equal order", red.cohomology == orders["H"])
            sec.add("units embed injectively", red.embedding_injective)
            sec.add("reduced coboundary well defined", red.well_defined)
        except ComplexError as exc:
            sec.add("reduced and unreduced cohomology have equal order", False, {"error": str(exc)})
    rep.sections.append(sec)


def cmd_klein4(args, desc, rep: CommandReport) -> None:
    F = desc.field if desc is not None else QQ
    try:
        if args.field:
            F = field_from_name(args.field)
        x, xbar = F(args.x), F(args.xbar)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError("/", f"bad klein4 arguments: {exc}") from exc
    fam = klein_four_family(x, xbar, F)
    rep.data["x"] = x
    rep.data["xbar"] = xbar
    sec = ValidationReport("Klein-four family")
    sec.add("omega * omega_bar = e_2", fam.invertible_pair)
    sec.add("16 x xbar - 3(x + xbar) + 1/2 = 0 matches invertibility", fam.consistent,
            {"equation": fam.equation_holds, "invertible": fam.invertible_pair})
    if fam.cocycle is not None:
        sec.add("delta_2 omega = e_3", fam.cocycle)
    if fam.cocycle_bar is not None:
        sec.add("delta_2 omega_bar = e_3", fam.cocycle_bar)
    rep.sections.append(sec)
    cocycle = fam.cocycle and fam.cocycle_bar
    rep.data["summary"] = f"invertible pair: {'yes' if fam.invertible_pair else 'no'}; 2-cocycle: {'yes' if cocycle else 'no'}"


CHECKS = ("assoc", "unit", "comodule")


def cmd_crossed_product(args, desc, rep: CommandReport) -> None:
    desc = _require(desc)
    tpa = desc.twisted
    wanted = [c.strip() for c in args.check.split(",")] if args.check else list(CHECKS)
    unknown = [c for c in wanted if c not in CHECKS]
    if unknown:
        raise SchemaError("/check", f"unknown check(s) {unknown}; choose from {list(CHECKS)}")
    cp = CrossedProduct(tpa)
    rep.data["dim"] = cp.dim
    rep.data["basis"] = list(cp.labels)
    sec = ValidationReport("crossed product")
    if "assoc" in wanted:
        ok, wit = _check_assoc(cp)
        sec.add("associative", ok, wit)
        sec.extend(check_associativity_iff_cocycle(tpa), "associative iff cocycle: ")
    if "unit" in wanted:
        ok, wit = _check_unit(cp)
        sec.add("1#1 is a unit", ok, wit)
        sec.extend(check_unital_iff_normalized(tpa), "unital iff normalized: ")
    rep.sections.append(sec)
    if "comodule" in wanted:
        rep.sections.append(validate_coaction(cp))


def cmd_verify_algebroid(args, desc, rep: CommandReport) -> None:
    desc = _require(desc)
    cp = build_crossed_product(desc.twisted)
    data = build_algebroid(cp)
    rep.data["dim"] = cp.dim
    rep.data["base_dim"] = data.base.dim
    rep.sections.append(verify_algebroid(data))


def cmd_verify_cleft(args, desc, rep: CommandReport) -> None:
    desc = _require(desc)
    cp = build_crossed_product(desc.twisted)
    rep.sections.append(validate_crossed_product(cp))
    rep.sections.append(verify_partial_cleft(cp, build_cleaving_maps(cp)))
    rep.sections.append(verify_algebroid_cleft(cp, build_smash_algebroid(desc.action)))


def cmd_property_suite(args, desc, rep: CommandReport) -> None:
    desc = _require(desc)
    cfg = SuiteConfig(seed=args.seed, trials=args.trials)
    rep.data["seed"] = args.seed
    rep.data["trials"] = args.trials
    rep.sections.append(property_suite(desc.action, cfg))


COMMANDS: dict[str, tuple[Callable, bool]] = {
    "validate": (cmd_validate, True),
    "classify-actions": (cmd_classify, True),
    "cocycle-check": (cmd_cocycle_check, True),
    "coboundary": (cmd_coboundary, True),
    "cohomology": (cmd_cohomology, True),
    "klein4": (cmd_klein4, False),
    "crossed-product": (cmd_crossed_product, True),
    "verify-algebroid": (cmd_verify_algebroid, True),
    "verify-cleft": (cmd_verify_cleft, True),
    "property-suite": (cmd_property_suite, True),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parcoh", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--timing", action="store_true", help="append wall-clock time to the report")
    common.add_argument("--field", help="override the descriptor's field (Q or F<p>)")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, needs) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common])
        p.add_argument("instance", nargs=None if needs else "?", help="descriptor file or inline JSON")
        if name in ("cocycle-check", "coboundary", "cohomology"):
            p.add_argument("--n", type=int, required=True)
        if name == "cocycle-check":
            p.add_argument("--cochain", required=True)
        if name == "coboundary":
            p.add_argument("--cochain")
            p.add_argument("--seed", type=int, default=0)
        if name == "cohomology":
            p.add_argument("--budget", type=int)
        if name == "klein4":
            p.add_argument("--x", required=True)
            p.add_argument("--xbar", required=True)
        if name == "crossed-product":
            p.add_argument("--check", help="comma-separated subset of assoc,unit,comodule")
        if name == "property-suite":
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--trials", type=int, default=25)
    return parser


def run_command(command: str, descriptor: InstanceDescriptor | None, flags: argparse.Namespace) -> CommandReport:
    """Run one command on a parsed descriptor; input errors become an
    error report (exit status 2) rather than an exception."""
    fn, _ = COMMANDS[command]
    rep = CommandReport(command, descriptor.raw if descriptor is not None else None)
    start = time.perf_counter()
    try:
        fn(flags, descriptor, rep)
    except INPUT_ERRORS as exc:
        rep.error = f"{type(exc).__name__}: {exc}"
    if flags.timing:
        rep.timing = time.perf_counter() - start
    return rep


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        flags = parser.parse_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    descriptor = None
    if flags.instance is not None:
        override = flags.field if flags.command != "klein4" else None
        try:
            descriptor = parse_instance(flags.instance, override)
        except (SchemaError, UnknownCatalogName) as exc:
            rep = CommandReport(flags.command, error=f"{type(exc).__name__}: {exc}")
            sys.stdout.write(emit_report(rep, flags.format))
            return rep.exit_code
    rep = run_command(flags.command, descriptor, flags)
    sys.stdout.write(emit_report(rep, flags.format))
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
