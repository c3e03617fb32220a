"""Command-line front end.

Exit codes: 0 the checked property holds, 1 it fails (a witness is always
printed), 2 input or capacity error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import formats
from .approximation import (
    associated_clopen_topology,
    boundary,
    lower_approximation,
    upper_approximation,
)
from .errors import CapacityError, DomainError, InputError
from .functors import Arrow, Corpus, verify_functor_laws, verify_roundtrips
from .infosys import (
    find_reducts,
    finest_space,
    hprime_h_counterexample,
    indiscernibility,
    is_non_expansive,
    is_oad_homomorphism,
    verify_H_roundtrip,
)
from .morphisms import is_aprs_isomorphism, is_relation_preserving, continuity_suite
from .operators import classify_closure, classify_interior, rough_census
from .sets import identity_map
from .topology import analyze_topology

OK, FAILS, BAD_INPUT = 0, 1, 2

# commands whose output echoes the sampled-verification parameters
_VERIFYING = ("topology", "classify-operator", "check-map", "check-iso", "functor", "census", "check-oad")


@dataclass
class CommandOutcome:
    text: str
    data: dict = field(default_factory=dict)
    code: int = OK
    as_json: bool = False


def _parse_set(space, spec: str):
    items = [s for s in spec.split(",") if s] if spec else []
    for u in items:
        if u not in space.universe:
            raise InputError(f"--set: unknown element {u!r}")
    return space.universe.subset(items)


def cmd_approximate(args) -> CommandOutcome:
    S = formats.read_space(args.space)
    X = _parse_set(S, args.set)
    lo, up, bd = lower_approximation(S, X), upper_approximation(S, X), boundary(S, X)
    text = f"set: {X}\nlower: {lo}\nupper: {up}\nboundary: {bd}"
    return CommandOutcome(text, {"set": list(X), "lower": list(lo), "upper": list(up), "boundary": list(bd)})


def cmd_topology(args) -> CommandOutcome:
    S = formats.read_space(args.space)
    T = associated_clopen_topology(S)
    rep = analyze_topology(T)
    opens = T.open_sets()
    lines = [f"open sets ({len(opens)}):"] + [f"  {O}" for O in opens] + rep.lines()
    data = {
        "opens": [list(O) for O in opens],
        "is_topology": rep.is_topology,
        "is_clopen": rep.is_clopen,
        "is_alexandroff": rep.is_alexandroff,
        "minimal_base": [list(B) for B in rep.minimal_base],
    }
    code = OK if rep.is_topology and rep.is_clopen else FAILS
    return CommandOutcome("\n".join(lines), data, code)


def cmd_classify(args) -> CommandOutcome:
    op = formats.read_operator(args.operator)
    classify = classify_closure if args.kind == "closure" else classify_interior
    rep = classify(op, seed=args.seed, trials=args.trials)
    return CommandOutcome("\n".join(rep.lines()), rep.as_dict(), OK if rep.is_rough else FAILS)


def _spaces_and_map(args):
    S = formats.read_space(args.source)
    T = formats.read_space(args.target)
    f = formats.read_map(args.map, S.universe, T.universe)
    return S, T, f


def cmd_check_map(args) -> CommandOutcome:
    S, T, f = _spaces_and_map(args)
    rp = is_relation_preserving(f, S, T)
    data = {"relation_preserving": rp.holds, "witness": list(rp.witness) if rp.witness else None}
    lines = [f"relation-preserving: {'yes' if rp else 'no'}"]
    if not rp:
        lines.append(f"witness: ({rp.witness[0]}, {rp.witness[1]}) related in source, images unrelated in target")
    if args.suite:
        v = continuity_suite(f, S, T, seed=args.seed, trials=args.trials)
        lines += v.lines()
        data["suite"] = v.as_dict()
    return CommandOutcome("\n".join(lines), data, OK if rp else FAILS)


def cmd_check_iso(args) -> CommandOutcome:
    S, T, f = _spaces_and_map(args)
    iso = is_aprs_isomorphism(f, S, T)
    lines = [f"isomorphism: {'yes' if iso else 'no'}"]
    if not iso:
        w = iso.witness
        lines.append(f"witness: {w}" if w == "not bijective" else f"witness: class of {w} is not mapped onto a class")
    return CommandOutcome("\n".join(lines), {"isomorphism": iso.holds, "witness": iso.witness}, OK if iso else FAILS)


def cmd_functor(args) -> CommandOutcome:
    S = formats.read_space(args.space)
    ident = Arrow(identity_map(S.universe), S, S)
    corpus = Corpus([S], [ident])
    if args.roundtrip == "aprs-rcls":
        reports = [verify_roundtrips(corpus), verify_functor_laws("F", corpus), verify_functor_laws("F_prime", corpus)]
    elif args.roundtrip == "rcls-rint":
        reports = [verify_roundtrips(corpus), verify_functor_laws("G", corpus), verify_functor_laws("G_inverse", corpus)]
        reports[0].roundtrips = {k: v for k, v in reports[0].roundtrips.items() if not k.startswith("F")}
    else:
        reports = [verify_H_roundtrip([S]), verify_functor_laws("H_prime", corpus), verify_functor_laws("H", corpus)]
    lines, data = [], []
    for r in reports:
        lines += r.lines()
        data.append(r.as_dict())
    ok = all(r.ok for r in reports)
    if not ok:
        failures = [m for r in reports for m in r.failures]
        lines.append("witness: " + (failures[0] if failures else "round-trip verdict false"))
    return CommandOutcome("\n".join(lines), {"reports": data, "ok": ok}, OK if ok else FAILS)


def cmd_census(args) -> CommandOutcome:
    res = rough_census(args.size)
    data = {
        "size": res.size,
        "tables": res.tables,
        "rough_closure_operators": res.rough_closures,
        "partitions": res.partitions,
        "match": res.match,
    }
    text = res.line()
    if not res.match:
        text += f"\nwitness: {res.rough_closures} != {res.partitions}"
    return CommandOutcome(text, data, OK if res.match else FAILS)


def _attrs(T, spec: str):
    names = [a for a in spec.split(",") if a] if spec else []
    for a in names:
        if a not in T.attributes:
            raise InputError(f"--attrs: unknown attribute {a!r}")
    return names


def cmd_infosys(args) -> CommandOutcome:
    T = formats.read_infosys(args.csv)
    if args.action == "ind":
        P = indiscernibility(T, _attrs(T, args.attrs))
        return CommandOutcome(f"ind: {P}", {"blocks": P.as_lists()})
    if args.action == "finest":
        P = finest_space(T).partition
        return CommandOutcome(f"finest: {P}", {"blocks": P.as_lists()})
    if args.action == "reduct":
        reducts = find_reducts(T)
        text = "reducts:\n" + "\n".join("  {" + ", ".join(r) + "}" for r in reducts)
        return CommandOutcome(text, {"reducts": [list(r) for r in reducts]})
    space = formats.space_to_json(finest_space(T))
    return CommandOutcome(json.dumps(space), space)


def cmd_check_oad(args) -> CommandOutcome:
    src = formats.read_infosys(args.source)
    tgt = formats.read_infosys(args.target)
    h = formats.read_hom(args.hom, src, tgt)
    hom, ne = is_oad_homomorphism(h), is_non_expansive(h)
    lines = [f"O-A-D homomorphism: {'yes' if hom else 'no'}"]
    if not hom:
        a, x = hom.witness
        lines.append(f"  witness: attribute {a!r}, object {x!r}")
    lines.append(f"non-expansive: {'yes' if ne else 'no'}")
    if not ne:
        lines.append(f"  witness: target attribute {ne.witness!r} is not hit")
    data = {
        "homomorphism": hom.holds,
        "homomorphism_witness": list(hom.witness) if hom.witness else None,
        "non_expansive": ne.holds,
        "non_expansive_witness": ne.witness,
    }
    return CommandOutcome("\n".join(lines), data, OK if hom and ne else FAILS)


def cmd_counterexample(args) -> CommandOutcome:
    T, back = hprime_h_counterexample()
    text = (
        "T:\n" + formats.infosys_to_csv(T)
        + "H'(H(T)):\n" + formats.infosys_to_csv(back)
        + f"\nT has {len(T.attributes)} attributes, H'(H(T)) has {len(back.attributes)}: not equal"
    )
    data = {
        "T": {"attributes": list(T.attributes), "rows": dict(zip(T.universe, map(list, T.rows)))},
        "HprimeH_T": {"attributes": list(back.attributes), "rows": dict(zip(back.universe, map(list, back.rows)))},
        "equal": False,
    }
    return CommandOutcome(text, data)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled verification (default 0)")
    common.add_argument("--trials", type=int, default=10_000, help="trials for sampled verification (default 10000)")

    # nested parsers must not reset flags given before the action word
    nested = argparse.ArgumentParser(add_help=False)
    nested.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    nested.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    nested.add_argument("--trials", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="roughcat", description="Finite rough sets and their categories.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approximate", parents=[common], help="lower/upper approximation and boundary of a set")
    p.add_argument("--space", required=True)
    p.add_argument("--set", required=True, help="comma-separated elements")
    p.set_defaults(func=cmd_approximate)

    p = sub.add_parser("topology", parents=[common], help="clopen topology of a space")
    p.add_argument("--space", required=True)
    p.set_defaults(func=cmd_topology)

    p = sub.add_parser("classify-operator", parents=[common], help="Kuratowski axioms and the rough condition")
    p.add_argument("--operator", required=True)
    p.add_argument("--kind", choices=("closure", "interior"), default="closure")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("check-map", parents=[common], help="is a map relation-preserving")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--suite", action="store_true", help="evaluate all six equivalent conditions")
    p.set_defaults(func=cmd_check_map)

    p = sub.add_parser("check-iso", parents=[common], help="is a map an isomorphism of approximation spaces")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--map", required=True)
    p.set_defaults(func=cmd_check_iso)

    p = sub.add_parser("functor", parents=[common], help="functor round-trips on one space")
    p.add_argument("--roundtrip", choices=("aprs-rcls", "rcls-rint", "aprs-neis"), required=True)
    p.add_argument("--space", required=True)
    p.set_defaults(func=cmd_functor)

    p = sub.add_parser("census", parents=[common], help="count rough closure operators among all tables")
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("infosys", parents=[common], help="information system queries")
    p.add_argument("--csv", required=True)
    acts = p.add_subparsers(dest="action", required=True)
    a = acts.add_parser("ind", parents=[nested])
    a.add_argument("--attrs", required=True, help="comma-separated attribute names (may be empty)")
    acts.add_parser("finest", parents=[nested])
    acts.add_parser("reduct", parents=[nested])
    acts.add_parser("as-space", parents=[nested])
    p.set_defaults(func=cmd_infosys)

    p = sub.add_parser("check-oad", parents=[common], help="O-A-D homomorphism and non-expansiveness")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--hom", required=True)
    p.set_defaults(func=cmd_check_oad)

    p = sub.add_parser("counterexample", parents=[common], help="stored witnesses")
    p.add_argument("which", choices=("hprime-h",))
    p.set_defaults(func=cmd_counterexample)
    return parser


def run(argv=None) -> CommandOutcome:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return CommandOutcome("", {"error": "usage"}, BAD_INPUT if exc.code else OK)
    try:
        outcome = args.func(args)
    except (InputError, CapacityError, DomainError) as exc:
        return CommandOutcome(f"error: {exc}", {"error": str(exc), "exit_code": BAD_INPUT}, BAD_INPUT, args.json)
    outcome.data.setdefault("exit_code", outcome.code)
    if args.command in _VERIFYING:
        outcome.data.setdefault("seed", args.seed)
        outcome.data.setdefault("trials", args.trials)
        outcome.text += f"\n(seed={args.seed}, trials={args.trials})"
    outcome.as_json = args.json
    return outcome


def main(argv=None) -> int:
    outcome = run(argv)
    if outcome.as_json:
        print(json.dumps(outcome.data, indent=2, sort_keys=True))
    elif outcome.text:
        stream = sys.stderr if outcome.code == BAD_INPUT else sys.stdout
        print(outcome.text, file=stream)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
