"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 bad input, 3 capacity
exceeded, 4 internal invariant violated.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import config, dsl
from .build import build
from .chartable import character_table, codegree_report
from .classify import classify, theorem_round_trip
from .errors import CapacityError, InputError, InvariantError
from .perm import format_perm

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_CAPACITY, EXIT_INVARIANT = 0, 1, 2, 3, 4


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _specs(arg: str) -> list[tuple[str, dsl.GroupSpec]]:
    """An inline spec, or every entry of a catalog file."""
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            entries = dsl.parse_catalog(fh.read())
        return [(e.text, e.spec) for e in entries]
    spec = dsl.parse_spec(arg)
    return [(dsl.to_text(spec), spec)]


def _braces(values) -> str:
    return "{" + ",".join(map(str, values)) + "}"


def _table_text(G) -> str:
    t = character_table(G)
    cd = t.classes
    report = codegree_report(G)
    lines = [f"order {report.order}  exponent {report.exponent}  classes {report.class_count}",
             "class sizes  " + " ".join(map(str, cd.sizes)),
             "elt orders   " + " ".join(map(str, cd.orders)),
             f"{'chi':>4} {'degree':>7} {'|ker|':>7} {'codegree':>9}"]
    for i, c in enumerate(report.characters):
        lines.append(f"{i:>4} {c.degree:>7} {c.kernel_order:>7} {c.codegree:>9}")
    lines.append("codSet " + _braces(report.cod_set))
    return "\n".join(lines)


def cmd_table(args) -> int:
    out = []
    for text, spec in _specs(args.spec):
        G = build(spec).group
        if args.format == "json":
            out.append(dict(spec=text, **codegree_report(G).to_json()))
        else:
            print(f"# {text}\n{_table_text(G)}")
    if args.format == "json":
        print(_dump(out[0] if len(out) == 1 else out))
    return EXIT_OK


def cmd_cod(args) -> int:
    out = []
    specs = _specs(args.spec)
    for text, spec in specs:
        cods = codegree_report(build(spec).group).cod_set
        if args.format == "json":
            out.append({"spec": text, "codSet": cods})
        else:
            print(f"{text}  {_braces(cods)}" if len(specs) > 1 else _braces(cods))
    if args.format == "json":
        print(_dump(out[0]["codSet"] if len(out) == 1 else out))
    return EXIT_OK


def cmd_classify(args) -> int:
    out = []
    for text, spec in _specs(args.spec):
        verdict = classify(build(spec))
        if args.format == "json":
            out.append(verdict.to_json())
        else:
            print(f"{text}: {verdict.label} codSet {_braces(verdict.cod_set)}")
            for e in verdict.evidence:
                extra = f"  [{json.dumps(e.witness)}]" if e.witness is not None else ""
                print(f"  {e.predicate}: {json.dumps(e.result)}{extra}")
    if args.format == "json":
        print(_dump(out[0] if len(out) == 1 else out))
    return EXIT_OK


_HEADS = ("elemab", "cyclic", "dirprod", "sdp", "sl2", "frobsinger", "named",
          "metacyclic", "symmetric", "dihedral", "matgroup", "perms")


def _construct_text(family: str, params: list[str]) -> str:
    if "(" in family:
        return family
    if family in dsl.NAMED_TAGS:
        return f'named("{family}"' + "".join("," + p for p in params) + ")"
    if family not in _HEADS:
        raise InputError(f"unknown family {family!r}; expected one of {', '.join(_HEADS + dsl.NAMED_TAGS)}")
    return f"{family}({','.join(params)})"


def cmd_construct(args) -> int:
    built = build(dsl.parse_spec(_construct_text(args.family, args.params)))
    G = built.group
    gens = [format_perm(g) for g in G.generators]
    meta = {role: [format_perm(g) for g in H.generators] for role, H in sorted(built.meta.items())}
    if args.format == "json":
        print(_dump({"spec": built.text, "family": built.family, "degree": G.degree, "order": G.order(),
                     "expectedCase": built.expected_case, "generators": gens, "meta": meta}))
    else:
        print(f"# {built.text}: degree {G.degree}, order {G.order()}")
        for g in gens:
            print(g)
        for role, rgens in meta.items():
            print(f"# {role}: " + " ".join(rgens))
    return EXIT_OK


def _worker_init(capacity: int, seed: int) -> None:
    config.set_capacity(capacity)
    config.set_seed(seed)


def cmd_verify(args) -> int:
    with open(args.catalog, encoding="utf-8") as fh:
        entries = dsl.parse_catalog(fh.read())
    results = theorem_round_trip(entries, jobs=args.jobs,
                                 initializer=(_worker_init, (config.capacity(), config.seed())))
    failed = [r for r in results if not r.ok]
    if args.format == "json":
        print(_dump({"entries": [r.to_json() for r in results], "failures": len(failed)}))
    else:
        for r in results:
            status = "ok  " if r.ok else "FAIL"
            print(f"{status} line {r.line}: {r.text} -> {r.label} {_braces(r.cod_set or [])}")
            for f in r.failures:
                print(f"       {f}")
        print(f"{len(results) - len(failed)}/{len(results)} entries passed")
    for r in failed:
        print(f"verify: line {r.line}: {r.text}: {'; '.join(r.failures)}", file=sys.stderr)
    return EXIT_VERIFY if failed else EXIT_OK


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--capacity", type=_positive, default=config.DEFAULT_CAPACITY,
                        help="largest group order to enumerate (default %(default)s)")
    common.add_argument("--jobs", type=_positive, default=1, help="parallel workers for verify")
    common.add_argument("--seed", type=int, default=config.DEFAULT_SEED,
                        help="seed for randomized fallbacks")
    parser = _Parser(prog="codegrees", description="Character codegrees of permutation groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("table", parents=[common], help="character degrees, kernels and codegrees")
    p.add_argument("spec", help="inline construction or catalog file")
    p.set_defaults(func=cmd_table)
    p = sub.add_parser("cod", parents=[common], help="codegree set only")
    p.add_argument("spec")
    p.set_defaults(func=cmd_cod)
    p = sub.add_parser("classify", parents=[common], help="four-codegree family with evidence")
    p.add_argument("spec")
    p.set_defaults(func=cmd_classify)
    p = sub.add_parser("construct", parents=[common], help="print permutation generators")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_construct)
    p = sub.add_parser("verify", parents=[common], help="check a catalog's annotations")
    p.add_argument("catalog")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    old_capacity, old_seed = config.capacity(), config.seed()
    config.set_capacity(args.capacity)
    config.set_seed(args.seed)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InvariantError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    finally:
        config.set_capacity(old_capacity)
        config.set_seed(old_seed)


def main() -> None:
    sys.exit(run())
