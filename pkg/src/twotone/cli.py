"""Command-line front end.

Diagrams travel between subcommands as one PD line on standard streams,
so ``twotone gen pretzel 6,6,6 | twotone dihedral --n 5 --two-tone`` works.
Exit status: 0 success, 1 inconsistency found by ``verify``, 2 usage or
parse error, 3 capacity exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .coloring import exists_surjection, exists_two_tone, fox_colorable
from .diagram import (DiagramError, generate_pretzel, generate_standard_form, generate_torus_two_strand,
                      parse_link_text)
from .dihedral import INF, format_modulus
from .invariants import component_determinants, determinant, linking_matrix
from .verify import CorpusConfig, classify, parse_n_range, run_corpus, table_row
from .zlinalg import DEFAULT_CAP, CapacityError

EXIT_OK, EXIT_INCONSISTENT, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def default_cap() -> int:
    raw = os.environ.get("TWOTONE_CAP")
    if not raw:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"TWOTONE_CAP must be an integer, got {raw!r}") from None


def _read_diagram(args):
    if args.link is not None and args.input is not None:
        raise UsageError("give either --link or --input, not both")
    if args.link is not None:
        text = args.link
    elif args.input is not None and args.input != "-":
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    body = "\n".join(line for line in text.splitlines() if not line.lstrip().startswith("#"))
    if not body.strip():
        raise UsageError("no diagram on input")
    return parse_link_text(body)


def _emit(args, record: dict, lines: list[str]):
    if args.format == "record":
        print(json.dumps(record, sort_keys=True))
    else:
        print("\n".join(lines))


def _coloring_lines(d, c, witness: bool) -> list[str]:
    out = [f"witness: {c.to_compact()}"]
    if witness:
        out += [f"  {line}" for line in c.to_lines(d)]
    return out


# subcommands -------------------------------------------------------------------

def cmd_parse(args) -> int:
    d = _read_diagram(args)
    if args.format == "record":
        print(json.dumps({"pd": d.to_text(), "components": d.num_components, "crossings": len(d.crossings),
                          "arcs": d.arc_count, "signs": [x.sign for x in d.crossings]}, sort_keys=True))
    else:
        print(d.to_text())
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def cmd_gen(args) -> int:
    if args.family == "torus2":
        try:
            q = int(args.param)
        except ValueError:
            raise UsageError(f"torus2 needs an integer, got {args.param!r}") from None
        print(generate_torus_two_strand(q).to_text())
    elif args.family == "pretzel":
        print(generate_pretzel(_int_list(args.param)).to_text())
    else:
        twists, _, closure = args.param.partition("/")
        if twists.strip() == "-":
            twists = ""
        sf = generate_standard_form(_int_list(twists), _int_list(closure) if closure else None)
        betas = ",".join(map(str, sf.betas)) or "-"
        print(f"# base component {sf.base_component}; alpha arc {sf.alpha}; beta arcs {betas}")
        print(sf.diagram.to_text())
    return EXIT_OK


def cmd_invariants(args) -> int:
    d = _read_diagram(args)
    det = determinant(d)
    lk = linking_matrix(d)
    comp = component_determinants(d) if d.num_components > 1 else [det.value]
    record = {"components": d.num_components, "crossings": len(d.crossings), "arcs": d.arc_count,
              "linking": lk, "determinant": det.value, "free_rank": det.free_rank,
              "component_determinants": comp}
    lines = [f"components: {d.num_components}", f"crossings: {len(d.crossings)}", f"arcs: {d.arc_count}"]
    lines += [f"linking {i} {j}: {lk[i][j]}" for i in range(d.num_components)
              for j in range(i + 1, d.num_components)]
    lines += [f"determinant: {det.value}", f"component determinants: {' '.join(map(str, comp))}"]
    _emit(args, record, lines)
    return EXIT_OK


def cmd_fox(args) -> int:
    if args.n < 2:
        raise UsageError("--n must be >= 2")
    d = _read_diagram(args)
    r = fox_colorable(d, args.n)
    _emit(args, {"n": args.n, "colorable": r.colorable, "count": r.count},
          [f"n={args.n}: {'colorable' if r.colorable else 'not colorable'} ({r.count} colorings)"])
    return EXIT_OK


def cmd_dihedral(args) -> int:
    if args.inf:
        n = INF
    else:
        if args.n < 3:
            raise UsageError("--n must be >= 3")
        n = args.n
    d = _read_diagram(args)
    record: dict = {"modulus": format_modulus(n)}
    lines: list[str] = []
    if not args.surjective:
        v = exists_two_tone(d, n, args.cap)
        record["two_tone"] = {"colorable": v.colorable,
                              "witness": v.witness.to_record() if v.witness else None,
                              "obstruction": v.obstruction}
        lines.append(f"two-tone D_{format_modulus(n)}: {'colorable' if v.colorable else 'not colorable'}")
        lines += _coloring_lines(d, v.witness, args.witness) if v.witness else [f"reason: {v.obstruction}"]
    if not args.two_tone:
        c = exists_surjection(d, n, args.cap)
        record["surjective"] = {"exists": c is not None, "witness": c.to_record() if c else None}
        lines.append(f"surjection onto D_{format_modulus(n)}: {'exists' if c else 'none'}")
        if c is not None:
            lines += _coloring_lines(d, c, args.witness)
    _emit(args, record, lines)
    return EXIT_OK


def cmd_classify(args) -> int:
    d = _read_diagram(args)
    try:
        ns = parse_n_range(args.n_range)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = classify(d, ns, args.name, args.cap)
    errors = [c.error for c in report.cells + [report.infinite] if c.error]
    if args.format == "record":
        print(json.dumps(report.to_record(), sort_keys=True))
    else:
        print(f"components: {report.components}; determinant: {report.determinant}; "
              f"component determinants: {' '.join(map(str, report.component_determinants))}")
        print("n\tfox\ttwo-tone\tsurjective\ttwo-tone witness\tsurjection witness")
        for c in report.cells + [report.infinite]:
            fox = "-" if c.fox is None else str(c.fox)
            print(f"{format_modulus(c.modulus)}\t{fox}\t{c.two_tone}\t{c.surjective}\t"
                  f"{c.two_tone_witness or '-'}\t{c.surjection_witness or '-'}")
        for f in report.flags:
            print(f"flag: {f}", file=sys.stderr)
    if errors:
        raise CapacityError("; ".join(errors))
    return EXIT_OK


def cmd_verify(args) -> int:
    mapping = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            mapping = json.load(fh)
    try:
        if args.n_range:
            mapping["n_range"] = args.n_range
        if args.cap_given:
            mapping["cap"] = args.cap
        if args.jobs:
            mapping["jobs"] = args.jobs
        corpus = args.corpus or mapping.get("corpus")
        if not corpus:
            raise UsageError("verify needs --corpus or a config with a corpus entry")
        config = CorpusConfig.from_mapping(mapping)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = run_corpus(corpus, config, args.csv, args.records)
    if args.format == "record":
        sys.stdout.write(result.to_jsonl())
    else:
        sys.stdout.write(result.to_csv())
    for r in result.reports:
        if not r.consistent:
            row = table_row(r)
            print(f"INCONSISTENT {r.name}: {row['flags']}", file=sys.stderr)
    if any("capacity exceeded" in f for r in result.reports for f in r.flags):
        return EXIT_CAPACITY
    return EXIT_OK if result.consistent else EXIT_INCONSISTENT


# parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twotone", description="Two-tone dihedral colorings of link diagrams.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "record"), default="table")
    common.add_argument("--cap", type=int, default=None,
                        help="enumeration cap (default: $TWOTONE_CAP or 10^6)")
    reader = argparse.ArgumentParser(add_help=False)
    reader.add_argument("--link", help="inline PD text")
    reader.add_argument("--input", "-i", help="file with PD text ('-' or omitted: standard input)")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", parents=[common, reader], help="validate and print canonical PD")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("gen", parents=[common], help="generate a diagram")
    sp.add_argument("family", choices=("torus2", "pretzel", "standard"))
    sp.add_argument("param", help="q | t1,...,tk | twists[/closure] such as 2,2/0,1")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("invariants", parents=[common, reader], help="linking numbers and determinants")
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("fox", parents=[common, reader], help="Fox n-colorability")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_fox)

    sp = sub.add_parser("dihedral", parents=[common, reader], help="two-tone colorings and surjections")
    mod = sp.add_mutually_exclusive_group(required=True)
    mod.add_argument("--n", type=int)
    mod.add_argument("--inf", action="store_true", help="use the infinite dihedral group")
    kind = sp.add_mutually_exclusive_group()
    kind.add_argument("--two-tone", action="store_true")
    kind.add_argument("--surjective", action="store_true")
    sp.add_argument("--witness", action="store_true", help="also print the per-arc colors")
    sp.set_defaults(func=cmd_dihedral)

    sp = sub.add_parser("classify", parents=[common, reader], help="verdict table over a range of n")
    sp.add_argument("--n-range", default="3..8", help="a..b or a comma list, each n >= 3")
    sp.add_argument("--name", default="")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify", parents=[common], help="check a fixture corpus")
    sp.add_argument("--corpus", help="fixture file (tab-separated)")
    sp.add_argument("--config", help="JSON config with n_range, cap, jobs, corpus")
    sp.add_argument("--n-range")
    sp.add_argument("--jobs", type=int, default=0)
    sp.add_argument("--csv", help="also write the CSV table here")
    sp.add_argument("--records", help="also write JSON-lines records here")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.cap_given = args.cap is not None
        if args.cap is None:
            args.cap = default_cap()
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (UsageError, DiagramError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
