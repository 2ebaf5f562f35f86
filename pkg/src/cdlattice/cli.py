"""Command-line entry point: ``cdlattice <verb> ...``.

Exit status: 0 when every claim passes, 1 when any claim fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import families as fam
from . import verify as vf
from .cd import analyze as cd_analyze
from .errors import CDError
from .fileformat import read_group_file, serialize_group
from .group import FiniteGroup, prime_power
from .lattice import enumerate_subgroups, is_maximal_class, is_metacyclic
from .report import dumps, serialize_report, summarize, to_csv

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _add_output(p: argparse.ArgumentParser, figure: bool = True) -> None:
    p.add_argument("--json", action="store_true", help="print the structured document instead of the table")
    p.add_argument("--csv", metavar="PATH", help="also write the rows as CSV")
    if figure:
        p.add_argument("--figure", metavar="PATH", help="also render a figure (PNG/PDF/SVG by suffix)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cdlattice", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write a named group as a table file")
    p.add_argument("--family", required=True, metavar="SPEC",
                   help='family string, e.g. "modular:p=3,n=2,m=1" or "quaternion:n=3"')
    p.add_argument("-o", "--output", metavar="FILE", help="output path (default: stdout)")

    p = sub.add_parser("analyze", help="lattice size, CD lattice and delta of one group")
    p.add_argument("file", nargs="?", help="group file (table or permutation format)")
    p.add_argument("--family", metavar="SPEC", help="analyze a built-in family instead of a file")
    p.add_argument("--cd", action="store_true", help="list the CD lattice members")
    p.add_argument("--counts", action="store_true", help="include s_k subgroup counts")
    p.add_argument("--axioms", action="store_true", help="run the CD lattice axiom checks")
    _add_output(p)

    p = sub.add_parser("verify", help="run a claim suite")
    vsub = p.add_subparsers(dest="suite", required=True)
    q = vsub.add_parser("main-theorem", help="delta of every family member within an order budget")
    q.add_argument("--p", type=int, required=True, choices=(2, 3, 5))
    q.add_argument("--max-order", type=int, default=None)
    _add_output(q)
    q = vsub.add_parser("lemmas", help="every applicable lemma check on one group file")
    q.add_argument("file")
    _add_output(q, figure=False)
    q = vsub.add_parser("order16", help="delta over the fourteen groups of order 16")
    _add_output(q)

    p = sub.add_parser("scan", help="select the group files in a directory by a delta bound")
    p.add_argument("directory")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--mode", choices=("appendix", "delta"), default="appendix")
    p.add_argument("--nonabelian-only", action="store_true",
                   help="skip abelian groups")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    _add_output(p)
    return parser


def _emit(args, records, title, sort=True) -> int:
    text, doc = serialize_report(records, title, sort=sort)
    sys.stdout.write(dumps(doc) if args.json else text)
    if getattr(args, "csv", None):
        Path(args.csv).write_text(to_csv(doc), encoding="ascii", newline="\n")
    return EXIT_FAIL if doc["summary"]["failed"] else EXIT_OK


def _group_from_args(args) -> tuple[str, FiniteGroup]:
    if args.family:
        spec = fam.FamilySpec.parse(args.family)
        return spec.label, fam.construct_family(spec)
    if not args.file:
        raise CDError("give a group file or --family")
    g = read_group_file(args.file)
    return g.name, g


def cmd_construct(args) -> int:
    spec = fam.FamilySpec.parse(args.family)
    text = serialize_group(fam.construct_family(spec), spec.label)
    if args.output:
        Path(args.output).write_text(text, encoding="ascii", newline="\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_analyze(args) -> int:
    label, g = _group_from_args(args)
    lattice = enumerate_subgroups(g)
    report = cd_analyze(g, lattice, axioms=args.axioms)
    summary = summarize(label, g, lattice, report, counts=args.counts)
    text, doc = serialize_report([summary], f"analysis of {label}")
    if args.cd:
        members = [{"order": h.size, "members": list(h.members)} for h in report.cd_members]
        doc["cd_members"] = members
        text += "\nCD members:\n" + "".join(
            f"  order {m['order']}: {' '.join(map(str, m['members']))}\n" for m in members)
    if args.axioms:
        failed = [r for r in report.axiom_results.values() if not r.passed]
        text += "\naxioms:\n" + "".join(
            f"  {r.name}: {'pass' if r.passed else 'FAIL ' + str(r.witness)}\n"
            for r in report.axiom_results.values())
        doc["summary"]["failed"] = len(failed)
    sys.stdout.write(dumps(doc) if args.json else text)
    if args.csv:
        Path(args.csv).write_text(to_csv(doc), encoding="ascii", newline="\n")
    if args.figure:
        from .plotting import plot_hasse
        plot_hasse(lattice, report, args.figure, title=label)
    return EXIT_FAIL if doc["summary"].get("failed") else EXIT_OK


def _delta_figure(args, rows, bound, title, deltas_key="delta"):
    if not getattr(args, "figure", None):
        return
    from .plotting import plot_delta_bars
    labels = [r.group_label for r in rows]
    deltas = [r.details[deltas_key] for r in rows]
    selected = [r.details.get("selected", d <= bound) for r, d in zip(rows, deltas)]
    plot_delta_bars(labels, deltas, bound, args.figure, title, selected)


def cmd_verify(args) -> int:
    if args.suite == "main-theorem":
        records = vf.verify_family_delta(args.p, args.max_order)
        code = _emit(args, records, f"small-delta families, p = {args.p}")
        if args.figure:
            from .plotting import plot_delta_bars
            fam_rows = [r for r in records if r.claim_id.startswith("main-thm-family")]
            plot_delta_bars([r.group_label for r in fam_rows], [r.actual for r in fam_rows],
                            args.p ** 2 + args.p, args.figure, f"small-delta families, p = {args.p}")
        return code
    if args.suite == "order16":
        records = vf.scan_order16()
        code = _emit(args, records, "groups of order 16", sort=False)
        if args.figure:
            from .plotting import plot_delta_bars
            deltas = {label: vf.Analysis(label, g).delta for label, g in fam.order16_catalog()}
            plot_delta_bars(list(deltas), list(deltas.values()), 6, args.figure, "order 16")
        return code
    g = read_group_file(args.file)
    return _emit(args, lemma_claims(g.name, g), f"lemma checks for {g.name}")


def lemma_claims(label: str, g: FiniteGroup) -> list[vf.ClaimResult]:
    """Every claim whose hypotheses ``g`` meets."""
    if prime_power(g.order) is None:
        raise CDError(f"{label} is not a p-group")
    a = vf.Analysis(label, g)
    lattice = a.lattice
    p, n = g.p_and_n()
    out = list(vf.verify_counting_lemmas(g, label, lattice))
    out += vf.verify_cd_properties(g, label, lattice)
    report = cd_analyze(g, lattice, axioms=True)
    for r in report.axiom_results.values():
        out.append(vf.ClaimResult(f"cd-axiom-{r.name}", label, True, r.passed, r.passed,
                                  r.note if r.passed else f"witness {r.witness}"))
    if p == 2 and not g.is_abelian:
        out += vf.verify_two_group_lemmas([(label, g)])
    if p > 2 and is_metacyclic(g, lattice)[0]:
        out.append(vf.verify_metacyclic_interval(g, label, lattice))
    if p == 3 and 3 <= n <= 6 and is_maximal_class(g):
        out.append(vf.verify_maximal_class_3group(g, label, lattice))
    return out


def _scan_one(path: str, bound: int, mode: str, nonabelian_only: bool):
    g = read_group_file(path)
    return vf.appendix_scan([(Path(path).name, g)], bound, mode, nonabelian_only)


def cmd_scan(args) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        raise CDError(f"{directory} is not a directory")
    files = sorted(str(p) for p in directory.iterdir() if p.is_file() and not p.name.startswith("."))
    mode = vf.APPENDIX if args.mode == "appendix" else vf.TRUE_DELTA
    jobs = max(1, min(args.jobs, len(files) or 1))
    work = [(f, args.bound, mode, args.nonabelian_only) for f in files]
    if jobs == 1:
        chunks = [_scan_one(*w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_scan_one, *zip(*work)))
    rows = [r for chunk in chunks for r in chunk]
    rows.sort(key=lambda r: r.group_label)
    text, doc = serialize_report(rows, f"scan of {directory} (bound {args.bound}, mode {args.mode})")
    picked = [r.group_label for r in rows if r.details["selected"]]
    text += f"selected ({len(picked)}): {', '.join(picked) if picked else '-'}\n"
    doc["selected"] = picked
    sys.stdout.write(dumps(doc) if args.json else text)
    if args.csv:
        Path(args.csv).write_text(to_csv(doc), encoding="ascii", newline="\n")
    key = "K-S" if mode == vf.APPENDIX else "delta"
    _delta_figure(args, rows, args.bound, f"scan, mode {args.mode}", key)
    return EXIT_FAIL if doc["summary"]["failed"] else EXIT_OK


COMMANDS = {"construct": cmd_construct, "analyze": cmd_analyze, "verify": cmd_verify, "scan": cmd_scan}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (CDError, OSError) as exc:
        print(f"cdlattice: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
