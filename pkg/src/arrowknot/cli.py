"""Command-line front end: ``arrowknot {compute,batch,verify,selfcheck}``.

Exit status: 0 success, 1 verification mismatch (or failed selfcheck),
2 input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence, TextIO

from . import selfcheck
from .bounds import GENUS_RULES, InvariantReport, full_report
from .diagram import GaussCodeError, parse_gauss
from .tables import (
    FORMATS,
    KnotRecord,
    TableFormatError,
    builtin_path,
    compare,
    format_reports,
    read_allow_list,
    read_fixtures,
    read_knot_table,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2


def _worker_count(threads: int) -> int:
    return os.cpu_count() or 1 if threads == 0 else max(1, threads)


def _report_one(args: tuple[KnotRecord, str]) -> InvariantReport:
    record, rule = args
    return full_report(record.code, record.name, genus_rule=rule)


def compute_reports(records: Sequence[KnotRecord], *, genus_rule: str = "distinct", threads: int = 1) -> list[InvariantReport]:
    """One report per record, in input order, optionally over a process pool."""
    jobs = [(r, genus_rule) for r in records]
    workers = min(_worker_count(threads), len(jobs))
    if workers <= 1:
        return [_report_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_report_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def cmd_compute(args, out: TextIO, err: TextIO) -> int:
    try:
        code = parse_gauss(args.code)
    except GaussCodeError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    workers = _worker_count(args.threads)
    report = full_report(code, args.name, genus_rule=args.genus_rule, workers=workers)
    out.write(format_reports([report], args.format, normalized=args.normalized, bounds_only=args.bounds_only))
    return EXIT_OK


def _load_table(path: str, err: TextIO):
    try:
        records, errors = read_knot_table(path)
    except TableFormatError as exc:
        print(f"error: {exc}", file=err)
        return None, None
    for e in errors:
        print(f"error: {e}", file=err)
    return records, errors


def cmd_batch(args, out: TextIO, err: TextIO) -> int:
    records, errors = _load_table(args.table, err)
    if records is None:
        return EXIT_INPUT
    reports = compute_reports(records, genus_rule=args.genus_rule, threads=args.threads)
    out.write(format_reports(reports, args.format, normalized=args.normalized, bounds_only=args.bounds_only))
    return EXIT_INPUT if errors else EXIT_OK


def cmd_verify(args, out: TextIO, err: TextIO) -> int:
    records, errors = _load_table(args.table, err)
    if records is None:
        return EXIT_INPUT
    try:
        fixtures = read_fixtures(args.fixtures)
        allowed = read_allow_list(args.allow_list) if args.allow_list else set()
    except TableFormatError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    wanted = [r for r in records if r.name in fixtures]
    reports = compute_reports(wanted, genus_rule=args.genus_rule, threads=args.threads)
    unexpected = 0
    for report in reports:
        for entry in compare(report, fixtures[report.name], normalized=args.normalized):
            tag = "allowed" if (entry.name, entry.field) in allowed else "MISMATCH"
            unexpected += tag == "MISMATCH"
            out.write(f"{entry}\t{tag}\n")
    known = {r.name for r in records}
    missing = [name for name in fixtures if name not in known]
    for name in missing:
        out.write(f"{name}\tmissing from knot table\n")
    checked = len(reports)
    out.write(f"# checked {checked} knot(s): {unexpected} unexpected mismatch(es), {len(missing)} missing\n")
    if errors:
        return EXIT_INPUT
    return EXIT_MISMATCH if unexpected or missing else EXIT_OK


def cmd_selfcheck(args, out: TextIO, err: TextIO) -> int:
    return selfcheck.run(lambda line: out.write(line + "\n"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arrowknot", description="Arrow polynomial of virtual knots from Gauss codes.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    poly = common.add_mutually_exclusive_group()
    poly.add_argument("--normalized", dest="normalized", action="store_true",
                      help="show (or compare) the writhe-normalized polynomial")
    poly.add_argument("--raw", dest="normalized", action="store_false",
                      help="show (or compare) the unnormalized polynomial (default)")
    common.set_defaults(normalized=False)
    common.add_argument("--bounds-only", action="store_true", help="omit polynomial fields")
    common.add_argument("--threads", type=int, default=1, metavar="N", help="worker processes; 0 means one per CPU")
    common.add_argument("--genus-rule", choices=GENUS_RULES, default="distinct")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="invariants of one Gauss code")
    p.add_argument("code", help='Gauss code such as "O1-O2-U1-U2-"; "" is the unknot')
    p.add_argument("--name", default="", help="label for the report")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("batch", parents=[common], help="invariants of every knot in a table file")
    p.add_argument("table", nargs="?", default=str(builtin_path("knots4.tsv")))
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("verify", parents=[common], help="compare computed invariants with tabulated fixtures")
    p.add_argument("table", nargs="?", default=str(builtin_path("knots4.tsv")))
    p.add_argument("fixtures", nargs="?", default=str(builtin_path("table_fixtures.tsv")))
    p.add_argument("--allow-list", metavar="FILE", help="name<TAB>field pairs whose mismatch is tolerated")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selfcheck", help="run built-in calibration and oracle checks")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return args.func(args, out, err)


if __name__ == "__main__":
    sys.exit(main())
