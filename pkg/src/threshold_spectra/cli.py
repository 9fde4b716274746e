"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 anomaly found
(theorem violations from ``verify`` or cospectral pairs from ``cospectral``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from . import analysis, catalog, exact
from .quotient import build_quotient
from .reference import reference_notes
from .spectral import full_spectrum
from .threshold_model import InvalidThresholdString, block_form, build_graph, parse_string, to_dot

FORMAT_ENV = "THRESHOLD_SPECTRA_FORMAT"
FORMATS = ("json", "csv", "text")

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_ANOMALY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _precision(text: str) -> int:
    p = int(text)
    if p < 1:
        raise argparse.ArgumentTypeError(f"--precision must be at least 1, got {p}")
    return p


def build_parser() -> argparse.ArgumentParser:
    default_fmt = os.environ.get(FORMAT_ENV, "text")
    if default_fmt not in FORMATS:
        default_fmt = "text"
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=default_fmt)
    common.add_argument("--precision", type=_precision, default=4, help="display digits")
    common.add_argument("--exact", action="store_true", help="emit rationals only, no floats")

    parser = _Parser(prog="threshold-spectra", description="Normalized spectra of threshold graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in [
        ("spectrum", "full normalized adjacency spectrum"),
        ("analyze", "spectrum, bounds, invariants and classification"),
        ("classify", "distinct eigenvalue count and string family"),
        ("quotient", "quotient matrices of the block partition"),
        ("charpoly", "exact characteristic polynomial"),
        ("export-dot", "graph in DOT syntax"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("string", help="binary creation string, e.g. 0011100011")
    p = sub.add_parser("enumerate", parents=[common], help="all connected threshold strings of order N")
    p.add_argument("--n", type=int, required=True)
    for name, help_, default in [
        ("cospectral", "exhaustive exact cospectral-mate search", 12),
        ("verify", "check every identity and bound over all small strings", 10),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--n-max", type=int, default=default)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--output", help="also write the JSON report to this file")
        if name == "cospectral":
            p.add_argument("--csv", dest="csv_path", help="write per-string catalog CSV here")
    return parser


def _rows_csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _fmt_value(v, args) -> str:
    if args.exact:
        return str(v)
    return f"{float(v):.{args.precision}f}"


def cmd_spectrum(args, out) -> int:
    ts = parse_string(args.string)
    sp = full_spectrum(ts)
    notes = reference_notes(ts, sp)
    if args.format == "json":
        doc = {"string": str(ts), "n": sp.n, "spectrum": sp.to_json_dict(args.precision, args.exact)}
        if notes:
            doc["notes"] = notes
        out.write(json.dumps(doc) + "\n")
    elif args.format == "csv":
        out.write(sp.to_csv(args.precision, args.exact))
    else:
        for e in sp.sorted_entries():
            label = str(e.value) if e.is_exact else "irrational"
            if args.exact and not e.is_exact:
                shown = "root of quotient polynomial"
            else:
                shown = f"{float(e.value):.{args.precision}f}"
            out.write(f"{shown:>12}  x{e.multiplicity}  {e.provenance:<13} {label if e.is_exact else ''}\n")
        for note in notes:
            out.write(f"note: {note}\n")
    return EXIT_OK


def cmd_analyze(args, out) -> int:
    ts = parse_string(args.string)
    report = analysis.analyze(ts, args.precision, args.exact)
    if args.format == "json":
        out.write(json.dumps(report) + "\n")
        return EXIT_OK
    flat = [(k, json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in report.items() if k != "spectrum"]
    if args.format == "csv":
        out.write(_rows_csv([("field", "value")] + flat))
    else:
        for k, v in flat:
            out.write(f"{k}: {v}\n")
    return EXIT_OK


def cmd_classify(args, out) -> int:
    ts = parse_string(args.string)
    res = analysis.classify(ts)
    doc = res.to_json_dict()
    if args.format == "json":
        out.write(json.dumps(doc) + "\n")
    elif args.format == "csv":
        out.write(_rows_csv([("distinct_count", "family"), (res.distinct_count, res.family)]))
    else:
        out.write(f"distinct eigenvalues: {res.distinct_count}\nfamily: {res.family}\n")
        if not res.consistent:
            out.write(f"note: family predicts {res.predicted_count} distinct eigenvalues\n")
    return EXIT_OK


def cmd_quotient(args, out) -> int:
    ts = parse_string(args.string)
    qs = build_quotient(block_form(ts))
    doc = qs.to_json_dict()
    if args.format == "json":
        out.write(json.dumps(doc) + "\n")
    elif args.format == "csv":
        rows = [("row",) + tuple(f"col{j + 1}" for j in range(qs.size))]
        rows += [(i + 1,) + tuple(r) for i, r in enumerate(doc["calB_pi"])]
        out.write(_rows_csv(rows))
    else:
        out.write(f"cells: {doc['cells']}\nD_pi: {doc['D_pi']}\nr: {doc['r']}\nB_pi:\n")
        for row in qs.B_pi:
            out.write("  " + " ".join(f"{x:>3}" for x in row) + "\n")
        out.write("calB_pi:\n")
        for row in doc["calB_pi"]:
            out.write("  " + " ".join(f"{x:>6}" for x in row) + "\n")
    return EXIT_OK


def cmd_charpoly(args, out) -> int:
    ts = parse_string(args.string)
    p = exact.full_char_poly(ts)
    doc = {
        "string": str(ts),
        "degree": p.degree,
        "coefficients": p.serialize(),
        "distinct_count": exact.distinct_count(p),
        "fingerprint_hash": p.fingerprint_hash(),
    }
    if args.format == "json":
        out.write(json.dumps(doc) + "\n")
    elif args.format == "csv":
        out.write(_rows_csv([("power", "coefficient")] + [(p.degree - i, c) for i, c in enumerate(doc["coefficients"])]))
    else:
        out.write(" ".join(doc["coefficients"]) + "\n")
    return EXIT_OK


def cmd_export_dot(args, out) -> int:
    ts = parse_string(args.string)
    out.write(to_dot(build_graph(ts), name=f"t{ts}"))
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    strings = [str(ts) for ts in catalog.enumerate_strings(args.n)]
    if args.format == "json":
        out.write(json.dumps(strings) + "\n")
    else:
        out.write("\n".join(strings) + "\n")
    return EXIT_OK


def _write_file(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def cmd_cospectral(args, out) -> int:
    t0 = time.perf_counter()
    reports = catalog.cospectral_search(args.n_max, workers=args.workers)
    elapsed = time.perf_counter() - t0
    text = catalog.reports_to_json(reports)
    if args.output:
        _write_file(args.output, text + "\n")
    if args.csv_path:
        body = "".join(r.to_csv().split("\n", 1)[1] if i else r.to_csv() for i, r in enumerate(reports))
        _write_file(args.csv_path, body)
    pairs = [p for r in reports for p in r.cospectral_pairs]
    if args.format == "json":
        out.write(text + "\n")
    elif args.format == "csv":
        out.write(_rows_csv([("n", "string_a", "string_b")] + [(len(a), a, b) for a, b in pairs]))
    else:
        for r in reports:
            out.write(f"n={r.n}: {r.strings_examined} strings, {len(r.fingerprint_groups)} spectra, "
                      f"{len(r.cospectral_pairs)} cospectral pairs\n")
        for a, b in pairs:
            out.write(f"cospectral: {a} {b}\n")
        print(f"search took {elapsed:.2f} s", file=sys.stderr)
    return EXIT_ANOMALY if pairs else EXIT_OK


def cmd_verify(args, out) -> int:
    rep = catalog.verify_theorems(args.n_max, workers=args.workers)
    text = json.dumps(rep.to_json_dict(), sort_keys=True, indent=1)
    if args.output:
        _write_file(args.output, text + "\n")
    v = rep.theorem_violations
    if args.format == "json":
        out.write(text + "\n")
    elif args.format == "csv":
        out.write(_rows_csv([("check", "string", "detail")] + v))
    else:
        for name, s, detail in v:
            out.write(f"violation [{name}] {s}: {detail}\n")
        out.write(f"{len(v)} violations across {rep.strings_examined} strings\n")
    return EXIT_ANOMALY if v else EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "analyze": cmd_analyze,
    "classify": cmd_classify,
    "quotient": cmd_quotient,
    "charpoly": cmd_charpoly,
    "export-dot": cmd_export_dot,
    "enumerate": cmd_enumerate,
    "cospectral": cmd_cospectral,
    "verify": cmd_verify,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(e, file=err)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (InvalidThresholdString, catalog.OrderTooSmall) as e:
        print(f"invalid input: {e}", file=err)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
