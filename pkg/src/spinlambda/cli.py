"""Command-line front end.

Exit codes: 0 success, 1 usage or I/O error, 2 invalid datum or input weight,
3 internal-consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import pairdatum, scan
from .norms import ConsistencyError, norm_report
from .pairdatum import DatumError, fmt_weight
from .weyl import DEFAULT_CAP, CapExceeded, prepare

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_source(p: argparse.ArgumentParser, required: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--preset", choices=pairdatum.PRESETS, help="built-in datum")
    src.add_argument("--datum", metavar="FILE", help="JSON datum file")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="Weyl group size limit (default %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spinlambda", description="Spin norm vs lambda norm of K-types.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("norms", help="norms and criterion for one K-type")
    _add_source(p)
    p.add_argument("coords", nargs="*", type=int, help="lattice coordinates of the highest weight")

    p = sub.add_parser("w1", help="list the transversal W^1")
    _add_source(p)

    p = sub.add_parser("scan", help="classify every K-type in a window")
    _add_source(p)
    p.add_argument("--window", required=True, help="lo:hi[,lo:hi...] per lattice coordinate")
    p.add_argument("--format", choices=scan.FORMATS, default="csv")
    p.add_argument("--out", metavar="PATH", help="write here instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker threads")

    p = sub.add_parser("validate", help="check a datum file")
    p.add_argument("file", nargs="?", help="JSON datum file")
    _add_source(p, required=False)

    p = sub.add_parser("export", help="write a preset as a datum file")
    p.add_argument("--preset", choices=pairdatum.PRESETS, required=True)
    p.add_argument("--out", metavar="PATH")
    return parser


def _merge_window(argv: Sequence[str]) -> list[str]:
    # "--window -4:4" would otherwise be read as two options
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--window":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--window={nxt}")
        else:
            out.append(tok)
    return out


def _load(args) -> pairdatum.PairDatum:
    if getattr(args, "preset", None):
        return pairdatum.build_preset(args.preset)
    path = args.datum or getattr(args, "file", None)
    if not path:
        raise UsageError("give --preset NAME or a datum file")
    try:
        return pairdatum.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _approx(x) -> str:
    return f"{x}  (~{float(x):.6f})"


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_norms(args) -> str:
    datum = _load(args)
    if len(args.coords) != datum.lattice.rank:
        raise UsageError(f"expected {datum.lattice.rank} lattice coordinates, got {len(args.coords)}")
    if not datum.lattice.admits(args.coords):
        raise DatumError(f"{tuple(args.coords)} violates the lattice congruences")
    mu = datum.lattice_point(args.coords)
    rep = norm_report(datum, mu, args.cap)
    v = rep.verdict
    lines = [
        f"datum: {datum.name or '(unnamed)'}",
        f"lattice coords: {tuple(args.coords)}",
        f"mu: {fmt_weight(mu)}",
        f"lambda_sq: {_approx(rep.lambda_sq)}",
        f"intermediate_sq: {_approx(rep.intermediate_sq)}",
        f"spin_sq: {_approx(rep.spin_sq)}",
        f"spin witness: {rep.spin_witness.word_str()}",
        f"lambda chamber: {rep.lambda_chamber.word_str()}",
    ]
    if v.cond_a:
        lines.append(f"cond_a: true (mu + 2 rho_c is orthogonal to root {fmt_weight(v.wall_root)})")
    else:
        lines.append("cond_a: false (mu + 2 rho_c is regular)")
    if v.cond_b:
        lines.append("cond_b: true")
        for w, root in v.violations:
            lines.append(f"  w = {w.word_str()}: mu - w rho + rho_c pairs negatively with {fmt_weight(root)}")
    else:
        lines.append(f"cond_b: false (witness w0 = {v.witness.word_str()})")
    lines.append("verdict: " + ("strict (unpainted)" if v.strict else "equality (painted)"))
    return "\n".join(lines) + "\n"


def _fmt_matrix(m) -> list[str]:
    return ["    [" + " ".join(str(x).rjust(5) for x in row) + " ]" for row in m]


def cmd_w1(args) -> str:
    datum = _load(args)
    wd = prepare(datum, args.cap)
    lines = [
        f"datum: {datum.name or '(unnamed)'}",
        f"|W(g)| = {len(wd.W_g)}, |W(k)| = {len(wd.W_k)}",
        f"#W1 = {len(wd.W1)}",
    ]
    for i, w in enumerate(wd.W1):
        lines.append(f"[{i}] {w.word_str()}   w rho = {fmt_weight(w(wd.roots.rho))}")
        lines += _fmt_matrix(w.matrix)
    return "\n".join(lines) + "\n"


def cmd_scan(args) -> str:
    datum = _load(args)
    try:
        window = scan.WindowSpec.parse(args.window)
    except scan.WindowError as exc:
        raise UsageError(str(exc)) from exc
    try:
        records = scan.classify(datum, window, jobs=max(1, args.jobs), cap=args.cap)
    except scan.WindowError as exc:
        raise UsageError(str(exc)) from exc
    summary = scan.partition_report(records, datum)
    try:
        return scan.emit(records, args.format, summary=summary)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_validate(args) -> tuple[str, int]:
    datum = _load(args)
    problems = pairdatum.check(datum)
    if problems:
        return "invalid\n" + "".join(f"  - {p}\n" for p in problems), EXIT_INVALID
    rd = pairdatum.validate(datum)
    wd = prepare(datum, args.cap)
    lines = [
        "valid",
        f"name: {datum.name or '(unnamed)'}",
        "simple roots of g: " + ", ".join(fmt_weight(a) for a in rd.simple_g),
        "simple roots of k: " + (", ".join(fmt_weight(a) for a in rd.simple_k) or "(none)"),
        f"rho: {fmt_weight(rd.rho)}",
        f"rho_c: {fmt_weight(rd.rho_c)}",
        f"|W(g)| = {len(wd.W_g)}, |W(k)| = {len(wd.W_k)}, #W1 = {len(wd.W1)}",
    ]
    return "\n".join(lines) + "\n", EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = _merge_window(sys.argv[1:] if argv is None else list(argv))
    args = build_parser().parse_args(argv)
    try:
        if args.command == "norms":
            _write(cmd_norms(args), None)
        elif args.command == "w1":
            _write(cmd_w1(args), None)
        elif args.command == "scan":
            _write(cmd_scan(args), args.out)
        elif args.command == "validate":
            text, code = cmd_validate(args)
            sys.stdout.write(text)
            return code
        elif args.command == "export":
            text = json.dumps(pairdatum.to_dict(pairdatum.build_preset(args.preset)), indent=2) + "\n"
            _write(text, args.out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DatumError, CapExceeded) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
