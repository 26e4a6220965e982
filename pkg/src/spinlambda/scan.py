"""Window scans over K-type lattices, chamber partition, and figure output."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence, TextIO, Tuple

from . import chamber, linalg
from .norms import norm_report
from .pairdatum import PairDatum, Weight
from .weyl import DEFAULT_CAP, compute_W1_mu, is_dominant, prepare

DEFAULT_WINDOW_CAP = 10**6
FORMATS = ("csv", "json", "ascii", "svg")


class WindowError(ValueError):
    pass


@dataclass(frozen=True)
class WindowSpec:
    bounds: Tuple[Tuple[int, int], ...]
    dominant_only: bool = True
    cap: int = DEFAULT_WINDOW_CAP

    def __post_init__(self):
        bounds = tuple((int(lo), int(hi)) for lo, hi in self.bounds)
        for lo, hi in bounds:
            if lo > hi:
                raise WindowError(f"empty range {lo}:{hi}")
        object.__setattr__(self, "bounds", bounds)

    @classmethod
    def parse(cls, text: str, **kw) -> "WindowSpec":
        """``"lo:hi[,lo:hi...]"``"""
        bounds = []
        for part in text.split(","):
            try:
                lo, hi = part.split(":")
                bounds.append((int(lo), int(hi)))
            except ValueError:
                raise WindowError(f"bad window range {part!r}; expected lo:hi") from None
        return cls(tuple(bounds), **kw)

    @property
    def size(self) -> int:
        n = 1
        for lo, hi in self.bounds:
            n *= hi - lo + 1
        return n


@dataclass(frozen=True)
class KTypeRecord:
    coords: Tuple[int, ...]
    mu: Weight
    lambda_sq: Fraction
    intermediate_sq: Fraction
    spin_sq: Fraction
    painted: bool
    cond_a: bool
    cond_b: bool
    chamber: int
    boundary: bool


def window_points(datum: PairDatum, window: WindowSpec) -> list[Tuple[Tuple[int, ...], Weight]]:
    """``(coords, mu)`` for admissible lattice points in ``window``, lexicographic in coords."""
    if len(window.bounds) != datum.lattice.rank:
        raise WindowError(
            f"window has {len(window.bounds)} ranges but the lattice has rank {datum.lattice.rank}"
        )
    if window.size > window.cap:
        raise WindowError(f"window holds {window.size} grid points, above the cap {window.cap}")
    out = []
    for coords in product(*(range(lo, hi + 1) for lo, hi in window.bounds)):
        if not datum.lattice.admits(coords):
            continue
        mu = datum.lattice_point(coords)
        if window.dominant_only and not is_dominant(datum, mu, datum.pos_roots_k):
            continue
        out.append((coords, mu))
    return out


def enumerate_window(datum: PairDatum, window: WindowSpec) -> list[Weight]:
    return [mu for _, mu in window_points(datum, window)]


def make_record(datum: PairDatum, coords: Sequence[int], cap: int = DEFAULT_CAP) -> KTypeRecord:
    mu = datum.lattice_point(coords)
    rep = norm_report(datum, mu, cap)
    wd = prepare(datum, cap)
    first = compute_W1_mu(datum, mu, cap)[0]
    lam = linalg.add(mu, linalg.scale(2, wd.roots.rho_c))
    return KTypeRecord(
        coords=tuple(coords),
        mu=mu,
        lambda_sq=rep.lambda_sq,
        intermediate_sq=rep.intermediate_sq,
        spin_sq=rep.spin_sq,
        painted=rep.painted,
        cond_a=rep.verdict.cond_a,
        cond_b=rep.verdict.cond_b,
        chamber=wd.W1.index(first),
        boundary=not chamber.is_regular(lam, datum.pos_roots_g, datum.gram),
    )


def classify(
    datum: PairDatum, window: WindowSpec, jobs: int = 1, cap: int = DEFAULT_CAP
) -> list[KTypeRecord]:
    """One record per admissible window point, sorted by lattice coordinates."""
    prepare(datum, cap)  # build the groups once, before any fan-out
    coords = [c for c, _ in window_points(datum, window)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(lambda c: make_record(datum, c, cap), coords))
    else:
        records = [make_record(datum, c, cap) for c in coords]
    return sorted(records, key=lambda r: r.coords)


@dataclass(frozen=True)
class PartitionReport:
    painted: Tuple[int, ...]  # per W^1 element, in W^1 order
    words: Tuple[str, ...]
    unpainted: int

    @property
    def nonempty(self) -> int:
        return sum(1 for n in self.painted if n)

    def to_dict(self) -> dict:
        return {
            "chambers": [
                {"index": i, "word": w, "painted": n}
                for i, (w, n) in enumerate(zip(self.words, self.painted))
            ],
            "unpainted": self.unpainted,
            "nonempty_painted_chambers": self.nonempty,
        }


def partition_report(records: Sequence[KTypeRecord], datum: Optional[PairDatum] = None) -> PartitionReport:
    """Painted counts per W^1 chamber (of mu + 2 rho_c) plus the unpainted count.

    Without ``datum`` only chambers up to the highest index seen are listed.
    """
    if datum is not None:
        words = tuple(w.word_str() for w in prepare(datum).W1)
    else:
        words = tuple(str(i) for i in range(max((r.chamber for r in records), default=-1) + 1))
    counts = [0] * len(words)
    unpainted = 0
    for r in records:
        if r.painted:
            counts[r.chamber] += 1
        else:
            unpainted += 1
    return PartitionReport(tuple(counts), words, unpainted)


# -- emitters ---------------------------------------------------------------


def _record_dict(r: KTypeRecord) -> dict:
    return {
        "coords": list(r.coords),
        "mu": [str(x) for x in r.mu],
        "lambda_sq": str(r.lambda_sq),
        "intermediate_sq": str(r.intermediate_sq),
        "spin_sq": str(r.spin_sq),
        "painted": r.painted,
        "cond_a": r.cond_a,
        "cond_b": r.cond_b,
        "chamber": r.chamber,
        "boundary": r.boundary,
    }


def _emit_csv(records, summary, rank) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow([f"c{i + 1}" for i in range(rank)] + [
        "lambda_sq", "intermediate_sq", "spin_sq", "painted", "cond_a", "cond_b", "chamber"
    ])
    for r in records:
        out.writerow(list(r.coords) + [
            str(r.lambda_sq), str(r.intermediate_sq), str(r.spin_sq),
            int(r.painted), int(r.cond_a), int(r.cond_b), r.chamber,
        ])
    if summary is not None:
        buf.write("\n")
        out.writerow(["chamber", "word", "painted"])
        for i, (w, n) in enumerate(zip(summary.words, summary.painted)):
            out.writerow([i, w, n])
        out.writerow(["unpainted", "", summary.unpainted])
    return buf.getvalue()


def _emit_json(records, summary) -> str:
    doc = {"records": [_record_dict(r) for r in records]}
    if summary is not None:
        doc["summary"] = summary.to_dict()
    return json.dumps(doc, indent=2) + "\n"


def _grid(records):
    """Map coords -> painted, and the x/y ranges, treating rank 1 as a single row."""
    cells = {}
    for r in records:
        x, y = (r.coords[0], 0) if len(r.coords) == 1 else r.coords
        cells[(x, y)] = r.painted
    xs = [x for x, _ in cells]
    ys = [y for _, y in cells]
    return cells, (min(xs), max(xs)), (min(ys), max(ys))


def _summary_lines(summary) -> list[str]:
    lines = [f"painted chambers: {summary.nonempty} of {len(summary.painted)}"]
    for i, (w, n) in enumerate(zip(summary.words, summary.painted)):
        lines.append(f"  chamber {i} [{w}]: {n} painted")
    lines.append(f"  unpainted: {summary.unpainted}")
    return lines


def _emit_ascii(records, summary, rank) -> str:
    if not records:
        return ""
    cells, (x0, x1), (y0, y1) = _grid(records)
    cw = max(len(str(x)) for x in (x0, x1)) + 1
    yw = max(len(str(y)) for y in (y0, y1)) if rank == 2 else 0
    lines = ["* painted (equality)   o unpainted (strict)"]
    for y in range(y1, y0 - 1, -1):
        label = str(y).rjust(yw) if rank == 2 else ""
        row = "".join(
            ("*" if cells[(x, y)] else "o").rjust(cw) if (x, y) in cells else " " * cw
            for x in range(x0, x1 + 1)
        )
        lines.append(f"{label} |{row}".rstrip())
    lines.append(" " * yw + " +" + "-" * (cw * (x1 - x0 + 1)))
    lines.append(" " * yw + "  " + "".join(str(x).rjust(cw) for x in range(x0, x1 + 1)))
    if summary is not None:
        lines += _summary_lines(summary)
    return "\n".join(lines) + "\n"


def _emit_svg(records, summary, rank) -> str:
    step, margin, radius = 20, 40, 5
    head = '<?xml version="1.0" encoding="UTF-8"?>\n'
    if not records:
        return head + (
            '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{2 * margin}" height="{2 * margin}"></svg>\n'
        )
    cells, (x0, x1), (y0, y1) = _grid(records)
    width = 2 * margin + step * (x1 - x0)
    height = 2 * margin + step * (y1 - y0)

    def px(x, y):
        return margin + step * (x - x0), height - margin - step * (y - y0)

    parts = [
        head,
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}">\n',
    ]
    if summary is not None:
        parts.append("<desc>" + "; ".join(s.strip() for s in _summary_lines(summary)) + "</desc>\n")
    bx, by = px(x0, y0)
    parts.append(
        f'<line x1="{bx - step // 2}" y1="{by + step // 2}" x2="{width - margin + step // 2}" '
        f'y2="{by + step // 2}" stroke="gray"/>\n'
    )
    if rank == 2:
        parts.append(
            f'<line x1="{bx - step // 2}" y1="{by + step // 2}" x2="{bx - step // 2}" '
            f'y2="{margin - step // 2}" stroke="gray"/>\n'
        )
    for x in range(x0, x1 + 1):
        cx, _ = px(x, y0)
        parts.append(
            f'<text x="{cx}" y="{by + step + 8}" font-size="9" text-anchor="middle">{x}</text>\n'
        )
    if rank == 2:
        for y in range(y0, y1 + 1):
            _, cy = px(x0, y)
            parts.append(
                f'<text x="{bx - step}" y="{cy + 3}" font-size="9" text-anchor="end">{y}</text>\n'
            )
    for (x, y), painted in sorted(cells.items()):
        cx, cy = px(x, y)
        style = 'fill="black"' if painted else 'fill="none" stroke="black"'
        parts.append(f'<circle cx="{cx}" cy="{cy}" r="{radius}" {style}/>\n')
    parts.append("</svg>\n")
    return "".join(parts)


def emit(
    records: Sequence[KTypeRecord],
    fmt: str,
    sink: Optional[TextIO] = None,
    summary: Optional[PartitionReport] = None,
) -> str:
    """Serialize ``records`` as csv, json, ascii or svg; write to ``sink`` if given."""
    if fmt not in FORMATS:
        raise ValueError(f"unsupported format {fmt!r}; choose from {', '.join(FORMATS)}")
    rank = len(records[0].coords) if records else 0
    if fmt in ("ascii", "svg") and rank > 2:
        raise ValueError(f"{fmt} output needs lattice rank <= 2, got {rank}")
    if fmt == "csv":
        text = _emit_csv(records, summary, rank)
    elif fmt == "json":
        text = _emit_json(records, summary)
    elif fmt == "ascii":
        text = _emit_ascii(records, summary, rank)
    else:
        text = _emit_svg(records, summary, rank)
    if sink is not None:
        sink.write(text)
    return text
