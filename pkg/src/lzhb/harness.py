"""Experiment harness: height sweeps vs the LZ77 baseline, smallest-height-
for-ratio curves over prefixes, corpus ingestion, CSV emission.

All outputs are deterministic: parsers are deterministic, rows are
ordered by the input enumeration order, and floats are written with
fixed precision.  Wall-time measurement is off by default so repeated
runs produce bit-identical CSV; pass ``timings=True`` to fill the
``parse_ms`` column.
"""

from __future__ import annotations

import hashlib
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Optional, Sequence

from .access import height_stats
from .encodings import Encoding, Unbounded, format_height, verify
from .parsers import parse, parse_lz77

DEFAULT_GRID = (0, 1, 2, 4, 8, 16, 32, 64, 128, 256, Unbounded)
DEFAULT_RATIOS = (1.0, 1.2, 1.5, 2.0)
DEFAULT_VARIANTS = ("lzhb1", "lzhb2", "lzhb3", "lzhb4")

SWEEP_HEADER = ("file,sha256,variant,h,n,z_lz77,z_variant,ratio,"
                "max_height,mean_height,parse_ms")
CURVE_HEADER = "file,variant,prefix_len,target_ratio,h_min"


@dataclass
class SweepRow:
    file: str
    sha256: str
    variant: str
    h: float
    n: int
    z_lz77: int
    z_variant: int
    ratio: float
    max_height: int
    mean_height: float
    parse_ms: Optional[float]


@dataclass
class RatioCurveRow:
    file: str
    variant: str
    prefix_len: int
    target_ratio: float
    h_min: Optional[float]      # None = NotAchieved


@dataclass
class CorpusFile:
    name: str
    path: str
    data: bytes
    sha256: str


def _checked_parse(text: bytes, variant: str, h: float) -> Encoding:
    """Parse and verify; a verification failure is a parser bug, so the
    row is never emitted and the sweep aborts loudly."""
    enc = parse(text, variant, h)
    report = verify(enc, text, h)
    if not report.ok:
        raise RuntimeError(
            f"verification failed for variant={variant} h={format_height(h)}: "
            + "; ".join(report.problems))
    return enc


def sweep(text: bytes, variants: Sequence[str] = DEFAULT_VARIANTS,
          heights: Sequence[float] = DEFAULT_GRID, file_id: str = "-",
          timings: bool = False) -> list[SweepRow]:
    """One row per (variant, h) plus the LZ77 baseline row, every encoding
    verified before its row is emitted."""
    text = bytes(text)
    digest = hashlib.sha256(text).hexdigest()
    n = len(text)
    rows = []

    t0 = time.perf_counter()
    base = parse_lz77(text)
    base_ms = (time.perf_counter() - t0) * 1000.0
    report = verify(base, text, Unbounded)
    if not report.ok:
        raise RuntimeError("verification failed for lz77 baseline: "
                           + "; ".join(report.problems))
    z = base.z
    bmax, bmean, _ = height_stats(base)
    rows.append(SweepRow(file_id, digest, "lz77", Unbounded, n, z, z, 1.0,
                         bmax, bmean, base_ms if timings else None))

    for variant in variants:
        if variant == "lz77":
            continue
        for h in heights:
            t0 = time.perf_counter()
            enc = _checked_parse(text, variant, h)
            ms = (time.perf_counter() - t0) * 1000.0
            hmax, hmean, _ = height_stats(enc)
            rows.append(SweepRow(file_id, digest, variant, h, n, z, enc.z,
                                 enc.z / z if z else 1.0, hmax, hmean,
                                 ms if timings else None))
    return rows


def default_prefixes(n: int) -> list[int]:
    """Powers of two from 1024 up to n, plus n itself."""
    out = []
    p = 1024
    while p < n:
        out.append(p)
        p *= 2
    if n > 0:
        out.append(n)
    return out


def min_height_for_ratio(text: bytes, variant: str,
                         ratios: Sequence[float] = DEFAULT_RATIOS,
                         prefix_lengths: Optional[Sequence[int]] = None,
                         height_grid: Sequence[float] = DEFAULT_GRID,
                         file_id: str = "-") -> list[RatioCurveRow]:
    """For each prefix and target ratio, the smallest grid height whose
    parse stays within ratio * z_lz77(prefix) phrases.

    The grid is scanned in increasing order (Unbounded last); no binary
    search, since parse sizes are not guaranteed monotone in h.
    """
    text = bytes(text)
    if prefix_lengths is None:
        prefix_lengths = default_prefixes(len(text))
    grid = sorted(set(height_grid))
    rows = []
    for plen in prefix_lengths:
        sub = text[:plen]
        z = parse_lz77(sub).z
        sizes: dict[float, int] = {}
        for r in ratios:
            h_min = None
            for h in grid:
                if h not in sizes:
                    sizes[h] = _checked_parse(sub, variant, h).z
                if sizes[h] <= r * z:
                    h_min = h
                    break
            rows.append(RatioCurveRow(file_id, variant, plen, r, h_min))
    return rows


def ingest_corpus(paths: Iterable[str]) -> list[CorpusFile]:
    """Load corpus files as raw bytes; missing or unreadable paths produce
    a warning on stderr and are skipped."""
    corpus = []
    for path in paths:
        p = Path(path)
        try:
            data = p.read_bytes()
        except OSError as exc:
            print(f"warning: skipping {path}: {exc}", file=sys.stderr)
            continue
        corpus.append(CorpusFile(p.name, str(p), data,
                                 hashlib.sha256(data).hexdigest()))
    return corpus


def write_sweep_csv(rows: Iterable[SweepRow], out: IO[str]) -> None:
    out.write(SWEEP_HEADER + "\n")
    for r in rows:
        ms = "" if r.parse_ms is None else f"{r.parse_ms:.1f}"
        out.write(f"{r.file},{r.sha256},{r.variant},{format_height(r.h)},"
                  f"{r.n},{r.z_lz77},{r.z_variant},{r.ratio:.6f},"
                  f"{r.max_height},{r.mean_height:.4f},{ms}\n")


def write_curve_csv(rows: Iterable[RatioCurveRow], out: IO[str]) -> None:
    out.write(CURVE_HEADER + "\n")
    for r in rows:
        hm = "NotAchieved" if r.h_min is None else format_height(r.h_min)
        out.write(f"{r.file},{r.variant},{r.prefix_len},"
                  f"{r.target_ratio:g},{hm}\n")
