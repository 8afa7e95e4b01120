"""Height-bounded LZ-style compression with random access.

The package provides four greedy parsers (lzhb1..lzhb4) that trade
compression ratio against the height of the referencing forest, a
classic LZ77 parser as baseline, exact brute-force parsers for tiny
inputs, bounded-step random access over parsed files, and an experiment
harness plus command line front end.
"""

from .encodings import (
    Copy,
    Encoding,
    Literal,
    MalformedEncodingError,
    PeriodicCopy,
    Run,
    SerializationError,
    Unbounded,
    compute_heights,
    decode,
    deserialize,
    serialize,
    verify,
)
from .parsers import (
    gen_greedy_adversary,
    gen_tall_lz77_string,
    gen_versioned,
    optimal_bruteforce,
    parse,
    parse_lz77,
    parse_lzhb1,
    parse_lzhb2,
    parse_lzhb3,
    parse_lzhb4,
)
from .access import RandomAccessIndex, height_stats
from .text_index import (
    MinPeriodTracker,
    OfflineIndex,
    OnlineIndex,
    naive_lmocc,
    naive_lpf,
    naive_min_period,
    naive_prefix_query,
    window_leftmost_occurrence,
)

__version__ = "0.1.0"

__all__ = [
    "Copy",
    "Encoding",
    "Literal",
    "MalformedEncodingError",
    "MinPeriodTracker",
    "OfflineIndex",
    "OnlineIndex",
    "PeriodicCopy",
    "RandomAccessIndex",
    "Run",
    "SerializationError",
    "Unbounded",
    "compute_heights",
    "decode",
    "deserialize",
    "gen_greedy_adversary",
    "gen_tall_lz77_string",
    "gen_versioned",
    "height_stats",
    "naive_lmocc",
    "naive_lpf",
    "naive_min_period",
    "naive_prefix_query",
    "optimal_bruteforce",
    "parse",
    "parse_lz77",
    "parse_lzhb1",
    "parse_lzhb2",
    "parse_lzhb3",
    "parse_lzhb4",
    "serialize",
    "verify",
    "window_leftmost_occurrence",
]
