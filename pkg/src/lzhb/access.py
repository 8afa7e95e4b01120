"""Random access to encoded texts by walking the referencing forest.

The index keeps only the phrase list and its start positions (O(z)
entries, nothing proportional to the text length).  Each access follows
source links until it lands on a literal or run position, so the step
count equals the position's height and is bounded by the encoding's
height bound.
"""

from __future__ import annotations

from bisect import bisect_right

from .encodings import Copy, Encoding, Literal, PeriodicCopy, Run, compute_heights


class RandomAccessIndex:
    """Bounded-step random access over an encoding."""

    __slots__ = ("_starts", "_phrases", "n")

    def __init__(self, encoding: Encoding):
        self._starts = list(encoding.starts)
        self._phrases = encoding.phrases
        self.n = encoding.n

    def access(self, i: int) -> tuple[int, int]:
        """Symbol at 1-based position i and the number of chain steps
        taken to reach its literal/run root."""
        if not 1 <= i <= self.n:
            raise ValueError(f"position {i} out of range 1..{self.n}")
        starts = self._starts
        phrases = self._phrases
        steps = 0
        while True:
            j = bisect_right(starts, i) - 1
            p = phrases[j]
            if isinstance(p, (Literal, Run)):
                return p.char, steps
            b = starts[j]
            if isinstance(p, Copy):
                i = p.src + (i - b) % (b - p.src)
            else:
                i = p.src + (i - b) % p.period
            steps += 1

    def extract(self, i: int, length: int) -> bytes:
        """Decode ``length`` symbols starting at 1-based position i."""
        if length < 0 or (length > 0 and not 1 <= i <= self.n - length + 1):
            raise ValueError(
                f"range (i={i}, length={length}) out of range for n={self.n}")
        return bytes(self.access(i + t)[0] for t in range(length))


def height_stats(encoding: Encoding) -> tuple[int, float, dict[int, int]]:
    """(max height, mean height, height histogram) of an encoding."""
    H = compute_heights(encoding)
    if not H:
        return 0, 0.0, {}
    hist: dict[int, int] = {}
    for v in H:
        hist[v] = hist.get(v, 0) + 1
    return max(H), sum(H) / len(H), dict(sorted(hist.items()))
