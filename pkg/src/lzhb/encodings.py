"""Phrase data model: decoding, height profiles, verification, serialization.

An encoding is an ordered list of phrases that concatenate to a text.
Standard encodings use Literal/Copy phrases, modified encodings use
Run/PeriodicCopy phrases; the two families never mix.  All positions in
the public model are 1-based, matching the on-disk format.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

Unbounded = math.inf

FORMAT_VERSION = "v1"


class MalformedEncodingError(ValueError):
    """An encoding violates a structural invariant (bad length, source, mix)."""


class SerializationError(ValueError):
    """The textual form of an encoding cannot be parsed."""


@dataclass(frozen=True)
class Literal:
    """A single explicit symbol."""

    char: int

    length = 1


@dataclass(frozen=True)
class Copy:
    """``length`` symbols copied from the earlier occurrence at ``src``.

    The source window may overlap the phrase itself (self-reference): the
    copy reads ``T[src + ((t) mod (b - src))]`` for offset ``t`` where
    ``b`` is the phrase start.
    """

    length: int
    src: int


@dataclass(frozen=True)
class Run:
    """``length`` repetitions of one symbol (period-1 phrase)."""

    length: int
    char: int


@dataclass(frozen=True)
class PeriodicCopy:
    """``length`` symbols obtained by tiling the period-``period`` window
    ``T[src .. src + period)``, which lies strictly before the phrase."""

    length: int
    src: int
    period: int


Phrase = Union[Literal, Copy, Run, PeriodicCopy]

_STANDARD = (Literal, Copy)
_MODIFIED = (Run, PeriodicCopy)


class Encoding:
    """An immutable parsed representation of a text.

    Attributes:
        variant:  short name of the producing parser ("lz77", "lzhb3", ...).
        h:        the height bound the parse was computed under
                  (``Unbounded`` for no bound).
        phrases:  tuple of phrases, all standard or all modified.
        starts:   1-based start position of each phrase.
        n:        total decoded length.
    """

    __slots__ = ("variant", "h", "phrases", "starts", "n")

    def __init__(self, variant: str, h: float, phrases: Iterable[Phrase]):
        phrases = tuple(phrases)
        if h != Unbounded and (not isinstance(h, int) or h < 0):
            raise MalformedEncodingError(
                f"height bound must be a non-negative integer or Unbounded, "
                f"got {h!r}")
        self.variant = variant
        self.h = h
        self.phrases = phrases
        kinds = {type(p) for p in phrases}
        if kinds & set(_STANDARD) and kinds & set(_MODIFIED):
            raise MalformedEncodingError(
                "standard and modified phrases mixed in one encoding")
        starts = []
        b = 1
        for j, p in enumerate(phrases):
            starts.append(b)
            self._check_phrase(j, p, b)
            b += p.length
        self.starts = tuple(starts)
        self.n = b - 1

    @staticmethod
    def _check_phrase(j: int, p: Phrase, b: int) -> None:
        if isinstance(p, Literal):
            if not 0 <= p.char <= 255:
                raise MalformedEncodingError(f"phrase {j}: literal symbol out of range")
        elif isinstance(p, Run):
            if p.length < 1:
                raise MalformedEncodingError(f"phrase {j}: run length must be >= 1")
            if not 0 <= p.char <= 255:
                raise MalformedEncodingError(f"phrase {j}: run symbol out of range")
        elif isinstance(p, Copy):
            if p.length < 2:
                raise MalformedEncodingError(f"phrase {j}: copy length must be >= 2")
            if not 1 <= p.src < b:
                raise MalformedEncodingError(
                    f"phrase {j}: copy source {p.src} not in [1, {b})")
        elif isinstance(p, PeriodicCopy):
            if p.period < 2:
                raise MalformedEncodingError(
                    f"phrase {j}: periodic copy period must be >= 2")
            if p.length < p.period:
                raise MalformedEncodingError(
                    f"phrase {j}: periodic copy shorter than its period")
            if p.src < 1 or p.src + p.period > b:
                raise MalformedEncodingError(
                    f"phrase {j}: period window [{p.src}, {p.src + p.period}) "
                    f"not strictly before position {b}")
        else:
            raise MalformedEncodingError(f"phrase {j}: unknown phrase type {type(p)!r}")

    @property
    def z(self) -> int:
        """Number of phrases."""
        return len(self.phrases)

    @property
    def modified(self) -> bool:
        return any(isinstance(p, _MODIFIED) for p in self.phrases)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Encoding):
            return NotImplemented
        return (self.variant == other.variant and self.h == other.h
                and self.phrases == other.phrases)

    def __hash__(self) -> int:
        return hash((self.variant, self.h, self.phrases))

    def __repr__(self) -> str:
        return (f"Encoding(variant={self.variant!r}, h={self.h!r}, "
                f"z={self.z}, n={self.n})")


def decode(encoding: Encoding) -> bytes:
    """Reconstruct the text an encoding represents."""
    out = bytearray()
    for j, p in enumerate(encoding.phrases):
        b0 = len(out)
        if isinstance(p, Literal):
            out.append(p.char)
        elif isinstance(p, Run):
            out.extend(bytes([p.char]) * p.length)
        elif isinstance(p, Copy):
            s0 = p.src - 1
            w = b0 - s0
            if p.length <= w:
                out.extend(out[s0:s0 + p.length])
            else:
                window = bytes(out[s0:b0])
                reps = -(-p.length // w)
                out.extend((window * reps)[:p.length])
        else:  # PeriodicCopy
            s0 = p.src - 1
            if s0 + p.period > b0:
                raise MalformedEncodingError(
                    f"phrase {j}: period window exceeds decoded prefix")
            window = bytes(out[s0:s0 + p.period])
            reps = -(-p.length // p.period)
            out.extend((window * reps)[:p.length])
    return bytes(out)


def compute_heights(encoding: Encoding) -> list[int]:
    """Per-position heights of the referencing forest, left to right.

    Literal and Run positions have height 0.  A copied position is one
    higher than the source position it reads, with self-referencing
    copies resolved by tiling the window ``[src, b)``.
    """
    H: list[int] = []
    for p in encoding.phrases:
        b0 = len(H)
        if isinstance(p, (Literal, Run)):
            H.extend([0] * p.length)
        elif isinstance(p, Copy):
            s0 = p.src - 1
            win = [v + 1 for v in H[s0:min(s0 + p.length, b0)]]
            w = len(win)
            if p.length <= w:
                H.extend(win[:p.length])
            else:
                reps = -(-p.length // w)
                H.extend((win * reps)[:p.length])
        else:  # PeriodicCopy
            s0 = p.src - 1
            win = [v + 1 for v in H[s0:s0 + p.period]]
            reps = -(-p.length // p.period)
            H.extend((win * reps)[:p.length])
    return H


def _min_period(w: bytes) -> int:
    """Smallest p with w[i] == w[i+p] for all valid i (border array)."""
    m = len(w)
    if m == 0:
        return 0
    border = [0] * m
    k = 0
    for i in range(1, m):
        while k and w[k] != w[i]:
            k = border[k - 1]
        if w[k] == w[i]:
            k += 1
        border[i] = k
    return m - border[m - 1]


@dataclass
class VerifyReport:
    """Outcome of checking an encoding against the text it claims to encode."""

    decodes_equal: bool
    sources_match: bool
    periods_valid: bool
    max_height: int
    height_ok: bool
    z: int
    problems: list[str]

    @property
    def ok(self) -> bool:
        return (self.decodes_equal and self.sources_match and self.periods_valid
                and self.height_ok)


def verify(encoding: Encoding, expected: bytes, h: float | None = None) -> VerifyReport:
    """Check an encoding end to end; failures are reported, not raised.

    Checks: the decoded text equals ``expected``; every copy source window
    actually matches the phrase content; every periodic copy uses the
    minimum period of its phrase; the height profile respects ``h``
    (defaults to the bound recorded on the encoding).
    """
    if h is None:
        h = encoding.h
    problems: list[str] = []
    text = decode(encoding)
    decodes_equal = text == bytes(expected)
    if not decodes_equal:
        problems.append(
            f"decoded text differs (got {len(text)} bytes, "
            f"expected {len(expected)})")

    sources_match = True
    periods_valid = True
    for j, (p, b) in enumerate(zip(encoding.phrases, encoding.starts)):
        b0 = b - 1
        if isinstance(p, Copy):
            s0 = p.src - 1
            if text[s0:s0 + p.length] != text[b0:b0 + p.length]:
                sources_match = False
                problems.append(f"phrase {j}: copy content does not match source")
        elif isinstance(p, PeriodicCopy):
            s0 = p.src - 1
            if text[s0:s0 + p.period] != text[b0:b0 + p.period]:
                sources_match = False
                problems.append(f"phrase {j}: period window does not match source")
            actual = _min_period(text[b0:b0 + p.length])
            if actual != p.period:
                periods_valid = False
                problems.append(
                    f"phrase {j}: declared period {p.period}, "
                    f"minimum period is {actual}")

    H = compute_heights(encoding)
    max_height = max(H) if H else 0
    height_ok = max_height <= h
    if not height_ok:
        problems.append(f"max height {max_height} exceeds bound {h}")

    return VerifyReport(decodes_equal, sources_match, periods_valid,
                        max_height, height_ok, encoding.z, problems)


def format_height(h: float) -> str:
    return "inf" if h == Unbounded else str(int(h))


def parse_height(token: str) -> float:
    if token == "inf":
        return Unbounded
    try:
        h = int(token)
    except ValueError:
        raise SerializationError(f"bad height {token!r}") from None
    if h < 0:
        raise SerializationError(f"bad height {token!r}")
    return h


def serialize(encoding: Encoding) -> str:
    """Render an encoding in its textual interchange form.

    Line 1 is ``LZHB <variant> v1 n=<n> h=<h> z=<z>``; each following
    line is one phrase: ``L <byte>``, ``C <len> <src>``, ``R <len> <byte>``
    or ``P <len> <src> <period>``.  Positions are 1-based.
    """
    lines = [
        f"LZHB {encoding.variant} {FORMAT_VERSION} n={encoding.n} "
        f"h={format_height(encoding.h)} z={encoding.z}"
    ]
    for p in encoding.phrases:
        if isinstance(p, Literal):
            lines.append(f"L {p.char}")
        elif isinstance(p, Copy):
            lines.append(f"C {p.length} {p.src}")
        elif isinstance(p, Run):
            lines.append(f"R {p.length} {p.char}")
        else:
            lines.append(f"P {p.length} {p.src} {p.period}")
    return "\n".join(lines) + "\n"


def _phrase_ints(lineno: int, fields: Sequence[str], count: int) -> list[int]:
    if len(fields) != count:
        raise SerializationError(
            f"line {lineno}: expected {count} integer field(s), got {len(fields)}")
    out = []
    for f in fields:
        try:
            out.append(int(f))
        except ValueError:
            raise SerializationError(
                f"line {lineno}: bad integer {f!r}") from None
    return out


def deserialize(data: str) -> Encoding:
    """Parse the textual form back into an ``Encoding``.

    Raises ``SerializationError`` with a line number on any format
    problem, and ``MalformedEncodingError`` if the phrase list itself is
    invalid.
    """
    lines = data.splitlines()
    if not lines:
        raise SerializationError("line 1: empty input")
    head = lines[0].split()
    if len(head) != 6 or head[0] != "LZHB":
        raise SerializationError("line 1: bad header")
    if head[2] != FORMAT_VERSION:
        raise SerializationError(
            f"line 1: unsupported format version {head[2]!r}")
    variant = head[1]
    fields = {}
    for token in head[3:]:
        key, _, value = token.partition("=")
        if not value:
            raise SerializationError(f"line 1: bad header field {token!r}")
        fields[key] = value
    if set(fields) != {"n", "h", "z"}:
        raise SerializationError("line 1: header must carry n=, h=, z=")
    try:
        h = parse_height(fields["h"])
    except SerializationError as exc:
        raise SerializationError(f"line 1: {exc}") from None
    try:
        n = int(fields["n"])
        z = int(fields["z"])
    except ValueError:
        raise SerializationError("line 1: bad n= or z= value") from None

    phrases: list[Phrase] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            raise SerializationError(f"line {lineno}: blank phrase line")
        parts = line.split()
        kind, rest = parts[0], parts[1:]
        if kind == "L":
            (char,) = _phrase_ints(lineno, rest, 1)
            phrases.append(Literal(char))
        elif kind == "C":
            length, src = _phrase_ints(lineno, rest, 2)
            phrases.append(Copy(length, src))
        elif kind == "R":
            length, char = _phrase_ints(lineno, rest, 2)
            phrases.append(Run(length, char))
        elif kind == "P":
            length, src, period = _phrase_ints(lineno, rest, 3)
            phrases.append(PeriodicCopy(length, src, period))
        else:
            raise SerializationError(f"line {lineno}: unknown phrase kind {kind!r}")

    enc = Encoding(variant, h, phrases)
    if enc.n != n:
        raise SerializationError(
            f"header claims n={n} but phrases sum to {enc.n}")
    if enc.z != z:
        raise SerializationError(
            f"header claims z={z} but {enc.z} phrases follow")
    return enc
