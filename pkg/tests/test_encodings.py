"""Phrase types, decoding, heights, verification, and the text format."""

import math

import pytest

from lzhb import (
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

WORKED = b"ababacbabac"
WORKED_STD = Encoding("lz77", Unbounded, [
    Literal(97), Literal(98), Copy(3, 1), Literal(99), Copy(5, 2)])

SECOND = b"aababacbaba"
SECOND_STD = Encoding("lz77", Unbounded, [
    Literal(97), Literal(97), Literal(98), Copy(3, 2), Literal(99),
    Copy(4, 3)])
SECOND_MOD = Encoding("lzhb4", 2, [
    Run(2, 97), Run(1, 98), PeriodicCopy(3, 2, 2), Run(1, 99),
    PeriodicCopy(4, 3, 2)])


class TestDecode:
    def test_worked_example(self):
        assert decode(WORKED_STD) == WORKED

    def test_self_referential_copy(self):
        # length runs past the source gap and tiles it
        e = Encoding("lz77", Unbounded, [Literal(97), Copy(7, 1)])
        assert decode(e) == b"aaaaaaaa"

    def test_self_referential_periodic(self):
        e = Encoding("lzhb4", Unbounded, [
            Run(1, 97), Run(1, 98), PeriodicCopy(5, 1, 2)])
        assert decode(e) == b"abababa"

    def test_modified_worked_example(self):
        assert decode(SECOND_MOD) == SECOND

    def test_empty(self):
        assert decode(Encoding("lz77", Unbounded, [])) == b""


class TestHeights:
    def test_standard_sequence(self):
        assert compute_heights(SECOND_STD) == [0, 0, 0, 1, 1, 1, 0, 1, 2, 2, 2]

    def test_modified_sequence(self):
        assert compute_heights(SECOND_MOD) == [0, 0, 0, 1, 1, 1, 0, 1, 2, 1, 2]

    def test_first_worked_example(self):
        assert compute_heights(WORKED_STD) == [0, 0, 1, 1, 1, 0, 1, 2, 2, 2, 1]

    def test_literals_are_ground(self):
        e = Encoding("lz77", Unbounded, [Literal(120), Literal(121)])
        assert compute_heights(e) == [0, 0]

    def test_tiled_copy_window(self):
        # the copy reads [src, src+len) clipped at its own start, tiling the
        # incremented source heights across the phrase
        e = Encoding("lz77", Unbounded, [Literal(97), Copy(5, 1)])
        assert compute_heights(e) == [0, 1, 1, 1, 1, 1]


class TestConstruction:
    def test_starts_and_size(self):
        assert WORKED_STD.starts == (1, 2, 3, 6, 7)
        assert WORKED_STD.z == 5
        assert WORKED_STD.n == 11

    def test_equality_and_hash(self):
        again = Encoding("lz77", Unbounded, list(WORKED_STD.phrases))
        assert again == WORKED_STD
        assert hash(again) == hash(WORKED_STD)
        assert Encoding("lz77", 3, list(WORKED_STD.phrases)) != WORKED_STD

    def test_modified_flag(self):
        assert SECOND_MOD.modified
        assert not WORKED_STD.modified

    def test_mixed_families_rejected(self):
        with pytest.raises(MalformedEncodingError):
            Encoding("lz77", Unbounded, [Literal(97), Run(2, 97)])
        with pytest.raises(MalformedEncodingError):
            Encoding("lzhb4", Unbounded, [Run(1, 97), Copy(2, 1)])

    def test_copy_source_before_phrase(self):
        with pytest.raises(MalformedEncodingError):
            Encoding("lz77", Unbounded, [Literal(97), Copy(2, 2)])

    def test_copy_needs_length_two(self):
        with pytest.raises(MalformedEncodingError):
            Encoding("lz77", Unbounded, [Literal(97), Copy(1, 1)])

    def test_periodic_window_strictly_before(self):
        # src + period must not cross the phrase start
        with pytest.raises(MalformedEncodingError):
            Encoding("lzhb4", Unbounded, [Run(2, 97), PeriodicCopy(3, 2, 2)])

    def test_periodic_length_at_least_period(self):
        with pytest.raises(MalformedEncodingError):
            Encoding("lzhb4", Unbounded, [
                Run(1, 97), Run(1, 98), PeriodicCopy(1, 1, 2)])

    def test_bad_char_rejected(self):
        with pytest.raises(MalformedEncodingError):
            Encoding("lz77", Unbounded, [Literal(300)])

    def test_negative_height_rejected(self):
        with pytest.raises(MalformedEncodingError):
            Encoding("lz77", -1, [Literal(97)])


class TestVerify:
    def test_good_report(self):
        rep = verify(WORKED_STD, WORKED)
        assert rep.ok
        assert rep.decodes_equal and rep.sources_match and rep.periods_valid
        assert rep.max_height == 2
        assert rep.z == 5
        assert rep.problems == []

    def test_height_bound_enforced(self):
        assert verify(SECOND_MOD, SECOND, 2).ok
        rep = verify(SECOND_MOD, SECOND, 1)
        assert not rep.ok and not rep.height_ok
        assert rep.max_height == 2

    def test_wrong_text_flagged(self):
        rep = verify(WORKED_STD, b"ababacbabaX")
        assert not rep.decodes_equal and not rep.ok

    def test_non_minimal_period_flagged(self):
        # window "aa" has period 1, so declaring 2 is not minimal
        e = Encoding("lzhb4", Unbounded, [Run(2, 97), PeriodicCopy(2, 1, 2)])
        rep = verify(e, decode(e))
        assert not rep.periods_valid
        assert any("period" in p for p in rep.problems)

    def test_defaults_to_encoding_bound(self):
        assert not verify(Encoding("lzhb4", 1, SECOND_MOD.phrases), SECOND).ok


class TestSerialization:
    def test_golden_standard(self):
        assert serialize(WORKED_STD) == (
            "LZHB lz77 v1 n=11 h=inf z=5\n"
            "L 97\nL 98\nC 3 1\nL 99\nC 5 2\n")

    def test_golden_modified(self):
        assert serialize(SECOND_MOD) == (
            "LZHB lzhb4 v1 n=11 h=2 z=5\n"
            "R 2 97\nR 1 98\nP 3 2 2\nR 1 99\nP 4 3 2\n")

    def test_round_trip(self):
        for enc in (WORKED_STD, SECOND_MOD,
                    Encoding("lzhb1", 0, [Literal(0), Literal(255)])):
            assert deserialize(serialize(enc)) == enc

    def test_empty_round_trip(self):
        e = Encoding("lzhb2", 7, [])
        assert deserialize(serialize(e)) == e

    @pytest.mark.parametrize("text,lineno", [
        ("BAD lz77 v1 n=1 h=inf z=1\nL 97\n", 1),
        ("LZHB lz77 v2 n=1 h=inf z=1\nL 97\n", 1),
        ("LZHB lz77 v1 n=1 h=inf\nL 97\n", 1),
        ("LZHB lz77 v1 n=1 h=-3 z=1\nL 97\n", 1),
        ("LZHB lz77 v1 n=1 h=inf z=1\nL 97 5\n", 2),
        ("LZHB lz77 v1 n=2 h=inf z=2\nL 97\nX 2 1\n", 3),
        ("LZHB lz77 v1 n=2 h=inf z=2\nL 97\nC two 1\n", 3),
    ])
    def test_error_carries_line_number(self, text, lineno):
        with pytest.raises(SerializationError) as err:
            deserialize(text)
        assert f"line {lineno}" in str(err.value)

    def test_size_mismatch_rejected(self):
        with pytest.raises(SerializationError):
            deserialize("LZHB lz77 v1 n=5 h=inf z=1\nL 97\n")
        with pytest.raises(SerializationError):
            deserialize("LZHB lz77 v1 n=1 h=inf z=2\nL 97\n")

    def test_malformed_phrase_surfaces(self):
        # structurally valid lines whose phrase set is illegal
        with pytest.raises(MalformedEncodingError):
            deserialize("LZHB lz77 v1 n=3 h=inf z=2\nL 97\nC 2 2\n")

    def test_unbounded_spelled_inf(self):
        e = deserialize("LZHB lzhb3 v1 n=1 h=inf z=1\nL 97\n")
        assert e.h == Unbounded and e.h == math.inf
