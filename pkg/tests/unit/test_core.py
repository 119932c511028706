"""
Unit tests for core module
"""

import itertools

import pytest
from hypothesis import given, strategies as st

from src.core import (
    INFINITY,
    MergeStats,
    Ordering,
    SortedSource,
    compare,
    extraction_lcp_total,
    finalize_stats,
    lcp,
    lcp3_from,
    lcp_from,
    open_sources,
    read_lines,
    sources_from_lists,
)
from src.errors import InputFormatError, MonotonicityViolation

strings = st.binary(max_size=6).filter(lambda s: b"\x00" not in s and b"\n" not in s)

# Every string of length <= 3 over {a, b}
SMALL_UNIVERSE = [
    bytes(chars) for n in range(4) for chars in itertools.product(b"ab", repeat=n)
]


def test_compare_examples():
    """Test compare on identity, prefix and differing strings"""
    assert compare(b"ab", b"ab") == Ordering.EQUAL
    assert compare(b"ab", b"abc") == Ordering.LESS
    assert compare(b"abd", b"abc") == Ordering.GREATER


def test_compare_against_infinity():
    """Test INFINITY ranks above every string and equals only itself"""
    assert compare(b"zzz", INFINITY) == Ordering.LESS
    assert compare(INFINITY, b"") == Ordering.GREATER
    assert compare(INFINITY, INFINITY) == Ordering.EQUAL
    assert b"\xff" < INFINITY
    assert not INFINITY < b"\xff"


def test_compare_is_total_order_on_small_universe():
    """Test antisymmetry, transitivity and agreement with lcp exhaustively"""
    for x, y in itertools.product(SMALL_UNIVERSE, repeat=2):
        assert compare(x, y) == -compare(y, x)
        equal = lcp_from(x, y, 0) == len(x) == len(y)
        assert (compare(x, y) == Ordering.EQUAL) == equal

    ranked = sorted(SMALL_UNIVERSE)
    for x, y, z in itertools.product(ranked[:8], repeat=3):
        if compare(x, y) <= 0 and compare(y, z) <= 0:
            assert compare(x, z) <= 0


def test_lcp_from_examples():
    """Test lcp_from stops at the first difference or at both terminators"""
    assert lcp_from(b"abc", b"abd", 0) == 2
    assert lcp_from(b"abc", b"abc", 2) == 3
    assert lcp_from(b"x", b"y", 0) == 0


def test_lcp_from_charges_probes():
    """Test lcp_from charges the increments and one terminal probe"""
    stats = MergeStats()
    lcp_from(b"abcdef", b"abcxyz", 1, stats)
    assert stats.char_probes == 2
    assert stats.term_probes == 1


def test_lcp3_from_examples():
    """Test lcp3_from on divergent, terminated and partly equal triples"""
    assert lcp3_from(b"abc", b"abd", b"abe", 0) == 2
    assert lcp3_from(b"a", b"a", b"a", 1) == 1
    assert lcp3_from(b"ab", b"ab", b"ac", 1) == 1


def test_lcp3_from_charges_two_units_per_increment():
    """Test lcp3_from charges twice the distance advanced"""
    stats = MergeStats()
    lcp3_from(b"abcd", b"abce", b"abcf", 0, stats)
    assert stats.char_probes == 6


@given(strings, strings)
def test_lcp_symmetric(x, y):
    """Test lcp is symmetric and bounded by both lengths"""
    assert lcp(x, y) == lcp(y, x)
    assert lcp(x, y) <= min(len(x), len(y))


@given(strings, strings, strings)
def test_lcp3_is_min_of_pairs(x, y, z):
    """Test lcp3_from equals the smallest pairwise lcp"""
    assert lcp3_from(x, y, z, 0) == min(lcp(x, y), lcp(y, z), lcp(x, z))


def test_sorted_source_pops_in_order():
    """Test a source yields its strings and then reports empty"""
    source = SortedSource.from_strings("mem", [b"a", b"b"])
    assert source.pop() == b"a"
    assert source.pop() == b"b"
    assert source.empty()


def test_sorted_source_rejects_decrease():
    """Test a source raises on a value not above its predecessor"""
    source = SortedSource.from_strings("mem", [b"b", b"a"])
    source.pop()
    with pytest.raises(MonotonicityViolation) as exc_info:
        source.pop()
    assert exc_info.value.line == 2
    assert exc_info.value.source == "mem"


def test_sorted_source_rejects_reserved_bytes():
    """Test in-memory strings with 0x00 are refused"""
    with pytest.raises(InputFormatError):
        SortedSource.from_strings("mem", [b"a\x00b"])


def test_sorted_source_alphabet():
    """Test alphabet covers only strings not yet popped"""
    source = SortedSource.from_strings("mem", [b"xy", b"yz"])
    source.pop()
    assert source.alphabet() == {ord("y"), ord("z")}


def test_read_lines_and_open_sources(tmp_path):
    """Test files are split on LF with the final terminator dropped"""
    path = tmp_path / "a.txt"
    path.write_bytes(b"a\nb\n")
    assert read_lines(str(path)) == [b"a", b"b"]

    empty = tmp_path / "empty.txt"
    empty.write_bytes(b"")
    sources = open_sources([path, empty])
    assert sources[0].pop() == b"a"
    assert sources[1].empty()


def test_open_sources_reports_line_of_violation(tmp_path):
    """Test a decreasing file fails at the offending line"""
    path = tmp_path / "bad.txt"
    path.write_bytes(b"b\na\n")
    source = open_sources([path])[0]
    source.pop()
    with pytest.raises(MonotonicityViolation) as exc_info:
        source.pop()
    assert exc_info.value.line == 2
    assert str(path) in str(exc_info.value)


def test_read_lines_rejects_nul(tmp_path):
    """Test an embedded 0x00 byte is reported with its line"""
    path = tmp_path / "nul.txt"
    path.write_bytes(b"a\nb\x00c\n")
    with pytest.raises(InputFormatError) as exc_info:
        read_lines(str(path))
    assert exc_info.value.line == 2


def test_read_lines_missing_file(tmp_path):
    """Test an unreadable path becomes an input error"""
    with pytest.raises(InputFormatError):
        read_lines(str(tmp_path / "missing.txt"))


def test_sources_from_lists_names():
    """Test in-memory lists get list.NNN names"""
    sources = sources_from_lists([[b"a"], [b"b"]])
    assert [s.name for s in sources] == ["list.000", "list.001"]


def test_extraction_lcp_total_counts_repeats():
    """Test repeated values contribute their full length"""
    # Extraction sequence: ab, ab, abc
    assert extraction_lcp_total([b"ab", b"abc"], [2, 1]) == 2 + 2


def test_finalize_stats():
    """Test derived measurables of a finished merge"""
    stats = finalize_stats(MergeStats(), [b"a", b"b"], [3, 1])
    assert stats.m_in == 4
    assert stats.n_out == 2
    assert stats.e_bar == 2.0
    assert stats.total_chars == 4
    # Pairs: (a,a) (a,a) (a,b) -> 1 + 1 + 0 over 3 pairs
    assert stats.mean_lcp == pytest.approx(2 / 3)


def test_merge_stats_serializes():
    """Test stats round through dataclasses-json"""
    stats = MergeStats(m_in=5, n_out=2, e_bar=2.5)
    assert MergeStats.from_json(stats.to_json()) == stats
