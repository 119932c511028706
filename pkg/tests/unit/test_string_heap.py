"""
Unit tests for string_heap module
"""

import random

import pytest

from src.core import INFINITY, extraction_lcp_total, sources_from_lists
from src.errors import InvariantViolation, MonotonicityViolation
from src import string_heap
from src.heap_basic import merge_basic
from src.string_heap import CASE_LABELS, StringHeap, definitional_lcp, merge_string


def _heap(values, lcps, trace=True):
    """String heap with H = identity and the given node values and P entries"""
    T = len(values)
    heap = StringHeap(T, trace=trace)
    heap.H = list(range(T + 1))
    heap.V = [INFINITY] + list(values)
    heap.P = [0] + list(lcps)
    return heap


def _probe_formula(result):
    """|s1| + sum of lcp over the extraction sequence"""
    if not result.output:
        return 0
    return len(result.output[0]) + extraction_lcp_total(result.output, result.counts)


def test_root_replacement_keeps_smaller_value():
    """Test Case 2L: the new root shares more with the old root than the child does"""
    heap = _heap([b"ab", b"ac"], [0, 1])

    heap.heapify(1, b"abq", 1)

    # "abq" < "ac", so it stays at the root and the child's lcp is unchanged
    assert heap.value_at(1) == b"abq"
    assert heap.value_at(2) == b"ac"
    assert heap.P[1] == 2
    assert heap.P[2] == 1
    assert heap.stats.char_probes == 2
    assert heap.cases == {"2L": 1}
    heap.check_lcp()


def test_three_way_tie_decided_by_next_character():
    """Test Case 5 with equal lcps resolves on the distinguishing characters"""
    heap = _heap([b"abc", b"abd", b"abe"], [0, 2, 2])

    heap.heapify(1, b"abf", 1)

    assert heap.value_at(1) == b"abd"
    assert heap.cases["5.1L"] == 1
    assert heap.P[2] == 2
    assert heap.P[3] == 2
    heap.check_heap()
    heap.check_lcp()


def test_descent_charges_lcp_work_through_core(mocker):
    """Test the descent extends lcps with the core helpers, charging the heap's stats"""
    two_way = mocker.spy(string_heap, "lcp_from")
    three_way = mocker.spy(string_heap, "lcp3_from")
    heap = _heap([b"abc", b"abd", b"abe"], [0, 2, 2])

    heap.heapify(1, b"abf", 1)

    assert two_way.call_count + three_way.call_count > 0
    for call in two_way.call_args_list + three_way.call_args_list:
        assert call.args[-1] is heap.stats
    assert heap.stats.char_probes > 0
    assert heap.stats.term_probes == two_way.call_count + three_way.call_count


def test_lcp_with_infinity_is_free(mocker):
    """Test an exhausted list never reaches the core lcp helpers"""
    two_way = mocker.spy(string_heap, "lcp_from")
    heap = _heap([b"ab", b"ac"], [0, 1])

    heap.heapify(1, INFINITY, 0)

    assert heap.value_at(1) == b"ac"
    assert two_way.call_count == 0
    assert heap.stats.char_probes == 0


def test_construction_starts_from_empty_parent():
    """Test heapify during construction assumes an empty-string parent"""
    heap = StringHeap(3)
    heap.building = True
    heap.heapify(3, b"xy", 3)
    assert heap.P[3] == 0
    assert heap.H[3] == 3
    assert heap.stats.char_probes == 0


def test_root_replacement_rejects_smaller_value():
    """Test a value below the one it replaces is refused"""
    heap = _heap([b"b", b"c"], [0, 0])
    with pytest.raises(MonotonicityViolation):
        heap.heapify(1, b"a", 1)


def test_check_lcp_detects_corruption():
    """Test the definitional checker notices a wrong P entry"""
    heap = _heap([b"ab", b"ac"], [0, 0])
    with pytest.raises(InvariantViolation):
        heap.check_lcp()


def test_definitional_lcp_with_infinity():
    """Test anything paired with INFINITY has lcp 0"""
    assert definitional_lcp(b"abc", INFINITY) == 0
    assert definitional_lcp(INFINITY, INFINITY) == 0
    assert definitional_lcp(b"abc", b"abd") == 2


def test_probe_count_examples():
    """Test charged probes equal |s1| plus the lcps of consecutive extractions"""
    result = merge_string(sources_from_lists([[b"ab", b"abc"], [b"abd"]]), check=True)
    assert result.output == [b"ab", b"abc", b"abd"]
    assert result.stats.char_probes == 2 + 2 + 2

    result = merge_string(sources_from_lists([[b"aaaa"]] * 4), check=True)
    assert result.output == [b"aaaa"]
    assert result.counts == [4]
    assert result.stats.char_probes == 4 + 3 * 4


def test_single_list_round_trips():
    """Test one list merges to itself with the formula's probe count"""
    values = [b"a", b"ab", b"abba", b"b", b"bab"]
    result = merge_string(sources_from_lists([values]), check=True)
    assert result.output == values
    assert result.stats.char_probes == 1 + 1 + 2 + 0 + 1


def test_matches_oracle_and_probe_formula(instance_factory, oracle):
    """Test random small instances with every checker enabled"""
    rng = random.Random(11)
    for seed in range(200):
        T = rng.randint(1, 16)
        lists = instance_factory(seed, T=T, per_list=rng.randint(1, 20), max_len=8)
        result = merge_string(sources_from_lists(lists), check=True)
        expected, counts = oracle(lists)
        assert result.output == expected
        assert result.counts == counts
        assert result.stats.char_probes == _probe_formula(result)
        assert result.stats.char_probes <= result.stats.total_chars


def test_keep_duplicates_matches_basic(instance_factory):
    """Test dedup off gives the same multiset order as the basic heap"""
    for seed in range(30):
        lists = instance_factory(seed, T=6, per_list=15, max_len=4)
        basic = merge_basic(sources_from_lists(lists), dedup=False)
        string = merge_string(sources_from_lists(lists), dedup=False, check=True)
        assert string.output == basic.output
        assert string.stats.char_probes == _probe_formula(string)


def test_every_case_label_fires(instance_factory):
    """Test the randomized suite drives every descent branch"""
    rng = random.Random(5)
    fired = set()
    for seed in range(1500):
        T = rng.randint(2, 16)
        lists = instance_factory(
            seed, T=T, per_list=rng.randint(1, 12), min_len=0, max_len=rng.randint(1, 8)
        )
        result = merge_string(sources_from_lists(lists), trace=True)
        fired.update(result.cases)
    assert fired == set(CASE_LABELS)


def test_empty_and_exhausted_lists():
    """Test empty lists and early exhaustion keep the heap consistent"""
    lists = [[], [b"a", b"b", b"c"], [], [b"b"]]
    result = merge_string(sources_from_lists(lists), check=True)
    assert result.output == [b"a", b"b", b"c"]
    assert result.counts == [1, 2, 1]
    assert merge_string([]).output == []
