"""
Unit tests for collision_heap module
"""

import math
import random

import pytest

from src.collision_heap import CASE_LABELS, CollisionHeap, check_cohort, merge_collision
from src.core import INFINITY, sources_from_lists
from src.datagen import GenSpec, Scenario, generate
from src.errors import ConfigurationError, InvariantViolation


def _built(lists, trace=False):
    heap = CollisionHeap(len(lists), trace=trace)
    heap.build(sources_from_lists(lists))
    return heap


def test_equal_children_replaced_at_root():
    """Test Case 4 then placement leaves flags marking the remaining equal pair"""
    heap = _built([[b"a", b"b"], [b"a"], [b"a"]], trace=True)
    assert heap.L[1] and heap.R[1]

    heap.heapify(1, b"b", heap.H[1])

    assert heap.cases["4"] == 1
    assert heap.value_at(1) == b"a"
    assert heap.value_at(2) == b"b"
    assert not heap.L[1]
    assert heap.R[1]
    heap.check_flags()


def test_strictly_smaller_value_stops_at_root():
    """Test Case 3L when the new value is below the only child"""
    heap = _built([[b"a", b"b"], [b"c"]], trace=True)
    heap.heapify(1, b"b", heap.H[1])
    assert heap.value_at(1) == b"b"
    # Once during construction, once for the replacement
    assert heap.cases == {"3L": 2}
    assert not heap.L[1] and not heap.R[1]


def test_infinity_sinks_with_false_flags():
    """Test an exhausted list sinks below the last live value"""
    heap = _built([[b"a"], [b"b"]])
    heap.heapify(1, INFINITY, 0)
    assert heap.value_at(1) == b"b"
    assert heap.value_at(2) is INFINITY
    assert not heap.L[1] and not heap.R[1]
    heap.check_flags()


def test_exhausted_siblings_are_not_equal():
    """Test two INFINITY children never set flags"""
    heap = _built([[b"a"], [], []])
    assert not heap.L[1] and not heap.R[1]
    heap.heapify(1, INFINITY, 0)
    assert not heap.L[1] and not heap.R[1]
    heap.check_flags()


def test_cohort_unique_minimum():
    """Test a unique minimum forms a cohort of one"""
    heap = _built([[b"a"], [b"b"], [b"c"]])
    assert heap.cohort(1, 0) == 1
    assert heap.G[1] == 1


def test_cohort_all_equal_post_order():
    """Test four equal heads are listed right subtree, left subtree, root"""
    heap = _built([[b"a"]] * 4)
    length = heap.cohort(1, 0)
    assert length == 4
    assert heap.G[1:5] == [3, 4, 2, 1]
    check_cohort(heap, heap.G, length)


def test_cohort_left_only():
    """Test heads a, a, b give the left child then the root"""
    heap = _built([[b"a"], [b"a"], [b"b"]])
    assert heap.cohort(1, 0) == 2
    assert heap.G[1:3] == [2, 1]


def test_check_cohort_rejects_incomplete():
    """Test the brute-force cohort check catches a missing member"""
    heap = _built([[b"a"]] * 3)
    heap.G[1] = 1
    with pytest.raises(InvariantViolation):
        check_cohort(heap, heap.G, 1)


def test_check_flags_rejects_stale_flag():
    """Test the definitional flag checker catches a wrong bit"""
    heap = _built([[b"a"], [b"b"]])
    heap.L[1] = True
    with pytest.raises(InvariantViolation):
        heap.check_flags()


def test_identical_lists_full_cohorts():
    """Test identical lists give one cohort of size T per value"""
    values = [b"%04d" % i for i in range(1000)]
    result = merge_collision(sources_from_lists([values] * 4))
    assert result.output == values
    assert set(result.counts) == {4}
    assert result.stats.e_bar == 4.0


def test_matches_oracle_with_checks(instance_factory, oracle):
    """Test random collision-heavy instances with flag and cohort checks"""
    rng = random.Random(2)
    for seed in range(200):
        lists = instance_factory(seed, T=rng.randint(1, 16), per_list=10, max_len=3)
        result = merge_collision(sources_from_lists(lists), check=True)
        expected, counts = oracle(lists)
        assert result.output == expected
        assert result.counts == counts
        assert sum(result.counts) == result.stats.m_in


def test_every_case_label_fires(instance_factory):
    """Test the random suite reaches every descent case"""
    rng = random.Random(8)
    fired = set()
    for seed in range(400):
        lists = instance_factory(seed, T=rng.randint(2, 16), per_list=8, max_len=3)
        fired.update(merge_collision(sources_from_lists(lists), trace=True).cases)
    assert fired == set(CASE_LABELS)


def test_dedup_off_rejected():
    """Test the grouping backend refuses to keep duplicates"""
    with pytest.raises(ConfigurationError):
        merge_collision(sources_from_lists([[b"a"]]), dedup=False)


def test_identical_lists_cheap_sifting():
    """Test T=256 identical lists cost at most 2 sift steps per element"""
    values = [b"k%03d" % i for i in range(40)]
    result = merge_collision(sources_from_lists([values] * 256))
    assert result.stats.sift_steps / result.stats.m_in <= 2


def test_unique_work_near_log_t():
    """Test all-unique input costs about log2 T sift steps per element"""
    data = generate(GenSpec(Scenario.UNIFORM, T=64, k=20, sigma=4, m_target=20_000, seed=9))
    result = merge_collision(sources_from_lists(data.lists))
    per_element = result.stats.sift_steps / result.stats.m_in
    assert math.log2(64) - 2 <= per_element <= math.log2(64) + 1
