#!/usr/bin/env python3
"""
Collision heap: every node records whether its left and right children hold a
value equal to its own, so the whole cohort of values equal to the minimum can
be collected and replaced in one round.

Replacing a cohort of e equal values costs O(e log(T/e)), which makes the merge
O(M log(T/e_bar)) where e_bar = M/N.
"""

import time
from collections import Counter
from typing import List, Optional, Sequence

try:
    from src.core import (
        INFINITY,
        HeapCore,
        MergeResult,
        MergeStats,
        SortedSource,
        Value,
        finalize_stats,
    )
    from src.errors import ConfigurationError, InvariantViolation
except ModuleNotFoundError:
    from core import (
        INFINITY,
        HeapCore,
        MergeResult,
        MergeStats,
        SortedSource,
        Value,
        finalize_stats,
    )
    from errors import ConfigurationError, InvariantViolation

CASE_LABELS = ("1L", "1R", "2L", "2R", "3L", "3R", "3", "4", "5")


def same_value(a: Value, b: Value) -> bool:
    """Equality used for flags and cohorts; INFINITY equals nothing"""
    return a is not INFINITY and a == b


def check_cohort(heap: HeapCore, G: Sequence[int], length: int) -> None:
    """
    Compare a collected cohort against a brute-force scan of the heap

    Args:
        heap: Heap whose root holds a live value
        G: Cohort buffer, nodes in slots 1..length
        length: Cohort size

    Raises:
        InvariantViolation: Cohort incomplete, repeated or not in post-order
    """
    H, V = heap.H, heap.V
    minimum = V[H[1]]
    expected = {i for i in range(1, heap.T + 1) if same_value(V[H[i]], minimum)}
    listed = list(G[1 : length + 1])
    if len(listed) != len(set(listed)) or set(listed) != expected:
        raise InvariantViolation(
            "cohort", f"collected {sorted(listed)}, equal nodes are {sorted(expected)}"
        )
    seen = set()
    for node in listed:
        for child in (2 * node, 2 * node + 1):
            if child in expected and child not in seen:
                raise InvariantViolation(
                    "cohort order", f"node {node} listed before its child {child}"
                )
        seen.add(node)


class CollisionHeap(HeapCore):
    """Heap with equality flags L[i] (left child equal) and R[i] (right child equal)"""

    def __init__(self, T: int, trace: bool = False):
        super().__init__(T)
        self.L: List[bool] = [False] * (T + 1)
        self.R: List[bool] = [False] * (T + 1)
        # Post-order cohort buffer, one slot per node
        self.G: List[int] = [0] * (T + 1)
        self.cases: Optional[Counter] = Counter() if trace else None

    def heapify(self, i: int, x: Value, t: int) -> None:
        """
        Sift x (the new head of list t) down from node i keeping L and R exact

        Flags set on the way down are those that will hold once the descent ends.

        Args:
            i: Node to start at; the subtrees below it are proper collision heaps
            x: New value, INFINITY for an exhausted list
            t: List index, 0 with INFINITY
        """
        H, V, L, R, T = self.H, self.V, self.L, self.R, self.T
        cases = self.cases
        V[t] = x
        c = i
        steps = 0
        placed = False
        while 2 * c <= T:
            l = 2 * c
            steps += 1
            hl = H[l]
            vl = V[hl]
            if l >= T:
                vr = INFINITY
            else:
                hr = H[l + 1]
                vr = V[hr]

            stop = False
            if vr > vl:
                if x > vl:
                    label = "1L"
                    H[c] = hl
                    L[c] = L[l] or R[l]
                    R[c] = False
                    c = l
                elif x == vl:
                    label, stop, placed = "2L", True, True
                    L[c], R[c] = True, False
                else:
                    label, stop = "3L", True
            elif vr < vl:
                if x > vr:
                    label = "1R"
                    H[c] = hr
                    R[c] = L[l + 1] or R[l + 1]
                    L[c] = False
                    c = l + 1
                elif x == vr:
                    label, stop, placed = "2R", True, True
                    L[c], R[c] = False, True
                else:
                    label, stop = "3R", True
            elif x > vl:
                label = "4"
                H[c] = hl
                L[c] = L[l] or R[l]
                R[c] = True
                c = l
            elif x < vl:
                label, stop = "3", True
            else:
                label, stop, placed = "5", True, True
                L[c] = R[c] = x is not INFINITY

            if cases is not None:
                cases[label] += 1
            if stop:
                break

        H[c] = t
        if not placed:
            L[c] = R[c] = False
        self.sift_steps += steps

    def cohort(self, c: int, length: int) -> int:
        """
        Append the equal-to-root subtree under node c to G in post-order

        Args:
            c: Node whose value equals the root's
            length: Slots of G already filled

        Returns:
            The new fill level of G
        """
        if self.R[c]:
            length = self.cohort(2 * c + 1, length)
        if self.L[c]:
            length = self.cohort(2 * c, length)
        length += 1
        self.G[length] = c
        return length

    def check_flags(self) -> None:
        """Recompute every flag from its definition"""
        H, V, T = self.H, self.V, self.T
        for i in range(1, T + 1):
            left = 2 * i <= T and same_value(V[H[i]], V[H[2 * i]])
            right = 2 * i + 1 <= T and same_value(V[H[i]], V[H[2 * i + 1]])
            if self.L[i] != left or self.R[i] != right:
                raise InvariantViolation(
                    "equality flags",
                    f"node {i}: L={self.L[i]} R={self.R[i]}, expected L={left} R={right}",
                )


def merge_collision(
    sources: Sequence[SortedSource],
    dedup: bool = True,
    check: bool = False,
    trace: bool = False,
) -> MergeResult:
    """
    Merge sorted sources with the collision heap, one cohort per output value

    Args:
        sources: One strictly increasing source per list
        dedup: Must be True; equal values are always grouped
        check: Run the heap, flag and cohort checkers after every round
        trace: Record which descent cases fired

    Returns:
        The merged output, cohort size per value and run statistics
    """
    if not dedup:
        raise ConfigurationError("the collision heap always merges equal values")

    stats = MergeStats()
    output: List[bytes] = []
    counts: List[int] = []
    heap = CollisionHeap(len(sources), trace=trace)
    if heap.T == 0:
        return MergeResult(output, counts, finalize_stats(stats, output, counts))

    start = time.perf_counter_ns()
    heap.build(sources)
    if check:
        heap.check_heap()
        heap.check_flags()

    H, V, G = heap.H, heap.V, heap.G
    while True:
        t = H[1]
        if t == 0:
            break
        output.append(V[t])
        length = heap.cohort(1, 0)
        counts.append(length)
        if check:
            check_cohort(heap, G, length)
        # Post-order replacement leaves a proper heap after the last member
        for k in range(1, length + 1):
            heap.replace(G[k], sources)
        if check:
            heap.check_heap()
            heap.check_flags()

    stats.wall_ns = time.perf_counter_ns() - start
    stats.sift_steps = heap.sift_steps
    result = MergeResult(output, counts, finalize_stats(stats, output, counts))
    if heap.cases is not None:
        result.cases = dict(heap.cases)
    return result
