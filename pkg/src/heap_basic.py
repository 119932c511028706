#!/usr/bin/env python3
"""
Baseline k-way merge over a classic array heap with full string comparisons
"""

import time
from typing import List, Optional, Sequence

try:
    from src.core import (
        HeapCore,
        MergeResult,
        MergeStats,
        SortedSource,
        Value,
        finalize_stats,
    )
except ModuleNotFoundError:
    from core import (
        HeapCore,
        MergeResult,
        MergeStats,
        SortedSource,
        Value,
        finalize_stats,
    )


class BasicHeap(HeapCore):
    """Heap of list indices ordered by plain comparison of the list heads"""

    def heapify(self, i: int, x: Value, t: int) -> None:
        """
        Sift x (the new head of list t) down from node i

        Args:
            i: Node to start at; the subtrees below it already have the heap property
            x: New value, INFINITY for an exhausted list
            t: List index, 0 with INFINITY
        """
        H, V, T = self.H, self.V, self.T
        c = i
        V[t] = x
        steps = 0
        while 2 * c <= T:
            u = 2 * c
            steps += 1
            if u < T and V[H[u + 1]] < V[H[u]]:
                u += 1
            if x <= V[H[u]]:
                break
            H[c] = H[u]
            c = u
        H[c] = t
        self.sift_steps += steps


def merge_basic(
    sources: Sequence[SortedSource], dedup: bool = True, check: bool = False
) -> MergeResult:
    """
    Merge sorted sources with the baseline heap

    Args:
        sources: One strictly increasing source per list
        dedup: Drop values equal to the last one emitted
        check: Verify the heap property after every update

    Returns:
        The merged output, list counts per value and run statistics
    """
    stats = MergeStats()
    output: List[bytes] = []
    counts: List[int] = []
    heap = BasicHeap(len(sources))
    if heap.T == 0:
        return MergeResult(output, counts, finalize_stats(stats, output, counts))

    start = time.perf_counter_ns()
    heap.build(sources)
    if check:
        heap.check_heap()

    H, V = heap.H, heap.V
    # Nothing emitted yet
    last: Optional[bytes] = None
    while True:
        t = H[1]
        if t == 0:
            break
        x = V[t]
        if not dedup or last is None or x > last:
            output.append(x)
            counts.append(1)
            last = x
        else:
            counts[-1] += 1
        heap.replace(1, sources)
        if check:
            heap.check_heap()

    stats.wall_ns = time.perf_counter_ns() - start
    stats.sift_steps = heap.sift_steps
    return MergeResult(output, counts, finalize_stats(stats, output, counts))
