#!/usr/bin/env python3
"""
String heap with cohort extraction. A child equals its parent iff its lcp with
the parent spans its whole string, so equality needs no stored flags: only the
length of each list's current string.
"""

import time
from typing import List, Optional, Sequence

try:
    from src.collision_heap import check_cohort, same_value
    from src.core import (
        INFINITY,
        MergeResult,
        SortedSource,
        Value,
        finalize_stats,
        scan_lcp,
    )
    from src.errors import ConfigurationError, InvariantViolation
    from src.string_heap import StringHeap, _char
except ModuleNotFoundError:
    from collision_heap import check_cohort, same_value
    from core import (
        INFINITY,
        MergeResult,
        SortedSource,
        Value,
        finalize_stats,
        scan_lcp,
    )
    from errors import ConfigurationError, InvariantViolation
    from string_heap import StringHeap, _char


class StringCollisionHeap(StringHeap):
    """String heap plus Len[t] = |V[t]| and a post-order cohort buffer"""

    def __init__(self, T: int, trace: bool = False):
        super().__init__(T, trace=trace)
        # Len[0] belongs to INFINITY and never matches an lcp
        self.Len: List[int] = [-1] * (T + 1)
        self.G: List[int] = [0] * (T + 1)

    def heapify(self, i: int, x: Value, t: int) -> None:
        super().heapify(i, x, t)
        if t:
            self.Len[t] = len(x)

    def equals_parent(self, node: int) -> bool:
        """Node's string equals its parent's: lcp-value reaches its length"""
        return self.P[node] == self.Len[self.H[node]]

    def ends_at_lcp(self, node: int) -> bool:
        """Same predicate by probing for the terminator at the lcp offset"""
        v = self.V[self.H[node]]
        return v is not INFINITY and _char(v, self.P[node]) == 0

    def cohort(self, c: int, length: int) -> int:
        """Append the equal-to-root subtree under node c to G in post-order"""
        H, P, Len, T = self.H, self.P, self.Len, self.T
        r = 2 * c + 1
        if r <= T and P[r] == Len[H[r]]:
            length = self.cohort(r, length)
        l = 2 * c
        if l <= T and P[l] == Len[H[l]]:
            length = self.cohort(l, length)
        length += 1
        self.G[length] = c
        return length

    def check_derived_flags(self) -> None:
        """Both forms of the derived predicate must match the definition"""
        H, V = self.H, self.V
        for node in range(2, self.T + 1):
            expected = same_value(V[H[node]], V[H[node // 2]])
            derived = self.equals_parent(node)
            probed = self.ends_at_lcp(node)
            if derived != expected or probed != expected:
                raise InvariantViolation(
                    "derived flags",
                    f"node {node}: length test {derived}, terminator test {probed}, "
                    f"expected {expected}",
                )


def merge_string_collision(
    sources: Sequence[SortedSource],
    dedup: bool = True,
    check: bool = False,
    trace: bool = False,
) -> MergeResult:
    """
    Merge sorted sources with the string-collision heap

    Args:
        sources: One strictly increasing source per list
        dedup: Must be True; equal values are always grouped
        check: Run heap, lcp-array, derived-flag, cohort and extraction-lcp checkers
        trace: Record which descent cases fired

    Returns:
        The merged output, cohort size per value and run statistics
    """
    if not dedup:
        raise ConfigurationError("the string-collision heap always merges equal values")

    output: List[bytes] = []
    counts: List[int] = []
    heap = StringCollisionHeap(len(sources), trace=trace)
    stats = heap.stats
    if heap.T == 0:
        return MergeResult(output, counts, finalize_stats(stats, output, counts))

    start = time.perf_counter_ns()
    heap.build(sources)
    if check:
        heap.check_heap()
        heap.check_lcp()
        heap.check_derived_flags()

    H, V, P, G = heap.H, heap.V, heap.P, heap.G
    previous: Optional[bytes] = None
    while True:
        t = H[1]
        if t == 0:
            break
        x = V[t]
        if check:
            expected = scan_lcp(previous, x, 0) if previous is not None else 0
            if P[1] != expected:
                raise InvariantViolation(
                    "extraction lcp",
                    f"root lcp {P[1]} for {x!r} after {previous!r}, expected {expected}",
                )
        if previous is None:
            # The first value is charged in full against the empty predecessor
            stats.char_probes += len(x)
        previous = x

        output.append(x)
        length = heap.cohort(1, 0)
        counts.append(length)
        if check:
            check_cohort(heap, G, length)
        for k in range(1, length + 1):
            heap.replace(G[k], sources)
            if check:
                heap.check_lcp()
        if check:
            heap.check_heap()
            heap.check_derived_flags()

    stats.wall_ns = time.perf_counter_ns() - start
    stats.sift_steps = heap.sift_steps
    result = MergeResult(output, counts, finalize_stats(stats, output, counts))
    if heap.cases is not None:
        result.cases = dict(heap.cases)
    return result
