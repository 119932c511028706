#!/usr/bin/env python3
"""
String heap: a heap that also keeps, for every node, the lcp between its
string and its parent's string, and decides orderings from those lcps.

Every new lcp computation starts at an offset already known to be common to all
of its arguments, so the total number of charged character probes over a merge
is |s1| + sum of lcp(s_{i-1}, s_i) over the extraction sequence. The bound only
holds for monotone replacement (each inserted value is not below the value it
replaces), which is enforced.
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
        lcp3_from,
        lcp_from,
        scan_lcp,
    )
    from src.errors import InvariantViolation, MonotonicityViolation
except ModuleNotFoundError:
    from core import (
        INFINITY,
        HeapCore,
        MergeResult,
        MergeStats,
        SortedSource,
        Value,
        finalize_stats,
        lcp3_from,
        lcp_from,
        scan_lcp,
    )
    from errors import InvariantViolation, MonotonicityViolation

# Branch labels of the descent, left/right mirrored
CASE_LABELS = (
    "1L", "1R", "2L", "2R", "2",
    "3La", "3Lb", "3Ra", "3Rb",
    "4",
    "5.1L", "5.1R", "5.2L", "5.2R", "5.2",
    "5.3La", "5.3Lb", "5.3Ra", "5.3Rb",
    "5.4",
)  # fmt: skip

# Character codes: terminator 0, content byte b as b + 1, INFINITY above all
_INF_CHAR = 257


def _char(s: Value, i: int) -> int:
    if s is INFINITY:
        return _INF_CHAR
    return s[i] + 1 if i < len(s) else 0


def definitional_lcp(x: Value, y: Value) -> int:
    """lcp of two heap values; anything paired with INFINITY has lcp 0"""
    if x is INFINITY or y is INFINITY:
        return 0
    return scan_lcp(x, y, 0)


class StringHeap(HeapCore):
    """
    Heap with an lcp array P where P[i] = lcp(V[H[i]], V[H[i // 2]])

    The lcp-value of the descending value lives in the local ``p`` until it is
    placed. During construction the virtual parent is the empty string, so the
    descent starts with p = 0.
    """

    def __init__(self, T: int, trace: bool = False):
        super().__init__(T)
        self.P: List[int] = [0] * (T + 1)
        self.stats = MergeStats()
        self.building = False
        self.cases: Optional[Counter] = Counter() if trace else None

    def _lcp2(self, x: Value, y: Value, n: int) -> int:
        if x is INFINITY or y is INFINITY:
            return n
        return lcp_from(x, y, n, self.stats)

    def _lcp3(self, x: Value, y: Value, z: Value, n: int) -> int:
        if x is INFINITY or y is INFINITY or z is INFINITY:
            return n
        return lcp3_from(x, y, z, n, self.stats)

    def build(self, sources: Sequence[SortedSource]) -> None:
        self.building = True
        try:
            super().build(sources)
        finally:
            self.building = False

    def heapify(self, i: int, x: Value, t: int) -> None:
        """
        Sift x (the new head of list t) down from node i keeping P exact

        Outside construction the value currently at node i is the one x
        replaces and x must not be below it.

        Args:
            i: Node to start at
            x: New value, INFINITY for an exhausted list
            t: List index, 0 with INFINITY
        """
        H, V, P, T = self.H, self.V, self.P, self.T
        cases = self.cases
        c = i

        if self.building:
            p = 0
        else:
            o = V[H[i]]
            p = self._lcp2(o, x, 0)
            if x is not INFINITY and _char(x, p) < _char(o, p):
                raise MonotonicityViolation(f"list {t}", None, o, x)

        steps = 0
        while 2 * c <= T:
            l = 2 * c
            steps += 1
            hl, pl = H[l], P[l]
            vl = V[hl]
            if l < T:
                hr, pr = H[l + 1], P[l + 1]
                vr = V[hr]
                # An INFINITY child never moves up past a live one
                if vr is INFINITY:
                    pr = -1
                elif vl is INFINITY:
                    pl = -1
            else:
                hr, pr, vr = 0, -1, INFINITY

            stop = False
            if pr < pl:
                if p < pl:
                    label = "1L"
                    H[c], P[c], c = hl, pl, l
                elif p > pl:
                    label, stop = "2L", True
                else:
                    px = self._lcp2(vl, x, pl)
                    if _char(vl, px) < _char(x, px):
                        label = "3La"
                        H[c], P[c], p, c = hl, pl, px, l
                    else:
                        label, stop = "3Lb", True
                        P[l] = px
            elif pr > pl:
                if p < pr:
                    label = "1R"
                    H[c], P[c], c = hr, pr, l + 1
                elif p > pr:
                    label, stop = "2R", True
                else:
                    px = self._lcp2(vr, x, pr)
                    if _char(vr, px) < _char(x, px):
                        label = "3Ra"
                        H[c], P[c], p, c = hr, pr, px, l + 1
                    else:
                        label, stop = "3Rb", True
                        P[l + 1] = px
            elif p > pl:
                label, stop = "2", True
            elif p < pl:
                label = "4"
                px = self._lcp2(vr, vl, pl)
                if _char(vl, px) <= _char(vr, px):
                    H[c], P[c], P[l + 1], c = hl, pl, px, l
                else:
                    H[c], P[c], P[l], c = hr, pr, px, l + 1
            else:
                px = self._lcp3(vl, vr, x, p)
                al, ar, ax = _char(vl, px), _char(vr, px), _char(x, px)
                if ar > al:
                    if ax > al:
                        label = "5.1L"
                        H[c], P[c], P[l + 1], p, c = hl, pl, px, px, l
                    elif ax < al:
                        label, stop = "5.2L", True
                        P[l] = P[l + 1] = px
                    else:
                        py = self._lcp2(vl, x, px)
                        if _char(vl, py) < _char(x, py):
                            label = "5.3La"
                            H[c], P[c], P[l + 1], p, c = hl, pl, px, py, l
                        else:
                            label, stop = "5.3Lb", True
                            P[l], P[l + 1] = py, px
                elif ar < al:
                    if ax > ar:
                        label = "5.1R"
                        H[c], P[c], P[l], p, c = hr, pr, px, px, l + 1
                    elif ax < ar:
                        label, stop = "5.2R", True
                        P[l] = P[l + 1] = px
                    else:
                        py = self._lcp2(vr, x, px)
                        if _char(vr, py) < _char(x, py):
                            label = "5.3Ra"
                            H[c], P[c], P[l], p, c = hr, pr, px, py, l + 1
                        else:
                            label, stop = "5.3Rb", True
                            P[l + 1], P[l] = py, px
                elif ax <= al:
                    label, stop = "5.2", True
                    P[l] = P[l + 1] = px
                else:
                    label = "5.4"
                    py = self._lcp2(vl, vr, px)
                    if _char(vl, py) <= _char(vr, py):
                        H[c], P[c], P[l + 1], p, c = hl, pl, py, px, l
                    else:
                        H[c], P[c], P[l], p, c = hr, pr, py, px, l + 1

            if cases is not None:
                cases[label] += 1
            if stop:
                break

        H[c], P[c], V[t] = t, p, x
        self.sift_steps += steps

    @property
    def root_lcp(self) -> int:
        """lcp between the root value and the value extracted before it"""
        return self.P[1]

    def check_lcp(self) -> None:
        """Recompute every P entry from its definition"""
        H, V, P = self.H, self.V, self.P
        for i in range(2, self.T + 1):
            expected = definitional_lcp(V[H[i]], V[H[i // 2]])
            if P[i] != expected:
                raise InvariantViolation(
                    "lcp array",
                    f"P[{i}] = {P[i]} but lcp({V[H[i]]!r}, {V[H[i // 2]]!r}) = {expected}",
                )


def merge_string(
    sources: Sequence[SortedSource],
    dedup: bool = True,
    check: bool = False,
    trace: bool = False,
) -> MergeResult:
    """
    Merge sorted sources with the string heap

    Duplicates are recognised from the root's lcp: the new root equals the last
    extracted value iff their lcp spans both strings.

    Args:
        sources: One strictly increasing source per list
        dedup: Drop values equal to the last one emitted
        check: Run the heap, lcp-array and extraction-lcp checkers
        trace: Record which descent cases fired

    Returns:
        The merged output, list counts per value and run statistics
    """
    output: List[bytes] = []
    counts: List[int] = []
    heap = StringHeap(len(sources), trace=trace)
    stats = heap.stats
    if heap.T == 0:
        return MergeResult(output, counts, finalize_stats(stats, output, counts))

    start = time.perf_counter_ns()
    heap.build(sources)
    if check:
        heap.check_heap()
        heap.check_lcp()

    H, V, P = heap.H, heap.V, heap.P
    previous: Optional[bytes] = None
    while True:
        t = H[1]
        if t == 0:
            break
        x = V[t]
        root_lcp = P[1]
        if check:
            expected = scan_lcp(previous, x, 0) if previous is not None else 0
            if root_lcp != expected:
                raise InvariantViolation(
                    "extraction lcp",
                    f"root lcp {root_lcp} for {x!r} after {previous!r}, expected {expected}",
                )

        if previous is None:
            # The first value is charged in full against the empty predecessor
            stats.char_probes += len(x)
            output.append(x)
            counts.append(1)
        elif dedup and root_lcp == len(x) == len(previous):
            counts[-1] += 1
        else:
            output.append(x)
            counts.append(1)
        previous = x

        heap.replace(1, sources)
        if check:
            heap.check_heap()
            heap.check_lcp()

    stats.wall_ns = time.perf_counter_ns() - start
    stats.sift_steps = heap.sift_steps
    result = MergeResult(output, counts, finalize_stats(stats, output, counts))
    if heap.cases is not None:
        result.cases = dict(heap.cases)
    return result
