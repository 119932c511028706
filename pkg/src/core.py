#!/usr/bin/env python3
"""
Core string semantics, sorted input sources and merge statistics shared by
every merge backend.

Strings are ``bytes``. The terminator that ends every string is implicit: the
character at index ``len(s)`` reads as a virtual terminator ranked below every
content byte, which is exactly how Python orders ``bytes`` (a proper prefix sorts
before its extensions).
"""

import enum
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Union

from dataclasses_json import dataclass_json

# Try importing from src package first (for installed use)
# If that fails, try relative imports (for local development)
try:
    from src.errors import InputFormatError, InvariantViolation, MonotonicityViolation
except ModuleNotFoundError:
    from errors import InputFormatError, InvariantViolation, MonotonicityViolation

# Byte values that may never appear inside a string
RESERVED_TERMINATOR = 0x00
LINE_DELIMITER = 0x0A


class Infinity:
    """Sentinel value ranked above every string, used to retire exhausted lists"""

    __slots__ = ()
    _instance: Optional["Infinity"] = None

    def __new__(cls) -> "Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return other is self

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __ge__(self, other: object) -> bool:
        return True

    def __eq__(self, other: object) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("INFINITY")

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = Infinity()

# A heap value slot holds either a string or INFINITY
Value = Union[bytes, Infinity]


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass_json
@dataclass
class MergeStats:
    """Measurables of one merge run"""

    m_in: int = 0
    n_out: int = 0
    e_bar: float = 0.0
    mean_lcp: float = 0.0
    char_probes: int = 0
    term_probes: int = 0
    sift_steps: int = 0
    wall_ns: int = 0
    total_chars: int = 0
    delete_mins: int = 0
    max_nodes: int = 0


@dataclass
class MergeResult:
    """Merged output, per-value list counts and the run's statistics"""

    output: List[bytes]
    counts: List[int]
    stats: MergeStats = field(default_factory=MergeStats)
    # Descent case label -> times fired, filled when tracing
    cases: Dict[str, int] = field(default_factory=dict)


def compare(x: Value, y: Value) -> Ordering:
    """
    Order two values bytewise, a proper prefix first and INFINITY last

    Args:
        x: First value
        y: Second value

    Returns:
        Ordering of x relative to y
    """
    if x == y:
        return Ordering.EQUAL
    return Ordering.LESS if x < y else Ordering.GREATER


def scan_lcp(x: bytes, y: bytes, n: int) -> int:
    """Extend a known common prefix of length n; no accounting"""
    m = min(len(x), len(y))
    while n < m and x[n] == y[n]:
        n += 1
    return n


def lcp_from(x: bytes, y: bytes, n: int, stats: Optional[MergeStats] = None) -> int:
    """
    Return the first index rho >= n where x and y differ or both end

    Args:
        x: First string
        y: Second string
        n: Offset already known to be common to x and y
        stats: Counters charged with rho - n probes plus one terminal probe

    Returns:
        The longest common prefix length of x and y
    """
    rho = scan_lcp(x, y, n)
    if stats is not None:
        stats.char_probes += rho - n
        stats.term_probes += 1
    return rho


def lcp3_from(
    x: bytes, y: bytes, z: bytes, n: int, stats: Optional[MergeStats] = None
) -> int:
    """
    Return the first index rho >= n where x, y and z are not all equal or x ends

    Two probe units are charged per increment since two of the three strings
    advance their lcp-values.
    """
    m = min(len(x), len(y), len(z))
    rho = n
    while rho < m and x[rho] == y[rho] == z[rho]:
        rho += 1
    if stats is not None:
        stats.char_probes += 2 * (rho - n)
        stats.term_probes += 1
    return rho


def lcp(x: bytes, y: bytes) -> int:
    """Longest common prefix length of two strings"""
    return scan_lcp(x, y, 0)


class SortedSource:
    """Pull-only queue over a strictly increasing list of strings"""

    __slots__ = ("name", "pending", "last_popped", "_next")

    def __init__(self, name: str, strings: Sequence[bytes]):
        self.name = name
        self.pending: Sequence[bytes] = strings
        self.last_popped: Optional[bytes] = None
        self._next = 0

    @classmethod
    def from_strings(cls, name: str, strings: Iterable[bytes]) -> "SortedSource":
        """
        Build a source over in-memory strings, rejecting reserved bytes

        Args:
            name: Label used in error messages
            strings: The strings, expected in strictly increasing order

        Returns:
            A source that checks monotonicity as values are popped
        """
        values = list(strings)
        for index, value in enumerate(values):
            if RESERVED_TERMINATOR in value or LINE_DELIMITER in value:
                raise InputFormatError(name, index + 1, "reserved byte in string")
        return cls(name, values)

    def empty(self) -> bool:
        return self._next >= len(self.pending)

    def pop(self) -> bytes:
        value = self.pending[self._next]
        self._next += 1
        last = self.last_popped
        if last is not None and compare(value, last) is not Ordering.GREATER:
            raise MonotonicityViolation(self.name, self._next, last, value)
        self.last_popped = value
        return value

    def alphabet(self) -> Set[int]:
        """Content bytes of every string not yet popped"""
        return set(b"".join(self.pending[self._next :]))

    def __len__(self) -> int:
        return len(self.pending) - self._next

    def __repr__(self) -> str:
        return f"SortedSource({self.name!r}, remaining={len(self)})"


def read_lines(path: str) -> List[bytes]:
    """
    Read a newline-delimited file of strings

    Args:
        path: File to read

    Returns:
        The strings, terminators excluded
    """
    try:
        with open(path, "rb") as handle:
            data = handle.read()
    except OSError as e:
        raise InputFormatError(path, None, e.strerror or str(e)) from e

    bad = data.find(bytes([RESERVED_TERMINATOR]))
    if bad >= 0:
        line = data.count(b"\n", 0, bad) + 1
        raise InputFormatError(path, line, "embedded 0x00 byte")

    lines = data.split(b"\n")
    # The final LF terminates the last line rather than opening a new one
    if not data or data.endswith(b"\n"):
        lines.pop()
    return lines


def open_sources(paths: Sequence[str]) -> List[SortedSource]:
    """
    Open one sorted source per input file

    Args:
        paths: Newline-delimited files, each strictly increasing

    Returns:
        Sources in the order of paths; monotonicity is checked on pop
    """
    return [SortedSource(str(path), read_lines(str(path))) for path in paths]


def sources_from_lists(lists: Sequence[Sequence[bytes]]) -> List[SortedSource]:
    """Wrap in-memory lists as sources named list.000, list.001, ..."""
    return [SortedSource(f"list.{t:03d}", strings) for t, strings in enumerate(lists)]


class HeapCore:
    """
    Array heap of list indices over the current head of each list

    Nodes are 1..T; ``H[i]`` is the list at node i and ``V[t]`` the head of
    list t. ``V[0]`` is INFINITY and list index 0 marks an exhausted slot, so
    ``H[1] == 0`` once every list is exhausted. Subclasses supply ``heapify``.
    """

    def __init__(self, T: int):
        self.T = T
        self.H: List[int] = [0] * (T + 1)
        self.V: List[Value] = [INFINITY] * (T + 1)
        self.sift_steps = 0

    def heapify(self, i: int, x: Value, t: int) -> None:
        raise NotImplementedError

    def build(self, sources: Sequence[SortedSource]) -> None:
        """Insert each list's first element in reverse node order"""
        for t in range(self.T, 0, -1):
            source = sources[t - 1]
            if source.empty():
                self.heapify(t, INFINITY, 0)
            else:
                self.heapify(t, source.pop(), t)

    def replace(self, i: int, sources: Sequence[SortedSource]) -> None:
        """Replace the value at node i with its list successor or INFINITY"""
        t = self.H[i]
        source = sources[t - 1]
        if source.empty():
            self.heapify(i, INFINITY, 0)
        else:
            self.heapify(i, source.pop(), t)

    def value_at(self, i: int) -> Value:
        return self.V[self.H[i]]

    def check_heap(self) -> None:
        """Verify the heap property and that live lists occupy one node each"""
        H, V = self.H, self.V
        live = [t for t in H[1:] if t != 0]
        if len(live) != len(set(live)):
            raise InvariantViolation("heap layout", f"list repeated in H={H[1:]}")
        for i in range(2, self.T + 1):
            if compare(V[H[i]], V[H[i // 2]]) is Ordering.LESS:
                raise InvariantViolation(
                    "heap order", f"node {i} holds {V[H[i]]!r} below {V[H[i // 2]]!r}"
                )


def extraction_lcp_total(output: Sequence[bytes], counts: Sequence[int]) -> int:
    """
    Sum of lcp(s_{i-1}, s_i) over the extraction sequence

    The extraction sequence repeats output[i] counts[i] times in a row, so equal
    neighbours contribute their full length.
    """
    total = 0
    previous: Optional[bytes] = None
    for value, count in zip(output, counts):
        if previous is not None:
            total += scan_lcp(previous, value, 0)
        total += (count - 1) * len(value)
        previous = value
    return total


def finalize_stats(
    stats: MergeStats, output: Sequence[bytes], counts: Sequence[int]
) -> MergeStats:
    """
    Fill in the derived measurables of a finished merge

    Args:
        stats: Counters collected during the merge
        output: Merged values (duplicates present when dedup was off)
        counts: Number of input lists behind each output value

    Returns:
        The same stats object, updated
    """
    m_in = sum(counts)
    distinct = 0
    previous: Optional[bytes] = None
    for value in output:
        if previous is None or value != previous:
            distinct += 1
        previous = value

    stats.m_in = m_in
    stats.n_out = distinct
    stats.e_bar = m_in / distinct if distinct else 0.0
    stats.total_chars = sum(len(v) * c for v, c in zip(output, counts))
    pairs = m_in - 1
    stats.mean_lcp = extraction_lcp_total(output, counts) / pairs if pairs > 0 else 0.0
    return stats
