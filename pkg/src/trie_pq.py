#!/usr/bin/env python3
"""
Compact trie used as a priority queue over the current heads of the lists.

Equal heads from different lists land on the same node, so one delete-min
returns a value together with every list holding it. Each node keeps a child
array over the dense alphabet, its out-degree and its smallest out-edge.
Insertion costs O(s), delete-min O(Sigma + s).
"""

import time
from typing import Iterable, Iterator, List, Optional, Sequence, Set, Tuple

try:
    from src.core import MergeResult, MergeStats, SortedSource, finalize_stats
    from src.errors import AlphabetError, ConfigurationError, InvariantViolation
except ModuleNotFoundError:
    from core import MergeResult, MergeStats, SortedSource, finalize_stats
    from errors import AlphabetError, ConfigurationError, InvariantViolation


class TrieNode:
    """
    Trie node whose edge label is ``text[start:end]``

    ``text[:end]`` spells the whole path from the root, so splitting or merging
    a fragment only moves offsets.
    """

    __slots__ = ("text", "start", "end", "children", "degree", "min_edge", "sources")

    def __init__(self, text: bytes, start: int, end: int, sigma: int):
        self.text = text
        self.start = start
        self.end = end
        self.children: List[Optional["TrieNode"]] = [None] * sigma
        self.degree = 0
        self.min_edge = 0
        # Lists whose current head ends at this node
        self.sources: List[int] = []

    @property
    def fragment(self) -> bytes:
        return self.text[self.start : self.end]

    @property
    def path(self) -> bytes:
        return self.text[: self.end]


def build_alphabet(values: Iterable[int]) -> bytes:
    """Sorted distinct bytes, the order of which fixes child order"""
    return bytes(sorted(set(values)))


class CompactTrie:
    """Priority queue of (string, list) pairs with equal strings sharing a node"""

    def __init__(self, alphabet: bytes):
        alphabet = build_alphabet(alphabet)
        if not alphabet:
            raise ConfigurationError("the trie alphabet is empty")
        self.alphabet = alphabet
        self.sigma = len(alphabet)
        self._code: List[int] = [-1] * 256
        for index, byte in enumerate(alphabet):
            self._code[byte] = index

        self.root = TrieNode(b"", 0, 0, self.sigma)
        self.node_count = 0
        self.size = 0
        self.char_probes = 0
        self._free: List[TrieNode] = []

    def __len__(self) -> int:
        return self.size

    def _index(self, byte: int) -> int:
        code = self._code[byte]
        if code < 0:
            raise AlphabetError(byte)
        return code

    def _new_node(self, text: bytes, start: int, end: int) -> TrieNode:
        self.node_count += 1
        if self._free:
            node = self._free.pop()
            node.text, node.start, node.end = text, start, end
            node.children = [None] * self.sigma
            node.degree = node.min_edge = 0
            node.sources = []
            return node
        return TrieNode(text, start, end, self.sigma)

    def _release(self, node: TrieNode) -> None:
        self.node_count -= 1
        node.text = b""
        node.children = []
        node.sources = []
        self._free.append(node)

    @staticmethod
    def _attach(parent: TrieNode, c: int, child: TrieNode) -> None:
        if parent.degree == 0 or c < parent.min_edge:
            parent.min_edge = c
        parent.children[c] = child
        parent.degree += 1

    @staticmethod
    def _detach(parent: TrieNode, c: int) -> None:
        parent.children[c] = None
        parent.degree -= 1
        if parent.degree and c == parent.min_edge:
            parent.min_edge = next(
                i for i, child in enumerate(parent.children) if child is not None
            )

    def _splice(self, parent: TrieNode, c: int, node: TrieNode) -> None:
        """Replace a payload-free node of degree 1 by its only child"""
        child = node.children[node.min_edge]
        child.start = node.start
        parent.children[c] = child
        self._release(node)

    def insert(self, x: bytes, t: int) -> None:
        """
        Store x as the current head of list t

        Args:
            x: String whose bytes all belong to the alphabet
            t: List index added to the payload of x's node

        Raises:
            AlphabetError: x holds a byte outside the alphabet
        """
        for byte in x:
            self._index(byte)

        node = self.root
        pos = 0
        n = len(x)
        while pos < n:
            c = self._code[x[pos]]
            child = node.children[c]
            if child is None:
                leaf = self._new_node(x, pos, n)
                leaf.sources.append(t)
                self._attach(node, c, leaf)
                self.size += 1
                return

            text, end = child.text, child.end
            k = pos + 1
            while k < end and k < n and text[k] == x[k]:
                k += 1
            self.char_probes += k - pos
            if k < end:
                # Split the edge at the first mismatch or where x ends
                middle = self._new_node(text, pos, k)
                node.children[c] = middle
                child.start = k
                self._attach(middle, self._code[text[k]], child)
                child = middle
            node, pos = child, k

        if not node.sources:
            self.size += 1
        node.sources.append(t)

    def delete_min(self) -> Tuple[bytes, List[int]]:
        """
        Remove the smallest stored string

        A string ending at an internal node is smaller than every string below it.

        Returns:
            The string and the lists whose head it was

        Raises:
            IndexError: The trie is empty
        """
        if self.size == 0:
            raise IndexError("delete_min from an empty trie")

        path: List[Tuple[TrieNode, int]] = []
        node = self.root
        while not node.sources:
            c = node.min_edge
            path.append((node, c))
            node = node.children[c]

        value = node.path
        sources = node.sources
        node.sources = []
        self.size -= 1

        if node.degree == 0 and path:
            parent, c = path.pop()
            self._detach(parent, c)
            self._release(node)
            node = parent
        if node is not self.root and node.degree == 1 and not node.sources:
            parent, c = path[-1]
            self._splice(parent, c, node)
        return value, sources

    def items(self) -> Iterator[Tuple[bytes, List[int]]]:
        """Stored strings with their lists, smallest first"""
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.sources:
                yield node.path, list(node.sources)
            stack.extend(child for child in reversed(node.children) if child is not None)

    def check(self) -> None:
        """Verify degree, min_edge, compactness and fragment layout of every node"""
        count = 0
        stored = 0
        stack = [self.root]
        while stack:
            node = stack.pop()
            present = [i for i, child in enumerate(node.children) if child is not None]
            if node.degree != len(present):
                raise InvariantViolation(
                    "trie degree", f"{node.path!r}: degree {node.degree}, {len(present)} children"
                )
            if present and node.min_edge != present[0]:
                raise InvariantViolation(
                    "trie min edge", f"{node.path!r}: min_edge {node.min_edge}, expected {present[0]}"
                )
            if node is not self.root and node.degree < 2 and not node.sources:
                raise InvariantViolation(
                    "trie compactness", f"{node.path!r} has degree {node.degree} and no payload"
                )
            if node.sources:
                stored += 1
            for i in present:
                child = node.children[i]
                if child.start != node.end or child.end <= child.start:
                    raise InvariantViolation(
                        "trie fragment",
                        f"child {child.fragment!r} of {node.path!r} spans {child.start}:{child.end}",
                    )
                if child.text[: node.end] != node.path or self._code[child.text[child.start]] != i:
                    raise InvariantViolation(
                        "trie fragment", f"child {child.path!r} filed under edge {i} of {node.path!r}"
                    )
                count += 1
                stack.append(child)

        if count != self.node_count or stored != self.size:
            raise InvariantViolation(
                "trie size",
                f"counted {count} nodes and {stored} strings, "
                f"tracked {self.node_count} and {self.size}",
            )
        if self.node_count > 2 * self.size:
            raise InvariantViolation(
                "trie size", f"{self.node_count} nodes for {self.size} stored strings"
            )


def learn_alphabet(sources: Sequence[SortedSource]) -> bytes:
    """Alphabet of everything the sources still hold"""
    seen: Set[int] = set()
    for source in sources:
        seen |= source.alphabet()
    return build_alphabet(seen)


def merge_trie(
    sources: Sequence[SortedSource],
    dedup: bool = True,
    alphabet: Optional[bytes] = None,
    check: bool = False,
) -> MergeResult:
    """
    Merge sorted sources through the compact trie priority queue

    Args:
        sources: One strictly increasing source per list
        dedup: Must be True; equal heads always share a node
        alphabet: Bytes that may occur; learned from the sources when omitted
        check: Verify the trie after every operation

    Returns:
        The merged output, list counts per value and run statistics
    """
    if not dedup:
        raise ConfigurationError("the trie backend always merges equal values")

    stats = MergeStats()
    output: List[bytes] = []
    counts: List[int] = []
    T = len(sources)
    if T == 0:
        return MergeResult(output, counts, finalize_stats(stats, output, counts))

    if alphabet is None:
        alphabet = learn_alphabet(sources)
    # A single empty string still needs a non-empty alphabet
    trie = CompactTrie(alphabet or b"a")

    def advance(t: int) -> None:
        source = sources[t - 1]
        if source.empty():
            return
        value = source.pop()
        try:
            trie.insert(value, t)
        except AlphabetError as e:
            raise AlphabetError(e.byte, source.name) from e

    start = time.perf_counter_ns()
    for t in range(1, T + 1):
        advance(t)
    max_nodes = trie.node_count
    if check:
        trie.check()

    while trie.size:
        value, holders = trie.delete_min()
        stats.delete_mins += 1
        output.append(value)
        counts.append(len(holders))
        for t in holders:
            advance(t)
        max_nodes = max(max_nodes, trie.node_count)
        if check:
            trie.check()
            if trie.node_count > 2 * T:
                raise InvariantViolation(
                    "trie size", f"{trie.node_count} nodes with {T} lists"
                )

    stats.wall_ns = time.perf_counter_ns() - start
    stats.char_probes = trie.char_probes
    stats.max_nodes = max_nodes
    return MergeResult(output, counts, finalize_stats(stats, output, counts))
