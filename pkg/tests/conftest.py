"""
Pytest configuration file with fixtures for strmerge tests
"""

import random
from pathlib import Path
from typing import Callable, List, Sequence, Tuple

import pytest

Lists = List[List[bytes]]


def merge_oracle(lists: Sequence[Sequence[bytes]]) -> Tuple[List[bytes], List[int]]:
    """Concatenate, sort and deduplicate; counts are the lists holding each value"""
    holders = {}
    for values in lists:
        for value in set(values):
            holders[value] = holders.get(value, 0) + 1
    output = sorted(holders)
    return output, [holders[value] for value in output]


def random_lists(
    rng: random.Random,
    T: int,
    per_list: int,
    alphabet: bytes = b"ab",
    min_len: int = 0,
    max_len: int = 6,
) -> Lists:
    """T strictly increasing lists of random strings (duplicates across lists likely)"""
    lists = []
    for _ in range(T):
        values = {
            bytes(rng.choice(alphabet) for _ in range(rng.randint(min_len, max_len)))
            for _ in range(per_list)
        }
        lists.append(sorted(values))
    return lists


# --- Canonical Instances ---


@pytest.fixture
def oracle() -> Callable[[Sequence[Sequence[bytes]]], Tuple[List[bytes], List[int]]]:
    """Brute-force merge used as ground truth"""
    return merge_oracle


@pytest.fixture
def small_lists() -> Lists:
    """Three short lists with shared prefixes and one shared value"""
    return [
        [b"ab", b"abc", b"b"],
        [b"abd", b"b", b"ba"],
        [b"a", b"abc"],
    ]


@pytest.fixture
def identical_lists() -> Lists:
    """Four copies of the same list"""
    values = [b"a" + bytes([c]) for c in b"abcdefgh"]
    return [list(values) for _ in range(4)]


@pytest.fixture
def instance_factory() -> Callable[..., Lists]:
    """Seeded random instance generator: factory(seed, T, per_list, ...)"""

    def factory(seed: int, T: int, per_list: int, **kwargs) -> Lists:
        return random_lists(random.Random(seed), T, per_list, **kwargs)

    return factory


# --- File Fixtures ---


@pytest.fixture
def write_lists(tmp_path: Path) -> Callable[[Sequence[Sequence[bytes]]], List[Path]]:
    """Write lists as newline-delimited files under tmp_path"""

    def writer(lists: Sequence[Sequence[bytes]]) -> List[Path]:
        paths = []
        for t, values in enumerate(lists):
            path = tmp_path / f"in.{t:03d}.txt"
            path.write_bytes(b"".join(value + b"\n" for value in values))
            paths.append(path)
        return paths

    return writer
