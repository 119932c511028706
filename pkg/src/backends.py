#!/usr/bin/env python3
"""
Registry of merge backends selectable by name
"""

from enum import Enum
from typing import Callable, Dict, Optional, Sequence

try:
    from src.collision_heap import merge_collision
    from src.core import MergeResult, SortedSource
    from src.errors import ConfigurationError
    from src.heap_basic import merge_basic
    from src.string_collision_heap import merge_string_collision
    from src.string_heap import merge_string
    from src.trie_pq import merge_trie
except ModuleNotFoundError:
    from collision_heap import merge_collision
    from core import MergeResult, SortedSource
    from errors import ConfigurationError
    from heap_basic import merge_basic
    from string_collision_heap import merge_string_collision
    from string_heap import merge_string
    from trie_pq import merge_trie


class Algo(str, Enum):
    HEAP = "heap"
    SHEAP = "sheap"
    CHEAP = "cheap"
    SCHEAP = "scheap"
    TRIE = "trie"


# Backends that can emit every input copy instead of one value per cohort
KEEPS_DUPLICATES = frozenset({Algo.HEAP, Algo.SHEAP})

_HEAP_BACKENDS: Dict[Algo, Callable[..., MergeResult]] = {
    Algo.HEAP: merge_basic,
    Algo.SHEAP: merge_string,
    Algo.CHEAP: merge_collision,
    Algo.SCHEAP: merge_string_collision,
}


def run_merge(
    algo: Algo,
    sources: Sequence[SortedSource],
    dedup: bool = True,
    check: bool = False,
    alphabet: Optional[bytes] = None,
) -> MergeResult:
    """
    Merge sources with the named backend

    Args:
        algo: Backend name
        sources: One strictly increasing source per list
        dedup: Emit each distinct value once
        check: Run the backend's definitional checkers while merging
        alphabet: Trie alphabet; learned from the input when None

    Returns:
        The backend's merge result
    """
    algo = Algo(algo)
    if not dedup and algo not in KEEPS_DUPLICATES:
        raise ConfigurationError(
            f"--keep-duplicates needs one of "
            f"{', '.join(a.value for a in sorted(KEEPS_DUPLICATES))}, got {algo.value}"
        )
    if algo == Algo.TRIE:
        return merge_trie(sources, dedup=dedup, alphabet=alphabet, check=check)
    return _HEAP_BACKENDS[algo](sources, dedup=dedup, check=check)
