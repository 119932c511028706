#!/usr/bin/env python3
"""
Deterministic synthetic datasets: T sorted, duplicate-free lists of k-mers.

uniform  every list draws its strings independently and uniformly, so collisions
         across lists are rare and mean lcp grows like log_sigma(M) - 0.8 (sigma 4)
shotgun  a universe of distinct k-mers is replicated c times (coverage) and every
         copy lands in a random list, giving e_bar = T(1 - (1 - 1/T)^c)
"""

import math
import string
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import List, Optional

import numpy as np
from dataclasses_json import dataclass_json
from rich.console import Console

try:
    from src.errors import ConfigurationError
    from src.output_utils import PathLike, write_dataset_files
except ModuleNotFoundError:
    from errors import ConfigurationError
    from output_utils import PathLike, write_dataset_files

# Initialize console for rich output
console = Console(stderr=True)

MAX_SIGMA = len(string.ascii_lowercase)


class Scenario(str, Enum):
    UNIFORM = "uniform"
    SHOTGUN = "shotgun"


@dataclass
class GenSpec:
    """Parameters of one generated dataset"""

    scenario: Scenario
    T: int
    k: int = 20
    sigma: int = 4
    m_target: int = 100_000
    coverage: int = 1
    error_fraction: float = 0.0
    seed: int = 0

    def validate(self) -> None:
        """Raise ConfigurationError on parameters no generator accepts"""
        if self.T < 1:
            raise ConfigurationError(f"T must be at least 1, got {self.T}")
        if self.k < 1:
            raise ConfigurationError(f"k must be at least 1, got {self.k}")
        if not 2 <= self.sigma <= MAX_SIGMA:
            raise ConfigurationError(f"sigma must lie in 2..{MAX_SIGMA}, got {self.sigma}")
        if self.m_target < self.T:
            raise ConfigurationError(
                f"M must be at least T ({self.T}), got {self.m_target}"
            )
        if self.scenario == Scenario.SHOTGUN:
            if self.coverage < 1:
                raise ConfigurationError(f"coverage must be at least 1, got {self.coverage}")
            if not 0.0 <= self.error_fraction < 1.0:
                raise ConfigurationError(
                    f"error fraction must lie in [0, 1), got {self.error_fraction}"
                )
        if self.seed < 0 or self.seed >= 2**64:
            raise ConfigurationError(f"seed must be a 64-bit unsigned value, got {self.seed}")


@dataclass_json
@dataclass
class GenManifest:
    """Sidecar record of a generated dataset"""

    scenario: str
    T: int
    k: int
    sigma: int
    seed: int
    m_target: int
    coverage: int
    error_fraction: float
    alphabet: str
    files: List[str] = field(default_factory=list)
    realized_m: List[int] = field(default_factory=list)
    n_distinct: int = 0
    measured_e_bar: float = 0.0
    expected_e_bar: Optional[float] = None
    expected_mean_lcp: Optional[float] = None


@dataclass
class GeneratedData:
    spec: GenSpec
    lists: List[List[bytes]]
    manifest: GenManifest


def alphabet_for(sigma: int) -> bytes:
    """DNA letters for sigma 4, otherwise the first sigma lowercase letters"""
    if sigma == 4:
        return b"acgt"
    return string.ascii_lowercase[:sigma].encode()


def expected_e_bar(T: int, coverage: int, error_fraction: float = 0.0) -> float:
    """
    Expected number of lists holding a distinct shotgun k-mer

    Args:
        T: Number of lists
        coverage: Copies of every correct k-mer
        error_fraction: Share of k-mers that occur once

    Returns:
        f + (1 - f) * T * (1 - (1 - 1/T)^c)
    """
    covered = T * (1.0 - (1.0 - 1.0 / T) ** coverage)
    return error_fraction + (1.0 - error_fraction) * covered


def expected_mean_lcp(m: int, sigma: int, k: int) -> float:
    """
    Expected lcp of adjacent strings among m sorted uniform random k-mers

    The leading term is log_sigma(m); the constant correction is
    -1/2 + (gamma - 1) / ln(sigma), about -0.8 for sigma = 4.
    """
    estimate = math.log(m, sigma) - 0.5 + (np.euler_gamma - 1.0) / math.log(sigma)
    return min(float(k), max(0.0, estimate))


def list_file_name(t: int) -> str:
    return f"list.{t:03d}.txt"


def _make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def _random_kmers(
    rng: np.random.Generator, count: int, k: int, letters: np.ndarray
) -> np.ndarray:
    """count random k-mers as a fixed-width bytes array (unsorted, may repeat)"""
    codes = rng.integers(0, len(letters), size=(count, k), dtype=np.uint8)
    return np.ascontiguousarray(letters[codes]).view(f"S{k}").ravel()


def gen_uniform(spec: GenSpec) -> List[List[bytes]]:
    """
    Generate T lists of ceil(M/T) uniform random k-mers each, sorted and deduplicated

    Args:
        spec: Dataset parameters, scenario uniform

    Returns:
        The lists, each strictly increasing
    """
    spec.validate()
    rng = _make_rng(spec.seed)
    letters = np.frombuffer(alphabet_for(spec.sigma), dtype=np.uint8)
    per_list = math.ceil(spec.m_target / spec.T)

    lists: List[List[bytes]] = []
    for _ in range(spec.T):
        kmers = _random_kmers(rng, per_list, spec.k, letters)
        lists.append(np.unique(kmers).tolist())
    return lists


def shotgun_universe_size(spec: GenSpec) -> int:
    """Distinct k-mers D with D * (f + (1 - f) * c) = M"""
    per_kmer = spec.error_fraction + (1.0 - spec.error_fraction) * spec.coverage
    return max(1, round(spec.m_target / per_kmer))


def gen_shotgun(spec: GenSpec) -> List[List[bytes]]:
    """
    Generate T lists by scattering c copies of every distinct k-mer over the lists

    A fraction error_fraction of the k-mers gets a single copy. Copies landing in
    the same list collapse, which is what brings e_bar below c.

    Args:
        spec: Dataset parameters, scenario shotgun

    Returns:
        The lists, each strictly increasing
    """
    spec.validate()
    rng = _make_rng(spec.seed)
    letters = np.frombuffer(alphabet_for(spec.sigma), dtype=np.uint8)

    universe = np.unique(_random_kmers(rng, shotgun_universe_size(spec), spec.k, letters))
    D = len(universe)
    erroneous = rng.random(D) < spec.error_fraction
    covered_idx = np.flatnonzero(~erroneous)
    error_idx = np.flatnonzero(erroneous)

    copies = rng.integers(0, spec.T, size=(len(covered_idx), spec.coverage))
    singles = rng.integers(0, spec.T, size=len(error_idx))
    kmer_idx = np.concatenate(
        [np.repeat(covered_idx, spec.coverage), error_idx]
    ).astype(np.int64)
    list_idx = np.concatenate([copies.ravel(), singles]).astype(np.int64)

    # One key per (list, k-mer) pair; sorting keys sorts by list, then k-mer
    keys = np.unique(list_idx * D + kmer_idx)
    owners = keys // D
    bounds = np.searchsorted(owners, np.arange(spec.T + 1))
    return [
        universe[keys[bounds[t] : bounds[t + 1]] % D].tolist() for t in range(spec.T)
    ]


def generate(spec: GenSpec) -> GeneratedData:
    """
    Generate a dataset in memory together with its manifest

    Args:
        spec: Dataset parameters

    Returns:
        Lists plus a manifest recording realized sizes and e_bar
    """
    spec.validate()
    if spec.scenario == Scenario.UNIFORM:
        lists = gen_uniform(spec)
    else:
        lists = gen_shotgun(spec)

    realized = [len(values) for values in lists]
    m_in = sum(realized)
    n_distinct = len(set().union(*lists)) if lists else 0

    expected_e: Optional[float] = None
    expected_lcp: Optional[float] = None
    if spec.scenario == Scenario.SHOTGUN:
        expected_e = expected_e_bar(spec.T, spec.coverage, spec.error_fraction)
    elif m_in > 1:
        expected_lcp = expected_mean_lcp(m_in, spec.sigma, spec.k)

    manifest = GenManifest(
        scenario=Scenario(spec.scenario).value,
        T=spec.T,
        k=spec.k,
        sigma=spec.sigma,
        seed=spec.seed,
        m_target=spec.m_target,
        coverage=spec.coverage,
        error_fraction=spec.error_fraction,
        alphabet=alphabet_for(spec.sigma).decode(),
        files=[list_file_name(t) for t in range(spec.T)],
        realized_m=realized,
        n_distinct=n_distinct,
        measured_e_bar=m_in / n_distinct if n_distinct else 0.0,
        expected_e_bar=expected_e,
        expected_mean_lcp=expected_lcp,
    )
    return GeneratedData(spec=spec, lists=lists, manifest=manifest)


def write_dataset(data: GeneratedData, out_dir: PathLike) -> List[Path]:
    """
    Write a generated dataset as list.NNN.txt files plus manifest.json

    Args:
        data: Output of generate
        out_dir: Target directory

    Returns:
        Paths of the list files
    """
    manifest = data.manifest
    console.print(
        f"[bold blue]Writing {manifest.scenario} dataset: T={manifest.T} "
        f"M={sum(manifest.realized_m)} N={manifest.n_distinct}[/]"
    )
    return write_dataset_files(data.lists, manifest.files, manifest.to_json(indent=2), out_dir)
