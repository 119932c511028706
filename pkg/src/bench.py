#!/usr/bin/env python3
"""
Benchmark matrix: generate datasets, merge them with every selected backend,
check that the backends agree and report the median of repeated runs.
"""

import asyncio
import statistics
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from dataclasses_json import dataclass_json
from rich.console import Console
from rich.table import Table

try:
    from src.backends import Algo, run_merge
    from src.core import MergeResult, MergeStats, open_sources, sources_from_lists
    from src.datagen import GenSpec, Scenario, generate, write_dataset
    from src.errors import ConfigurationError, InvariantViolation
    from src.output_utils import STATS_COLUMNS
except ModuleNotFoundError:
    from backends import Algo, run_merge
    from core import MergeResult, MergeStats, open_sources, sources_from_lists
    from datagen import GenSpec, Scenario, generate, write_dataset
    from errors import ConfigurationError, InvariantViolation
    from output_utils import STATS_COLUMNS

# Initialize console for rich output
console = Console(stderr=True)

# Allowed slowdown of scheap against the faster of sheap and cheap
SCHEAP_TOLERANCE = 1.10


@dataclass
class BenchCell:
    """One dataset of the matrix"""

    scenario: str
    T: int
    k: int
    sigma: int
    m_target: int
    coverage: int = 0
    seed: int = 0

    def gen_spec(self) -> GenSpec:
        # Coverage 0 stands for the unreplicated rows and is generated as uniform
        if self.scenario == Scenario.SHOTGUN.value and self.coverage > 0:
            return GenSpec(
                scenario=Scenario.SHOTGUN,
                T=self.T,
                k=self.k,
                sigma=self.sigma,
                m_target=self.m_target,
                coverage=self.coverage,
                seed=self.seed,
            )
        return GenSpec(
            scenario=Scenario.UNIFORM,
            T=self.T,
            k=self.k,
            sigma=self.sigma,
            m_target=self.m_target,
            seed=self.seed,
        )


@dataclass_json
@dataclass
class BenchRow:
    """Median measurements of one backend on one dataset"""

    backend: str
    T: int
    M: int
    N: int
    mean_lcp: float
    e_bar: float
    wall_ns: int
    char_probes: int
    sift_steps: int
    scenario: str = Scenario.UNIFORM.value
    coverage: int = 0

    @classmethod
    def from_stats(cls, backend: str, T: int, stats: MergeStats, **extra) -> "BenchRow":
        """Row for one merge; ``extra`` overrides fields such as wall_ns or scenario"""
        measured = stats.to_dict()
        row = {"backend": backend, "T": T, "M": measured["m_in"], "N": measured["n_out"]}
        for name in ("mean_lcp", "e_bar", "wall_ns", "char_probes", "sift_steps"):
            row[name] = measured[name]
        row.update(extra)
        return cls.from_dict(row)


@dataclass
class Verdict:
    claim: str
    holds: Optional[bool]
    detail: str


def build_cells(
    scenario: str,
    T_values: Sequence[int],
    m_target: int,
    k: int = 20,
    sigma: int = 4,
    coverage_ratios: Sequence[float] = (),
    seed: int = 0,
) -> List[BenchCell]:
    """
    Expand matrix parameters into cells

    Args:
        scenario: uniform or shotgun
        T_values: List counts
        m_target: Elements per dataset
        k: String length
        sigma: Alphabet size
        coverage_ratios: Shotgun coverage per list count (c = ratio * T)
        seed: Generator seed shared by every cell

    Returns:
        Cells in T-major order
    """
    scenario = Scenario(scenario).value
    if scenario == Scenario.SHOTGUN.value and not coverage_ratios:
        raise ConfigurationError("a shotgun matrix needs at least one coverage ratio")

    cells = []
    for T in T_values:
        if scenario == Scenario.UNIFORM.value:
            cells.append(BenchCell(scenario, T, k, sigma, m_target, 0, seed))
            continue
        for ratio in coverage_ratios:
            if ratio < 0:
                raise ConfigurationError(f"coverage ratio must not be negative, got {ratio}")
            coverage = max(1, round(ratio * T)) if ratio > 0 else 0
            cells.append(BenchCell(scenario, T, k, sigma, m_target, coverage, seed))
    return cells


def _agree(reference: MergeResult, other: MergeResult) -> bool:
    return reference.output == other.output and reference.counts == other.counts


def run_cell(
    cell: BenchCell,
    algos: Sequence[Algo],
    repeat: int = 3,
    timed_io: bool = False,
) -> List[BenchRow]:
    """
    Generate one dataset and time every backend on it

    Args:
        cell: Dataset parameters
        algos: Backends, in row order
        repeat: Runs per backend; the median wall time is reported
        timed_io: Include reading the list files in the timed region

    Returns:
        One row per backend

    Raises:
        InvariantViolation: Two backends produced different output
    """
    if repeat < 1:
        raise ConfigurationError(f"repeat must be at least 1, got {repeat}")
    data = generate(cell.gen_spec())

    with tempfile.TemporaryDirectory() as scratch:
        paths = write_dataset(data, scratch) if timed_io else []

        reference: Optional[MergeResult] = None
        reference_algo: Optional[Algo] = None
        rows = []
        for algo in algos:
            algo = Algo(algo)
            timings = []
            result: Optional[MergeResult] = None
            for _ in range(repeat):
                read_ns = 0
                if timed_io:
                    start = time.perf_counter_ns()
                    sources = open_sources(paths)
                    read_ns = time.perf_counter_ns() - start
                else:
                    sources = sources_from_lists(data.lists)
                result = run_merge(algo, sources)
                timings.append(read_ns + result.stats.wall_ns)

            if reference is None:
                reference, reference_algo = result, algo
            elif not _agree(reference, result):
                raise InvariantViolation(
                    "backend agreement",
                    f"{algo.value} and {reference_algo.value} disagree on "
                    f"{cell.scenario} T={cell.T} c={cell.coverage}",
                )

            rows.append(
                BenchRow.from_stats(
                    algo.value,
                    cell.T,
                    result.stats,
                    wall_ns=statistics.median_low(timings),
                    scenario=cell.scenario,
                    coverage=cell.coverage,
                )
            )
    return rows


async def run_cells_async(
    cells: Sequence[BenchCell],
    algos: Sequence[Algo],
    repeat: int = 3,
    timed_io: bool = False,
    jobs: int = 2,
) -> List[BenchRow]:
    """
    Run cells on a process pool, returning rows in cell order

    Wall times of concurrent cells interfere; use this for correctness sweeps.
    """
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            loop.run_in_executor(pool, run_cell, cell, list(algos), repeat, timed_io)
            for cell in cells
        ]
        per_cell = await asyncio.gather(*futures)
    return [row for rows in per_cell for row in rows]


def run_bench(
    cells: Sequence[BenchCell],
    algos: Sequence[Algo],
    repeat: int = 3,
    timed_io: bool = False,
    jobs: int = 1,
) -> List[BenchRow]:
    """
    Run the whole matrix, sequentially unless jobs > 1

    Returns:
        Rows grouped by cell, backends in the order given
    """
    if jobs > 1:
        console.print(f"[bold blue]Running {len(cells)} cells on {jobs} workers...[/]")
        return asyncio.run(run_cells_async(cells, algos, repeat, timed_io, jobs))

    rows: List[BenchRow] = []
    for cell in cells:
        console.print(
            f"[bold blue]Cell {cell.scenario} T={cell.T} c={cell.coverage} "
            f"M={cell.m_target}...[/]"
        )
        cell_rows = run_cell(cell, algos, repeat, timed_io)
        console.print(
            f"[green]{len(cell_rows)} backends agree: N={cell_rows[0].N} "
            f"e_bar={cell_rows[0].e_bar:.3f}[/]"
        )
        rows.extend(cell_rows)
    return rows


def _by_cell(rows: Sequence[BenchRow]) -> Dict[tuple, Dict[str, BenchRow]]:
    grouped: Dict[tuple, Dict[str, BenchRow]] = {}
    for row in rows:
        grouped.setdefault((row.scenario, row.T, row.coverage), {})[row.backend] = row
    return grouped


def ordering_verdicts(rows: Sequence[BenchRow]) -> List[Verdict]:
    """
    Check the published speed orderings against measured wall times

    A claim without matching rows is reported with holds=None.
    """
    grouped = _by_cell(rows)
    verdicts = []

    pairs = [
        (cell, by)
        for cell, by in grouped.items()
        if cell[0] == Scenario.UNIFORM.value and cell[1] >= 8 and {"heap", "sheap"} <= set(by)
    ]
    failing = [f"T={cell[1]}" for cell, by in pairs if by["sheap"].wall_ns >= by["heap"].wall_ns]
    verdicts.append(
        Verdict(
            "sheap faster than heap on uniform data, T >= 8",
            (not failing) if pairs else None,
            f"slower at {', '.join(failing)}" if failing else f"{len(pairs)} cells",
        )
    )

    top: Dict[int, tuple] = {}
    for cell, by in grouped.items():
        if cell[0] == Scenario.SHOTGUN.value and {"cheap", "sheap"} <= set(by):
            if cell[1] not in top or cell[2] > top[cell[1]][2]:
                top[cell[1]] = cell
    failing = [
        f"T={T}"
        for T, cell in top.items()
        if grouped[cell]["cheap"].wall_ns >= grouped[cell]["sheap"].wall_ns
    ]
    verdicts.append(
        Verdict(
            "cheap faster than sheap at the highest shotgun coverage",
            (not failing) if top else None,
            f"slower at {', '.join(failing)}" if failing else f"{len(top)} cells",
        )
    )

    triples = [by for by in grouped.values() if {"sheap", "cheap", "scheap"} <= set(by)]
    failing = [
        f"T={by['scheap'].T}"
        for by in triples
        if by["scheap"].wall_ns
        > SCHEAP_TOLERANCE * min(by["sheap"].wall_ns, by["cheap"].wall_ns)
    ]
    verdicts.append(
        Verdict(
            "scheap within 10% of the faster of sheap and cheap",
            (not failing) if triples else None,
            f"outside at {', '.join(failing)}" if failing else f"{len(triples)} cells",
        )
    )
    return verdicts


def render_rows(rows: Sequence[BenchRow]) -> Table:
    """Rich table with the stats columns plus scenario and coverage"""
    table = Table(title="Merge benchmark")
    table.add_column("scenario")
    table.add_column("c", justify="right")
    for column in STATS_COLUMNS:
        table.add_column(column, justify="left" if column == "backend" else "right")
    for row in rows:
        table.add_row(
            row.scenario,
            str(row.coverage),
            row.backend,
            str(row.T),
            str(row.M),
            str(row.N),
            f"{row.mean_lcp:.3f}",
            f"{row.e_bar:.3f}",
            str(row.wall_ns),
            str(row.char_probes),
            str(row.sift_steps),
        )
    return table
