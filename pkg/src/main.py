#!/usr/bin/env python3
"""
strmerge - merge sorted string lists, generate synthetic datasets and benchmark
the merge backends
"""

import sys
import time
from pathlib import Path
from typing import List, Optional

import click
import typer
from rich.console import Console

# Try importing from src package first (for installed use)
# If that fails, try relative imports (for local development)
try:
    from src.backends import Algo, run_merge
    from src.bench import BenchRow, build_cells, ordering_verdicts, render_rows, run_bench
    from src.core import open_sources
    from src.datagen import GenSpec, Scenario, generate, write_dataset
    from src.errors import EXIT_INPUT, EXIT_USAGE, ConfigurationError, MergeError
    from src.output_utils import write_merge_output, write_stats_tsv
except ModuleNotFoundError:
    from backends import Algo, run_merge
    from bench import BenchRow, build_cells, ordering_verdicts, render_rows, run_bench
    from core import open_sources
    from datagen import GenSpec, Scenario, generate, write_dataset
    from errors import EXIT_INPUT, EXIT_USAGE, ConfigurationError, MergeError
    from output_utils import write_merge_output, write_stats_tsv

# Initialize console for rich output
console = Console(stderr=True)

# Create a Typer app for command line handling
app = typer.Typer(help="Merge sorted string lists with heap and trie backends")


def _fail(error: Exception) -> None:
    """Print an error and exit with the code its class maps to"""
    console.print(f"[bold red]Error:[/] {error}")
    code = error.exit_code if isinstance(error, MergeError) else EXIT_INPUT
    raise typer.Exit(code=code)


def _split_ints(value: str, option: str) -> List[int]:
    try:
        return [int(part) for part in value.split(",") if part.strip()]
    except ValueError as e:
        raise ConfigurationError(f"{option} expects comma-separated integers: {value}") from e


def _split_floats(value: str, option: str) -> List[float]:
    try:
        return [float(part) for part in value.split(",") if part.strip()]
    except ValueError as e:
        raise ConfigurationError(f"{option} expects comma-separated numbers: {value}") from e


@app.command()
def merge(
    inputs: List[Path] = typer.Argument(..., help="Sorted newline-delimited input files"),
    algo: Algo = typer.Option(
        Algo.SHEAP, "--algo", envvar="STRMERGE_ALGO", help="Merge backend"
    ),
    out: Optional[Path] = typer.Option(
        None, "--out", help="Write merged output here instead of stdout"
    ),
    counts: bool = typer.Option(
        False, "--counts", help="Write value<TAB>lists lines instead of bare values"
    ),
    stats: Optional[Path] = typer.Option(None, "--stats", help="Write a stats TSV row here"),
    alphabet: Optional[str] = typer.Option(
        None,
        "--alphabet",
        envvar="STRMERGE_ALPHABET",
        help="Bytes that may occur (trie); learned from the input when omitted",
    ),
    check: bool = typer.Option(
        False,
        "--check",
        envvar="STRMERGE_CHECK",
        help="Run the definitional checkers while merging",
    ),
    keep_duplicates: bool = typer.Option(
        False,
        "--keep-duplicates",
        help="Emit every input copy of a value (heap and sheap only)",
    ),
    timed_io: bool = typer.Option(
        False, "--timed-io", help="Include reading the inputs in the reported time"
    ),
) -> None:
    """
    Merge sorted files into one sorted, duplicate-free output
    """
    try:
        start = time.perf_counter_ns()
        sources = open_sources(inputs)
        read_ns = time.perf_counter_ns() - start
        result = run_merge(
            algo,
            sources,
            dedup=not keep_duplicates,
            check=check,
            alphabet=alphabet.encode() if alphabet else None,
        )
        if timed_io:
            result.stats.wall_ns += read_ns
        written = write_merge_output(result, out, counts=counts)
    except (MergeError, OSError) as e:
        _fail(e)

    s = result.stats
    if stats is not None:
        write_stats_tsv([BenchRow.from_stats(algo.value, len(inputs), s)], stats)

    console.print(
        f"[bold green]Merged {len(inputs)} lists with {algo.value}: "
        f"M={s.m_in} N={s.n_out} e_bar={s.e_bar:.3f} ({written} lines)[/]"
    )


@app.command()
def gen(
    scenario: Scenario = typer.Argument(..., help="uniform or shotgun"),
    lists: int = typer.Option(8, "-T", "--lists", help="Number of lists"),
    k: int = typer.Option(20, "-k", "--length", help="String length"),
    sigma: int = typer.Option(4, "-s", "--sigma", help="Alphabet size"),
    m_target: int = typer.Option(100_000, "-M", "--elements", help="Total elements"),
    coverage: int = typer.Option(10, "-c", "--coverage", help="Copies per k-mer (shotgun)"),
    error_fraction: float = typer.Option(
        0.0, "--error-fraction", help="Share of k-mers occurring once (shotgun)"
    ),
    seed: int = typer.Option(0, "--seed", envvar="STRMERGE_SEED", help="Generator seed"),
    out_dir: Path = typer.Option(Path("data"), "--out-dir", help="Target directory"),
) -> None:
    """
    Generate a synthetic dataset of sorted lists plus manifest.json
    """
    spec = GenSpec(
        scenario=scenario,
        T=lists,
        k=k,
        sigma=sigma,
        m_target=m_target,
        coverage=coverage,
        error_fraction=error_fraction,
        seed=seed,
    )
    try:
        data = generate(spec)
        write_dataset(data, out_dir)
    except (MergeError, OSError) as e:
        _fail(e)

    manifest = data.manifest
    summary = f"M={sum(manifest.realized_m)} N={manifest.n_distinct} e_bar={manifest.measured_e_bar:.3f}"
    if manifest.expected_e_bar is not None:
        summary += f" (expected {manifest.expected_e_bar:.3f})"
    console.print(f"[bold green]Generated {scenario.value} dataset: {summary}[/]")


@app.command()
def bench(
    scenario: Scenario = typer.Option(Scenario.UNIFORM, "--scenario", help="Dataset family"),
    lists: str = typer.Option(
        "4,8,16,32,64,128,256", "-T", "--lists", help="Comma-separated list counts"
    ),
    algos: str = typer.Option(
        ",".join(a.value for a in Algo), "--algos", help="Comma-separated backends"
    ),
    m_target: int = typer.Option(1_000_000, "-M", "--elements", help="Elements per dataset"),
    k: int = typer.Option(20, "-k", "--length", help="String length"),
    sigma: int = typer.Option(4, "-s", "--sigma", help="Alphabet size"),
    coverage_ratio: str = typer.Option(
        "0,0.25,0.5,1,2,3",
        "--coverage-ratio",
        help="Comma-separated shotgun coverage per list (c = ratio * T)",
    ),
    repeat: int = typer.Option(
        3, "--repeat", envvar="STRMERGE_REPEAT", help="Runs per backend, median reported"
    ),
    jobs: int = typer.Option(
        1, "--jobs", envvar="STRMERGE_JOBS", help="Cells run in parallel (correctness sweeps)"
    ),
    seed: int = typer.Option(0, "--seed", envvar="STRMERGE_SEED", help="Generator seed"),
    out: Optional[Path] = typer.Option(
        None, "--out", help="Write the stats TSV here instead of stdout"
    ),
    timed_io: bool = typer.Option(
        False, "--timed-io", help="Include reading the list files in the timed region"
    ),
    orderings: bool = typer.Option(
        False, "--orderings", help="Report whether the published speed orderings hold"
    ),
) -> None:
    """
    Run the benchmark matrix and emit one stats row per dataset and backend
    """
    try:
        backend_list = [Algo(a.strip()) for a in algos.split(",") if a.strip()]
        cells = build_cells(
            scenario.value,
            _split_ints(lists, "-T"),
            m_target,
            k=k,
            sigma=sigma,
            coverage_ratios=_split_floats(coverage_ratio, "--coverage-ratio"),
            seed=seed,
        )
        rows = run_bench(cells, backend_list, repeat=repeat, timed_io=timed_io, jobs=jobs)
        write_stats_tsv(rows, out)
    except ValueError as e:
        _fail(ConfigurationError(str(e)))
    except (MergeError, OSError) as e:
        _fail(e)

    console.print(render_rows(rows))
    if orderings:
        for verdict in ordering_verdicts(rows):
            if verdict.holds is None:
                console.print(f"[yellow]Warning:[/] {verdict.claim}: no matching rows")
            elif verdict.holds:
                console.print(f"[green]holds[/] {verdict.claim} ({verdict.detail})")
            else:
                console.print(f"[yellow]fails[/] {verdict.claim} ({verdict.detail})")
    console.print(f"[bold green]Benchmark finished: {len(rows)} rows[/]")


def run() -> None:
    """Console script entry point; usage errors exit with status 1"""
    try:
        code = app(standalone_mode=False)
    except click.exceptions.UsageError as e:
        e.show()
        sys.exit(EXIT_USAGE)
    except click.exceptions.Abort:
        sys.exit(EXIT_USAGE)
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    run()
