#!/usr/bin/env python3
"""
Utilities for writing merged output, stats rows and dataset files
"""

import sys
from pathlib import Path
from typing import Any, BinaryIO, Iterable, List, Optional, Sequence, Union

from rich.console import Console

try:
    from src.core import MergeResult
except ModuleNotFoundError:
    from core import MergeResult

# Initialize console for rich output
console = Console(stderr=True)

PathLike = Union[str, Path]

# Column order of the stats TSV; renaming or reordering breaks consumers
STATS_COLUMNS = (
    "backend",
    "T",
    "M",
    "N",
    "mean_lcp",
    "e_bar",
    "wall_ns",
    "char_probes",
    "sift_steps",
)


def write_lines(handle: BinaryIO, values: Iterable[bytes]) -> int:
    """Write values one per line, returning how many were written"""
    written = 0
    for value in values:
        handle.write(value)
        handle.write(b"\n")
        written += 1
    return written


def write_merge_output(
    result: MergeResult, out: Optional[PathLike] = None, counts: bool = False
) -> int:
    """
    Write a merge result to a file or to stdout

    Args:
        result: Finished merge
        out: Destination file; stdout when None
        counts: Write "value<TAB>e" lines instead of bare values

    Returns:
        Number of lines written
    """
    if counts:
        lines: Iterable[bytes] = (
            value + b"\t" + str(e).encode() for value, e in zip(result.output, result.counts)
        )
    else:
        lines = result.output

    if out is None:
        written = write_lines(sys.stdout.buffer, lines)
        sys.stdout.buffer.flush()
        return written
    with open(out, "wb") as handle:
        return write_lines(handle, lines)


def format_stats_row(row: Any) -> str:
    """One TSV line for any object carrying the stats columns as attributes"""
    cells = []
    for column in STATS_COLUMNS:
        value = getattr(row, column)
        cells.append(f"{value:.4f}" if isinstance(value, float) else str(value))
    return "\t".join(cells)


def write_stats_tsv(rows: Sequence[Any], path: Optional[PathLike] = None) -> None:
    """
    Write stats rows as TSV with a header line

    Args:
        rows: Objects with one attribute per stats column
        path: Destination file, replaced if present; stdout when None
    """
    lines = ["\t".join(STATS_COLUMNS)] + [format_stats_row(row) for row in rows]
    text = "".join(line + "\n" for line in lines)
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def write_dataset_files(
    lists: Sequence[Sequence[bytes]], names: Sequence[str], manifest_json: str, out_dir: PathLike
) -> List[Path]:
    """
    Write one file per list plus manifest.json into out_dir

    Args:
        lists: Sorted lists, in file order
        names: File name per list
        manifest_json: Serialized manifest
        out_dir: Target directory, created when missing

    Returns:
        Paths of the list files
    """
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)

    paths = []
    for values, name in zip(lists, names):
        path = directory / name
        with open(path, "wb") as handle:
            write_lines(handle, values)
        paths.append(path)

    (directory / "manifest.json").write_text(manifest_json + "\n", encoding="utf-8")
    console.print(f"[green]Wrote {len(paths)} lists and manifest.json to {directory}[/]")
    return paths
