"""Artifact store - CSV traces, summaries and JSON reports."""

import csv
import io
import json
import logging
import math
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

import aiofiles
from pydantic import BaseModel

from adaregret.config import get_settings

logger = logging.getLogger(__name__)

Cell = float | int | str | bool | None


def format_float(value: float, precision: int | None = None) -> str:
    """Fixed significant-digit rendering so a re-run reproduces the file byte for byte."""
    precision = precision or get_settings().csv_precision
    if math.isnan(value):
        return "nan"
    return format(value, f".{precision}g")


def format_cell(value: Cell, precision: int | None = None) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return format_float(value, precision)
    return str(value)


def format_vector(values: Iterable[float], precision: int | None = None) -> str:
    """Semicolon-joined coordinates."""
    return ";".join(format_float(float(v), precision) for v in values)


class ArtifactStore:
    """Async writer for experiment outputs; every path is relative to ``root``."""

    def __init__(self, root: str | Path | None = None) -> None:
        settings = get_settings()
        self.root = Path(root or settings.output_directory)
        self.precision = settings.csv_precision
        self.root.mkdir(parents=True, exist_ok=True)

    def path(self, name: str) -> Path:
        return self.root / name

    def render_csv(self, header: Sequence[str], rows: Iterable[Sequence[Cell]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            if len(row) != len(header):
                raise ValueError(f"row has {len(row)} fields, header has {len(header)}")
            writer.writerow([format_cell(v, self.precision) for v in row])
        return buffer.getvalue()

    async def write_csv(
        self,
        name: str,
        header: Sequence[str],
        rows: Iterable[Sequence[Cell]],
    ) -> str:
        """Write a CSV file with an exact header row and return its path."""
        file_path = self.path(name)
        text = self.render_csv(header, rows)
        async with aiofiles.open(file_path, "w", encoding="utf-8", newline="") as f:
            await f.write(text)
        logger.info("Wrote %s", file_path)
        return str(file_path)

    async def write_json(self, name: str, data: BaseModel | dict[str, Any]) -> str:
        """Store a report as indented JSON."""
        if isinstance(data, BaseModel):
            data = data.model_dump(mode="json")
        file_path = self.path(name)
        async with aiofiles.open(file_path, "w", encoding="utf-8") as f:
            await f.write(json.dumps(data, indent=2, default=str) + "\n")
        logger.info("Wrote %s", file_path)
        return str(file_path)

    async def read_text(self, name: str) -> str:
        async with aiofiles.open(self.path(name), "r", encoding="utf-8") as f:
            return await f.read()
