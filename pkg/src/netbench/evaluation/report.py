"""Writing evaluation artifacts to disk."""

from __future__ import annotations

import json
from pathlib import Path

from ..digest import canonical_json
from .aggregate import aggregate_records, rows_to_csv
from .metrics import MetricRecord


def write_metrics_jsonl(records, path) -> int:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(canonical_json(record.to_json()) + "\n")
    return sum(1 for _ in records)


def read_metrics_jsonl(path) -> list:
    records = []
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(MetricRecord.from_json(json.loads(line)))
    return records


def emit_reports(records, directory) -> dict:
    """Write metrics.jsonl + summary.csv + summary.json; returns the paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    records = list(records)
    metrics_path = directory / "metrics.jsonl"
    write_metrics_jsonl(records, metrics_path)
    rows = aggregate_records(records)
    csv_path = directory / "summary.csv"
    csv_path.write_text(rows_to_csv(rows), encoding="utf-8")
    json_path = directory / "summary.json"
    json_path.write_text(canonical_json(rows) + "\n", encoding="utf-8")
    return {"metrics": metrics_path, "csv": csv_path, "json": json_path}
