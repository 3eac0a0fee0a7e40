"""
TraceRepository: primal-bound traces as pandas frames and CSV files.
"""
import os
from typing import List, Iterable

import pandas as pd

from ..config import TRACE_COLUMNS
from ..models.trace_record import TraceRecord


def trace_frame(records: Iterable[TraceRecord]) -> pd.DataFrame:
    rows = [record.to_dict() for record in records]
    return pd.DataFrame(rows, columns=TRACE_COLUMNS)


def format_trace(records: Iterable[TraceRecord]) -> str:
    """CSV text; time and energy are written with 6 decimals."""
    frame = trace_frame(records)
    frame["time_s"] = frame["time_s"].map(lambda v: f"{v:.6f}")
    frame["energy"] = frame["energy"].map(lambda v: f"{v:.6f}")
    frame["gamma1"] = frame["gamma1"].map(lambda v: f"{v:.6g}")
    frame["feasible"] = frame["feasible"].map(lambda v: "true" if v else "false")
    return frame.to_csv(index=False, lineterminator="\n")


class TraceRepository:
    """File-level access to trace CSVs."""

    def save(self, records: List[TraceRecord], path: str) -> None:
        directory = os.path.dirname(path)
        if directory and not os.path.exists(directory):
            os.makedirs(directory)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(format_trace(records))

    def load(self, path: str) -> List[TraceRecord]:
        frame = pd.read_csv(path, dtype={"label": str, "feasible": str}, keep_default_na=False)
        missing = set(TRACE_COLUMNS) - set(frame.columns)
        if missing:
            raise ValueError(f"trace {path} lacks columns {sorted(missing)}")
        return [TraceRecord.from_dict(row) for row in frame.to_dict(orient="records")]
