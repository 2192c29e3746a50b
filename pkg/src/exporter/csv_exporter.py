"""
CSV exporter for sampled orbit points.
"""
import csv
from pathlib import Path
from typing import Any, Dict, List, TextIO

import numpy as np


class CSVExporter:
    """Export orbit samples as CSV: header x1..xn, one point per row."""

    @staticmethod
    def headers(dimension: int) -> List[str]:
        return [f"x{i + 1}" for i in range(dimension)]

    @staticmethod
    def point_to_row(point) -> List[str]:
        """
        Format one point.

        repr() of a float is locale independent and round-trips exactly.
        """
        return [repr(float(c)) for c in point]

    @staticmethod
    def write_csv(points: np.ndarray, dimension: int, stream: TextIO) -> int:
        """
        Write samples to an open text stream.

        Returns:
            Number of rows written
        """
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSVExporter.headers(dimension))
        rows = 0
        for point in np.asarray(points, dtype=float).reshape(-1, dimension):
            writer.writerow(CSVExporter.point_to_row(point))
            rows += 1
        return rows

    @staticmethod
    def export_to_csv(points: np.ndarray, dimension: int, output_path: str) -> Dict[str, Any]:
        """
        Export samples to a CSV file.

        Args:
            points: Array of shape (k, dimension)
            dimension: n
            output_path: Path to output CSV file

        Returns:
            Dictionary with export statistics
        """
        output_file = Path(output_path)
        output_file.parent.mkdir(parents=True, exist_ok=True)

        with open(output_file, "w", newline="", encoding="utf-8") as f:
            rows = CSVExporter.write_csv(points, dimension, f)

        return {
            "total_rows": rows,
            "dimension": dimension,
            "output_file": str(output_file),
        }
