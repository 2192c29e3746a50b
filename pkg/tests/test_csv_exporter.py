"""
Tests for the CSV exporter.
"""
import csv
import io

import numpy as np

from src.exporter.csv_exporter import CSVExporter


def test_headers():
    assert CSVExporter.headers(3) == ["x1", "x2", "x3"]


def test_write_csv_to_stream():
    stream = io.StringIO()
    rows = CSVExporter.write_csv(np.array([[0.5, -1.25], [0.1, 2.0]]), 2, stream)
    assert rows == 2
    assert stream.getvalue() == "x1,x2\n0.5,-1.25\n0.1,2.0\n"


def test_values_round_trip_exactly():
    values = np.array([[1 / 3], [2 ** 0.5], [-1e-300]])
    stream = io.StringIO()
    CSVExporter.write_csv(values, 1, stream)
    rows = list(csv.reader(io.StringIO(stream.getvalue())))
    assert [float(row[0]) for row in rows[1:]] == values[:, 0].tolist()


def test_export_to_csv_creates_directories(tmp_path):
    output = tmp_path / "nested" / "orbit.csv"
    stats = CSVExporter.export_to_csv(np.zeros((4, 2)), 2, str(output))
    assert stats == {"total_rows": 4, "dimension": 2, "output_file": str(output)}
    lines = output.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "x1,x2"
    assert len(lines) == 5


def test_empty_sample(tmp_path):
    output = tmp_path / "empty.csv"
    stats = CSVExporter.export_to_csv(np.empty((0, 3)), 3, str(output))
    assert stats["total_rows"] == 0
    assert output.read_text(encoding="utf-8") == "x1,x2,x3\n"
