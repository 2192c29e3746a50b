"""Export utilities for orbit samples."""
