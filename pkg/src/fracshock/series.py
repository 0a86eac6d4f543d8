"""Column-oriented time series with deterministic CSV output."""

from __future__ import annotations

import numpy as np


class SolverInstabilityError(RuntimeError):
    """Non-finite values appeared during time stepping."""


class ResolutionError(ValueError):
    """Grid too coarse for the requested data or run."""


class FitError(RuntimeError):
    """Blowup fit could not be performed (insufficient gradient growth)."""


class RenormalizationError(RuntimeError):
    """Constraint renormalization failed to converge."""


class TimeSeries:
    """Append-only record of named columns; every row carries every column."""

    def __init__(self, columns):
        self.columns = list(columns)
        self._data = {c: [] for c in self.columns}

    def append(self, **row):
        if set(row) != set(self.columns):
            missing = set(self.columns) ^ set(row)
            raise KeyError(f"row keys mismatch: {sorted(missing)}")
        for c in self.columns:
            self._data[c].append(float(row[c]))

    def __len__(self):
        return len(self._data[self.columns[0]]) if self.columns else 0

    def __getitem__(self, name) -> np.ndarray:
        return np.asarray(self._data[name])

    def tail_mask(self, name: str, factor: float) -> np.ndarray:
        """Mask of rows whose `name` value is within `factor` of the final value."""
        v = self[name]
        return v >= v[-1] / factor

    def to_csv(self, path):
        with open(path, "w") as fh:
            fh.write(",".join(self.columns) + "\n")
            cols = [self._data[c] for c in self.columns]
            for row in zip(*cols):
                fh.write(",".join(f"{v:.17g}" for v in row) + "\n")

    @classmethod
    def from_csv(cls, path) -> "TimeSeries":
        with open(path) as fh:
            header = fh.readline().strip().split(",")
            ts = cls(header)
            for line in fh:
                vals = line.strip().split(",")
                ts.append(**dict(zip(header, map(float, vals))))
        return ts
