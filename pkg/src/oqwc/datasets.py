"""Loading and preparation of the bundled two-class iris subset.

The bundled file ``data/iris_sepal_2class.csv`` holds the 100 setosa and
versicolor rows with the two sepal measurements. Feature vectors are assembled
in the order (sepal_width, sepal_length), z-scored per column over the whole
set (population standard deviation) and then scaled to unit Euclidean norm.
Classes map to labels as setosa -> -1, versicolor -> +1.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import NamedTuple

import numpy as np

DATA_DIR_ENV = "OQWC_DATA_DIR"
IRIS_FILENAME = "iris_sepal_2class.csv"

EXPECTED_HEADER = ["sepal_length", "sepal_width", "species"]
SPECIES_LABELS = {"setosa": -1, "versicolor": 1}


class DataError(ValueError):
    """A data file is missing, malformed, or unusable."""


@dataclass(frozen=True)
class RawDataset:
    """Rows as loaded: feature vectors (sepal_width, sepal_length) and species names."""

    features: np.ndarray
    species: tuple[str, ...]

    def __post_init__(self):
        f = np.asarray(self.features, dtype=float)
        if f.ndim != 2 or f.shape[0] < 1:
            raise DataError("dataset must hold at least one row")
        if f.shape[0] != len(self.species):
            raise DataError("one species name per row required")
        object.__setattr__(self, "features", f)

    @property
    def num_rows(self) -> int:
        return self.features.shape[0]


@dataclass(frozen=True)
class PreparedDataset:
    """Standardized, unit-normalized vectors with labels and source row indices."""

    vectors: np.ndarray
    labels: np.ndarray
    original_indices: np.ndarray


class Triple(NamedTuple):
    """A sampled classification task: one point per class plus a test point."""

    x0: np.ndarray
    x1: np.ndarray
    x_test: np.ndarray
    true_label: int
    indices: tuple[int, int, int]


def bundled_data_path() -> Path:
    """Path of the bundled iris file, honoring the OQWC_DATA_DIR override."""
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        return Path(override) / IRIS_FILENAME
    return Path(str(resources.files("oqwc").joinpath("data", IRIS_FILENAME)))


def load_csv(path) -> RawDataset:
    """Read a dataset file with header ``sepal_length,sepal_width,species``.

    Species outside {setosa, versicolor} and malformed rows are rejected with
    the offending line number.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    rows = list(csv.reader(text.splitlines()))
    if not rows:
        raise DataError(f"{path}: file is empty")
    header = [h.strip() for h in rows[0]]
    if header != EXPECTED_HEADER:
        raise DataError(f"{path}: expected header {','.join(EXPECTED_HEADER)}")
    features = []
    species = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 3:
            raise DataError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
        try:
            length, width = float(row[0]), float(row[1])
        except ValueError as exc:
            raise DataError(f"{path}:{lineno}: {exc}") from exc
        name = row[2].strip()
        if name not in SPECIES_LABELS:
            raise DataError(f"{path}:{lineno}: unknown species {name!r}")
        features.append((width, length))
        species.append(name)
    if not features:
        raise DataError(f"{path}: no data rows")
    return RawDataset(features=np.array(features), species=tuple(species))


def standardize(features) -> np.ndarray:
    """Z-score each column to mean 0 and population standard deviation 1."""
    f = np.asarray(features, dtype=float)
    if f.shape[0] < 2:
        raise DataError("standardization needs at least two rows")
    scale = f.std(axis=0)
    if np.any(scale == 0.0):
        raise DataError("zero-variance feature column")
    return (f - f.mean(axis=0)) / scale


def standardize_normalize(raw: RawDataset) -> PreparedDataset:
    """Standardize all rows, then scale each to unit norm."""
    z = standardize(raw.features)
    norms = np.linalg.norm(z, axis=1)
    if np.any(norms == 0.0):
        raise DataError("a standardized row has zero norm")
    labels = np.array([SPECIES_LABELS[s] for s in raw.species], dtype=int)
    return PreparedDataset(
        vectors=z / norms[:, None],
        labels=labels,
        original_indices=np.arange(raw.num_rows),
    )


def load_prepared(path=None) -> PreparedDataset:
    """Load and prepare a dataset file (defaults to the bundled one)."""
    return standardize_normalize(load_csv(path if path is not None else bundled_data_path()))


def sample_triples(prepared: PreparedDataset, count: int, seed: int) -> list[Triple]:
    """Draw ``count`` classification tasks reproducibly.

    Per task: one point from each class uniformly at random, then a test point
    uniformly from the remaining rows (either class), keeping its true label.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    neg = np.flatnonzero(prepared.labels == -1)
    pos = np.flatnonzero(prepared.labels == 1)
    n = prepared.vectors.shape[0]
    if len(neg) == 0 or len(pos) == 0 or n < 3:
        raise DataError("need at least three points covering both classes")
    rng = np.random.default_rng(seed)
    triples = []
    for _ in range(count):
        i0 = int(rng.choice(neg))
        i1 = int(rng.choice(pos))
        rest = np.setdiff1d(np.arange(n), (i0, i1), assume_unique=False)
        it = int(rng.choice(rest))
        triples.append(
            Triple(
                x0=prepared.vectors[i0],
                x1=prepared.vectors[i1],
                x_test=prepared.vectors[it],
                true_label=int(prepared.labels[it]),
                indices=(i0, i1, it),
            )
        )
    return triples
