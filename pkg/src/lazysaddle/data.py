"""LIBSVM-format ingestion and the protected-attribute split for the fairness model.

The parser is strict where silent corruption would hurt (bad tokens, repeated
or zero feature indices all fail with a line number) and lenient where the
format is genuinely loose (blank lines, comment lines, rows with no features).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np


class LibsvmFormatError(ValueError):
    """Input text violates the LIBSVM row format; message carries the line number."""


@dataclass
class SparseDataset:
    """Rows of (index, value) pairs with 1-based strictly increasing indices."""

    labels: np.ndarray
    rows: list[list[tuple[int, float]]]
    n_features: int


def parse_libsvm(source) -> SparseDataset:
    """Parse LIBSVM text: one ``label idx:val idx:val ...`` row per line.

    ``source`` is the text itself or an iterable of lines.  Blank lines and
    lines starting with ``#`` are skipped.  A bare label with no features is a
    legal row.  Indices must be 1-based and strictly increasing within a row.
    """
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source
    labels: list[float] = []
    rows: list[list[tuple[int, float]]] = []
    n_features = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        try:
            label = float(tokens[0])
        except ValueError:
            raise LibsvmFormatError(f"line {lineno}: malformed label {tokens[0]!r}") from None
        row: list[tuple[int, float]] = []
        previous = 0
        for token in tokens[1:]:
            index_text, sep, value_text = token.partition(":")
            if not sep:
                raise LibsvmFormatError(f"line {lineno}: malformed feature token {token!r}")
            try:
                index = int(index_text)
                value = float(value_text)
            except ValueError:
                raise LibsvmFormatError(
                    f"line {lineno}: malformed feature token {token!r}"
                ) from None
            if index == 0:
                raise LibsvmFormatError(f"line {lineno}: feature index 0 (indices are 1-based)")
            if index <= previous:
                raise LibsvmFormatError(
                    f"line {lineno}: feature index {index} not strictly increasing"
                )
            previous = index
            row.append((index, value))
        labels.append(label)
        rows.append(row)
        if previous > n_features:
            n_features = previous
    return SparseDataset(labels=np.asarray(labels, dtype=float), rows=rows, n_features=n_features)


def dump_libsvm(dataset: SparseDataset) -> str:
    """Serialize back to LIBSVM text; floats use repr so a re-parse is lossless."""
    lines = []
    for label, row in zip(dataset.labels, dataset.rows):
        parts = [repr(float(label))]
        parts.extend(f"{index}:{float(value)!r}" for index, value in row)
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def extract_protected(
    dataset: SparseDataset, protected_index: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split off the protected column; returns (features, labels, protected).

    The protected column is binarized at 0.5 into +-1 and removed from the
    dense feature matrix.  Labels are mapped to +-1 with nonpositive values
    going to -1.  A constant protected column is suspicious but not fatal.
    """
    if not 1 <= protected_index <= dataset.n_features:
        raise ValueError(
            f"protected index {protected_index} outside 1..{dataset.n_features}"
        )
    n = len(dataset.rows)
    dense = np.zeros((n, dataset.n_features))
    for i, row in enumerate(dataset.rows):
        for index, value in row:
            dense[i, index - 1] = value
    raw = dense[:, protected_index - 1]
    protected = np.where(raw > 0.5, 1.0, -1.0)
    features = np.delete(dense, protected_index - 1, axis=1)
    labels = np.where(dataset.labels > 0.0, 1.0, -1.0)
    if protected.size and np.all(protected == protected[0]):
        warnings.warn(
            "protected column is constant; the fairness head is degenerate",
            RuntimeWarning,
            stacklevel=2,
        )
    return features, labels, protected


def normalize_features(features: np.ndarray) -> np.ndarray:
    """Scale each column by its max absolute value; zero columns stay untouched.

    Idempotent: columns already at unit scale divide by exactly 1.0.
    """
    features = np.asarray(features, dtype=float)
    scale = np.max(np.abs(features), axis=0)
    safe = np.where(scale > 0.0, scale, 1.0)
    return features / safe


def synthetic_fairness_text(
    n_rows: int = 270, n_features: int = 13, protected_index: int = 2, seed: int = 7
) -> str:
    """Deterministic LIBSVM text shaped like the small clinical benchmarks.

    Stands in for datasets this repository does not ship: same row count and
    feature layout as the usual 270 x 13 benchmark, a strictly binary protected
    column, mixed feature scales so normalization has real work to do, and
    labels from a noisy linear rule so the model is neither trivial nor
    degenerate.  Zero-valued entries are omitted, exercising sparse rows.
    """
    if not 1 <= protected_index <= n_features:
        raise ValueError("protected index outside the feature range")
    rng = np.random.default_rng(seed)
    scales = rng.choice([1.0, 4.0, 60.0, 250.0], size=n_features)
    binary = rng.random(n_features) < 0.3
    binary[protected_index - 1] = True
    weights = rng.normal(size=n_features)
    lines = []
    for _ in range(n_rows):
        values = np.where(
            binary,
            (rng.random(n_features) < 0.5).astype(float),
            np.round(rng.random(n_features) * scales, 3),
        )
        # sprinkle zeros so some indices are genuinely absent
        values[rng.random(n_features) < 0.15] = 0.0
        # center the standardized features so neither label class dies out
        standardized = values / np.maximum(scales, 1.0) - 0.5
        score = float(weights @ standardized) + rng.normal(scale=0.4)
        label = 1 if score > 0 else -1
        parts = [str(label)]
        parts.extend(
            f"{j + 1}:{values[j]:g}" for j in range(n_features) if values[j] != 0.0
        )
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"
