"""Unit x word occurrence matrices, co-occurrence and word-word similarity.

Words are the variables (columns) and textual units the cases (rows).
Similarities are always computed between word columns.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from coword.errors import CowordWarning, MatrixError
from coword.lexicon import analyze

MODES = ("counts", "binary")
MEASURES = ("cosine", "pearson")


@dataclass(frozen=True)
class OccurrenceMatrix:
    """Sparse units x words count (or 0/1) matrix.

    ``cols`` holds the word entries (or plain labels) in column order.
    """

    rows: tuple
    cols: tuple
    cells: sp.csr_matrix
    mode: str = "counts"

    @property
    def shape(self):
        return self.cells.shape

    @property
    def labels(self):
        return [getattr(c, "surface", c) for c in self.cols]

    def dense(self):
        return self.cells.toarray()

    @classmethod
    def from_dense(cls, array, rows=None, cols=None, mode="counts"):
        array = np.asarray(array)
        n, p = array.shape
        rows = tuple(rows) if rows is not None else tuple(f"u{i}" for i in range(n))
        cols = tuple(cols) if cols is not None else tuple(f"w{j}" for j in range(p))
        return cls(rows, cols, sp.csr_matrix(array), mode)


@dataclass(frozen=True)
class SimilarityMatrix:
    values: np.ndarray
    labels: tuple
    measure: str


def build_occurrence_matrix(units, selection, mode: str = "counts") -> OccurrenceMatrix:
    """Count each selected word in each unit.

    ``selection`` is a WordSelection or any sequence of word entries. Words
    that occur in no unit lose their column (with a warning).
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    words = tuple(selection)
    if not words:
        raise MatrixError("cannot build an occurrence matrix from an empty word selection")
    column = {getattr(w, "surface", w): j for j, w in enumerate(words)}

    indptr, indices, data = [0], [], []
    for unit in units:
        counts = Counter(w for w in analyze(unit.text) if w in column)
        for word in sorted(counts, key=column.__getitem__):
            indices.append(column[word])
            data.append(1 if mode == "binary" else counts[word])
        indptr.append(len(indices))
    cells = sp.csr_matrix(
        (np.asarray(data, dtype=np.int64), np.asarray(indices, dtype=np.int64), np.asarray(indptr)),
        shape=(len(indptr) - 1, len(words)),
    )

    present = np.flatnonzero(cells.getnnz(axis=0))
    if len(present) < len(words):
        keep = set(present.tolist())
        missing = [getattr(w, "surface", w) for j, w in enumerate(words) if j not in keep]
        warnings.warn(f"dropping words absent from every unit: {missing}", CowordWarning, stacklevel=2)
        cells = cells[:, present]
        words = tuple(words[j] for j in present)
    rows = tuple(u.unit_id for u in units)
    return OccurrenceMatrix(rows, words, sp.csr_matrix(cells), mode)


def cooccurrence(m: OccurrenceMatrix) -> np.ndarray:
    """Word x word co-occurrence as the product of the transposed matrix with itself."""
    x = m.cells
    return np.asarray((x.T @ x).toarray())


def _gram(x):
    """Column inner products; exact for integer matrices."""
    if sp.issparse(x):
        if not np.issubdtype(x.dtype, np.integer):
            x = x.astype(np.float64)
        return np.asarray((x.T @ x).toarray())
    x = np.asarray(x)
    if not np.issubdtype(x.dtype, np.integer):
        x = x.astype(np.float64)
    return x.T @ x


def _as_matrix(m):
    if isinstance(m, OccurrenceMatrix):
        return m.cells, tuple(m.labels)
    x = m if sp.issparse(m) else np.asarray(m)
    return x, tuple(f"w{j}" for j in range(x.shape[1]))


def cosine_similarity(m) -> SimilarityMatrix:
    """Salton's cosine between every pair of word columns.

    ``cos(x, y) = sum(x*y) / sqrt(sum(x**2) * sum(y**2))``
    """
    x, labels = _as_matrix(m)
    gram = _gram(x)
    sq = np.diag(gram).astype(np.float64)
    zero = np.flatnonzero(sq == 0)
    if len(zero):
        raise MatrixError(f"zero column for word {labels[zero[0]]!r}; cosine undefined")
    values = gram.astype(np.float64) / np.sqrt(np.outer(sq, sq))
    values = (values + values.T) / 2
    np.fill_diagonal(values, 1.0)
    return SimilarityMatrix(values, labels, "cosine")


def center_columns(x):
    x = x.toarray() if sp.issparse(x) else np.asarray(x)
    x = x.astype(np.float64)
    return x - x.mean(axis=0)


def pearson_similarity(m) -> SimilarityMatrix:
    """Pearson correlation between every pair of word columns.

    Computed from raw sums, ``(n*Sxy - Sx*Sy) / sqrt((n*Sxx - Sx**2) * (n*Syy - Sy**2))``,
    which is exact in integer arithmetic for count matrices.
    """
    x, labels = _as_matrix(m)
    n = x.shape[0]
    dense = x.toarray() if sp.issparse(x) else np.asarray(x)
    if np.issubdtype(dense.dtype, np.integer):
        dense = dense.astype(object) if np.abs(dense).max(initial=0) > 2**20 else dense.astype(np.int64)
    else:
        dense = dense.astype(np.float64)
    sums = dense.sum(axis=0)
    cov = n * (dense.T @ dense) - np.outer(sums, sums)
    diag = np.diag(cov)
    if dense.dtype.kind == "f":
        flat = np.flatnonzero(diag <= 1e-12 * np.max(np.abs(diag), initial=1.0))
    else:
        flat = np.flatnonzero(diag <= 0)
    if len(flat):
        raise MatrixError(f"constant column for word {labels[flat[0]]!r}; correlation undefined")
    var = diag.astype(np.float64)
    values = cov.astype(np.float64) / np.sqrt(np.outer(var, var))
    values = (values + values.T) / 2
    np.fill_diagonal(values, 1.0)
    return SimilarityMatrix(np.clip(values, -1.0, 1.0), labels, "pearson")


def similarity(m, measure: str = "cosine") -> SimilarityMatrix:
    if measure == "cosine":
        return cosine_similarity(m)
    if measure == "pearson":
        return pearson_similarity(m)
    raise ValueError(f"measure must be one of {MEASURES}, got {measure!r}")
