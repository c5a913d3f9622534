"""Exploratory factor analysis of the word set.

Principal components of the word x word correlation matrix, unrotated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from coword.errors import MatrixError
from coword.vsm import pearson_similarity


@dataclass(frozen=True)
class FactorModel:
    eigenvalues: np.ndarray  # all p, descending
    loadings: np.ndarray  # p x k
    k: int
    variance_explained: np.ndarray  # eigenvalue / p, all p
    retention: str
    labels: tuple = ()
    dropped: tuple = ()  # words left out for having a constant column


def correlation_matrix(m) -> np.ndarray:
    """Pearson correlations between word columns (symmetric, unit diagonal)."""
    return pearson_similarity(m).values


def drop_constant_columns(m):
    """Split word columns into (varying indices, constant labels)."""
    x = m.cells.toarray() if hasattr(m, "cells") else np.asarray(m)
    labels = list(getattr(m, "labels", [f"w{j}" for j in range(x.shape[1])]))
    constant = np.all(x == x[:1], axis=0) if len(x) else np.ones(x.shape[1], dtype=bool)
    keep = np.flatnonzero(~constant)
    return keep, [labels[j] for j in np.flatnonzero(constant)]


def factor_analysis(corr, retention="kaiser", labels=()) -> FactorModel:
    """Eigendecompose a correlation matrix and keep the leading factors.

    ``retention`` is ``"kaiser"`` (eigenvalues above 1) or an integer number
    of factors. Loadings are eigenvectors scaled by the square root of their
    eigenvalue, signed so the largest-magnitude loading of each factor is
    positive.
    """
    r = np.asarray(corr, dtype=np.float64)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise MatrixError(f"correlation matrix must be square, got shape {r.shape}")
    if not np.allclose(r, r.T, rtol=0, atol=1e-12):
        raise MatrixError("correlation matrix is not symmetric")
    p = r.shape[0]

    values, vectors = np.linalg.eigh((r + r.T) / 2)
    order = np.argsort(values, kind="stable")[::-1]
    values, vectors = values[order], vectors[:, order]

    if retention == "kaiser":
        k, tag = int(np.sum(values > 1.0)), "kaiser"
    else:
        k = int(retention)
        if not 0 <= k <= p:
            raise ValueError(f"cannot retain {k} factors from {p} variables")
        tag = f"fixed-{k}"

    vectors = vectors[:, :k]
    if k:
        pivot = np.argmax(np.abs(vectors), axis=0)
        signs = np.sign(vectors[pivot, np.arange(k)])
        vectors = vectors * np.where(signs == 0, 1.0, signs)
    loadings = vectors * np.sqrt(np.clip(values[:k], 0.0, None))
    return FactorModel(values, loadings, k, values / p if p else values, tag, tuple(labels))
