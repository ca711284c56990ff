"""JSON helpers for complex matrices and real vectors.

Complex matrices are stored row-major as a flat list of ``[re, im]`` pairs so
that files round-trip without any precision games.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError


def complex_matrix_to_pairs(matrix: np.ndarray) -> list[list[float]]:
    """Flatten a complex matrix to row-major ``[[re, im], ...]``."""
    flat = np.asarray(matrix, dtype=complex).reshape(-1)
    return [[float(z.real), float(z.imag)] for z in flat]


def pairs_to_complex_matrix(pairs, shape: tuple[int, int]) -> np.ndarray:
    """Rebuild a complex matrix from row-major ``[[re, im], ...]`` pairs."""
    n_expect = shape[0] * shape[1]
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim != 2 or arr.shape != (n_expect, 2):
        raise ValidationError(
            f"matrix payload must be {n_expect} [re, im] pairs, got shape {arr.shape}"
        )
    return (arr[:, 0] + 1j * arr[:, 1]).reshape(shape)


def real_vector_to_list(vec: np.ndarray) -> list[float]:
    return [float(x) for x in np.asarray(vec, dtype=float).reshape(-1)]


def freeze(arr: np.ndarray) -> np.ndarray:
    """Return a read-only copy; used to make container types immutable."""
    out = np.array(arr)
    out.setflags(write=False)
    return out
