"""Two-qudit density matrices and their generator correlation matrices.

The correlation matrix of a state ``rho`` on C^d (x) C^d is the real
``(d^2-1) x (d^2-1)`` matrix

    T[n, m] = tr[rho (L_n (x) L_m)]

in the generator ordering of :mod:`quditbell.gellmann`.  For swap-invariant
states T is symmetric.  Expectations of observable pairs reduce to the
quadratic form ``tr[rho (A (x) B)] = (d/2) <a, T b>`` in the Bloch vectors
``a, b`` of A and B; both evaluation paths are exposed and cross-checked in
the test suite.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field

import numpy as np

from .bloch import BlochVector, QuditObservable
from .errors import DimensionError, ValidationError
from .gellmann import build_basis
from .serialize import complex_matrix_to_pairs, freeze, pairs_to_complex_matrix

_TRACE_TOL = 1e-12
_HERM_TOL = 1e-12
_PSD_FLOOR = -1e-10
_SWAP_TOL = 1e-12

# Relative gap used to group nearly equal eigenvalues into multiplets.
CLUSTER_RTOL = 1e-8


@dataclass(frozen=True, eq=False)
class TwoQuditState:
    """Validated density matrix on C^d (x) C^d with cached swap symmetry."""

    dim: int
    rho: np.ndarray = field(repr=False)
    symmetric: bool

    def __post_init__(self):
        object.__setattr__(self, "rho", freeze(np.asarray(self.rho, dtype=complex)))

    @classmethod
    def from_matrix(cls, rho: np.ndarray) -> "TwoQuditState":
        rho = np.asarray(rho, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValidationError(f"state must be a square matrix, got shape {rho.shape}")
        d = int(round(np.sqrt(rho.shape[0])))
        if d * d != rho.shape[0] or d < 2:
            raise ValidationError(
                f"state dimension {rho.shape[0]} is not d^2 for an integer d >= 2"
            )
        herm = float(np.max(np.abs(rho - rho.conj().T)))
        if herm > _HERM_TOL:
            raise ValidationError(f"state is not hermitian: max |rho - rho^dag| = {herm:.3e}")
        trace_res = abs(complex(np.trace(rho)) - 1.0)
        if trace_res > _TRACE_TOL:
            raise ValidationError(f"state trace differs from 1: residual {trace_res:.3e}")
        min_eig = float(np.min(np.linalg.eigvalsh(rho)))
        if min_eig < _PSD_FLOOR:
            raise ValidationError(
                f"state is not positive semidefinite: min eigenvalue {min_eig:.3e}"
            )
        return cls(dim=d, rho=rho, symmetric=_swap_residual(rho, d) <= _SWAP_TOL)

    def as_4index(self) -> np.ndarray:
        """View of rho as R[j, k, a, b] = <j,k| rho |a,b>."""
        d = self.dim
        return self.rho.reshape(d, d, d, d)

    def to_json(self) -> str:
        return json.dumps({"dim": self.dim, "rho": complex_matrix_to_pairs(self.rho)})

    @classmethod
    def from_json(cls, payload: str) -> "TwoQuditState":
        data = json.loads(payload)
        d = int(data["dim"])
        rho = pairs_to_complex_matrix(data["rho"], (d * d, d * d))
        state = cls.from_matrix(rho)
        if state.dim != d:
            raise ValidationError(f"file claims dim {d} but matrix implies dim {state.dim}")
        return state

    @classmethod
    def from_file(cls, path) -> "TwoQuditState":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(fh.read())

    def to_file(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())


def _swap_residual(rho: np.ndarray, d: int) -> float:
    r4 = rho.reshape(d, d, d, d)
    return float(np.max(np.abs(r4 - r4.transpose(1, 0, 3, 2))))


def is_symmetric(state: TwoQuditState, tol: float = _SWAP_TOL) -> bool:
    """True iff conjugating by the swap operator reproduces rho within tol."""
    return _swap_residual(state.rho, state.dim) <= tol


def ghz(d: int) -> TwoQuditState:
    """Maximally entangled state ``(1/d) sum_{j,k} |jj><kk|`` (pure, symmetric)."""
    if d < 2:
        raise DimensionError(f"GHZ state requires dimension >= 2, got {d}")
    psi = np.zeros(d * d, dtype=complex)
    psi[:: d + 1] = 1.0 / np.sqrt(d)
    return TwoQuditState.from_matrix(np.outer(psi, psi.conj()))


def maximally_mixed(d: int) -> TwoQuditState:
    if d < 2:
        raise DimensionError(f"dimension must be >= 2, got {d}")
    return TwoQuditState.from_matrix(np.eye(d * d, dtype=complex) / (d * d))


@dataclass(frozen=True)
class EigenCluster:
    """One eigenvalue of T with its multiplicity and orthonormal eigenvectors."""

    value: float
    multiplicity: int
    vectors: np.ndarray = field(repr=False)  # shape (d^2-1, multiplicity)


@dataclass(frozen=True)
class SpectralData:
    eigenvalues: np.ndarray = field(repr=False)  # ascending
    clusters: tuple[EigenCluster, ...]

    @property
    def spectral_norm(self) -> float:
        return float(np.max(np.abs(self.eigenvalues)))


@dataclass(eq=False)
class CorrelationMatrix:
    """Real correlation matrix with lazily computed spectral data.

    The eigendecomposition is computed once on first access under a lock;
    afterwards reads are thread-safe.
    """

    dim: int
    matrix: np.ndarray = field(repr=False)
    symmetric: bool

    def __post_init__(self):
        self.matrix = freeze(np.asarray(self.matrix, dtype=float))
        self._spectral: SpectralData | None = None
        self._lock = threading.Lock()

    @property
    def spectral_norm(self) -> float:
        return self.spectral.spectral_norm

    @property
    def spectral(self) -> SpectralData:
        if self._spectral is None:
            with self._lock:
                if self._spectral is None:
                    self._spectral = self._decompose()
        return self._spectral

    def _decompose(self) -> SpectralData:
        sym = (self.matrix + self.matrix.T) / 2.0
        eigenvalues, vectors = np.linalg.eigh(sym)
        scale = max(1.0, float(np.max(np.abs(eigenvalues))))
        clusters = []
        start = 0
        for i in range(1, len(eigenvalues) + 1):
            if i == len(eigenvalues) or eigenvalues[i] - eigenvalues[i - 1] > CLUSTER_RTOL * scale:
                block = vectors[:, start:i]
                clusters.append(
                    EigenCluster(
                        value=float(np.mean(eigenvalues[start:i])),
                        multiplicity=i - start,
                        vectors=freeze(block),
                    )
                )
                start = i
        return SpectralData(eigenvalues=freeze(eigenvalues), clusters=tuple(clusters))

    def to_csv(self, path) -> None:
        """Plain real entries, one row per line."""
        np.savetxt(path, self.matrix, delimiter=",")


def correlation_matrix(state: TwoQuditState) -> CorrelationMatrix:
    """Compute ``T[n, m] = tr[rho (L_n (x) L_m)]`` for all generator pairs."""
    d = state.dim
    basis = build_basis(d)
    r4 = state.as_4index()
    # tr[rho (L_n (x) L_m)] = sum rho[jk,ab] L_n[a,j] L_m[b,k]
    half = np.einsum("jkab,naj->nkb", r4, basis.generators)
    t = np.einsum("nkb,mbk->nm", half, basis.generators)
    imag = float(np.max(np.abs(t.imag)))
    if imag > 1e-12:
        raise ValidationError(f"correlation matrix has imaginary residual {imag:.3e}")
    t = t.real
    asym = float(np.max(np.abs(t - t.T)))
    return CorrelationMatrix(dim=d, matrix=t, symmetric=asym <= 1e-11)


def product_expectation(state: TwoQuditState, a: QuditObservable, b: QuditObservable) -> float:
    """Direct trace ``tr[rho (A (x) B)]``."""
    if a.dim != state.dim or b.dim != state.dim:
        raise DimensionError(
            f"observable dims ({a.dim}, {b.dim}) do not match state dim {state.dim}"
        )
    value = complex(np.einsum("jkab,aj,bk->", state.as_4index(), a.matrix, b.matrix))
    if abs(value.imag) > 1e-12 * max(1.0, abs(value)):
        raise ValidationError(f"expectation has imaginary residual {value.imag:.3e}")
    return float(value.real)


def bloch_expectation(tcorr: CorrelationMatrix, a: BlochVector, b: BlochVector) -> float:
    """Quadratic-form path: ``(d/2) sum_{n,m} T[n,m] a_n b_m``."""
    if a.dim != tcorr.dim or b.dim != tcorr.dim:
        raise DimensionError(
            f"Bloch vector dims ({a.dim}, {b.dim}) do not match correlation dim {tcorr.dim}"
        )
    return float(tcorr.dim / 2.0 * (a.coords @ tcorr.matrix @ b.coords))
