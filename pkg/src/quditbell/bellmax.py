"""Constrained maximization of the original Bell expression.

The quantity maximized is

    |tr[rho (A (x) B)] - tr[rho (A (x) B~)]| +- tr[rho (B (x) B~)]

over traceless observables A, B~ with eigenvalues +-1, with B held to the
perfectness constraint ``tr[rho (B (x) B)] = +-1``.  For states certified by
:mod:`quditbell.perfectness` the value never exceeds 3/2; the scalar chain
behind that bound reduces to maximizing ``sqrt(2(1-z)) + z`` over [-1, 1].

The optimizer alternates a closed-form update of A (the normalized image
``T(b - b~)``, rounded back to the +-1-spectrum family for d > 2) with local
ascent of B~ over the unitary orbit of a fixed balanced +-1 diagonal.
Restarts are independent and deterministic in ``(seed, restart index)``.

A Monte-Carlo harness over finite local-hidden-variable models checks the
classical bound 1 on the same combination under the perfectness constraint.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .bloch import BlochVector, QuditObservable, from_bloch, haar_unitary
from .errors import CertificationError, DimensionError, ValidationError
from .gellmann import build_basis
from .perfectness import WitnessSearchOptions, find_perfect_observables
from .serialize import freeze
from .states import (
    CorrelationMatrix,
    TwoQuditState,
    correlation_matrix,
    product_expectation,
)

_EIGRANGE_TOL = 1e-9
_EPS_INITIAL = 0.5
_EPS_MIN = 1e-6
# Accepting perturbed B requires near-exact perfectness: the attainable value
# grows like sqrt(residual) above 3/2, so a loose residual check would let the
# optimizer leak past the bound.
_B_FEASIBILITY_TOL = 1e-13


@dataclass(frozen=True)
class MaximizeOptions:
    """Optimizer knobs; defaults reproduce the d=2 attainment in seconds."""

    restarts: int = 64
    seed: int = 0
    tol: float = 1e-9
    max_iters: int = 500
    threads: int = 1
    perturb_b: bool = False
    witness_count: int = 8


@dataclass(frozen=True)
class RestartSummary:
    restart: int
    value: float
    iterations: int


@dataclass(frozen=True, eq=False)
class BellMaxReport:
    dim: int
    sign: int
    best_value: float  # recomputed by direct traces
    bloch_value: float  # value seen by the optimizer (correlation-matrix path)
    b_perfect_residual: float
    restarts: int
    seed: int
    best_a: QuditObservable
    best_b: QuditObservable
    best_btilde: QuditObservable
    per_restart: tuple[RestartSummary, ...]
    trace: tuple[tuple[int, int, float], ...]  # (restart, iteration, value)
    wall_time: float

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "dim": self.dim,
            "sign": self.sign,
            "best_value": self.best_value,
            "bloch_value": self.bloch_value,
            "b_perfect_residual": self.b_perfect_residual,
            "restarts": self.restarts,
            "seed": self.seed,
            "best_A": json.loads(self.best_a.to_json()),
            "best_B": json.loads(self.best_b.to_json()),
            "best_Btilde": json.loads(self.best_btilde.to_json()),
            "per_restart": [
                {
                    "restart": r.restart,
                    "seed": [self.seed, r.restart],
                    "value": r.value,
                    "iterations": r.iterations,
                }
                for r in self.per_restart
            ],
        }
        if include_timing:
            out["timing"] = {"wall_time_seconds": self.wall_time}
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing=include_timing))


def write_trace_csv(report: BellMaxReport, path) -> None:
    """Convergence trace as ``restart,iteration,value`` rows."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("restart,iteration,value\n")
        for restart, iteration, value in report.trace:
            fh.write(f"{restart},{iteration},{value!r}\n")


def _check_observable_range(obs: QuditObservable, name: str) -> None:
    norm = obs.operator_norm
    if norm > 1.0 + _EIGRANGE_TOL:
        raise ValidationError(f"{name} has eigenvalues outside [-1, 1]: operator norm {norm:.6e}")


def bell_expression(
    state: TwoQuditState,
    a: QuditObservable,
    b: QuditObservable,
    btilde: QuditObservable,
    sign: int,
) -> float:
    """Direct-trace evaluation of the three-correlator Bell combination."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    for obs, name in ((a, "A"), (b, "B"), (btilde, "Btilde")):
        _check_observable_range(obs, name)
    e_ab = product_expectation(state, a, b)
    e_abt = product_expectation(state, a, btilde)
    e_bbt = product_expectation(state, b, btilde)
    return abs(e_ab - e_abt) + sign * e_bbt


def bell_expression_bloch(
    tcorr: CorrelationMatrix,
    a: BlochVector,
    b: BlochVector,
    btilde: BlochVector,
    sign: int,
) -> float:
    """Correlation-matrix evaluation ``(d/2)(|<a, T(b - b~)>| +- <b, T b~>)``."""
    t = tcorr.matrix
    first = abs(float(a.coords @ (t @ (b.coords - btilde.coords))))
    second = float(b.coords @ (t @ btilde.coords))
    return tcorr.dim / 2.0 * (first + sign * second)


def optimal_a(
    tcorr: CorrelationMatrix, b: BlochVector, btilde: BlochVector
) -> tuple[BlochVector, bool]:
    """Unit vector maximizing ``|<a, T(b - b~)>|`` over the unit sphere.

    Returns ``(vector, degenerate)``; when ``T(b - b~) = 0`` any unit vector
    gives a zero first term and the degenerate flag is set.  For d > 2 the
    optimizer rounds this direction back into the +-1 shell before use.
    """
    w = tcorr.matrix @ (b.coords - btilde.coords)
    norm = float(np.linalg.norm(w))
    if norm < 1e-12:
        coords = np.zeros(tcorr.dim * tcorr.dim - 1)
        coords[0] = 1.0
        return BlochVector(dim=tcorr.dim, coords=coords), True
    return BlochVector(dim=tcorr.dim, coords=w / norm), False


def scalar_bound() -> tuple[float, float]:
    """Maximize ``sqrt(2(1-z)) + z`` over z in [-1, 1]; equals 3/2 at z = 1/2."""
    result = minimize_scalar(
        lambda z: -(np.sqrt(2.0 * (1.0 - z)) + z),
        bounds=(-1.0, 1.0),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return -float(result.fun), float(result.x)


# --------------------------------------------------------------------------
# Alternating maximizer
# --------------------------------------------------------------------------


class _GeneratorRotations:
    """Precomputed eigendecompositions for ``exp(i eps L_j)`` factors."""

    def __init__(self, generators: np.ndarray):
        self._eigs = [np.linalg.eigh(g) for g in generators]

    def __len__(self) -> int:
        return len(self._eigs)

    def rotation(self, index: int, eps: float) -> np.ndarray:
        w, v = self._eigs[index]
        return (v * np.exp(1j * eps * w)) @ v.conj().T


def _bloch_coords(matrix: np.ndarray, generators: np.ndarray, d: int) -> np.ndarray:
    return np.einsum("ij,kji->k", matrix, generators).real / np.sqrt(2.0 * d)


def _pm1_rounding_candidates(matrix: np.ndarray, tie_tol: float = 1e-8) -> list[np.ndarray]:
    """Balanced sign-rounded versions of a hermitian traceless matrix.

    Eigenvalues are sorted; the top half maps to +1, the bottom half to -1.
    A near-tie at the split produces a second candidate with the boundary
    pair swapped, so the caller can pick by objective.
    """
    d = matrix.shape[0]
    h = d // 2
    w, v = np.linalg.eigh(matrix)
    signs = np.concatenate([-np.ones(h), np.ones(h)])
    candidates = [(v * signs) @ v.conj().T]
    if abs(w[h] - w[h - 1]) <= tie_tol:
        swapped = signs.copy()
        swapped[h - 1], swapped[h] = 1.0, -1.0
        candidates.append((v * swapped) @ v.conj().T)
    return candidates


@dataclass(frozen=True)
class _RestartResult:
    index: int
    value: float
    iterations: int
    trace: tuple[tuple[int, float], ...]
    a_coords: np.ndarray
    b_coords: np.ndarray
    btil_coords: np.ndarray


def _restart_worker(payload) -> _RestartResult:
    (d, tmat, b_coords, sign, seed, index, tol, max_iters, perturb_b) = payload
    basis = build_basis(d)
    generators = basis.generators
    rots = _GeneratorRotations(generators)
    rng = np.random.default_rng([seed, index])
    half = d // 2
    dvals = np.concatenate([np.ones(half), -np.ones(half)])
    scale = np.sqrt(d / 2.0)
    target = sign * 2.0 / d

    b = np.asarray(b_coords, dtype=float)
    tb = tmat @ b

    # B~ starts on a random point of the +-1 orbit.
    u = haar_unitary(d, rng)
    btil = _bloch_coords((u * dvals) @ u.conj().T, generators, d)

    # Eigenbasis factor of B, used only when perturb_b re-optimizes B.
    if perturb_b:
        _, vb = np.linalg.eigh(scale * np.tensordot(b, generators, axes=(0, 0)))
        ub = vb
        dvals_b = np.concatenate([-np.ones(half), np.ones(half)])

    def value_of(a_c: np.ndarray, btil_c: np.ndarray, tb_c: np.ndarray, b_c: np.ndarray) -> float:
        tbtil = tmat @ btil_c
        return d / 2.0 * (abs(float(a_c @ (tb_c - tbtil))) + sign * float(b_c @ tbtil))

    def update_a(btil_c: np.ndarray) -> np.ndarray:
        w = tb - tmat @ btil_c
        norm = np.linalg.norm(w)
        if norm < 1e-13:
            direction = np.zeros(d * d - 1)
            direction[0] = 1.0
        else:
            direction = w / norm
        if d == 2:
            return direction
        best_c, best_v = None, -np.inf
        matrix = scale * np.tensordot(direction, generators, axes=(0, 0))
        for cand in _pm1_rounding_candidates(matrix):
            coords = _bloch_coords(cand, generators, d)
            v = value_of(coords, btil_c, tb, b)
            if v > best_v:
                best_c, best_v = coords, v
        return best_c

    a = update_a(btil)
    value = value_of(a, btil, tb, b)
    trace = [(0, value)]
    eps = _EPS_INITIAL
    iterations = 0

    for iteration in range(1, max_iters + 1):
        iterations = iteration
        start_value = value

        for j in range(len(rots)):
            for step in (eps, -eps):
                u2 = rots.rotation(j, step) @ u
                btil2 = _bloch_coords((u2 * dvals) @ u2.conj().T, generators, d)
                v2 = value_of(a, btil2, tb, b)
                if v2 > value + tol:
                    u, btil, value = u2, btil2, v2

        if perturb_b:
            for j in range(len(rots)):
                for step in (eps, -eps):
                    ub2 = rots.rotation(j, step) @ ub
                    b2 = _bloch_coords((ub2 * dvals_b) @ ub2.conj().T, generators, d)
                    if abs(float(b2 @ (tmat @ b2)) - target) > min(tol, _B_FEASIBILITY_TOL):
                        continue
                    tb2 = tmat @ b2
                    v2 = value_of(a, btil, tb2, b2)
                    if v2 > value + tol:
                        ub, b, tb, value = ub2, b2, tb2, v2

        a2 = update_a(btil)
        v2 = value_of(a2, btil, tb, b)
        if v2 > value:
            a, value = a2, v2

        trace.append((iteration, value))
        if value - start_value <= tol:
            if eps <= _EPS_MIN:
                break
            eps = max(eps / 2.0, _EPS_MIN)

    return _RestartResult(
        index=index,
        value=value,
        iterations=iterations,
        trace=tuple(trace),
        a_coords=freeze(a),
        b_coords=freeze(b),
        btil_coords=freeze(btil),
    )


def maximize_bell(
    state: TwoQuditState,
    sign: int,
    opts: MaximizeOptions | None = None,
    progress=None,
) -> BellMaxReport:
    """Multi-restart maximization of the Bell combination under perfectness.

    Each restart draws B from the certified perfect observables, then
    alternates the closed-form A update with unitary-orbit ascent of B~.
    Results are reduced deterministically (best value, ties to the lowest
    restart index); the reported value is recomputed by direct traces.

    ``progress(restart_index, converged_value)`` is invoked once per finished
    restart; with ``threads > 1`` calls may interleave with other work, so a
    shared callback must tolerate concurrent invocation.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    opts = opts or MaximizeOptions()
    d = state.dim
    if d % 2 != 0:
        raise DimensionError(
            f"dimension {d} is odd: no traceless observables with eigenvalues +-1 exist"
        )
    if not state.symmetric:
        raise ValidationError("state is not swap-symmetric; the maximization requires symmetry")

    start = time.perf_counter()
    witnesses = find_perfect_observables(
        state,
        sign,
        count=opts.witness_count,
        seed=opts.seed,
        tol=max(opts.tol, 1e-12),
        opts=WitnessSearchOptions(seed=opts.seed),
    )
    tcorr = correlation_matrix(state)
    payloads = [
        (
            d,
            tcorr.matrix,
            witnesses[i % len(witnesses)].bloch.coords,
            sign,
            opts.seed,
            i,
            opts.tol,
            opts.max_iters,
            opts.perturb_b,
        )
        for i in range(opts.restarts)
    ]
    if opts.threads > 1:
        with ProcessPoolExecutor(max_workers=opts.threads) as pool:
            results = []
            for result in pool.map(_restart_worker, payloads):
                results.append(result)
                if progress is not None:
                    progress(result.index, result.value)
    else:
        results = []
        for payload in payloads:
            result = _restart_worker(payload)
            results.append(result)
            if progress is not None:
                progress(result.index, result.value)

    best = max(results, key=lambda r: (r.value, -r.index))
    best_a = from_bloch(BlochVector(dim=d, coords=best.a_coords))
    best_b = from_bloch(BlochVector(dim=d, coords=best.b_coords))
    best_btil = from_bloch(BlochVector(dim=d, coords=best.btil_coords))
    direct = bell_expression(state, best_a, best_b, best_btil, sign)
    residual = abs(float(best.b_coords @ (tcorr.matrix @ best.b_coords)) - sign * 2.0 / d)

    return BellMaxReport(
        dim=d,
        sign=sign,
        best_value=direct,
        bloch_value=best.value,
        b_perfect_residual=residual,
        restarts=opts.restarts,
        seed=opts.seed,
        best_a=best_a,
        best_b=best_b,
        best_btilde=best_btil,
        per_restart=tuple(
            RestartSummary(restart=r.index, value=r.value, iterations=r.iterations)
            for r in results
        ),
        trace=tuple((r.index, it, v) for r in results for it, v in r.trace),
        wall_time=time.perf_counter() - start,
    )


# --------------------------------------------------------------------------
# Brute-force oracle at d = 2 and CHSH comparators
# --------------------------------------------------------------------------


def _sphere_grid(steps: int) -> np.ndarray:
    thetas = np.linspace(0.0, np.pi, steps + 1)
    phis = np.arange(2 * steps) * (np.pi / steps)
    theta, phi = np.meshgrid(thetas, phis, indexing="ij")
    pts = np.stack(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1
    )
    return pts.reshape(-1, 3)


def exhaustive_qubit_max(state: TwoQuditState, sign: int, grid_steps: int) -> float:
    """Dense grid oracle for the d = 2 maximum.

    The perfectness constraint ``<b, T b> = +-1`` forces b into the unit
    sphere of the corresponding eigenspace of T (all other eigenvalues have
    strictly smaller magnitude), so b is gridded there exactly; b~ runs over
    a full Bloch-sphere grid and the a-maximization is the exact norm
    ``||T(b - b~)||`` (every unit vector is admissible at d = 2).
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if state.dim != 2:
        raise DimensionError(f"the exhaustive oracle is defined for d = 2 only, got {state.dim}")
    if grid_steps < 2:
        raise ValueError("grid_steps must be at least 2")
    if not state.symmetric:
        raise ValidationError("the oracle requires a swap-symmetric state")
    tmat = correlation_matrix(state).matrix
    tmat = (tmat + tmat.T) / 2.0
    eigenvalues, vectors = np.linalg.eigh(tmat)
    if np.max(np.abs(eigenvalues)) > 1.0 + 1e-9:
        raise ValidationError(
            f"two-qubit correlation matrix has spectral norm {np.max(np.abs(eigenvalues)):.6f} > 1"
        )
    keep = np.abs(eigenvalues - float(sign)) <= 1e-9
    if not np.any(keep):
        raise CertificationError(
            f"state has no eigenvalue {sign:+d} in its correlation spectrum; "
            "no observable satisfies the perfectness constraint"
        )
    subspace = vectors[:, keep]
    k = subspace.shape[1]
    if k == 1:
        b_points = np.stack([subspace[:, 0], -subspace[:, 0]])
    elif k == 2:
        alphas = np.arange(2 * grid_steps) * (np.pi / grid_steps)
        b_points = np.cos(alphas)[:, None] * subspace[:, 0] + np.sin(alphas)[:, None] * subspace[:, 1]
    else:
        b_points = _sphere_grid(grid_steps) @ subspace.T

    btil = _sphere_grid(grid_steps)
    t_btil = btil @ tmat.T
    best = -np.inf
    for b in b_points:
        tb = tmat @ b
        first = np.linalg.norm(tb[None, :] - t_btil, axis=1)
        second = t_btil @ b
        best = max(best, float(np.max(first + sign * second)))
    return best


def chsh_value(
    state: TwoQuditState,
    a1: QuditObservable,
    a2: QuditObservable,
    b1: QuditObservable,
    b2: QuditObservable,
) -> float:
    """|E(A1,B1) + E(A1,B2) + E(A2,B1) - E(A2,B2)| by direct traces."""
    e11 = product_expectation(state, a1, b1)
    e12 = product_expectation(state, a1, b2)
    e21 = product_expectation(state, a2, b1)
    e22 = product_expectation(state, a2, b2)
    return abs(e11 + e12 + e21 - e22)


def chsh_optimal_settings(
    state: TwoQuditState,
) -> tuple[QuditObservable, QuditObservable, QuditObservable, QuditObservable]:
    """Closed-form CHSH-optimal qubit settings from the SVD of T.

    With singular values s1 >= s2, the settings reach ``2 sqrt(s1^2 + s2^2)``
    (2 sqrt(2) on the maximally entangled state).
    """
    if state.dim != 2:
        raise DimensionError(f"closed-form CHSH settings are for d = 2 only, got {state.dim}")
    tmat = correlation_matrix(state).matrix
    u_mat, svals, vt = np.linalg.svd(tmat)
    theta = np.arctan2(svals[1], svals[0])
    a1 = u_mat[:, 0]
    a2 = u_mat[:, 1]
    b1 = np.cos(theta) * vt[0] + np.sin(theta) * vt[1]
    b2 = np.cos(theta) * vt[0] - np.sin(theta) * vt[1]
    return tuple(from_bloch(x, 2) for x in (a1, a2, b1, b2))


# --------------------------------------------------------------------------
# Local-hidden-variable Monte-Carlo harness
# --------------------------------------------------------------------------

OUTCOME_GRID = (-1.0, -0.5, 0.0, 0.5, 1.0)


@dataclass(frozen=True, eq=False)
class LhvModel:
    """Finite local-hidden-variable model on outcomes in [-1, 1].

    ``weights`` is the distribution over hidden states; each ``p_*`` table is
    a row-stochastic matrix of conditional outcome probabilities over
    ``outcome_grid`` for the corresponding measurement.
    """

    weights: np.ndarray
    outcome_grid: np.ndarray
    p_a1: np.ndarray
    p_a2: np.ndarray
    p_b1: np.ndarray
    p_b2: np.ndarray

    def __post_init__(self):
        for name in ("weights", "outcome_grid", "p_a1", "p_a2", "p_b1", "p_b2"):
            object.__setattr__(self, name, freeze(np.asarray(getattr(self, name), dtype=float)))
        self.validate()

    def validate(self, atol: float = 1e-9) -> None:
        if np.any(self.weights < -atol) or abs(self.weights.sum() - 1.0) > atol:
            raise ValidationError("hidden-variable weights must be a probability distribution")
        if np.any(np.abs(self.outcome_grid) > 1.0 + atol):
            raise ValidationError("outcomes must lie in [-1, 1]")
        k, g = self.weights.size, self.outcome_grid.size
        for name in ("p_a1", "p_a2", "p_b1", "p_b2"):
            table = getattr(self, name)
            if table.shape != (k, g):
                raise ValidationError(f"{name} must have shape ({k}, {g}), got {table.shape}")
            if np.any(table < -atol) or np.any(np.abs(table.sum(axis=1) - 1.0) > atol):
                raise ValidationError(f"{name} rows must be probability distributions")

    def _means(self, table: np.ndarray) -> np.ndarray:
        return table @ self.outcome_grid

    def expectation(self, a: str, b: str) -> float:
        """Product expectation for a measurement pair, e.g. ('a1', 'b2')."""
        ma = self._means(getattr(self, f"p_{a}"))
        mb = self._means(getattr(self, f"p_{b}"))
        return float(np.sum(self.weights * ma * mb))

    def bell_value(self, sign: int) -> float:
        e11 = self.expectation("a1", "b1")
        e12 = self.expectation("a1", "b2")
        e22 = self.expectation("a2", "b2")
        return abs(e11 - e12) + sign * e22

    def constraint_residual(self, sign: int) -> float:
        return abs(self.expectation("a2", "b1") - sign)


@dataclass(frozen=True)
class LhvCheckReport:
    models_sampled: int
    sign: int
    max_bell_value: float
    constraint_residual_max: float
    seed: int

    def to_dict(self) -> dict:
        return {
            "models_sampled": self.models_sampled,
            "sign": self.sign,
            "max_bell_value": self.max_bell_value,
            "constraint_residual_max": self.constraint_residual_max,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def sample_lhv_model(
    rng: np.random.Generator,
    sign: int,
    omega_range: tuple[int, int] = (2, 8),
    grid=OUTCOME_GRID,
) -> LhvModel:
    """Random finite LHV model satisfying the perfectness constraint exactly.

    The (a2, b1) pair may only produce outcome products equal to ``sign``;
    since the joint factorizes given the hidden state, both conditionals
    must be deterministic +-1 with matched (sign +) or opposite (sign -)
    values per hidden state.  The unconstrained measurements get arbitrary
    random distributions on the outcome grid.
    """
    grid_arr = np.asarray(grid, dtype=float)
    g = grid_arr.size
    idx_plus = int(np.argmin(np.abs(grid_arr - 1.0)))
    idx_minus = int(np.argmin(np.abs(grid_arr + 1.0)))
    k = int(rng.integers(omega_range[0], omega_range[1] + 1))
    weights = rng.dirichlet(np.ones(k))

    def random_table() -> np.ndarray:
        raw = rng.random((k, g))
        return raw / raw.sum(axis=1, keepdims=True)

    p_a1 = random_table()
    p_b2 = random_table()
    s = rng.integers(0, 2, size=k) * 2 - 1
    p_a2 = np.zeros((k, g))
    p_b1 = np.zeros((k, g))
    for omega in range(k):
        p_a2[omega, idx_plus if s[omega] > 0 else idx_minus] = 1.0
        matched = s[omega] * sign
        p_b1[omega, idx_plus if matched > 0 else idx_minus] = 1.0
    return LhvModel(
        weights=weights,
        outcome_grid=grid_arr,
        p_a1=p_a1,
        p_a2=p_a2,
        p_b1=p_b1,
        p_b2=p_b2,
    )


def lhv_monte_carlo(
    sign: int,
    n_models: int,
    seed: int = 0,
    omega_range: tuple[int, int] = (2, 8),
    grid=OUTCOME_GRID,
) -> LhvCheckReport:
    """Sample constrained LHV models and report the largest Bell combination."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if n_models < 1:
        raise ValueError(f"need at least one model, got {n_models}")
    rng = np.random.default_rng(seed)
    max_value = -np.inf
    max_residual = 0.0
    for _ in range(n_models):
        model = sample_lhv_model(rng, sign, omega_range=omega_range, grid=grid)
        max_value = max(max_value, model.bell_value(sign))
        max_residual = max(max_residual, model.constraint_residual(sign))
    return LhvCheckReport(
        models_sampled=n_models,
        sign=sign,
        max_bell_value=float(max_value),
        constraint_residual_max=float(max_residual),
        seed=seed,
    )
