"""Numerical convex-roof minimization for rank-2 states.

Every length-m decomposition of ``p|1><1| + (1-p)|2><2|`` has vectors
``chi_l = V[l, 0] sqrt(p) |1> + V[l, 1] sqrt(1-p) |2>`` for an m x 2 matrix
``V`` with orthonormal columns. The search runs a multi-start downhill
simplex over a minimal angle parameterization of ``V`` (3m - 4 reals, row
phases removed since no measure depends on them); the inner loop lives in
the kernel module selected by ``_backend``.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .errors import BudgetExceeded, InvalidState, TangleError
from .measures import concurrence_pure, one_tangle, three_tangle
from .rank2zero import tangle_polynomial
from .states import Ensemble, Rank2State, partial_trace, qubit_index

OBJECTIVES = ("tau3", "one_tangle_A", "one_tangle_B", "one_tangle_C", "concurrence_AB")


def _check_objective(objective):
    if objective == "one_tangle":
        objective = "one_tangle_A"
    if objective not in OBJECTIVES:
        raise TangleError(f"unknown objective {objective!r}; choose from {OBJECTIVES}")
    return objective


@dataclass(frozen=True)
class IsometryParams:
    m: int
    parameters: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.parameters, dtype=float).reshape(-1)
        if self.m < 2 or x.shape[0] != kernels.n_params(self.m):
            raise TangleError(f"m = {self.m} needs {3 * self.m - 4} parameters")
        object.__setattr__(self, "parameters", x)

    def matrix(self):
        return kernels.isometry(self.parameters, self.m)


def embed_two_qubit(phi):
    """Three-qubit ket ``phi ⊗ |0>`` for a two-qubit ket ``phi``."""
    phi = np.asarray(phi, dtype=complex).reshape(4)
    out = np.zeros(8, dtype=complex)
    out[0::2] = phi
    return out


def _concurrence_ab(psi):
    if np.abs(psi[1::2]).max() > 1e-12:
        raise InvalidState("concurrence_AB needs states of the form phi_AB ⊗ |0>_C")
    return concurrence_pure(psi[0::2])


def pure_measure(psi, objective):
    objective = _check_objective(objective)
    if objective == "tau3":
        return three_tangle(psi)
    if objective == "concurrence_AB":
        return _concurrence_ab(psi)
    return one_tangle(psi, objective[-1])


def ensemble_from_isometry(state: Rank2State, params) -> Ensemble:
    """Decomposition generated by an isometry (``IsometryParams`` or m x 2 array)."""
    v = params.matrix() if isinstance(params, IsometryParams) else np.asarray(params, complex)
    if v.ndim != 2 or v.shape[1] != 2:
        raise TangleError("isometry must be an m x 2 matrix")
    chis = np.outer(v[:, 0] * np.sqrt(state.p), state.ket1) + np.outer(
        v[:, 1] * np.sqrt(1 - state.p), state.ket2
    )
    weights = np.einsum("la,la->l", chis.conj(), chis).real
    keep = weights > 1e-300
    return Ensemble(weights[keep] / weights[keep].sum(), chis[keep])


def average_objective(ensemble: Ensemble, objective="tau3"):
    return float(sum(wt * pure_measure(s, objective) for wt, s in ensemble))


def _kernel_spec(state: Rank2State, objective):
    """(kind, degree, scale, coeffs, amats) consumed by the kernels."""
    zeros5, zeros16 = [0j] * 5, [0j] * 16
    if objective == "tau3":
        coeffs = tangle_polynomial(state.ket1, state.ket2).coeffs
        return 0, 4, 4.0, list(coeffs), zeros16
    if objective == "concurrence_AB":
        for k in (state.ket1, state.ket2):
            if np.abs(k[1::2]).max() > 1e-12:
                raise InvalidState("concurrence_AB needs kets of the form phi_AB ⊗ |0>_C")
        a, b = state.ket1[0::2], state.ket2[0::2]
        # phi00 phi11 - phi01 phi10 on a + z b
        coeffs = np.convolve([a[0], b[0]], [a[3], b[3]]) - np.convolve([a[1], b[1]], [a[2], b[2]])
        return 0, 2, 2.0, list(coeffs) + [0j, 0j], zeros16
    focus = [qubit_index(objective[-1])]
    kets = (state.ket1, state.ket2)
    amats = []
    for j in range(2):
        for k in range(2):
            amats.extend(partial_trace(np.outer(kets[j], kets[k].conj()), focus).reshape(-1))
    return 1, 0, 4.0, zeros5, amats


@dataclass(frozen=True)
class RoofConfig:
    m_values: tuple = (2, 3, 4)
    restarts: int = 64
    seed: int = 0
    xatol: float = 1e-9
    fatol: float = 1e-10
    max_iters: int = 20000
    step: float = 0.5
    polish_rounds: int = 4
    workers: int = 1

    def __post_init__(self):
        m_values = tuple(int(m) for m in self.m_values)
        if not m_values or any(m not in (2, 3, 4) for m in m_values):
            raise TangleError(f"m_values must be a nonempty subset of {{2, 3, 4}}, got {m_values}")
        if self.restarts < 1:
            raise TangleError("restarts must be >= 1")
        object.__setattr__(self, "m_values", tuple(sorted(set(m_values))))


@dataclass(frozen=True)
class LocalRun:
    m: int
    restart: int
    value: float
    x: np.ndarray
    n_evals: int
    converged: bool


@dataclass(frozen=True)
class RoofResult:
    value: float
    ensemble: Ensemble
    restarts_used: int
    converged: bool
    m: int
    params: IsometryParams
    kernel_value: float
    best_by_m: dict = field(default_factory=dict)
    runs: list = field(default_factory=list, repr=False)


def _local_search(spec, m, restart, cfg: RoofConfig, sp, sq):
    kind, degree, scale, coeffs, amats = spec
    rng = np.random.default_rng([cfg.seed, m, restart])
    x0 = rng.uniform(0, 2 * np.pi, kernels.n_params(m))
    x, f, nev, _, conv = kernels.nelder_mead(
        x0, cfg.step, m, kind, degree, scale, coeffs, amats, sp, sq,
        cfg.xatol, cfg.fatol, cfg.max_iters,
    )
    step = cfg.step
    # re-seeding a fresh simplex around the incumbent escapes collapsed simplices
    for _ in range(cfg.polish_rounds):
        step *= 0.25
        x2, f2, nev2, _, conv = kernels.nelder_mead(
            x, step, m, kind, degree, scale, coeffs, amats, sp, sq,
            cfg.xatol, cfg.fatol, cfg.max_iters,
        )
        nev += nev2
        improved = f - f2
        if f2 <= f:
            x, f = x2, f2
        if improved <= cfg.fatol:
            break
    return LocalRun(m, restart, float(f), x, int(nev), bool(conv))


def minimize_roof(state: Rank2State, objective="tau3", config: RoofConfig | None = None) -> RoofResult:
    """Multi-start minimization of the ensemble-average ``objective``.

    The reported value for each m is the best over all decompositions of
    length at most m found so far, so ``best_by_m`` is non-increasing in m
    (a shorter decomposition is a longer one padded with zero vectors).
    The returned ``value`` is recomputed from the pruned ensemble with the
    pure-state measures, independently of the kernel.
    """
    cfg = config or RoofConfig()
    objective = _check_objective(objective)
    spec = _kernel_spec(state, objective)
    sp, sq = float(np.sqrt(state.p)), float(np.sqrt(1 - state.p))
    jobs = [(m, r) for m in cfg.m_values for r in range(cfg.restarts)]
    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            runs = list(pool.map(lambda j: _local_search(spec, j[0], j[1], cfg, sp, sq), jobs))
    else:
        runs = [_local_search(spec, m, r, cfg, sp, sq) for m, r in jobs]

    best_by_m = {}
    best = None
    for m in cfg.m_values:
        for run in runs:
            if run.m == m and (best is None or run.value < best.value):
                best = run
        best_by_m[m] = best.value
    if not best.converged:
        warnings.warn(
            f"best local search (m={best.m}, restart {best.restart}) hit the budget",
            BudgetExceeded,
            stacklevel=2,
        )
    params = IsometryParams(best.m, best.x)
    v = params.matrix()
    chis = np.outer(v[:, 0] * sp, state.ket1) + np.outer(v[:, 1] * sq, state.ket2)
    weights = np.einsum("la,la->l", chis.conj(), chis).real
    ens = Ensemble.pruned(weights / weights.sum(), chis)
    return RoofResult(
        value=average_objective(ens, objective),
        ensemble=ens,
        restarts_used=len(runs),
        converged=best.converged,
        m=best.m,
        params=params,
        kernel_value=best.value,
        best_by_m=best_by_m,
        runs=runs,
    )
