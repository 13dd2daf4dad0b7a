"""Two-qubit mixed-state concurrence and the CKW inequality."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL
from .family import (
    concurrence_sum_family,
    min_one_tangle_family,
    rho_p,
    roof_tau3_axis,
)
from .roof import RoofConfig, minimize_roof
from .states import (
    QUBITS,
    Rank2State,
    check_density,
    ghz,
    partial_trace,
    qubit_index,
    spectral_rank2,
    w,
)

_SYSY = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])


def spinflip_values(rho, tol=DEFAULT_TOL):
    """Decreasing square roots of the eigenvalues of ``rho (sy⊗sy) rho* (sy⊗sy)``.

    With ``rho = X X^dag`` these are the singular values of ``X^T (sy⊗sy) X``,
    which avoids taking square roots of round-off sized eigenvalues.
    """
    rho = check_density(rho, tol)
    if rho.shape != (4, 4):
        raise ValueError("spin-flip concurrence needs a 4x4 density matrix")
    evals, evecs = np.linalg.eigh(rho)
    keep = evals > tol.spinflip_clamp * 1e-3
    x = evecs[:, keep] * np.sqrt(evals[keep])
    sv = np.linalg.svd(x.T @ _SYSY @ x, compute_uv=False)
    out = np.zeros(4)
    out[: sv.shape[0]] = sv
    return np.sort(out)[::-1]


def wootters_concurrence(rho):
    """Concurrence ``max(0, l1 - l2 - l3 - l4)`` of a two-qubit density matrix."""
    lam = spinflip_values(rho)
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def _other_qubits(focus):
    return [q for q in range(3) if q != focus]


@dataclass(frozen=True)
class CkwReport:
    lhs: float
    rhs: float
    tau3_roof: float | None
    satisfied: bool
    focus: str
    method: str


def family_parameter(rho, tol=DEFAULT_TOL.family):
    """``p`` if ``rho`` equals ``rho_p(p)`` entrywise within ``tol``, else ``None``."""
    g = ghz()
    p = float(np.vdot(g, rho @ g).real)
    if 0 <= p <= 1 and np.max(np.abs(rho - rho_p(p))) <= tol:
        return p
    return None


def ckw_check(rho, focus="A", roof_config: RoofConfig | None = None) -> CkwReport:
    """Evaluate ``4 min det(rho_X) >= C(rho_XY)^2 + C(rho_XZ)^2``.

    On the GHZ/W mixture axis the closed forms are used for the left-hand
    side and the 3-tangle roof; otherwise the 1-tangle roof is minimized
    numerically (an upper bound on the true minimum).
    """
    rho = check_density(rho)
    fq = qubit_index(focus)
    label = QUBITS[fq]
    rhs = sum(
        wootters_concurrence(partial_trace(rho, sorted([fq, q]))) ** 2
        for q in _other_qubits(fq)
    )
    p = family_parameter(rho)
    if p is not None:
        lhs = min_one_tangle_family(p)
        tau = roof_tau3_axis(p).value
        method = "closed-form"
    else:
        state = spectral_rank2(rho)
        lhs = minimize_roof(state, f"one_tangle_{label}", roof_config).value
        tau = None
        method = "numerical"
    return CkwReport(lhs, rhs, tau, bool(lhs >= rhs - DEFAULT_TOL.ckw), label, method)


@dataclass(frozen=True)
class SweepRow:
    p: float
    one_tangle_min: float
    concurrence_sum: float
    tau3_roof: float
    one_tangle_numeric: float | None = None


def family_ckw_sweep(grid, roof_config: RoofConfig | None = None, numeric=False):
    """The 1-tangle, concurrence-sum and 3-tangle curves of the GHZ/W mixtures.

    With ``numeric`` each row also carries the numerically minimized 1-tangle
    of qubit A, so the closed form can be compared against the optimizer.
    """
    rows = []
    for p in grid:
        p = float(p)
        if not 0 <= p <= 1:
            raise ValueError(f"grid value {p} outside [0, 1]")
        num = None
        if numeric:
            num = minimize_roof(Rank2State(ghz(), w(), p), "one_tangle_A", roof_config).value
        rows.append(
            SweepRow(p, min_one_tangle_family(p), concurrence_sum_family(p),
                     roof_tau3_axis(p).value, num)
        )
    return rows
