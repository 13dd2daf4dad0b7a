"""Kets, density matrices, partial traces and rank-2 spectral forms.

Kets are plain complex numpy arrays of length 2**n with qubit A as the most
significant bit, i.e. the amplitude of |ijk> sits at flat index 4i + 2j + k.
Density matrices are complex (d, d) arrays with d in {2, 4, 8}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import (
    BadSubset,
    BadWeights,
    InvalidState,
    NotOrthonormal,
    RankTooHigh,
    ZeroVector,
)

QUBITS = ("A", "B", "C")


def qubit_index(label):
    """Map a qubit label ('A', 'B', 'C' or 0, 1, 2) to its position."""
    if isinstance(label, (int, np.integer)) and 0 <= label < 3:
        return int(label)
    try:
        return QUBITS.index(str(label).upper())
    except ValueError:
        raise BadSubset(f"unknown qubit label {label!r}") from None


def as_ket(state, dim=None):
    psi = np.asarray(state, dtype=complex).reshape(-1)
    if dim is not None and psi.shape[0] != dim:
        raise InvalidState(f"expected {dim} amplitudes, got {psi.shape[0]}")
    if psi.shape[0] not in (2, 4, 8):
        raise InvalidState(f"ket length must be 2, 4 or 8, got {psi.shape[0]}")
    return psi


def normalize(state, tol: Tolerances = DEFAULT_TOL):
    """Return ``state`` divided by its Euclidean norm.

    Raises
    ------
    ZeroVector
        If the norm is below ``tol.zero_norm``.
    """
    psi = as_ket(state)
    nrm = np.linalg.norm(psi)
    if nrm < tol.zero_norm:
        raise ZeroVector("cannot normalize a vector of norm %.3g" % nrm)
    return psi / nrm


def basis_ket(bits):
    """Computational basis ket from a bit string such as ``"010"``."""
    psi = np.zeros(2 ** len(bits), dtype=complex)
    psi[int(bits, 2)] = 1.0
    return psi


def ghz():
    psi = np.zeros(8, dtype=complex)
    psi[0] = psi[7] = 1 / np.sqrt(2)
    return psi


def w():
    psi = np.zeros(8, dtype=complex)
    psi[[4, 2, 1]] = 1 / np.sqrt(3)
    return psi


def density_of(state, tol: Tolerances = DEFAULT_TOL):
    """Projector onto the ray of ``state`` (unnormalized input allowed)."""
    psi = normalize(state, tol)
    return np.outer(psi, psi.conj())


def check_density(rho, tol: Tolerances = DEFAULT_TOL):
    """Validate a density matrix and return it as a complex array.

    The error message names the violated invariant.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] not in (2, 4, 8):
        raise InvalidState(f"density must be square of size 2, 4 or 8, got {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > tol.hermitian:
        raise InvalidState(f"hermiticity violated: max |M - M^dag| = {herm:.3g}")
    tr = np.trace(rho).real
    if abs(tr - 1) > tol.trace:
        raise InvalidState(f"unit trace violated: trace = {tr:.15g}")
    lmin = np.linalg.eigvalsh(rho).min()
    if lmin < -tol.psd:
        raise InvalidState(f"positivity violated: smallest eigenvalue {lmin:.3g}")
    return rho


@dataclass(frozen=True)
class Ensemble:
    """Weighted ensemble of pure states, ``sum_j weights[j] |s_j><s_j|``.

    ``states`` holds one normalized ket per row.
    """

    weights: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        wts = np.asarray(self.weights, dtype=float).reshape(-1)
        sts = np.atleast_2d(np.asarray(self.states, dtype=complex))
        if sts.shape[0] != wts.shape[0]:
            raise BadWeights("number of weights and states differ")
        if wts.size == 0 or np.any(wts <= 0) or not np.all(np.isfinite(wts)):
            raise BadWeights("weights must be finite and strictly positive")
        if abs(wts.sum() - 1) > DEFAULT_TOL.weights:
            raise BadWeights(f"weights sum to {wts.sum():.15g}, not 1")
        sts = np.array([normalize(s) for s in sts])
        object.__setattr__(self, "weights", wts)
        object.__setattr__(self, "states", sts)

    @classmethod
    def from_pairs(cls, pairs):
        pairs = list(pairs)
        return cls([wt for wt, _ in pairs], [s for _, s in pairs])

    @classmethod
    def pruned(cls, weights, states, cutoff=DEFAULT_TOL.prune_weight):
        """Drop items with weight below ``cutoff`` and renormalize the rest."""
        weights = np.asarray(weights, dtype=float)
        keep = weights >= cutoff
        wts = weights[keep]
        return cls(wts / wts.sum(), np.asarray(states)[keep])

    def __len__(self):
        return self.weights.shape[0]

    def __iter__(self):
        return iter(zip(self.weights, self.states))


def mix(ensemble: Ensemble):
    sts = ensemble.states
    return np.einsum("j,ja,jb->ab", ensemble.weights, sts, sts.conj())


def partial_trace(rho, keep):
    """Reduced density matrix of the qubits in ``keep``.

    Parameters
    ----------
    rho : (8, 8) array
    keep : str or iterable of qubit labels
        Nonempty proper subset of {A, B, C}; the result is ordered A, B, C.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (8, 8):
        raise InvalidState("partial_trace expects an 8x8 density matrix")
    labels = [qubit_index(q) for q in keep]
    idx = sorted(set(labels))
    if len(idx) != len(labels) or not 0 < len(idx) < 3:
        raise BadSubset(f"keep must be a nonempty proper subset, got {keep!r}")
    letters = "abc"
    row = list(letters)
    col = list("def")
    for q in range(3):
        if q not in idx:
            col[q] = row[q]
    out = "".join(row[q] for q in idx) + "".join(col[q] for q in idx)
    sub = np.einsum("".join(row) + "".join(col) + "->" + out, rho.reshape((2,) * 6))
    d = 2 ** len(idx)
    return sub.reshape(d, d)


def inner(a, b):
    """<a|b> with the first argument conjugated."""
    return np.vdot(a, b)


@dataclass(frozen=True)
class Rank2State:
    """``p |ket1><ket1| + (1 - p) |ket2><ket2|`` with orthonormal kets."""

    ket1: np.ndarray
    ket2: np.ndarray
    p: float
    degenerate: bool = field(default=False, compare=False)

    def __post_init__(self):
        k1 = normalize(self.ket1)
        k2 = normalize(self.ket2)
        if k1.shape != k2.shape:
            raise InvalidState("kets must have the same dimension")
        ov = abs(inner(k1, k2))
        if ov > DEFAULT_TOL.orthogonal:
            raise NotOrthonormal(f"kets are not orthogonal: |<1|2>| = {ov:.3g}")
        p = float(self.p)
        if not -1e-12 <= p <= 1 + 1e-12:
            raise BadWeights(f"mixing weight p = {p} outside [0, 1]")
        object.__setattr__(self, "ket1", k1)
        object.__setattr__(self, "ket2", k2)
        object.__setattr__(self, "p", min(max(p, 0.0), 1.0))

    def density(self):
        return self.p * np.outer(self.ket1, self.ket1.conj()) + (1 - self.p) * np.outer(
            self.ket2, self.ket2.conj()
        )

    def as_ensemble(self):
        return Ensemble.pruned([self.p, 1 - self.p], [self.ket1, self.ket2], cutoff=1e-300)


def spectral_rank2(rho, tol: Tolerances = DEFAULT_TOL):
    """Eigen-form ``p|1><1| + (1-p)|2><2|`` of a density matrix of rank <= 2.

    The returned state is flagged ``degenerate`` when the two leading
    eigenvalues coincide or the second vanishes; the eigenbasis is then not
    unique and an arbitrary orthonormal choice is returned.
    """
    rho = check_density(rho, tol)
    evals, evecs = np.linalg.eigh(rho)
    order = np.argsort(evals)[::-1]
    evals, evecs = evals[order], evecs[:, order]
    if evals.shape[0] > 2 and evals[2] >= tol.rank:
        raise RankTooHigh(f"third eigenvalue {evals[2]:.3g} exceeds {tol.rank:.1g}")
    l1, l2 = evals[0], max(evals[1], 0.0)
    p = l1 / (l1 + l2)
    degenerate = bool(abs(l1 - l2) < tol.rank or l2 < tol.rank)
    return Rank2State(evecs[:, 0], evecs[:, 1], p, degenerate=degenerate)


def haar_ket(rng, dim=8):
    """Haar-random normalized ket."""
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def haar_unitary(rng, dim=2):
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
