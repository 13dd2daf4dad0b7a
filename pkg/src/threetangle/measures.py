"""Pure-state entanglement measures: concurrence, 3-tangle and 1-tangle."""

from __future__ import annotations

import numpy as np

from .config import DEFAULT_TOL
from .errors import InvalidState
from .states import as_ket, density_of, partial_trace, qubit_index


def _idx(bits):
    return int(bits, 2)


# d1 - 2 d2 + 4 d3 as a list of (coefficient, four flat indices).
HYPERDET_TERMS = tuple(
    [(1, tuple(map(_idx, t))) for t in (
        ("000", "000", "111", "111"),
        ("001", "001", "110", "110"),
        ("010", "010", "101", "101"),
        ("100", "100", "011", "011"),
    )]
    + [(-2, tuple(map(_idx, t))) for t in (
        ("000", "111", "011", "100"),
        ("000", "111", "101", "010"),
        ("000", "111", "110", "001"),
        ("011", "100", "101", "010"),
        ("011", "100", "110", "001"),
        ("101", "010", "110", "001"),
    )]
    + [(4, tuple(map(_idx, t))) for t in (
        ("000", "110", "101", "011"),
        ("111", "001", "010", "100"),
    )]
)


def hyperdet(psi):
    """Cayley hyperdeterminant combination ``d1 - 2 d2 + 4 d3``.

    Homogeneous of degree 4 in the amplitudes; no normalization is applied.
    """
    psi = as_ket(psi, 8)
    total = 0j
    for coef, (a, b, c, d) in HYPERDET_TERMS:
        total += coef * psi[a] * psi[b] * psi[c] * psi[d]
    return total


def tangle_form(psi):
    """``4 |d1 - 2 d2 + 4 d3|`` of an unnormalized ket.

    Scales as ``|c|**4`` under ``psi -> c psi``; equals the 3-tangle only for
    unit-norm input.
    """
    return 4 * abs(hyperdet(psi))


def _require_unit(psi):
    nrm2 = np.vdot(psi, psi).real
    if abs(nrm2 - 1) > 1e-10:
        raise InvalidState(f"expected a unit-norm ket, got norm^2 = {nrm2:.15g}")


def _clamp(x):
    if -DEFAULT_TOL.tangle_clamp < x < 0:
        return 0.0
    return float(x)


def concurrence_pure(phi):
    """Concurrence ``2 |phi00 phi11 - phi01 phi10|`` of a two-qubit ket."""
    phi = as_ket(phi, 4)
    _require_unit(phi)
    return 2 * abs(phi[0] * phi[3] - phi[1] * phi[2])


def three_tangle(psi):
    psi = as_ket(psi, 8)
    _require_unit(psi)
    return tangle_form(psi)


def one_tangle(psi, which="A"):
    """``4 det(rho_X)`` for the single-qubit marginal of qubit ``which``."""
    psi = as_ket(psi, 8)
    _require_unit(psi)
    r = partial_trace(np.outer(psi, psi.conj()), [qubit_index(which)])
    return _clamp((4 * (r[0, 0] * r[1, 1] - r[0, 1] * r[1, 0])).real)


def monogamy_residual(psi, which="A"):
    """``4 det(rho_X) - C(rho_XY)^2 - C(rho_XZ)^2 - tau3`` for a pure state.

    Vanishes identically for every pure three-qubit state.
    """
    from .ckw import wootters_concurrence

    psi = as_ket(psi, 8)
    _require_unit(psi)
    focus = qubit_index(which)
    rho = density_of(psi)
    others = [q for q in range(3) if q != focus]
    csq = sum(
        wootters_concurrence(partial_trace(rho, sorted([focus, q]))) ** 2 for q in others
    )
    return one_tangle(psi, focus) - csq - three_tangle(psi)
