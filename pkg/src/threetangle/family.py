"""Closed-form results for mixtures and superpositions of GHZ and W.

``rho_p(p) = p |GHZ><GHZ| + (1 - p) |W><W|`` and
``|Z(p, phi)> = sqrt(p) |GHZ> - e^{i phi} sqrt(1 - p) |W>``. The 3-tangle
convex roof along the mixture axis is piecewise: zero up to ``p0``, the
three-state ensemble value ``g1`` up to ``p1`` and the straight line ``g2``
tangent to ``g1`` at ``p1`` from there to the GHZ pole.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import (
    FamilyPoint,
    convex_weights,
    point_from_amplitudes,
    point_from_sigma,
    sigma_from_point,
)
from .config import DEFAULT_TOL
from .errors import DomainError
from .states import Ensemble, ghz, w

CBRT2 = 2 ** (1 / 3)
P0 = 4 * CBRT2 / (3 + 4 * CBRT2)
P1 = 0.5 + 3 / 310 * np.sqrt(465)
PC = 7 - np.sqrt(45)
SLOPE = 1.5 + np.sqrt(465) / 18
_Z_COEF = 8 * np.sqrt(6) / 9
_THIRDS = 2 * np.pi / 3 * np.arange(3)


@dataclass(frozen=True)
class FamilyConstants:
    p0: float
    p1: float
    pC: float
    slope: float


def constants():
    return FamilyConstants(P0, P1, PC, SLOPE)


def z_state(p, phi):
    return np.sqrt(p) * ghz() - np.exp(1j * phi) * np.sqrt(1 - p) * w()


def tangle_z(p, phi):
    """3-tangle of ``Z(p, phi)``; periodic in ``phi`` with period 2 pi / 3."""
    return abs(p * p - _Z_COEF * np.sqrt(p * (1 - p) ** 3) * np.exp(3j * phi))


def rho_p(p):
    g, v = ghz(), w()
    return p * np.outer(g, g.conj()) + (1 - p) * np.outer(v, v.conj())


def g1(p):
    """Average 3-tangle of the three-state ensemble ``Z(p, 2 pi j / 3)``.

    Only defined for ``p >= p0``; below that the expression goes negative.
    """
    if p < P0 - 1e-12 or p > 1:
        raise DomainError(f"g1 is defined on [p0, 1], got p = {p}")
    p = max(p, P0)
    return p * p - _Z_COEF * np.sqrt(p * (1 - p) ** 3)


def g2(p):
    return 1 - (1 - p) * SLOPE


@dataclass(frozen=True)
class RoofValue:
    value: float | None
    region: str | None

    def __post_init__(self):
        if self.value is not None:
            object.__setattr__(self, "value", float(self.value))

    @property
    def known(self):
        return self.value is not None

    @property
    def kind(self):
        return "Known" if self.known else "Unknown"


UNKNOWN = RoofValue(None, None)


def roof_tau3_axis(p):
    """Convex roof of the 3-tangle of ``rho_p(p)``."""
    if p <= P0:
        return RoofValue(0.0, "S0")
    if p <= P1:
        return RoofValue(max(g1(p), 0.0), "Leaf")
    return RoofValue(g2(p), "S1")


def optimal_decomposition(p):
    """Ensemble of ``rho_p(p)`` whose average 3-tangle equals the roof."""
    if p <= P0:
        t = p / P0
        weights = [t / 3] * 3 + [1 - t]
        states = [z_state(P0, phi) for phi in _THIRDS] + [w()]
    elif p <= P1:
        weights = [1 / 3] * 3
        states = [z_state(p, phi) for phi in _THIRDS]
    else:
        b = (1 - p) / (1 - P1)
        weights = [1 - b] + [b / 3] * 3
        states = [ghz()] + [z_state(P1, phi) for phi in _THIRDS]
    return Ensemble.pruned(weights, states, cutoff=1e-300)


def family_point_of_state(coeff_ghz, coeff_w):
    """Bloch-ball point of ``coeff_ghz |GHZ> + coeff_w |W>``."""
    return point_from_amplitudes(coeff_ghz, coeff_w)


def density_of_point(pt: FamilyPoint):
    """8x8 density matrix at a point of the GHZ/W Bloch ball."""
    basis = np.array([ghz(), w()])
    return basis.T @ sigma_from_point(pt) @ basis.conj()


def point_of_density(rho):
    """Inverse of :func:`density_of_point` for states on span{GHZ, W}."""
    basis = np.array([ghz(), w()])
    sigma = basis.conj() @ np.asarray(rho) @ basis.T
    return point_from_sigma(sigma)


def _sphere(p, phi):
    return FamilyPoint(p, phi, 1.0).cartesian()


_S0 = np.array([[0.0, 0.0, -1.0]] + [_sphere(P0, phi) for phi in _THIRDS])
_S1 = np.array([[0.0, 0.0, 1.0]] + [_sphere(P1, phi) for phi in _THIRDS])


def roof_tau3_bloch(pt: FamilyPoint, include_pure=False, tol=DEFAULT_TOL.region):
    """3-tangle roof at a point of the GHZ/W Bloch ball where it is known.

    Regions are tried in order of increasing roof value, so a point within
    ``tol`` of a shared boundary gets the smaller value. Outside the zero
    simplex, the leaves and the upper simplex the roof is not known and
    ``UNKNOWN`` is returned; with ``include_pure`` sphere points report their
    own pure-state tangle instead.
    """
    x = pt.cartesian()
    if convex_weights(_S0, x, tol) is not None:
        return RoofValue(0.0, "S0")
    h = pt.p_axis
    if P0 - tol <= h <= P1 + tol:
        hc = min(max(h, P0), P1)
        leaf = np.array([_sphere(h, phi) for phi in _THIRDS])
        if convex_weights(leaf, x, tol) is not None:
            return RoofValue(max(g1(hc), 0.0), "Leaf")
    if convex_weights(_S1, x, tol) is not None:
        alpha = (1 - h) / (1 - P1)
        beta = (h - P1) / (1 - P1)
        return RoofValue(alpha * g2(P1) + beta, "S1")
    if include_pure and pt.radius >= 1 - tol:
        return RoofValue(tangle_z(h, pt.azimuth), "Pure")
    return UNKNOWN


def concurrence_sum_family(p):
    """``C(rho_AB)^2 + C(rho_AC)^2`` of ``rho_p(p)``."""
    return 2 * max(0.0, 2 / 3 * (1 - p) - np.sqrt(p * (2 + p) / 3)) ** 2


def min_one_tangle_family(p):
    """Roofed 1-tangle of qubit A in ``rho_p(p)``."""
    return (5 * p * p - 4 * p + 8) / 9
