"""Bloch-ball coordinates of states supported on the span of two kets.

A state on span{|1>, |2>} is described by its 2x2 matrix ``sigma`` in that
basis. Family coordinates are

* ``p_axis`` -- weight ``sigma[0, 0]`` of |1> (0 is the |2> pole, 1 the |1> pole),
* ``azimuth`` -- phase such that the pure state ``sqrt(p)|1> - e^{i phi} sqrt(1-p)|2>``
  sits at azimuth ``phi``,
* ``radius`` -- transverse distance as a fraction of the largest one allowed
  at that height.

The Cartesian embedding is ``z = 2 p_axis - 1`` and
``x + i y = -2 sigma[1, 0] = radius * 2 sqrt(p(1-p)) e^{i azimuth}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL
from .errors import OutOfBall

TWO_PI = 2 * np.pi


@dataclass(frozen=True)
class FamilyPoint:
    p_axis: float
    azimuth: float = 0.0
    radius: float = 0.0

    def __post_init__(self):
        tol = DEFAULT_TOL.region
        p, r = float(self.p_axis), float(self.radius)
        if not (-tol <= p <= 1 + tol) or not (-tol <= r <= 1 + tol):
            raise OutOfBall(f"point (p={p}, radius={r}) lies outside the unit ball")
        object.__setattr__(self, "p_axis", min(max(p, 0.0), 1.0))
        object.__setattr__(self, "radius", min(max(r, 0.0), 1.0))
        az = float(self.azimuth) % TWO_PI
        object.__setattr__(self, "azimuth", 0.0 if az >= TWO_PI else az)

    @property
    def transverse(self):
        return self.radius * 2 * np.sqrt(self.p_axis * (1 - self.p_axis))

    def cartesian(self):
        t = self.transverse
        return np.array(
            [t * np.cos(self.azimuth), t * np.sin(self.azimuth), 2 * self.p_axis - 1]
        )


def point_from_cartesian(xyz, tol=DEFAULT_TOL.region):
    x, y, z = map(float, xyz)
    if x * x + y * y + z * z > (1 + tol) ** 2:
        raise OutOfBall(f"|r| = {np.sqrt(x * x + y * y + z * z):.12g} > 1")
    p = (z + 1) / 2
    t = np.hypot(x, y)
    tmax = 2 * np.sqrt(max(p * (1 - p), 0.0))
    radius = t / tmax if tmax > 0 else 0.0
    if radius > 1 + tol:
        raise OutOfBall(f"transverse radius {radius:.12g} > 1")
    return FamilyPoint(p, np.arctan2(y, x) if t > 0 else 0.0, min(radius, 1.0))


def point_from_sigma(sigma):
    """Family coordinates of a 2x2 density matrix in the (|1>, |2>) basis."""
    sigma = np.asarray(sigma, dtype=complex)
    c = -2 * sigma[1, 0]
    return point_from_cartesian([c.real, c.imag, 2 * sigma[0, 0].real - 1])


def point_from_amplitudes(c1, c2):
    """Coordinates of the pure state ``c1|1> + c2|2>`` (normalized internally)."""
    v = np.array([c1, c2], dtype=complex)
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise OutOfBall("zero vector has no Bloch point")
    v = v / nrm
    p = abs(v[0]) ** 2
    if p * (1 - p) <= 0:
        return FamilyPoint(round(p), 0.0, 1.0)
    s21 = v[1] * np.conj(v[0])
    return FamilyPoint(p, np.angle(-s21), 1.0)


def sigma_from_point(pt: FamilyPoint):
    c = pt.transverse * np.exp(1j * pt.azimuth)
    s21 = -c / 2
    return np.array([[pt.p_axis, np.conj(s21)], [s21, 1 - pt.p_axis]], dtype=complex)


def amplitudes_of_point(pt: FamilyPoint):
    """Amplitudes on (|1>, |2>) of the pure state at a sphere point."""
    return np.array(
        [np.sqrt(pt.p_axis), -np.exp(1j * pt.azimuth) * np.sqrt(1 - pt.p_axis)]
    )


def convex_weights(points, x, tol=DEFAULT_TOL.hull):
    """Barycentric weights expressing ``x`` as a convex combination of ``points``.

    Every affinely independent subset of at most four points is tried
    (Caratheodory in 3-D), so hulls of any affine dimension 0-3 are handled.

    Returns
    -------
    weights : ndarray or None
        One weight per input point (zeros outside the chosen subset), or
        ``None`` when ``x`` is farther than ``tol`` from the hull.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    x = np.asarray(x, dtype=float)
    k = pts.shape[0]
    best = None
    for size in range(1, min(k, 4) + 1):
        for sub in itertools.combinations(range(k), size):
            a = np.vstack([pts[list(sub)].T, np.ones(size)])
            b = np.append(x, 1.0)
            lam, *_ = np.linalg.lstsq(a, b, rcond=None)
            resid = np.linalg.norm(a @ lam - b)
            if resid > tol or lam.min() < -tol:
                continue
            lam = np.clip(lam, 0, None)
            lam /= lam.sum()
            score = np.linalg.norm(pts[list(sub)].T @ lam - x)
            if best is None or score < best[0]:
                best = (score, sub, lam)
        if best is not None and best[0] <= 1e-14:
            break
    if best is None:
        return None
    out = np.zeros(k)
    out[list(best[1])] = best[2]
    return out
