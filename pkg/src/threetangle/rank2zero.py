"""Decide whether a rank-2 three-qubit state has vanishing 3-tangle.

On the span of two kets the hyperdeterminant of ``|1> + z|2>`` is a
polynomial of degree at most four in ``z``. Its roots (plus the |2> pole for
every missing power) are the pure zero-tangle states of the span; a mixed
state on the span has zero 3-tangle iff its Bloch point lies in their convex
hull.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bloch import FamilyPoint, convex_weights, point_from_amplitudes, point_from_sigma
from .config import DEFAULT_TOL, Tolerances
from .errors import DegenerateAllZero
from .measures import HYPERDET_TERMS
from .states import Ensemble, Rank2State, as_ket, normalize


@dataclass(frozen=True)
class TanglePolynomial:
    """``P(z) = sum_k coeffs[k] z**k`` equal to ``d1 - 2 d2 + 4 d3`` of ``|1> + z|2>``."""

    coeffs: np.ndarray

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def derivative(self, z):
        return np.polynomial.polynomial.polyval(
            z, np.polynomial.polynomial.polyder(self.coeffs)
        )

    def backward_error(self, z):
        """``|P(z)| / sum_k |c_k| |z|^k``."""
        denom = np.polynomial.polynomial.polyval(abs(z), np.abs(self.coeffs))
        return abs(self(z)) / denom if denom > 0 else 0.0

    def degree(self, tol: Tolerances = DEFAULT_TOL):
        scale = np.abs(self.coeffs).max()
        if scale == 0:
            return -1
        big = np.nonzero(np.abs(self.coeffs) > tol.leading_coeff * scale)[0]
        return int(big.max())


def tangle_polynomial(ket1, ket2):
    """Expand ``d1 - 2 d2 + 4 d3`` of ``ket1 + z ket2`` in powers of ``z``."""
    a = as_ket(ket1, 8)
    b = as_ket(ket2, 8)
    coeffs = np.zeros(5, dtype=complex)
    for coef, idx in HYPERDET_TERMS:
        poly = np.array([1 + 0j])
        for i in idx:
            poly = np.convolve(poly, [a[i], b[i]])
        coeffs += coef * poly
    return TanglePolynomial(coeffs)


@dataclass(frozen=True)
class ZeroSet:
    roots: list  # (root, multiplicity) pairs
    infinity_multiplicity: int
    degenerate_all_zero: bool = False

    @property
    def total_multiplicity(self):
        return sum(mult for _, mult in self.roots) + self.infinity_multiplicity

    @property
    def repeated(self):
        return self.infinity_multiplicity > 1 or any(mult > 1 for _, mult in self.roots)


# coefficient vectors this small are treated as the zero polynomial
_ZERO_POLY = 1e-13


def polynomial_roots(poly: TanglePolynomial, tol: Tolerances = DEFAULT_TOL) -> ZeroSet:
    """Roots of the tangle polynomial via the companion matrix.

    Each eigenvalue gets one Newton step; coefficients of the top powers
    below ``tol.leading_coeff`` relative to the largest are dropped and
    counted as roots at infinity. Nearby roots are merged into one root with
    multiplicity.
    """
    c = np.asarray(poly.coeffs, dtype=complex)
    if np.abs(c).max() < _ZERO_POLY:
        return ZeroSet([], 0, degenerate_all_zero=True)
    deg = poly.degree(tol)
    if deg == 0:
        return ZeroSet([], 4)
    monic = c[:deg] / c[deg]
    comp = np.zeros((deg, deg), dtype=complex)
    comp[1:, :-1] = np.eye(deg - 1)
    comp[:, -1] = -monic
    raw = np.linalg.eigvals(comp)

    trunc = TanglePolynomial(c[: deg + 1])
    polished = []
    for z in raw:
        dp = trunc.derivative(z)
        if abs(dp) > 1e-12 * max(1.0, abs(z)) ** deg:
            z_new = z - trunc(z) / dp
            if abs(trunc(z_new)) <= abs(trunc(z)):
                z = z_new
        polished.append(complex(z))

    clusters = []
    for z in polished:
        for cl in clusters:
            if abs(cl[0] - z) <= tol.root_merge * (1 + abs(z)):
                cl[1].append(z)
                break
        else:
            clusters.append([z, [z]])
    roots = [(complex(np.mean(members)), len(members)) for _, members in clusters]
    return ZeroSet(roots, 4 - deg)


@dataclass(frozen=True)
class ZeroSimplex:
    vertices: list  # FamilyPoint per distinct zero state
    kets: np.ndarray  # normalized zero-tangle kets, one per row
    dimension: int
    zeros: ZeroSet
    polynomial: TanglePolynomial = field(repr=False)

    def cartesian(self):
        return np.array([v.cartesian() for v in self.vertices])


def _affine_dimension(pts, tol=1e-9):
    if len(pts) <= 1:
        return 0
    diffs = pts[1:] - pts[0]
    return int(np.linalg.matrix_rank(diffs, tol=tol))


def zero_simplex_in_span(ket1, ket2, tol: Tolerances = DEFAULT_TOL) -> ZeroSimplex:
    ket1 = normalize(ket1)
    ket2 = normalize(ket2)
    poly = tangle_polynomial(ket1, ket2)
    zeros = polynomial_roots(poly, tol)
    if zeros.degenerate_all_zero:
        raise DegenerateAllZero("3-tangle vanishes on the whole span")
    verts, kets = [], []
    for z, _ in zeros.roots:
        verts.append(point_from_amplitudes(1.0, z))
        kets.append(normalize(ket1 + z * ket2))
    if zeros.infinity_multiplicity:
        verts.append(FamilyPoint(0.0, 0.0, 1.0))
        kets.append(ket2)
    cart = np.array([v.cartesian() for v in verts])
    return ZeroSimplex(verts, np.array(kets), _affine_dimension(cart), zeros, poly)


def zero_simplex(state: Rank2State, tol: Tolerances = DEFAULT_TOL) -> ZeroSimplex:
    """Zero-tangle simplex in the Bloch ball of ``span(state.ket1, state.ket2)``.

    Raises
    ------
    DegenerateAllZero
        If every state in the span has zero 3-tangle.
    """
    return zero_simplex_in_span(state.ket1, state.ket2, tol)


@dataclass(frozen=True)
class ZeroDecision:
    vanishes: bool
    witness: Ensemble | None = None
    boundary: bool = False
    all_zero: bool = False
    simplex: ZeroSimplex | None = field(default=None, repr=False)


def has_vanishing_tangle_in_span(ket1, ket2, sigma, tol: Tolerances = DEFAULT_TOL):
    """Decision for the state with 2x2 matrix ``sigma`` in the (ket1, ket2) basis.

    ``ket1`` and ``ket2`` must be orthonormal but need not diagonalize the
    state, which makes the decision checkable for basis covariance.
    """
    ket1 = normalize(ket1)
    ket2 = normalize(ket2)
    sigma = np.asarray(sigma, dtype=complex)
    try:
        simplex = zero_simplex_in_span(ket1, ket2, tol)
    except DegenerateAllZero:
        evals, evecs = np.linalg.eigh(sigma)
        kets = [evecs[0, j] * ket1 + evecs[1, j] * ket2 for j in range(2)]
        witness = Ensemble.pruned(np.clip(evals, 0, None), kets, cutoff=1e-15)
        return ZeroDecision(True, witness, all_zero=True)
    target = point_from_sigma(sigma).cartesian()
    weights = convex_weights(simplex.cartesian(), target, tol.hull)
    if weights is None:
        return ZeroDecision(False, simplex=simplex)
    boundary = simplex.dimension < 3 or bool(weights.min() < tol.hull)
    witness = Ensemble.pruned(weights, simplex.kets, cutoff=1e-15)
    return ZeroDecision(True, witness, boundary=boundary, simplex=simplex)


def has_vanishing_tangle(state: Rank2State, tol: Tolerances = DEFAULT_TOL) -> ZeroDecision:
    """Whether ``state`` lies in its zero simplex, with a witness ensemble if so."""
    sigma = np.diag([state.p, 1 - state.p]).astype(complex)
    return has_vanishing_tangle_in_span(state.ket1, state.ket2, sigma, tol)
