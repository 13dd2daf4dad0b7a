"""Numerical tolerances shared by every module.

Kink-adjacent computations (zeros of the 3-tangle, region boundaries of the
Bloch-ball roof) need individually tunable knobs, so they live in one record.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    norm: float = 1e-12
    zero_norm: float = 1e-14
    hermitian: float = 1e-12
    trace: float = 1e-12
    psd: float = 1e-10
    weights: float = 1e-10
    orthogonal: float = 1e-10
    rank: float = 1e-9
    reconstruct: float = 1e-9
    tangle_clamp: float = 1e-12
    region: float = 1e-9
    hull: float = 1e-9
    leading_coeff: float = 1e-12
    root_merge: float = 1e-6
    family: float = 1e-10
    spinflip_clamp: float = 1e-10
    prune_weight: float = 1e-12
    ckw: float = 1e-8


DEFAULT_TOL = Tolerances()
