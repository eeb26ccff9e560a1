"""Deterministic robustness margins for single-block uncertainty.

complex_margin: reciprocal of the boundary supremum of the largest singular
value of M(s) (the smallest destabilizing complex block).  real_margin: the
analogous real-block margin, using the second singular value of the
[[Re M, -g Im M], [g^-1 Im M, Re M]] matrix minimized over g in (0, 1], which
is unimodal in g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .indicators import Disk, HalfPlane, LtiPlant, PoleRegion

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
GAMMA_FLOOR = 1e-6  # search on log(gamma) in [log 1e-6, 0] to tame 1/gamma


class NominalInstabilityError(ValueError):
    pass


@dataclass
class MarginResult:
    value: float
    kind: str  # "complex" or "real"
    frequency_at_sup: float  # omega (half-plane) or boundary angle (disk)
    gamma_at_inf: float | None = None


def _boundary_points(region: PoleRegion, n_points: int, f_range=(1e-3, 1e3)):
    """Boundary parameters t and the map t -> s on the region boundary."""
    if isinstance(region, HalfPlane):
        omegas = np.concatenate(([0.0], np.geomspace(f_range[0], f_range[1], n_points - 1)))
        return omegas, lambda w: region.sigma_max + 1j * w
    thetas = np.linspace(0.0, math.pi, n_points)  # real data: conjugate symmetry
    return thetas, lambda th: region.radius * np.exp(1j * th)


def boundary_point(region: PoleRegion, t: float) -> complex:
    if isinstance(region, HalfPlane):
        return complex(region.sigma_max, t)
    return region.radius * complex(math.cos(t), math.sin(t))


def _check_nominal(plant: LtiPlant, region: PoleRegion) -> None:
    eigs = np.linalg.eigvals(plant.a_mat)
    if isinstance(region, HalfPlane):
        ok = np.all(eigs.real < region.sigma_max)
    else:
        ok = np.all(np.abs(eigs) < region.radius)
    if not ok:
        raise NominalInstabilityError("nominal poles are not inside the region")


def _golden_max(f, lo: float, hi: float, tol: float = 1e-10) -> tuple[float, float]:
    """Golden-section maximization on [lo, hi]; returns (argmax, max)."""
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol * max(1.0, abs(lo) + abs(hi)):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = f(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def _sigma_max(mat: np.ndarray) -> float:
    return float(np.linalg.norm(mat, ord=2))


def _real_block_sigma2(m_val: np.ndarray, gamma: float) -> float:
    re, im = m_val.real, m_val.imag
    block = np.block([[re, -gamma * im], [im / gamma, re]])
    return float(np.linalg.svd(block, compute_uv=False)[1])


def _real_objective(m_val: np.ndarray) -> tuple[float, float]:
    """inf over gamma in (0,1] of sigma_2 of the real block matrix."""
    if np.max(np.abs(m_val.imag)) < 1e-14:
        sv = np.linalg.svd(m_val.real, compute_uv=False)
        duplicated = np.sort(np.concatenate([sv, sv]))[::-1]
        return float(duplicated[1]), 1.0
    g, val = _golden_max(
        lambda lg: -_real_block_sigma2(m_val, math.exp(lg)),
        math.log(GAMMA_FLOOR),
        0.0,
        tol=1e-8,
    )
    return -val, math.exp(g)


def _sweep(plant, region, objective, n_points, f_range):
    ts, to_s = _boundary_points(region, n_points, f_range)
    vals = np.array([objective(plant.transfer_at(to_s(t))) for t in ts])
    best = int(np.argmax(vals))
    lo = ts[max(best - 1, 0)]
    hi = ts[min(best + 1, len(ts) - 1)]
    t_star, v_star = _golden_max(lambda t: objective(plant.transfer_at(to_s(t))), lo, hi)
    if vals[best] >= v_star:
        t_star, v_star = ts[best], vals[best]
    return float(t_star), float(v_star)


def complex_margin(
    plant: LtiPlant,
    region: PoleRegion,
    n_points: int = 2048,
    f_range=(1e-3, 1e3),
) -> MarginResult:
    """Smallest destabilizing complex-block size: 1 / sup over the region
    boundary of the largest singular value of M(s)."""
    _check_nominal(plant, region)
    t_star, sup = _sweep(plant, region, _sigma_max, n_points, f_range)
    if sup <= 0:
        raise ValueError("transfer matrix vanishes on the boundary sweep")
    return MarginResult(1.0 / sup, "complex", t_star)


def real_margin(
    plant: LtiPlant,
    region: PoleRegion,
    n_points: int = 2048,
    f_range=(1e-3, 1e3),
) -> MarginResult:
    """Smallest destabilizing real-block size via the second-singular-value
    criterion, minimized over the skew parameter at every boundary point."""
    _check_nominal(plant, region)
    t_star, sup = _sweep(
        plant, region, lambda m: _real_objective(m)[0], n_points, f_range
    )
    if sup <= 0:
        return MarginResult(math.inf, "real", t_star, 1.0)
    _, gamma = _real_objective(plant.transfer_at(boundary_point(region, t_star)))
    return MarginResult(1.0 / sup, "real", t_star, gamma)


def complex_margin_bruteforce(
    plant: LtiPlant,
    region: PoleRegion,
    n_points: int = 8192,
    f_range=(1e-3, 1e3),
) -> float:
    """Dense-grid oracle for the complex margin (no refinement step)."""
    _check_nominal(plant, region)
    ts, to_s = _boundary_points(region, n_points, f_range)
    sup = max(_sigma_max(plant.transfer_at(to_s(t))) for t in ts)
    return 1.0 / sup


def destabilizing_delta(
    plant: LtiPlant, region: PoleRegion, radius: float, n_points: int = 2048
) -> np.ndarray:
    """A complex block of spectral norm `radius`, aligned with the worst
    boundary point, that closes the loop det(I - M(s*) Delta) -> 0 when
    radius reaches the complex margin (and pushes an eigenvalue across the
    boundary slightly above it)."""
    res = complex_margin(plant, region, n_points)
    m_val = plant.transfer_at(boundary_point(region, res.frequency_at_sup))
    u, _, vh = np.linalg.svd(m_val)
    return radius * np.outer(vh[0].conj(), u[:, 0].conj())
