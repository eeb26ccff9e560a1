"""Radial sampling and the sequential / hierarchical sample-reuse algorithms.

One directional sample per stream pair: direction k draws its surface point
from stream 2k and its radii from stream 2k+1 of the master seed, so results
are identical whatever order directions are evaluated or merged in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .gridspec import GridScheme, RadiusGrid, locate, predict_meq
from .segfun import MergeCostCounter, SegFun, merge
from .uncsample import (
    BlockShape,
    DirectionSample,
    NormKind,
    SeededStream,
    _as_generator,
    sample_surface,
    scale,
)


class CorruptedInputError(ValueError):
    pass


class OutOfRangeError(ValueError):
    pass


@dataclass
class RadialSampleRun:
    """Indicator values along one direction, encoded over grid indices."""

    direction_index: int
    segments: SegFun
    simulations_used: int
    radii_by_index: np.ndarray | None = None


@dataclass
class RobustnessCurve:
    grid: RadiusGrid
    kind: str  # "script_p" (surface-radial measure) or "bb_p" (ball-uniform)
    values: np.ndarray
    inf_values: np.ndarray
    n_samples: int


@dataclass
class ComplexityReport:
    n_samples: int
    m: int
    total_simulations: int
    measured_meq: float
    merge_row_visits: int
    predicted_meq: float
    predicted_speedup: float
    tau: int
    group_sizes: list[int] = field(default_factory=list)
    simulations_std: float = 0.0


def radial_sampling(
    u: DirectionSample,
    g: RadiusGrid,
    indicator,
    rng,
    direction_index: int = 0,
    record_radii: bool = False,
) -> RadialSampleRun:
    """Backward sweep over the grid: draw R ~ U[0, r_p], evaluate the
    indicator at U*R, reuse the outcome for every index j with r_j >= R,
    then continue below the located index.

    The value stored at index i is the indicator at a radius distributed
    uniformly on [0, r_i].
    """
    gen = _as_generator(rng)
    rows: list[list[int]] = []  # built back-to-front; rows[-1] is the first row
    radii = np.empty(g.m) if record_radii else None
    sims = 0
    p = g.m
    s = -1
    while p > 0:
        radius = gen.uniform(0.0, g.radii[p - 1])
        try:
            val = int(indicator(scale(u, radius)))
        except Exception as exc:
            if hasattr(exc, "add_note"):
                exc.add_note(
                    f"indicator failed on direction {direction_index} at radius {radius}"
                )
            raise
        sims += 1
        j = locate(g, radius)
        if record_radii:
            radii[j - 1 : p] = radius
        if rows and val == s:
            rows[-1][0] = j
        else:
            rows.append([j, p, val])
            s = val
        p = j - 1
    rows.reverse()
    seg = SegFun.from_rows(g.m, rows)
    return RadialSampleRun(direction_index, seg, sims, radii)


def _direction_run(k, grid, indicator, d, norm_kind, seed, shape):
    u = sample_surface(d, norm_kind, SeededStream(seed, 2 * k), shape)
    return radial_sampling(u, grid, indicator, SeededStream(seed, 2 * k + 1), k)


def binary_decomposition(n: int) -> list[int]:
    """Powers of two summing to n, ascending (1000 -> [8, 32, 64, 128, 256, 512])."""
    return [1 << b for b in range(n.bit_length()) if n >> b & 1]


def predicted_speedup(n: int) -> float:
    """Merge-cost ratio of the sequential fold over the hierarchical schedule,
    from the row-count model with a common mean leaf row count."""
    if n < 2:
        return 1.0
    groups = binary_decomposition(n)
    tau = len(groups)
    hier = sum(g * math.log2(g) for g in groups)
    hier += sum((tau - ell) * g for ell, g in enumerate(groups, start=1))
    hier += sum(groups) - groups[0]
    if hier <= 0:
        return 1.0
    return (n + 2) * (n - 1) / (2 * hier)


def _report(grid, runs, counter, algo_speedup_n):
    sims = np.array([r.simulations_used for r in runs])
    total = int(sims.sum())
    groups = binary_decomposition(len(runs))
    return ComplexityReport(
        n_samples=len(runs),
        m=grid.m,
        total_simulations=total,
        measured_meq=total / len(runs),
        merge_row_visits=counter.row_visits,
        predicted_meq=predict_meq(grid.scheme, grid.lam, grid.m),
        predicted_speedup=predicted_speedup(algo_speedup_n),
        tau=len(groups),
        group_sizes=groups,
        simulations_std=float(sims.std(ddof=1)) if len(runs) > 1 else 0.0,
    )


def ssra(
    n_samples: int,
    grid: RadiusGrid,
    indicator,
    d: int,
    norm_kind: NormKind = NormKind.L2,
    seed: int = 0,
    shape: BlockShape | None = None,
) -> tuple[SegFun, ComplexityReport]:
    """Sequential sample reuse: fold each direction's run into the running sum."""
    if n_samples < 1:
        raise ValueError("need at least one direction")
    counter = MergeCostCounter()
    runs = []
    h = None
    for k in range(1, n_samples + 1):
        run = _direction_run(k, grid, indicator, d, norm_kind, seed, shape)
        runs.append(run)
        h = run.segments if h is None else merge(run.segments, h, counter)
    return h, _report(grid, runs, counter, n_samples)


def hsra(
    n_samples: int,
    grid: RadiusGrid,
    indicator,
    d: int,
    norm_kind: NormKind = NormKind.L2,
    seed: int = 0,
    shape: BlockShape | None = None,
) -> tuple[SegFun, ComplexityReport]:
    """Hierarchical sample reuse: split the sample count into powers of two,
    reduce each group by a balanced binary merge tree, then fold the group
    results, smallest group first.  Produces the same counts as ssra."""
    if n_samples < 1:
        raise ValueError("need at least one direction")
    counter = MergeCostCounter()
    runs = []
    next_k = 1
    group_results = []
    for size in binary_decomposition(n_samples):
        level = []
        for k in range(next_k, next_k + size):
            run = _direction_run(k, grid, indicator, d, norm_kind, seed, shape)
            runs.append(run)
            level.append(run.segments)
        next_k += size
        while len(level) > 1:
            level = [
                merge(level[i], level[i + 1], counter) for i in range(0, len(level), 2)
            ]
        group_results.append(level[0])
    h = group_results[0]
    for seg in group_results[1:]:
        h = merge(h, seg, counter)
    return h, _report(grid, runs, counter, n_samples)


def chernoff_n(eps: float, delta: float) -> int:
    """Smallest sample size exceeding ln(2/delta) / (2 eps^2)."""
    if not (0 < eps < 1 and 0 < delta < 1):
        raise OutOfRangeError("eps and delta must lie in (0,1)")
    return math.floor(math.log(2.0 / delta) / (2.0 * eps * eps)) + 1


def estimate_curve(h: SegFun, n_samples: int, grid: RadiusGrid) -> RobustnessCurve:
    """Per-grid-point success frequencies f_H(i)/N with their running infimum."""
    if h.m != grid.m:
        raise CorruptedInputError("segment domain does not match the grid")
    counts = h.dense()
    if np.any(counts > n_samples):
        raise CorruptedInputError("counts exceed the sample size")
    values = counts / n_samples
    return RobustnessCurve(
        grid=grid,
        kind="script_p",
        values=values,
        inf_values=np.minimum.accumulate(values),
        n_samples=n_samples,
    )


def interpolate(curve: RobustnessCurve, r: float) -> float:
    """Linear interpolation of the curve between its grid knots."""
    radii = curve.grid.radii
    if r < radii[0] or r > radii[-1]:
        raise OutOfRangeError(f"radius {r} outside [{radii[0]}, {radii[-1]}]")
    return float(np.interp(r, radii, curve.values))
