"""Run-length-encoded step functions over grid indices 1..m.

A SegFun stores maximal runs (lo, hi, value) that tile [1, m].  Values are
integer counts, so merging (pointwise addition) is exact; averaging happens
only when a curve is built from the merged counts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class IncompatibleDomainError(ValueError):
    pass


@dataclass
class MergeCostCounter:
    """Accumulates the number of input rows consumed across merge calls."""

    row_visits: int = 0


@dataclass(frozen=True)
class SegFun:
    m: int
    lo: np.ndarray
    hi: np.ndarray
    value: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=np.int64)
        hi = np.asarray(self.hi, dtype=np.int64)
        value = np.asarray(self.value, dtype=np.int64)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "value", value)
        if not (lo.size == hi.size == value.size) or lo.size == 0:
            raise ValueError("lo/hi/value must be equal-length, non-empty")
        if lo[0] != 1 or hi[-1] != self.m:
            raise ValueError("rows must cover [1, m] exactly")
        if lo.size > 1:
            if np.any(lo[1:] != hi[:-1] + 1):
                raise ValueError("rows must be contiguous")
            if np.any(value[1:] == value[:-1]):
                raise ValueError("adjacent rows must differ (maximal runs)")
        if np.any(lo > hi):
            raise ValueError("each row needs lo <= hi")
        if np.any(value < 0):
            raise ValueError("values must be non-negative counts")

    @classmethod
    def from_rows(cls, m: int, rows) -> "SegFun":
        lo, hi, value = (np.asarray(col, dtype=np.int64) for col in zip(*rows))
        return cls(m, lo, hi, value)

    @classmethod
    def constant(cls, m: int, value: int) -> "SegFun":
        return cls(m, np.array([1]), np.array([m]), np.array([value]))

    @property
    def rows(self) -> list[tuple[int, int, int]]:
        return [tuple(map(int, t)) for t in zip(self.lo, self.hi, self.value)]

    @property
    def row_count(self) -> int:
        return int(self.lo.size)

    def eval(self, i: int) -> int:
        """Value of the run containing index i."""
        if not 1 <= i <= self.m:
            raise IndexError(f"index {i} outside [1, {self.m}]")
        pos = int(np.searchsorted(self.lo, i, side="right")) - 1
        return int(self.value[pos])

    def dense(self) -> np.ndarray:
        """The full length-m array of values (1-based index i at slot i-1)."""
        return np.repeat(self.value, self.hi - self.lo + 1)


def merge(d: SegFun, h: SegFun, counter: MergeCostCounter | None = None) -> SegFun:
    """Run-length encoding of the pointwise sum f_d + f_h, coalesced to
    maximal runs.  Cost is charged as rows(d) + rows(h)."""
    if d.m != h.m:
        raise IncompatibleDomainError(f"domains differ: {d.m} vs {h.m}")
    if counter is not None:
        counter.row_visits += d.row_count + h.row_count
    cuts = np.union1d(d.lo, h.lo)
    vals = (
        d.value[np.searchsorted(d.lo, cuts, side="right") - 1]
        + h.value[np.searchsorted(h.lo, cuts, side="right") - 1]
    )
    keep = np.empty(vals.size, dtype=bool)
    keep[0] = True
    np.not_equal(vals[1:], vals[:-1], out=keep[1:])
    lo = cuts[keep]
    value = vals[keep]
    hi = np.append(lo[1:] - 1, d.m)
    return SegFun(d.m, lo, hi, value)
