# src/box.py
import numpy as np

from src.interval import Interval, InvalidIntervalError, width


class Box:
    """
    An n-dimensional region, one closed interval per variable.

    `lo` and `hi` have shape (..., n); a leading batch axis holds many boxes
    at once (the children of one partition, for instance).
    """
    __slots__ = ("lo", "hi", "rounding")

    def __init__(self, lo, hi, rounding=None):
        lo = np.atleast_1d(np.asarray(lo, dtype=np.float64))
        hi = np.atleast_1d(np.asarray(hi, dtype=np.float64))
        if lo.shape != hi.shape:
            raise InvalidIntervalError(f"Box bounds have different shapes: {lo.shape} vs {hi.shape}")
        if np.isnan(lo).any() or np.isnan(hi).any():
            raise InvalidIntervalError("Box bounds cannot be NaN")
        if (lo > hi).any():
            raise InvalidIntervalError("Box lower bound exceeds upper bound")
        self.lo = lo
        self.hi = hi
        self.rounding = rounding

    @classmethod
    def uniform(cls, lower, upper, n, rounding=None):
        return cls(np.full(n, lower, dtype=np.float64), np.full(n, upper, dtype=np.float64), rounding)

    @classmethod
    def from_point(cls, x, rounding=None):
        x = np.asarray(x, dtype=np.float64)
        if not np.isfinite(x).all():
            raise InvalidIntervalError("Point boxes need finite coordinates")
        return cls(x, x.copy(), rounding)

    @property
    def n(self) -> int:
        return self.lo.shape[-1]

    @property
    def batched(self) -> bool:
        return self.lo.ndim > 1

    def __len__(self):
        return self.lo.shape[0] if self.batched else 1

    def __getitem__(self, key):
        return Box(self.lo[key], self.hi[key], self.rounding)

    def __eq__(self, other):
        if not isinstance(other, Box):
            return NotImplemented
        return np.array_equal(self.lo, other.lo) and np.array_equal(self.hi, other.hi)

    def __repr__(self):
        if self.batched:
            return f"Box(count={len(self)}, n={self.n})"
        return f"Box({self.to_pairs()!r})"

    def intervals(self) -> Interval:
        return Interval._raw(self.lo, self.hi, self.rounding)

    def column(self, i) -> Interval:
        return Interval._raw(self.lo[..., i], self.hi[..., i], self.rounding)

    def widths(self):
        return width(self.intervals())

    def max_width(self):
        return np.max(self.widths(), axis=-1)

    def contains_point(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.all((self.lo <= x) & (x <= self.hi), axis=-1)

    def intersects(self, other) -> bool:
        """Closed boxes share at least one point."""
        return bool(np.all((self.lo <= other.hi) & (other.lo <= self.hi)))

    def contains_box(self, other) -> bool:
        return bool(np.all(self.lo <= other.lo) and np.all(other.hi <= self.hi))

    def to_pairs(self):
        return [[float(a), float(b)] for a, b in zip(self.lo, self.hi)]

    def diagonal_points(self, m: int):
        """
        m points splitting the diagonal from lo to hi into m + 1 equal pieces,
        x(t_j) = lo + t_j * (hi - lo), t_j = j / (m + 1). Rows are clamped
        back into the box.
        """
        t = np.arange(1, m + 1, dtype=np.float64) / (m + 1)
        lo = self.lo[..., None, :]
        hi = self.hi[..., None, :]
        points = lo + t[:, None] * (hi - lo)
        return np.clip(points, lo, hi)
