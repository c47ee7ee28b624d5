# src/interval.py
"""
Interval arithmetic with outward rounding.

Endpoints are numpy float64 arrays, so one Interval can stand for a single
closed interval (0-d endpoints) or a whole batch of them (any shape). Every
operation returns an enclosure of the exact real result over all members of
its operands; the amount of outward rounding is set by the RoundingPolicy the
operands carry.
"""
from fractions import Fraction
import math

import mpmath
import numpy as np

from src.rounding import (
    DEFAULT_ROUNDING,
    TINY,
    RoundingPolicy,
    round_down,
    round_up,
    step_down,
    step_up,
    transcendental_ulps,
    two_product,
    two_sum,
)

_INF = np.inf
# Lower bound of min sin(z)/z, attained near z = 4.4934
_SINC_MIN = -0.2173
_SINC_DECREASING_UNTIL = 4.49


class IntervalError(ValueError):
    pass


class InvalidIntervalError(IntervalError):
    pass


class IntervalDomainError(IntervalError):
    pass


class Interval:
    """
    Closed interval [lo, hi] (or an array of them) over the extended reals.

    `rounding` may be None for constants; an operation uses the first
    policy found among its operands and the module default otherwise.
    """
    __slots__ = ("lo", "hi", "rounding")

    def __init__(self, lo, hi=None, rounding=None):
        lo = np.asarray(lo, dtype=np.float64)
        hi = lo if hi is None else np.asarray(hi, dtype=np.float64)
        if np.isnan(lo).any() or np.isnan(hi).any():
            raise InvalidIntervalError("Interval endpoints cannot be NaN")
        if (lo > hi).any():
            raise InvalidIntervalError(f"Invalid interval: lower endpoint above upper endpoint ({lo} > {hi})")
        self.lo = lo
        self.hi = hi
        self.rounding = rounding

    @classmethod
    def _raw(cls, lo, hi, rounding):
        obj = object.__new__(cls)
        obj.lo = np.asarray(lo, dtype=np.float64)
        obj.hi = np.asarray(hi, dtype=np.float64)
        obj.rounding = rounding
        return obj

    @property
    def policy(self) -> RoundingPolicy:
        return self.rounding or DEFAULT_ROUNDING

    @property
    def shape(self):
        return np.broadcast_shapes(self.lo.shape, self.hi.shape)

    def __getitem__(self, key):
        return Interval._raw(self.lo[key], self.hi[key], self.rounding)

    def __len__(self):
        return self.shape[0]

    def __repr__(self):
        if self.lo.ndim == 0:
            return f"Interval({float(self.lo)!r}, {float(self.hi)!r})"
        return f"Interval(shape={self.shape})"

    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(other, self)

    def __sub__(self, other):
        return sub(self, other)

    def __rsub__(self, other):
        return sub(other, self)

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(other, self)

    def __truediv__(self, other):
        return div(self, other)

    def __rtruediv__(self, other):
        return div(other, self)

    def __neg__(self):
        return Interval._raw(-self.hi, -self.lo, self.rounding)

    def __pos__(self):
        return self


def _coerce(value, rounding=None):
    if isinstance(value, Interval):
        return value
    return point(value, rounding)


def _pair(x, y):
    rounding = x.rounding if isinstance(x, Interval) else None
    if rounding is None and isinstance(y, Interval):
        rounding = y.rounding
    return _coerce(x, rounding), _coerce(y, rounding), rounding


def _finish(lo, hi, rounding):
    # indeterminate endpoint widening: NaN on an endpoint means inf - inf
    lo = np.where(np.isnan(lo), -_INF, lo)
    hi = np.where(np.isnan(hi), _INF, hi)
    return Interval._raw(lo, hi, rounding)


def point(x, rounding=None) -> Interval:
    """Degenerate interval [x, x] for a finite machine number (or array of them)."""
    x = np.asarray(x, dtype=np.float64)
    if np.isnan(x).any():
        raise InvalidIntervalError("Cannot build a point interval from NaN")
    if np.isinf(x).any():
        raise InvalidIntervalError("Point intervals need finite values")
    return Interval._raw(x, x, rounding)


def add(x, y) -> Interval:
    x, y, rounding = _pair(x, y)
    policy = rounding or DEFAULT_ROUNDING
    with np.errstate(invalid="ignore", over="ignore"):
        lo, lo_err = two_sum(x.lo, y.lo)
        hi, hi_err = two_sum(x.hi, y.hi)
        lo = round_down(lo, lo_err, policy)
        hi = round_up(hi, hi_err, policy)
    return _finish(lo, hi, rounding)


def sub(x, y) -> Interval:
    x, y, rounding = _pair(x, y)
    policy = rounding or DEFAULT_ROUNDING
    with np.errstate(invalid="ignore", over="ignore"):
        lo, lo_err = two_sum(x.lo, -y.hi)
        hi, hi_err = two_sum(x.hi, -y.lo)
        lo = round_down(lo, lo_err, policy)
        hi = round_up(hi, hi_err, policy)
    return _finish(lo, hi, rounding)


def _product_bounds(a, b, policy):
    p, e = two_product(a, b)
    # 0 * inf counts as 0 for enclosure purposes
    zero = np.isnan(p)
    p = np.where(zero, 0.0, p)
    e = np.where(zero, 0.0, e)
    return round_down(p, e, policy), round_up(p, e, policy)


def mul(x, y) -> Interval:
    x, y, rounding = _pair(x, y)
    policy = rounding or DEFAULT_ROUNDING
    with np.errstate(invalid="ignore", over="ignore", under="ignore"):
        lows, highs = [], []
        for a in (x.lo, x.hi):
            for b in (y.lo, y.hi):
                low, high = _product_bounds(a, b, policy)
                lows.append(low)
                highs.append(high)
        lo = np.minimum(np.minimum(lows[0], lows[1]), np.minimum(lows[2], lows[3]))
        hi = np.maximum(np.maximum(highs[0], highs[1]), np.maximum(highs[2], highs[3]))
    return _finish(lo, hi, rounding)


def _quotient_bounds(a, b, policy):
    q = a / b
    p, pe = two_product(q, b)
    # a/b - q has the sign of (a - q*b) * b; a - p is exact by Sterbenz
    direction = np.sign((a - p) - pe) * np.sign(b)
    # subnormal or flushed quotients always step outward
    unreliable = (np.abs(q) < TINY) & (a != 0)
    direction = np.where(unreliable, np.nan, direction)
    return round_down(q, direction, policy), round_up(q, direction, policy)


def div(x, y) -> Interval:
    """
    X / Y. A divisor containing zero gives the hull of the extended-real
    result set: one-sided unbounded when zero is an endpoint of Y and X keeps
    one sign, otherwise [-inf, +inf].
    """
    x, y, rounding = _pair(x, y)
    policy = rounding or DEFAULT_ROUNDING
    with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
        lows, highs = [], []
        for a in (x.lo, x.hi):
            for b in (y.lo, y.hi):
                low, high = _quotient_bounds(a, b, policy)
                lows.append(np.where(np.isnan(low), _INF, low))
                highs.append(np.where(np.isnan(high), -_INF, high))
        lo = np.minimum(np.minimum(lows[0], lows[1]), np.minimum(lows[2], lows[3]))
        hi = np.maximum(np.maximum(highs[0], highs[1]), np.maximum(highs[2], highs[3]))

        x_nonneg = x.lo >= 0
        x_nonpos = x.hi <= 0
        x_zero = x_nonneg & x_nonpos
        # Y = [0, b], b > 0
        pos_lo, _ = _quotient_bounds(x.lo, y.hi, policy)
        _, neg_hi = _quotient_bounds(x.hi, y.hi, policy)
        # Y = [a, 0], a < 0
        _, pos_hi = _quotient_bounds(x.lo, y.lo, policy)
        neg_lo, _ = _quotient_bounds(x.hi, y.lo, policy)

    zero_low_end = (y.lo == 0) & (y.hi > 0)
    zero_high_end = (y.hi == 0) & (y.lo < 0)
    straddles = (y.lo <= 0) & (y.hi >= 0)

    lo = np.where(straddles, -_INF, lo)
    hi = np.where(straddles, _INF, hi)
    lo = np.where(zero_low_end & x_nonneg, pos_lo, lo)
    hi = np.where(zero_low_end & x_nonpos, neg_hi, hi)
    hi = np.where(zero_high_end & x_nonneg, pos_hi, hi)
    lo = np.where(zero_high_end & x_nonpos, neg_lo, lo)
    # 0 / Y is {0} as long as Y is not exactly [0, 0]
    nonzero_divisor = (y.lo != 0) | (y.hi != 0)
    lo = np.where(x_zero & nonzero_divisor, 0.0, lo)
    hi = np.where(x_zero & nonzero_divisor, 0.0, hi)
    return _finish(lo, hi, rounding)


def sqr(x) -> Interval:
    """Range-exact x**2 (no dependence problem)."""
    x = _coerce(x)
    policy = x.policy
    with np.errstate(invalid="ignore", over="ignore", under="ignore"):
        lo_down, lo_up = _product_bounds(x.lo, x.lo, policy)
        hi_down, hi_up = _product_bounds(x.hi, x.hi, policy)
    straddles = (x.lo < 0) & (x.hi > 0)
    nonneg = x.lo >= 0
    lo = np.where(straddles, 0.0, np.where(nonneg, lo_down, hi_down))
    hi = np.where(straddles, np.maximum(lo_up, hi_up), np.where(nonneg, hi_up, lo_up))
    return Interval._raw(np.maximum(lo, 0.0), hi, x.rounding)


def sqrt(x) -> Interval:
    x = _coerce(x)
    if (x.hi < 0).any():
        raise IntervalDomainError("sqrt of an interval lying entirely below zero")
    policy = x.policy
    with np.errstate(invalid="ignore", over="ignore", under="ignore"):
        results = []
        for value in (np.maximum(x.lo, 0.0), x.hi):
            root = np.sqrt(value)
            p, pe = two_product(root, root)
            residual = (value - p) - pe
            results.append((round_down(root, residual, policy), round_up(root, residual, policy)))
    lo = np.maximum(results[0][0], 0.0)
    return _finish(lo, results[1][1], x.rounding)


def exp(x) -> Interval:
    x = _coerce(x)
    ulps = transcendental_ulps(x.policy)
    with np.errstate(over="ignore", under="ignore"):
        lo = np.maximum(step_down(np.exp(x.lo), ulps), 0.0)
        hi = step_up(np.exp(x.hi), ulps)
    return Interval._raw(lo, hi, x.rounding)


def _contains_critical(lo, hi, shift):
    """
    For critical points at (j + shift) * pi, report whether the range holds
    one with even j and one with odd j. The test is widened by a margin that
    covers the rounding of lo/pi and the error in the double value of pi, so
    near-misses count as hits (which can only widen the result).
    """
    q_lo = lo / math.pi - shift
    q_hi = hi / math.pi - shift
    margin = (np.abs(q_lo) + np.abs(q_hi) + 2.0) * 8.0 * np.finfo(np.float64).eps
    first = np.ceil(q_lo - margin)
    last = np.floor(q_hi + margin)
    some = first <= last
    several = last > first
    first_even = np.mod(first, 2.0) == 0
    has_even = some & (first_even | several)
    has_odd = some & (~first_even | several)
    return has_even, has_odd


def _trig(x, fn, shift):
    x = _coerce(x)
    ulps = transcendental_ulps(x.policy)
    with np.errstate(invalid="ignore"):
        at_lo = fn(x.lo)
        at_hi = fn(x.hi)
        lo = step_down(np.minimum(at_lo, at_hi), ulps)
        hi = step_up(np.maximum(at_lo, at_hi), ulps)
        has_max, has_min = _contains_critical(x.lo, x.hi, shift)
    # cos peaks at 2j*pi and bottoms at (2j+1)*pi; sin is cos shifted by pi/2
    hi = np.where(has_max, 1.0, hi)
    lo = np.where(has_min, -1.0, lo)
    full = (x.hi - x.lo >= 2.0 * math.pi) | np.isinf(x.lo) | np.isinf(x.hi)
    lo = np.where(full, -1.0, lo)
    hi = np.where(full, 1.0, hi)
    return Interval._raw(np.clip(lo, -1.0, 1.0), np.clip(hi, -1.0, 1.0), x.rounding)


def cos(x) -> Interval:
    return _trig(x, np.cos, 0.0)


def sin(x) -> Interval:
    # sin(z) = cos(z - pi/2): maxima at pi/2 + 2j*pi, minima at pi/2 + (2j+1)*pi
    return _trig(x, np.sin, 0.5)


TRANSCENDENTALS = {
    "exp": exp,
    "sin": sin,
    "cos": cos,
}


def transcendental(fn: str, x) -> Interval:
    if fn not in TRANSCENDENTALS:
        raise IntervalError(f"Unknown transcendental function: {fn}")
    return TRANSCENDENTALS[fn](x)


def _enclose_mpf(value) -> Interval:
    nearest = float(value)
    if mpmath.mpf(nearest) > value:
        return Interval(float(step_down(nearest)), nearest)
    if mpmath.mpf(nearest) < value:
        return Interval(nearest, float(step_up(nearest)))
    return Interval(nearest, nearest)


def _build_constants():
    with mpmath.workdps(60):
        return {
            "pi": _enclose_mpf(mpmath.pi),
            "e": _enclose_mpf(mpmath.e),
        }


_CONSTANTS = _build_constants()

# [-1, 1], the range of sin, cos and of ratios like x_i / |x|
UNIT = Interval(-1.0, 1.0)


def constant(name: str, rounding=None) -> Interval:
    """Tightest machine interval around pi or e."""
    if name not in _CONSTANTS:
        raise IntervalError(f"Unknown constant: {name}")
    value = _CONSTANTS[name]
    return Interval._raw(value.lo, value.hi, rounding)


def decimal_constant(text, rounding=None) -> Interval:
    """
    Tightest machine interval around an exact rational such as "0.1" or "1/4000".
    """
    exact = Fraction(text)
    nearest = float(exact)
    if Fraction(nearest) > exact:
        lo, hi = float(step_down(nearest)), nearest
    elif Fraction(nearest) < exact:
        lo, hi = nearest, float(step_up(nearest))
    else:
        lo = hi = nearest
    return Interval._raw(lo, hi, rounding)


def width(x):
    """hi - lo rounded up (array for batched intervals)."""
    x = _coerce(x)
    with np.errstate(invalid="ignore", over="ignore"):
        value, error = two_sum(x.hi, -x.lo)
        result = round_up(value, error, x.policy)
    return np.where(np.isnan(result), _INF, result)


def contains(x, value):
    x = _coerce(x)
    return (x.lo <= value) & (value <= x.hi)


def hull(x, y) -> Interval:
    x, y, rounding = _pair(x, y)
    return Interval._raw(np.minimum(x.lo, y.lo), np.maximum(x.hi, y.hi), rounding)


def intersect(x, y) -> Interval:
    x, y, rounding = _pair(x, y)
    lo = np.maximum(x.lo, y.lo)
    hi = np.minimum(x.hi, y.hi)
    if (lo > hi).any():
        raise InvalidIntervalError("Intersection of disjoint intervals is empty")
    return Interval._raw(lo, hi, rounding)


def stack(intervals, axis=-1) -> Interval:
    rounding = next((item.rounding for item in intervals if item.rounding is not None), None)
    lo = np.stack([np.broadcast_to(item.lo, item.shape) for item in intervals], axis=axis)
    hi = np.stack([np.broadcast_to(item.hi, item.shape) for item in intervals], axis=axis)
    return Interval._raw(lo, hi, rounding)


def interval_sum(x, axis=-1) -> Interval:
    """Sum along an axis with outward rounding at every partial sum."""
    lo = np.moveaxis(np.broadcast_to(x.lo, x.shape), axis, 0)
    hi = np.moveaxis(np.broadcast_to(x.hi, x.shape), axis, 0)
    if lo.shape[0] == 0:
        return Interval._raw(np.zeros(lo.shape[1:]), np.zeros(lo.shape[1:]), x.rounding)
    total = Interval._raw(lo[0], hi[0], x.rounding)
    for j in range(1, lo.shape[0]):
        total = add(total, Interval._raw(lo[j], hi[j], x.rounding))
    return total


def interval_prod(x, axis=-1) -> Interval:
    lo = np.moveaxis(np.broadcast_to(x.lo, x.shape), axis, 0)
    hi = np.moveaxis(np.broadcast_to(x.hi, x.shape), axis, 0)
    if lo.shape[0] == 0:
        return Interval._raw(np.ones(lo.shape[1:]), np.ones(lo.shape[1:]), x.rounding)
    total = Interval._raw(lo[0], hi[0], x.rounding)
    for j in range(1, lo.shape[0]):
        total = mul(total, Interval._raw(lo[j], hi[j], x.rounding))
    return total


def prefix_suffix_products(x):
    """
    For factors along the last axis, return (prefix, suffix) where
    prefix[..., i] encloses the product over j < i and suffix[..., i] the
    product over j > i. Their product is the product over all j != i.
    """
    n = x.shape[-1]
    one = Interval._raw(np.ones(x.shape[:-1]), np.ones(x.shape[:-1]), x.rounding)
    prefix = [one]
    for i in range(n - 1):
        prefix.append(mul(prefix[-1], x[..., i]))
    suffix = [one]
    for i in range(n - 1, 0, -1):
        suffix.append(mul(suffix[-1], x[..., i]))
    suffix.reverse()
    return stack(prefix), stack(suffix)


def sinc(x) -> Interval:
    """Enclosure of sin(z)/z with the removable singularity filled by 1."""
    x = _coerce(x)
    rounding = x.rounding
    magnitude_lo = np.where((x.lo <= 0) & (x.hi >= 0), 0.0, np.minimum(np.abs(x.lo), np.abs(x.hi)))
    magnitude_hi = np.maximum(np.abs(x.lo), np.abs(x.hi))
    magnitude = Interval._raw(magnitude_lo, magnitude_hi, rounding)
    away = div(sin(magnitude), magnitude)
    tail = div(sin(Interval._raw(magnitude_hi, magnitude_hi, rounding)), Interval._raw(magnitude_hi, magnitude_hi, rounding))

    near_lo = np.where(magnitude_hi <= _SINC_DECREASING_UNTIL, tail.lo, _SINC_MIN)
    near_lo = np.where(magnitude_hi == 0, 1.0, near_lo)
    lo = np.where(magnitude_lo > 0, away.lo, near_lo)
    hi = np.where(magnitude_lo > 0, away.hi, 1.0)
    return Interval._raw(np.clip(lo, _SINC_MIN, 1.0), np.clip(hi, _SINC_MIN, 1.0), rounding)


def split_uniform(x, pieces: int) -> Interval:
    """Split a single interval into `pieces` subintervals sharing their cut points."""
    if pieces < 1:
        raise IntervalError("Number of pieces must be positive")
    lo, hi = float(x.lo), float(x.hi)
    step = (hi - lo) / pieces
    cuts = lo + step * np.arange(pieces + 1, dtype=np.float64)
    cuts[0], cuts[-1] = lo, hi
    cuts = np.clip(np.maximum.accumulate(cuts), lo, hi)
    return Interval._raw(cuts[:-1], cuts[1:], x.rounding)


def refine_union(f, x, pieces: int) -> Interval:
    """
    Hull of f evaluated over `pieces` uniform subintervals of x. As pieces
    grows the result shrinks toward the exact range of f on x.
    """
    values = f(split_uniform(_coerce(x), pieces))
    return Interval._raw(np.min(values.lo), np.max(values.hi), values.rounding)


def concatenate(intervals, axis=-1) -> Interval:
    rounding = next((item.rounding for item in intervals if item.rounding is not None), None)
    lo = np.concatenate([np.broadcast_to(item.lo, item.shape) for item in intervals], axis=axis)
    hi = np.concatenate([np.broadcast_to(item.hi, item.shape) for item in intervals], axis=axis)
    return Interval._raw(lo, hi, rounding)


def ones(shape, rounding=None) -> Interval:
    return Interval._raw(np.ones(shape), np.ones(shape), rounding)


def zeros(shape, rounding=None) -> Interval:
    return Interval._raw(np.zeros(shape), np.zeros(shape), rounding)
