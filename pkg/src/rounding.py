# src/rounding.py
from dataclasses import dataclass

import numpy as np

OPTIMAL_OUTWARD = "optimal-outward"
SLACK_ULPS = "slack-ulps"

# Ulps added around numpy's exp/sin/cos results. Its SIMD kernels are
# documented at up to 4 ulp error, so the bound sits there.
TRANSCENDENTAL_ULPS = 4

# Veltkamp splitter for binary64 (2**27 + 1)
_SPLITTER = 134217729.0
# Below this magnitude a product may have lost bits to underflow
TINY = 2.0 ** -960


@dataclass(frozen=True)
class RoundingPolicy:
    """
    How interval endpoints are pushed outward after each primitive operation.

    :param mode: "optimal-outward" (tightest enclosure, decided with error-free
                 transformations) or "slack-ulps" (always step `ulps` machine
                 numbers outward)
    :param ulps: number of steps for the slack mode
    """
    mode: str = OPTIMAL_OUTWARD
    ulps: int = 1

    def __post_init__(self):
        if self.mode not in (OPTIMAL_OUTWARD, SLACK_ULPS):
            raise ValueError(f"Unknown rounding mode: {self.mode}")
        if self.ulps < 1:
            raise ValueError("Rounding slack must be at least 1 ulp")

    @property
    def label(self) -> str:
        if self.mode == SLACK_ULPS:
            return f"{SLACK_ULPS}({self.ulps})"
        return OPTIMAL_OUTWARD

    @classmethod
    def parse(cls, text: str) -> "RoundingPolicy":
        """Inverse of `label`: "optimal-outward" or "slack-ulps(m)"."""
        text = text.strip()
        if text == OPTIMAL_OUTWARD:
            return cls()
        if text.startswith(SLACK_ULPS):
            rest = text[len(SLACK_ULPS):].strip("()")
            return cls(SLACK_ULPS, int(rest) if rest else 1)
        raise ValueError(f"Unknown rounding policy: {text}")


DEFAULT_ROUNDING = RoundingPolicy()


def step_down(values, count: int = 1):
    values = np.asarray(values, dtype=np.float64)
    for _ in range(count):
        values = np.nextafter(values, -np.inf)
    return values


def step_up(values, count: int = 1):
    values = np.asarray(values, dtype=np.float64)
    for _ in range(count):
        values = np.nextafter(values, np.inf)
    return values


def two_sum(a, b):
    """
    Error-free sum: returns (s, e) with s = fl(a + b) and a + b = s + e exactly.
    e is NaN when an operand or the sum is infinite.
    """
    s = a + b
    b_virtual = s - a
    a_virtual = s - b_virtual
    e = (a - a_virtual) + (b - b_virtual)
    return s, e


def _split(a):
    c = _SPLITTER * a
    high = c - (c - a)
    return high, a - high


def two_product(a, b):
    """
    Error-free product: returns (p, e) with p = fl(a * b) and a * b = p + e.
    e is NaN where the identity cannot be trusted (overflow, underflow, infinities).
    """
    p = a * b
    a_high, a_low = _split(a)
    b_high, b_low = _split(b)
    e = ((a_high * b_high - p) + a_high * b_low + a_low * b_high) + a_low * b_low
    nonzero = (a != 0) & (b != 0)
    # Veltkamp splitting is only exact for operands above the subnormal range
    unreliable = nonzero & ((np.abs(p) < TINY) | (np.abs(a) < TINY) | (np.abs(b) < TINY))
    return p, np.where(unreliable, np.nan, e)


def round_down(value, error, policy: RoundingPolicy):
    """
    Lower endpoint for a result whose exact value is value + error.

    Under optimal-outward the endpoint moves one step only when the exact
    value lies below it (or is unknown); slack mode always steps.
    """
    value = np.asarray(value, dtype=np.float64)
    if policy.mode == SLACK_ULPS:
        return step_down(value, policy.ulps)
    error = np.asarray(error, dtype=np.float64)
    move = (error < 0) | np.isnan(error)
    return np.where(move, np.nextafter(value, -np.inf), value)


def round_up(value, error, policy: RoundingPolicy):
    value = np.asarray(value, dtype=np.float64)
    if policy.mode == SLACK_ULPS:
        return step_up(value, policy.ulps)
    error = np.asarray(error, dtype=np.float64)
    move = (error > 0) | np.isnan(error)
    return np.where(move, np.nextafter(value, np.inf), value)


def transcendental_ulps(policy: RoundingPolicy) -> int:
    if policy.mode == SLACK_ULPS:
        return max(policy.ulps, TRANSCENDENTAL_ULPS)
    return TRANSCENDENTAL_ULPS
