# src/zabinsky_function.py
import numpy as np

from src.box import Box
from src.interval import constant, cos, interval_prod, prefix_suffix_products, sin

NAME = "zabinsky"
LOWER = 0.0
UPPER = float(np.pi)


def minimizer(n: int):
    return np.full(n, 2.0 * np.pi / 3.0)


def minimizer_box(n: int) -> Box:
    center = constant("pi") * 2.0 / 3.0
    return Box(np.full(n, float(center.lo)), np.full(n, float(center.hi)))


def minimum(n: int) -> float:
    return -3.5


def _phases(box):
    return box.intervals() - constant("pi") / 6.0


def evaluate(box: Box):
    """Enclose -2.5 prod(sin(z_i)) - prod(sin(5 z_i)) with z = x - pi / 6."""
    z = _phases(box)
    return interval_prod(sin(z)) * -2.5 - interval_prod(sin(z * 5.0))


def gradient(box: Box, dims):
    z = _phases(box)
    dims = np.asarray(dims, dtype=np.intp)
    slow_before, slow_after = prefix_suffix_products(sin(z))
    fast_before, fast_after = prefix_suffix_products(sin(z * 5.0))
    zi = z[..., dims]
    slow = cos(zi) * (slow_before[..., dims] * slow_after[..., dims]) * -2.5
    fast = cos(zi * 5.0) * (fast_before[..., dims] * fast_after[..., dims]) * 5.0
    return slow - fast


def get_options():
    return {
        "n": {
            "description": "Number of variables",
            "type": "int",
            "default": 50,
            "min": 1,
        }
    }
