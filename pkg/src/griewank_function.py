# src/griewank_function.py
import numpy as np

from src.box import Box
from src.interval import cos, interval_prod, interval_sum, point, prefix_suffix_products, sin, sqr, sqrt

NAME = "griewank"
LOWER = -100.0
UPPER = 110.0


def minimizer(n: int):
    return np.zeros(n)


def minimizer_box(n: int) -> Box:
    return Box.from_point(minimizer(n))


def minimum(n: int) -> float:
    return 0.0


def _scaled(box):
    """Returns (x, sqrt(i), x_i / sqrt(i)) with i counted from 1."""
    x = box.intervals()
    roots = sqrt(point(np.arange(1, box.n + 1, dtype=np.float64)))
    return x, roots, x / roots


def evaluate(box: Box):
    """Enclose 1 + sum(x_i^2) / 4000 - prod(cos(x_i / sqrt(i)))."""
    x, _, scaled = _scaled(box)
    return interval_sum(sqr(x)) / 4000.0 + 1.0 - interval_prod(cos(scaled))


def gradient(box: Box, dims):
    x, roots, scaled = _scaled(box)
    dims = np.asarray(dims, dtype=np.intp)
    before, after = prefix_suffix_products(cos(scaled))
    others = before[..., dims] * after[..., dims]
    return x[..., dims] / 2000.0 + sin(scaled[..., dims]) / roots[dims] * others


def get_options():
    return {
        "n": {
            "description": "Number of variables",
            "type": "int",
            "default": 50,
            "min": 1,
        }
    }
