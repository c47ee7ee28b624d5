# src/styblinski_function.py
import numpy as np

from src.box import Box
from src.interval import cos, interval_prod, interval_sum, prefix_suffix_products, sin, sqr

NAME = "styblinski"
LOWER = -10.0
UPPER = 11.0


def minimizer(n: int):
    return np.zeros(n)


def minimizer_box(n: int) -> Box:
    return Box.from_point(minimizer(n))


def minimum(n: int) -> float:
    return -4.0 * n


def evaluate(box: Box):
    """Enclose sum(x_i^2) / (2 n) - 4 n prod(cos(x_i))."""
    x = box.intervals()
    n = box.n
    return interval_sum(sqr(x)) / (2.0 * n) - interval_prod(cos(x)) * (4.0 * n)


def gradient(box: Box, dims):
    x = box.intervals()
    n = box.n
    dims = np.asarray(dims, dtype=np.intp)
    before, after = prefix_suffix_products(cos(x))
    xi = x[..., dims]
    return xi / n + sin(xi) * (before[..., dims] * after[..., dims]) * (4.0 * n)


def get_options():
    return {
        "n": {
            "description": "Number of variables",
            "type": "int",
            "default": 50,
            "min": 1,
        }
    }
