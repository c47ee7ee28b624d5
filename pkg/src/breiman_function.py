# src/breiman_function.py
import numpy as np

from src.box import Box
from src.interval import constant, cos, decimal_constant, interval_sum, sin, sqr

NAME = "breiman"
LOWER = -1.0
UPPER = 2.0

_WEIGHT = decimal_constant("0.1")


def minimizer(n: int):
    return np.zeros(n)


def minimizer_box(n: int) -> Box:
    return Box.from_point(minimizer(n))


def minimum(n: int) -> float:
    return -0.1 * n


def evaluate(box: Box):
    """Enclose sum(x_i^2) - 0.1 * sum(cos(5 pi x_i))."""
    x = box.intervals()
    waves = cos(x * (constant("pi") * 5.0))
    return interval_sum(sqr(x)) - _WEIGHT * interval_sum(waves)


def gradient(box: Box, dims):
    # separable: each partial depends on x_i alone
    xi = box.intervals()[..., np.asarray(dims, dtype=np.intp)]
    pi = constant("pi")
    return xi * 2.0 + sin(xi * (pi * 5.0)) * (pi * 0.5)


def get_options():
    return {
        "n": {
            "description": "Number of variables",
            "type": "int",
            "default": 50,
            "min": 1,
        }
    }
