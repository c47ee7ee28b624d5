# src/rastrigin_function.py
import numpy as np

from src.box import Box
from src.interval import constant, cos, interval_sum, sin, sqr

NAME = "rastrigin"
LOWER = -5.5
UPPER = 6.0


def minimizer(n: int):
    return np.zeros(n)


def minimizer_box(n: int) -> Box:
    return Box.from_point(minimizer(n))


def minimum(n: int) -> float:
    return 0.0


def evaluate(box: Box):
    """Enclose 10 n + sum(x_i^2 - 10 cos(2 pi x_i))."""
    x = box.intervals()
    two_pi = constant("pi") * 2.0
    return interval_sum(sqr(x) - cos(x * two_pi) * 10.0) + 10.0 * box.n


def gradient(box: Box, dims):
    xi = box.intervals()[..., np.asarray(dims, dtype=np.intp)]
    pi = constant("pi")
    return xi * 2.0 + sin(xi * (pi * 2.0)) * (pi * 20.0)


def get_options():
    return {
        "n": {
            "description": "Number of variables",
            "type": "int",
            "default": 50,
            "min": 1,
        }
    }
