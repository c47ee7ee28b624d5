# src/salomon_function.py
import numpy as np

from src.box import Box
from src.interval import UNIT, constant, cos, decimal_constant, interval_sum, intersect, sin, sqr, sqrt

NAME = "salomon"
LOWER = -100.0
UPPER = 110.0

_SLOPE = decimal_constant("0.1")


def minimizer(n: int):
    return np.zeros(n)


def minimizer_box(n: int) -> Box:
    return Box.from_point(minimizer(n))


def minimum(n: int) -> float:
    return 0.0


def evaluate(box: Box):
    """Enclose 1 - cos(2 pi R) + 0.1 R with R = |x|."""
    radius = sqrt(interval_sum(sqr(box.intervals())))
    return 1.0 - cos(radius * (constant("pi") * 2.0)) + _SLOPE * radius


def gradient(box: Box, dims):
    x = box.intervals()
    radius = sqrt(interval_sum(sqr(x)))
    two_pi = constant("pi") * 2.0
    outer = sin(radius * two_pi) * two_pi + _SLOPE
    ratio = intersect(x[..., np.asarray(dims, dtype=np.intp)] / radius[..., None], UNIT)
    return outer[..., None] * ratio


def get_options():
    return {
        "n": {
            "description": "Number of variables",
            "type": "int",
            "default": 50,
            "min": 1,
        }
    }
