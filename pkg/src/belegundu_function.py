# src/belegundu_function.py
import numpy as np

from src.box import Box
from src.interval import cos, decimal_constant, interval_sum, sinc, sqr, sqrt

NAME = "belegundu"
LOWER = -10.0
UPPER = 11.0

_SCALE = decimal_constant("0.1")
_GRAD_SCALE = decimal_constant("0.2")


def minimizer(n: int):
    return np.full(n, 5.0)


def minimizer_box(n: int) -> Box:
    return Box.from_point(minimizer(n))


def minimum(n: int) -> float:
    return -1.0


def evaluate(box: Box):
    """
    Enclose 0.1 * S - cos(5 sqrt(S)) with S = sum((x_i - 5)^2).
    """
    shifted = box.intervals() - 5.0
    squares = interval_sum(sqr(shifted))
    return _SCALE * squares - cos(sqrt(squares) * 5.0)


def gradient(box: Box, dims):
    """
    d_i * (0.2 + 25 sinc(5 R)) with d = x - 5 and R = |d|; the sinc form
    stays bounded where R reaches zero.
    """
    shifted = box.intervals() - 5.0
    radius = sqrt(interval_sum(sqr(shifted)))
    factor = _GRAD_SCALE + sinc(radius * 5.0) * 25.0
    return shifted[..., np.asarray(dims, dtype=np.intp)] * factor[..., None]


def get_options():
    return {
        "n": {
            "description": "Number of variables",
            "type": "int",
            "default": 50,
            "min": 1,
        }
    }
