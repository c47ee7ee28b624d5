# src/ackley_function.py
import numpy as np

from src.box import Box
from src.interval import (
    UNIT,
    constant,
    cos,
    decimal_constant,
    exp,
    interval_sum,
    intersect,
    point,
    sin,
    sqr,
    sqrt,
)

NAME = "ackley"
LOWER = -35.0
UPPER = 40.0

_RATE = decimal_constant("0.02")
_GRAD_RATE = decimal_constant("0.4")


def minimizer(n: int):
    return np.zeros(n)


def minimizer_box(n: int) -> Box:
    return Box.from_point(minimizer(n))


def minimum(n: int) -> float:
    return 0.0


def _shared_terms(x, n):
    """Sum of squares, decaying exponential and cosine exponential."""
    two_pi_x = x * (constant("pi") * 2.0)
    squares = interval_sum(sqr(x))
    mean_cos = interval_sum(cos(two_pi_x)) / n
    decay = exp(-(_RATE * sqrt(squares / n)))
    return squares, decay, exp(mean_cos)


def evaluate(box: Box):
    """
    Enclose -20 exp(-0.02 sqrt(mean(x^2))) - exp(mean(cos(2 pi x))) + 20 + e.
    """
    x = box.intervals()
    _, decay, wave = _shared_terms(x, box.n)
    return decay * -20.0 - wave + 20.0 + constant("e")


def gradient(box: Box, dims):
    x = box.intervals()
    n = box.n
    dims = np.asarray(dims, dtype=np.intp)
    squares, decay, wave = _shared_terms(x, n)
    xi = x[..., dims]
    # x_i / sqrt(sum x^2) always lies in [-1, 1]
    ratio = intersect(xi / sqrt(squares)[..., None], UNIT)
    radial = _GRAD_RATE * decay[..., None] * ratio / sqrt(point(float(n)))
    periodic = wave[..., None] * sin(xi * (constant("pi") * 2.0)) * (constant("pi") * 2.0) / n
    return radial + periodic


def get_options():
    return {
        "n": {
            "description": "Number of variables",
            "type": "int",
            "default": 50,
            "min": 1,
        }
    }
