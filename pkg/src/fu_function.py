# src/fu_function.py
import numpy as np

from src.box import Box
from src.interval import decimal_constant, interval_sum, sin, sqr

NAME = "fu"
LOWER = -10.0
UPPER = 10.0

_CENTER = decimal_constant("0.9")


def minimizer(n: int):
    return np.full(n, 0.9)


def minimizer_box(n: int) -> Box:
    return Box(np.full(n, float(_CENTER.lo)), np.full(n, float(_CENTER.hi)))


def minimum(n: int) -> float:
    return 1.0


def _offsets(box):
    shifted = box.intervals() - _CENTER
    return shifted, sqr(shifted)


def evaluate(box: Box):
    """
    Enclose 1 + sum(8 sin^2(7 q_i) + 6 sin^2(14 q_i) + q_i) with
    q_i = (x_i - 0.9)^2. The leading 1 sits outside the sum.
    """
    _, q = _offsets(box)
    terms = sqr(sin(q * 7.0)) * 8.0 + sqr(sin(q * 14.0)) * 6.0 + q
    return interval_sum(terms) + 1.0


def gradient(box: Box, dims):
    shifted, q = _offsets(box)
    dims = np.asarray(dims, dtype=np.intp)
    d, qi = shifted[..., dims], q[..., dims]
    inner = sin(qi * 14.0) * 56.0 + sin(qi * 28.0) * 84.0 + 1.0
    return d * 2.0 * inner


def get_options():
    return {
        "n": {
            "description": "Number of variables",
            "type": "int",
            "default": 50,
            "min": 1,
        }
    }
