# src/levy_function.py
"""
Levy benchmark, written in u = 0.25 (x - 1) so that y - 1 = u and
sin^2(pi y) = sin^2(pi u); each variable then appears once per term.
"""
import numpy as np

from src.box import Box
from src.interval import concatenate, constant, interval_sum, ones, sin, sqr, zeros

NAME = "levy"
LOWER = -10.0
UPPER = 10.0


def minimizer(n: int):
    return np.ones(n)


def minimizer_box(n: int) -> Box:
    return Box.from_point(minimizer(n))


def minimum(n: int) -> float:
    return 0.0


def _transformed(box):
    u = (box.intervals() - 1.0) * 0.25
    pi = constant("pi")
    return u, sqr(sin(u * pi)), pi


def evaluate(box: Box):
    """
    Enclose (pi / n) * {10 sin^2(pi y_1) + (y_n - 1)^2
    + sum_{i<n} (y_i - 1)^2 (1 + 10 sin^2(pi y_{i+1}))}.
    """
    u, waves, pi = _transformed(box)
    n = box.n
    chain = sqr(u[..., :-1]) * (waves[..., 1:] * 10.0 + 1.0)
    inner = waves[..., 0] * 10.0 + sqr(u[..., n - 1]) + interval_sum(chain)
    return pi / n * inner


def gradient(box: Box, dims):
    u, waves, pi = _transformed(box)
    n = box.n
    dims = np.asarray(dims, dtype=np.intp)
    batch = u.shape[:-1]
    # weight from the left neighbour's chain term; the first variable takes
    # the standalone 10 sin^2(pi y_1) term with weight 1 instead
    left = concatenate([ones(batch + (1,)), sqr(u[..., :-1])])
    # coupling to the right neighbour; the last variable has none
    right = concatenate([waves[..., 1:], zeros(batch + (1,))])
    ui = u[..., dims]
    own = sin(ui * (pi * 2.0)) * (pi * 10.0) * left[..., dims]
    chained = ui * 2.0 * (right[..., dims] * 10.0 + 1.0)
    return pi / (4.0 * n) * (own + chained)


def get_options():
    return {
        "n": {
            "description": "Number of variables",
            "type": "int",
            "default": 50,
            "min": 1,
        }
    }
