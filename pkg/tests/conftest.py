import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.box import Box  # noqa: E402
from src.catalog import ObjectiveSpec  # noqa: E402
from src.interval import interval_sum, sqr  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def _square_evaluate(box):
    return interval_sum(sqr(box.intervals()))


def _square_gradient(box, dims):
    return box.intervals()[..., dims] * 2.0


def _linear_evaluate(box):
    return interval_sum(box.intervals())


def _linear_gradient(box, dims):
    x = box.intervals()[..., dims]
    return x * 0.0 + 1.0


def make_objective(name, evaluate, gradient, n, lower, upper, minimizer):
    minimizer = np.asarray(minimizer, dtype=np.float64)
    return ObjectiveSpec(
        name=name,
        n=n,
        lower=lower,
        upper=upper,
        evaluate=evaluate,
        gradient=gradient,
        known_minimizer=minimizer,
        known_minimizer_box=Box.from_point(minimizer),
        known_minimum=0.0,
    )


@pytest.fixture
def square_1d():
    """f(x) = x^2 on [-1, 1]."""
    return make_objective("square", _square_evaluate, _square_gradient, 1, -1.0, 1.0, [0.0])


@pytest.fixture
def linear_1d():
    """f(x) = x on [0, 1]."""
    return make_objective("linear", _linear_evaluate, _linear_gradient, 1, 0.0, 1.0, [0.0])


@pytest.fixture
def wide_linear_1d():
    """f(x) = x on [0, 11]."""
    return make_objective("linear", _linear_evaluate, _linear_gradient, 1, 0.0, 11.0, [0.0])
