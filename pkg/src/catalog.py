# src/catalog.py
"""
Registry of benchmark objectives and the uniform evaluation interface used by
the partition kernel and the search engine.
"""
from dataclasses import dataclass
from typing import Callable

import numpy as np

from src import (
    ackley_function,
    belegundu_function,
    breiman_function,
    fu_function,
    griewank_function,
    levy_function,
    rastrigin_function,
    salomon_function,
    styblinski_function,
    zabinsky_function,
)
from src.box import Box
from src.rounding import DEFAULT_ROUNDING, RoundingPolicy

# Dictionary of available objectives, in catalog order
FUNCTIONS = {
    "ackley": ackley_function,
    "belegundu": belegundu_function,
    "breiman": breiman_function,
    "fu": fu_function,
    "griewank": griewank_function,
    "levy": levy_function,
    "rastrigin": rastrigin_function,
    "salomon": salomon_function,
    "styblinski": styblinski_function,
    "zabinsky": zabinsky_function,
}


class ObjectiveError(ValueError):
    pass


@dataclass(frozen=True)
class ObjectiveSpec:
    name: str
    n: int
    lower: float
    upper: float
    evaluate: Callable
    gradient: Callable
    known_minimizer: np.ndarray
    known_minimizer_box: Box
    known_minimum: float
    differentiable: bool = True
    rounding: RoundingPolicy = DEFAULT_ROUNDING

    @property
    def domain(self) -> Box:
        return Box.uniform(self.lower, self.upper, self.n, self.rounding)


def get_objective(name: str, n: int, rounding: RoundingPolicy = DEFAULT_ROUNDING) -> ObjectiveSpec:
    """
    Build the ObjectiveSpec of a named benchmark in n variables.

    :param name: Lowercase benchmark identifier (see FUNCTIONS)
    :param n: Number of variables
    :param rounding: Rounding policy attached to every box the objective sees
    :return: ObjectiveSpec
    """
    module = FUNCTIONS.get(name)
    if module is None:
        raise ObjectiveError(f"Unknown function: {name}. Available: {', '.join(FUNCTIONS)}")
    minimum_n = module.get_options()["n"]["min"]
    if not isinstance(n, (int, np.integer)) or n < minimum_n:
        raise ObjectiveError(f"Dimension must be an integer >= {minimum_n}, got {n}")
    n = int(n)
    return ObjectiveSpec(
        name=module.NAME,
        n=n,
        lower=module.LOWER,
        upper=module.UPPER,
        evaluate=module.evaluate,
        gradient=module.gradient,
        known_minimizer=module.minimizer(n),
        known_minimizer_box=module.minimizer_box(n),
        known_minimum=module.minimum(n),
        rounding=rounding,
    )


def catalog(n: int = 2, rounding: RoundingPolicy = DEFAULT_ROUNDING):
    return [get_objective(name, n, rounding) for name in FUNCTIONS]


def _prepared(obj: ObjectiveSpec, box: Box) -> Box:
    if box.n != obj.n:
        raise ObjectiveError(f"{obj.name} expects {obj.n} variables, got a box with {box.n}")
    if box.rounding is obj.rounding:
        return box
    return Box(box.lo, box.hi, obj.rounding)


def eval_interval(obj: ObjectiveSpec, box: Box):
    """Enclosure of f over the box (one Interval per box for batched input)."""
    return obj.evaluate(_prepared(obj, box))


def eval_gradient_interval(obj: ObjectiveSpec, box: Box, dims):
    """
    Enclosures of the partial derivatives over the box for the given 0-based
    dimensions; result shape is (..., len(dims)).
    """
    if not obj.differentiable:
        raise ObjectiveError(f"{obj.name} does not provide derivatives")
    dims = np.asarray(dims, dtype=np.intp)
    if dims.size and (dims.min() < 0 or dims.max() >= obj.n):
        raise ObjectiveError(f"Derivative dimensions out of range for n = {obj.n}: {dims.tolist()}")
    return obj.gradient(_prepared(obj, box), dims)


def eval_points_upper(obj: ObjectiveSpec, points):
    """Rigorous upper bounds of f at each row of `points` (shape (m, n))."""
    points = np.asarray(points, dtype=np.float64)
    if points.shape[-1] != obj.n:
        raise ObjectiveError(f"{obj.name} expects points with {obj.n} coordinates")
    if ((points < obj.lower) | (points > obj.upper)).any():
        raise ObjectiveError("Sample point lies outside the search domain")
    values = eval_interval(obj, Box(points, points, obj.rounding))
    return np.asarray(values.hi, dtype=np.float64)


def eval_point_upper(obj: ObjectiveSpec, x) -> float:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (obj.n,):
        raise ObjectiveError(f"{obj.name} expects a point with {obj.n} coordinates")
    return float(eval_points_upper(obj, x[None, :])[0])
