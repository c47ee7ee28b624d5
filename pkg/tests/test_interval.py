import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from src.interval import (
    Interval,
    IntervalDomainError,
    InvalidIntervalError,
    add,
    constant,
    contains,
    cos,
    decimal_constant,
    div,
    exp,
    hull,
    interval_prod,
    interval_sum,
    intersect,
    mul,
    point,
    prefix_suffix_products,
    refine_union,
    sin,
    sinc,
    sqr,
    sqrt,
    sub,
    transcendental,
    width,
)
from src.rounding import RoundingPolicy, SLACK_ULPS, two_product, two_sum

mpmath.mp.dps = 60


def bounds(x):
    return float(x.lo), float(x.hi)


def random_intervals(rng, count, scale=100.0):
    a = rng.uniform(-scale, scale, count)
    b = rng.uniform(-scale, scale, count)
    return Interval(np.minimum(a, b), np.maximum(a, b))


def encloses_fraction(result, index, exact):
    return Fraction(float(result.lo[index])) <= exact <= Fraction(float(result.hi[index]))


def test_add_cases():
    assert bounds(Interval(1, 2) + Interval(3, 4)) == (4.0, 6.0)
    assert bounds(add(point(0.0), Interval(-1.5, 2.25))) == (-1.5, 2.25)
    assert bounds(Interval(-np.inf, 1) + Interval(2, 3)) == (-np.inf, 4.0)


def test_add_indeterminate_endpoint_widens():
    result = Interval(np.inf, np.inf) + Interval(-np.inf, -np.inf)
    assert bounds(result) == (-np.inf, np.inf)


def test_sub_cases():
    assert bounds(Interval(0, 1) - Interval(0, 1)) == (-1.0, 1.0)
    assert bounds(sub(Interval(5, 7), point(0.0))) == (5.0, 7.0)
    assert bounds(Interval(5, 7) - Interval(2, 3)) == (2.0, 5.0)


def test_mul_cases():
    assert bounds(Interval(1, 2) * Interval(-3, 4)) == (-6.0, 8.0)
    assert bounds(Interval(0, 1) * Interval(0, 1)) == (0.0, 1.0)
    assert bounds(Interval(-1, 1) * Interval(-1, 1)) == (-1.0, 1.0)


def test_mul_zero_times_infinity_is_zero():
    assert bounds(point(0.0) * Interval(1, np.inf)) == (0.0, 0.0)


def test_div_cases():
    assert bounds(Interval(1, 2) / Interval(2, 4)) == (0.25, 1.0)
    assert bounds(div(Interval(-3, 7), point(1.0))) == (-3.0, 7.0)
    assert bounds(Interval(1, 2) / Interval(-1, 1)) == (-np.inf, np.inf)


def test_div_by_interval_touching_zero():
    assert bounds(Interval(1, 2) / Interval(0, 2)) == (0.5, np.inf)
    assert bounds(Interval(-2, -1) / Interval(0, 2)) == (-np.inf, -0.5)
    assert bounds(Interval(1, 2) / Interval(-2, 0)) == (-np.inf, -0.5)
    assert bounds(Interval(-1, 2) / Interval(0, 2)) == (-np.inf, np.inf)


def test_sqr_cases():
    assert bounds(sqr(Interval(-1, 1))) == (0.0, 1.0)
    assert bounds(sqr(Interval(2, 3))) == (4.0, 9.0)
    assert bounds(sqr(Interval(-3, -2))) == (4.0, 9.0)


def test_sqr_is_tighter_than_mul(rng):
    x = random_intervals(rng, 500)
    squared = sqr(x)
    product = mul(x, x)
    assert np.all(product.lo <= squared.lo) and np.all(squared.hi <= product.hi)
    straddles = (x.lo < 0) & (x.hi > 0)
    assert np.all(product.lo[straddles] < squared.lo[straddles])


def test_sqrt_cases():
    assert bounds(sqrt(Interval(0, 4))) == (0.0, 2.0)
    assert bounds(sqrt(Interval(-1e-18, 4))) == (0.0, 2.0)
    lo, hi = bounds(sqrt(point(1.0)))
    assert lo <= 1.0 <= hi and hi - lo <= 4e-16


def test_sqrt_of_negative_interval_raises():
    with pytest.raises(IntervalDomainError):
        sqrt(Interval(-2, -1))


def test_exp_encloses_e():
    result = exp(Interval(0, 1))
    assert float(result.lo) <= 1.0
    assert mpmath.mpf(float(result.hi)) >= mpmath.e
    assert float(result.hi) - math.e < 1e-14


def test_exp_overflow_gives_infinite_upper_bound():
    assert float(exp(Interval(0, 1000)).hi) == np.inf


def test_cos_full_period():
    two_pi = constant("pi") * 2.0
    assert bounds(cos(Interval(0.0, float(two_pi.hi)))) == (-1.0, 1.0)
    assert bounds(cos(Interval(-100.0, 100.0))) == (-1.0, 1.0)


def test_cos_quarter_period():
    half_pi = constant("pi") / 2.0
    lo, hi = bounds(cos(Interval(0.0, float(half_pi.hi))))
    assert hi == 1.0
    assert lo <= 0.0 <= lo + 1e-15


def test_sin_reaches_extremes_only_when_crossed():
    lo, hi = bounds(sin(Interval(1.0, 2.0)))
    assert hi == 1.0
    assert lo == pytest.approx(math.sin(1.0), abs=1e-15) and lo <= math.sin(1.0)
    lo, hi = bounds(sin(Interval(0.1, 0.2)))
    assert lo <= math.sin(0.1) and hi >= math.sin(0.2) and hi < 0.2


def test_transcendental_dispatch():
    assert bounds(transcendental("cos", point(0.0)))[1] == 1.0
    with pytest.raises(ValueError):
        transcendental("tan", point(0.0))


def test_constants_are_tight():
    pi = constant("pi")
    assert mpmath.mpf(float(pi.lo)) < mpmath.pi < mpmath.mpf(float(pi.hi))
    assert float(pi.hi) == np.nextafter(float(pi.lo), np.inf)
    assert float(pi.lo) < 3.14159265358979 + 1e-14
    e = constant("e")
    assert float(e.lo) < 2.718281828459045 + 1e-15 and mpmath.mpf(float(e.hi)) > mpmath.e


def test_decimal_constant_encloses_exact_value():
    tenth = decimal_constant("0.1")
    assert Fraction(float(tenth.lo)) < Fraction(1, 10) < Fraction(float(tenth.hi))
    quarter = decimal_constant("0.25")
    assert bounds(quarter) == (0.25, 0.25)
    small = decimal_constant("1/4000")
    assert Fraction(float(small.lo)) <= Fraction(1, 4000) <= Fraction(float(small.hi))


def test_point_and_invalid_intervals():
    assert bounds(point(0.9)) == (0.9, 0.9)
    assert bounds(point(0)) == (0.0, 0.0)
    with pytest.raises(InvalidIntervalError):
        point(float("nan"))
    with pytest.raises(InvalidIntervalError):
        Interval(2.0, 1.0)
    with pytest.raises(InvalidIntervalError):
        Interval(float("nan"), 1.0)


def test_width_contains_hull():
    assert width(Interval(1, 1.5)) == 0.5
    assert contains(Interval(-1, 1), 0)
    assert not contains(Interval(-1, 1), 2)
    assert bounds(hull(Interval(0, 1), Interval(2, 3))) == (0.0, 3.0)


def test_intersect():
    assert bounds(intersect(Interval(0, 2), Interval(1, 3))) == (1.0, 2.0)
    with pytest.raises(InvalidIntervalError):
        intersect(Interval(0, 1), Interval(2, 3))


def test_reductions():
    x = Interval([1.0, 2.0, 3.0], [1.0, 2.0, 4.0])
    assert bounds(interval_sum(x)) == (6.0, 7.0)
    assert bounds(interval_prod(x)) == (6.0, 8.0)
    empty = Interval(np.zeros(0), np.zeros(0))
    assert bounds(interval_sum(empty)) == (0.0, 0.0)
    assert bounds(interval_prod(empty)) == (1.0, 1.0)


def test_prefix_suffix_products():
    prefix, suffix = prefix_suffix_products(point(np.array([2.0, 3.0, 4.0])))
    assert prefix.lo.tolist() == [1.0, 2.0, 6.0]
    assert suffix.lo.tolist() == [12.0, 4.0, 1.0]


def test_sinc_encloses_samples(rng):
    assert bounds(sinc(point(0.0))) == (1.0, 1.0)
    for lo, hi in [(0.0, 0.5), (-0.3, 2.0), (1.0, 3.0), (0.0, 10.0), (4.0, 4.6), (-9.0, -2.0)]:
        result = sinc(Interval(lo, hi))
        for z in np.linspace(lo, hi, 101):
            value = 1.0 if z == 0 else math.sin(z) / z
            assert float(result.lo) - 1e-15 <= value <= float(result.hi) + 1e-15


def test_add_sub_mul_contain_exact_results(rng):
    x = random_intervals(rng, 2000)
    y = random_intervals(rng, 2000)
    results = {"add": add(x, y), "sub": sub(x, y), "mul": mul(x, y)}
    for i in range(2000):
        xs = [Fraction(float(x.lo[i])), Fraction(float(x.hi[i]))]
        ys = [Fraction(float(y.lo[i])), Fraction(float(y.hi[i]))]
        exact = {
            "add": [xs[0] + ys[0], xs[1] + ys[1]],
            "sub": [xs[0] - ys[1], xs[1] - ys[0]],
            "mul": [a * b for a in xs for b in ys],
        }
        for name, values in exact.items():
            assert encloses_fraction(results[name], i, min(values))
            assert encloses_fraction(results[name], i, max(values))


def test_optimal_rounding_is_tight_for_exact_operations():
    # exactly representable results need no outward step
    assert bounds(point(0.5) * point(0.25)) == (0.125, 0.125)
    result = point(0.1) + point(0.2)
    assert float(result.hi) == np.nextafter(float(result.lo), np.inf)


def test_div_contains_high_precision_quotient(rng):
    x = random_intervals(rng, 500)
    y = Interval(rng.uniform(0.5, 2.0, 500), rng.uniform(2.0, 50.0, 500))
    result = div(x, y)
    for i in range(500):
        for a in (x.lo[i], x.hi[i]):
            for b in (y.lo[i], y.hi[i]):
                q = mpmath.mpf(float(a)) / mpmath.mpf(float(b))
                assert mpmath.mpf(float(result.lo[i])) <= q <= mpmath.mpf(float(result.hi[i]))


def wide_intervals(rng, count):
    # magnitudes from flushed-to-zero and subnormal up to near overflow
    sign = rng.choice([-1.0, 1.0], (2, count))
    with np.errstate(under="ignore"):
        values = sign * np.power(10.0, rng.uniform(-330.0, 308.2, (2, count)))
    return Interval(np.minimum(values[0], values[1]), np.maximum(values[0], values[1]))


def within(result, index, exact):
    lo = float(result.lo[index])
    hi = float(result.hi[index])
    above = lo == -np.inf or (lo != np.inf and Fraction(lo) <= exact)
    below = hi == np.inf or (hi != -np.inf and exact <= Fraction(hi))
    return above and below


def check_wide_containment(rng, count):
    x = wide_intervals(rng, count)
    y = wide_intervals(rng, count)
    results = {"add": add(x, y), "sub": sub(x, y), "mul": mul(x, y), "div": div(x, y), "sqr": sqr(x)}
    for i in range(count):
        xs = [Fraction(float(x.lo[i])), Fraction(float(x.hi[i]))]
        ys = [Fraction(float(y.lo[i])), Fraction(float(y.hi[i]))]
        squares = [v * v for v in xs] + ([Fraction(0)] if xs[0] < 0 < xs[1] else [])
        exact = {
            "add": [xs[0] + ys[0], xs[1] + ys[1]],
            "sub": [xs[0] - ys[1], xs[1] - ys[0]],
            "mul": [a * b for a in xs for b in ys],
            "div": [a / b for a in xs for b in ys if b != 0],
            "sqr": squares,
        }
        for name, values in exact.items():
            for value in values:
                assert within(results[name], i, value), (name, i, float(x.lo[i]), float(x.hi[i]),
                                                         float(y.lo[i]), float(y.hi[i]))


def test_div_tiny_quotient_cases():
    result = div(point(1e-300), point(1e300))
    assert float(result.lo) <= 0.0 < float(result.hi)
    assert within(result, (), Fraction(1e-300) / Fraction(1e300))
    result = div(point(-1e-300), point(1e300))
    assert float(result.lo) < 0.0 <= float(result.hi)
    x = Interval(9.0e-105, 7.4e-10)
    y = Interval(-1.44e208, -6.5e-230)
    result = div(x, y)
    for a in (9.0e-105, 7.4e-10):
        for b in (-1.44e208, -6.5e-230):
            assert within(result, (), Fraction(a) / Fraction(b))
    # a normal quotient that is exact keeps its tight bounds
    assert bounds(div(point(1.0), point(4.0))) == (0.25, 0.25)


def test_containment_over_wide_magnitudes(rng):
    check_wide_containment(rng, 2000)


@pytest.mark.slow
def test_containment_over_wide_magnitudes_at_scale():
    check_wide_containment(np.random.default_rng(7), 100_000)


def test_elementary_functions_contain_high_precision_values(rng):
    values = rng.uniform(-30.0, 30.0, 500)
    x = point(values)
    results = {
        "exp": (exp(x), mpmath.exp),
        "sin": (sin(x), mpmath.sin),
        "cos": (cos(x), mpmath.cos),
        "sqrt": (sqrt(point(np.abs(values))), lambda v: mpmath.sqrt(abs(v))),
    }
    for name, (result, oracle) in results.items():
        for i, v in enumerate(values):
            exact = oracle(mpmath.mpf(float(v)))
            assert mpmath.mpf(float(result.lo[i])) <= exact <= mpmath.mpf(float(result.hi[i])), name


def test_trig_ranges_contain_interior_values(rng):
    lo = rng.uniform(-20.0, 20.0, 300)
    hi = lo + rng.uniform(0.0, 4.0, 300)
    x = Interval(lo, hi)
    for fn, oracle in ((sin, mpmath.sin), (cos, mpmath.cos)):
        result = fn(x)
        assert np.all(result.lo >= -1.0) and np.all(result.hi <= 1.0)
        for i in range(300):
            for t in np.linspace(lo[i], hi[i], 9):
                exact = oracle(mpmath.mpf(float(t)))
                assert mpmath.mpf(float(result.lo[i])) <= exact <= mpmath.mpf(float(result.hi[i]))


def test_inclusion_isotonicity(rng):
    outer = random_intervals(rng, 1000, scale=50.0)
    t = rng.uniform(0.0, 1.0, (2, 1000))
    inner_lo = outer.lo + (outer.hi - outer.lo) * np.minimum(t[0], t[1])
    inner_hi = outer.lo + (outer.hi - outer.lo) * np.maximum(t[0], t[1])
    inner = Interval(np.clip(inner_lo, outer.lo, outer.hi), np.clip(inner_hi, outer.lo, outer.hi))
    other = random_intervals(rng, 1000, scale=50.0)
    positive = Interval(rng.uniform(1.0, 2.0, 1000), rng.uniform(2.0, 3.0, 1000))
    pairs = [
        (add(inner, other), add(outer, other)),
        (sub(other, inner), sub(other, outer)),
        (mul(inner, other), mul(outer, other)),
        (div(inner, positive), div(outer, positive)),
        (sqr(inner), sqr(outer)),
    ]
    for small, large in pairs:
        assert np.all(large.lo <= small.lo) and np.all(small.hi <= large.hi)


def test_slack_rounding_always_steps_outward():
    slack = RoundingPolicy(SLACK_ULPS, 2)
    result = Interval(1.0, 1.0, slack) + Interval(1.0, 1.0, slack)
    assert float(result.lo) == np.nextafter(np.nextafter(2.0, 0.0), 0.0)
    assert float(result.hi) == np.nextafter(np.nextafter(2.0, 4.0), 4.0)
    assert result.rounding is slack


def test_rounding_policy_labels():
    assert RoundingPolicy.parse("optimal-outward") == RoundingPolicy()
    assert RoundingPolicy.parse("slack-ulps(3)") == RoundingPolicy(SLACK_ULPS, 3)
    assert RoundingPolicy(SLACK_ULPS, 3).label == "slack-ulps(3)"
    with pytest.raises(ValueError):
        RoundingPolicy.parse("nearest")
    with pytest.raises(ValueError):
        RoundingPolicy(SLACK_ULPS, 0)


def test_error_free_transformations():
    s, e = two_sum(np.float64(1.0), np.float64(1e-20))
    assert s == 1.0 and e == 1e-20
    p, e = two_product(np.float64(0.1), np.float64(0.1))
    assert Fraction(float(p)) + Fraction(float(e)) == Fraction(0.1) * Fraction(0.1)
    _, e = two_product(np.float64(1e-310), np.float64(1e300))
    assert np.isnan(e)


def test_dependence_problem_and_refinement():
    x = Interval(0.0, 1.0)
    assert bounds(x - x * x) == (-1.0, 1.0)
    assert bounds(0.25 - sqr(x - 0.5)) == (0.0, 0.25)
    union = refine_union(lambda piece: piece - piece * piece, x, 1000)
    lo, hi = bounds(union)
    assert -0.0011 <= lo <= 0.0 and 0.25 <= hi <= 0.2511
    coarse = refine_union(lambda piece: piece - piece * piece, x, 10)
    assert float(coarse.lo) < lo and float(coarse.hi) > hi
