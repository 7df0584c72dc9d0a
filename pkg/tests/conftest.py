"""Shared generators for the test suite.

Everything random is driven by seeded random.Random instances so failures
reproduce; expected values in the tests themselves are frozen from
independent computations, never from the code under test.
"""

from __future__ import annotations

import random
from fractions import Fraction

from splinephase import (
    PeriodicSetDescriptor,
    SampleSet,
    SplineFunction,
    eval_spline,
    is_local_phaseless,
    is_separable,
)


def arithmetic_descriptor(alpha, beta) -> PeriodicSetDescriptor:
    """Descriptor of the set {n*alpha + beta : n integer} for rational alpha > 0."""
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    period = alpha.numerator
    offsets = sorted((alpha * i + beta) % period for i in range(alpha.denominator))
    return PeriodicSetDescriptor(period, tuple(offsets))


def uniform_points(n1: int, n2: int, k: int) -> SampleSet:
    step = Fraction(n2 - n1, k - 1)
    return SampleSet(tuple(n1 + step * i for i in range(k)), (n1, n2))


def example2_points(n1: int, n2: int, k: int, m: int) -> SampleSet:
    step = Fraction(n2 - n1 - 2, k - 1)
    interior = [n1 + 1 + step * i for i in range(k)]
    left = [n1 + Fraction(i, m + 1) for i in range(m + 1)]
    right = [n2 - Fraction(i, m + 1) for i in range(m + 1)]
    return SampleSet(tuple(sorted(set(interior) | set(left) | set(right))), (n1, n2))


def random_phaseless_set(rng: random.Random, window, m: int) -> SampleSet:
    """Random set certified phaseless: two interior points per unit interval
    plus m+1 extra points hugging each end of the window."""
    n1, n2 = window
    points = set()
    for unit in range(n1, n2):
        while len([p for p in points if unit < p < unit + 1]) < 2:
            points.add(unit + Fraction(rng.randint(1, 63), 64))
    for _ in range(m + 1):
        while True:
            x = n1 + Fraction(rng.randint(1, 63), 64)
            if x not in points:
                points.add(x)
                break
        while True:
            x = n2 - Fraction(rng.randint(1, 63), 64)
            if x not in points:
                points.add(x)
                break
    E = SampleSet(tuple(sorted(points)), window)
    assert is_local_phaseless(E, m).verdict
    return E


def random_nonseparable_spline(rng: random.Random, window, m: int) -> SplineFunction:
    n1, n2 = window
    size = (n2 - n1) + m
    while True:
        coeffs = tuple(Fraction(rng.randint(-3, 3)) for _ in range(size))
        if not any(coeffs):
            continue
        f = SplineFunction(m, n1 - m, coeffs, window)
        if not is_separable(f):
            return f


def random_separable_spline(rng: random.Random, window, m: int) -> SplineFunction:
    """Nonzero blocks at both ends of the shift range with a zero gap of m+1."""
    n1, n2 = window
    size = (n2 - n1) + m
    assert size >= m + 2, "window too short to host a separable spline"
    coeffs = [Fraction(0)] * size
    coeffs[0] = Fraction(rng.choice([1, 2, 3, -1, -2]))
    tail_start = m + 1
    for i in range(tail_start, size):
        coeffs[i] = Fraction(rng.randint(-3, 3))
    coeffs[size - 1] = Fraction(rng.choice([1, 2, -1, -3]))
    f = SplineFunction(m, n1 - m, tuple(coeffs), window)
    assert is_separable(f)
    return f


def unsigned_values(f: SplineFunction, E: SampleSet):
    return tuple(abs(eval_spline(f, x)) for x in E.points)


def canonical_coeffs(coeffs):
    lead = next((c for c in coeffs if c != 0), None)
    if lead is not None and lead < 0:
        return tuple(-c for c in coeffs)
    return tuple(coeffs)
