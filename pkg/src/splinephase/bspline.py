"""Exact evaluation of cardinal B-splines and finite spline functions.

Everything here is computed over the rationals.  Points, coefficients and
values are :class:`fractions.Fraction` instances, so rank and null-space
decisions made downstream never depend on a floating-point tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Tuple

__all__ = [
    "SplineFunction",
    "as_fraction",
    "check_degree",
    "eval_bspline",
    "eval_spline",
    "is_separable",
]


def as_fraction(value) -> Fraction:
    """Coerce an int, Fraction or numeric string to an exact Fraction.

    Floats are rejected: a binary float like 0.1 is not the rational it
    looks like, and silently admitting it would break exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rational values")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError(
            "refusing to coerce float %r; pass a Fraction or a 'p/q' string" % value
        )
    raise TypeError("cannot interpret %r as an exact rational" % (value,))


def check_degree(m: int) -> int:
    """Validate a spline degree (a positive integer)."""
    if isinstance(m, bool) or not isinstance(m, int):
        raise TypeError("degree must be an int, got %r" % (m,))
    if m < 1:
        raise ValueError("degree must be at least 1, got %d" % m)
    return m


@lru_cache(maxsize=None)
def _bspline_value(m: int, x: Fraction) -> Fraction:
    # Convolution-power recursion; the degree-0 base is the half-open
    # indicator of [0, 1), which is what makes the recursion exact at knots.
    if m == 0:
        return Fraction(1) if 0 <= x < 1 else Fraction(0)
    if x <= 0 or x >= m + 1:
        return Fraction(0)
    return (x * _bspline_value(m - 1, x) + (m + 1 - x) * _bspline_value(m - 1, x - 1)) / m


def eval_bspline(m: int, x) -> Fraction:
    """Value at ``x`` of the degree-``m`` cardinal B-spline.

    The spline is the (m+1)-fold convolution of the unit-interval
    indicator: a piecewise polynomial of degree m, zero outside (0, m+1)
    and strictly positive inside.
    """
    check_degree(m)
    return _bspline_value(m, as_fraction(x))


@dataclass(frozen=True)
class SplineFunction:
    """Finite linear combination of integer shifts of one cardinal B-spline.

    ``coeffs[i]`` multiplies the shift by ``start + i``.  With a window
    ``(n1, n2)`` the function is additionally multiplied by the indicator
    of the closed interval [n1, n2], and the coefficient range must be
    exactly ``n1 - m .. n2 - 1``: the shifts whose restrictions form a
    basis of the windowed spline space.
    """

    m: int
    start: int
    coeffs: Tuple[Fraction, ...]
    window: Optional[Tuple[int, int]] = None

    def __post_init__(self) -> None:
        check_degree(self.m)
        if isinstance(self.start, bool) or not isinstance(self.start, int):
            raise TypeError("start must be an int")
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in self.coeffs))
        if self.window is not None:
            n1, n2 = self.window
            if isinstance(n1, bool) or isinstance(n2, bool) or not (
                isinstance(n1, int) and isinstance(n2, int)
            ):
                raise TypeError("window endpoints must be ints")
            if n1 >= n2:
                raise ValueError("window must satisfy n1 < n2")
            object.__setattr__(self, "window", (n1, n2))
            if self.start != n1 - self.m or len(self.coeffs) != n2 - n1 + self.m:
                raise ValueError(
                    "windowed spline must carry coefficients for shifts "
                    "%d .. %d exactly" % (n1 - self.m, n2 - 1)
                )

    @property
    def end(self) -> int:
        """Index of the last coefficient."""
        return self.start + len(self.coeffs) - 1

    def coeff(self, n: int) -> Fraction:
        """Coefficient of the shift by ``n`` (zero outside the stored range)."""
        if self.start <= n <= self.end:
            return self.coeffs[n - self.start]
        return Fraction(0)

    def support_indices(self) -> Tuple[int, ...]:
        """Shift indices with a nonzero coefficient, ascending."""
        return tuple(
            self.start + i for i, c in enumerate(self.coeffs) if c != 0
        )

    def negated(self) -> "SplineFunction":
        return SplineFunction(self.m, self.start, tuple(-c for c in self.coeffs), self.window)


def eval_spline(f: SplineFunction, x) -> Fraction:
    """Exact value of ``f`` at ``x`` (zero outside the window, if any)."""
    x = as_fraction(x)
    if f.window is not None:
        n1, n2 = f.window
        if x < n1 or x > n2:
            return Fraction(0)
    total = Fraction(0)
    for i, c in enumerate(f.coeffs):
        if c == 0:
            continue
        n = f.start + i
        # The shift by n vanishes unless n < x < n + m + 1.
        if n < x < n + f.m + 1:
            total += c * _bspline_value(f.m, x - n)
    return total


def is_separable(f: SplineFunction) -> bool:
    """Whether ``f`` splits as f1 + f2, both nonzero, with f1*f2 = 0 on the window.

    Coefficient test: the window spans at least two units and some two
    consecutive nonzero coefficients sit m+1 or more shifts apart.
    """
    if f.window is None:
        raise ValueError("separability is defined relative to a restriction window")
    n1, n2 = f.window
    if n2 - n1 < 2:
        return False
    support = f.support_indices()
    return any(b - a >= f.m + 1 for a, b in zip(support, support[1:]))
