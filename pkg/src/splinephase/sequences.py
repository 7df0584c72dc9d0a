"""Point-set model, counting primitives and the sampling/phaseless certifiers.

Finite sets of sample points live in a :class:`SampleSet`; infinite,
eventually periodic sets are described finitely by a
:class:`PeriodicSetDescriptor`.  Every certifier is a pure function of
count lower bounds and returns a :class:`CertificateReport` carrying either
a pass verdict or the first violated inequality together with its witness
parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .bspline import as_fraction, check_degree

__all__ = [
    "CertificateReport",
    "PeriodicSetDescriptor",
    "SampleSet",
    "Violation",
    "count",
    "excess_sup",
    "extract_minimal_almost",
    "find_sampling_subwindow",
    "is_almost_phaseless",
    "is_global_phaseless",
    "is_local_phaseless",
    "is_local_sampling",
]


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


def _check_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError("%s must be an int, got %r" % (name, value))
    return value


@dataclass(frozen=True)
class SampleSet:
    """Sorted finite set of distinct rational points inside an integer window."""

    points: Tuple[Fraction, ...]
    window: Tuple[int, int]

    def __post_init__(self) -> None:
        n1, n2 = self.window
        _check_int(n1, "window start")
        _check_int(n2, "window end")
        if n1 >= n2:
            raise ValueError("window must satisfy n1 < n2")
        object.__setattr__(self, "window", (n1, n2))
        pts = tuple(as_fraction(x) for x in self.points)
        for a, b in zip(pts, pts[1:]):
            if a >= b:
                raise ValueError("points must be strictly increasing")
        if pts and (pts[0] < n1 or pts[-1] > n2):
            raise ValueError("all points must lie in [%d, %d]" % (n1, n2))
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def restrict(self, n1: int, n2: int) -> "SampleSet":
        """Points of this set inside [n1, n2], rehomed to that window."""
        pts = tuple(x for x in self.points if n1 <= x <= n2)
        return SampleSet(pts, (n1, n2))


@dataclass(frozen=True)
class PeriodicSetDescriptor:
    """Finite description of an infinite point set.

    The base set repeats ``offsets`` with integer period ``period``; a
    finite list of add/remove edits, confined to the integer window
    ``edit_window``, adjusts it.
    """

    period: int
    offsets: Tuple[Fraction, ...]
    edits: Tuple[Tuple[str, Fraction], ...] = ()
    edit_window: Tuple[int, int] = (0, 0)

    def __post_init__(self) -> None:
        _check_int(self.period, "period")
        if self.period < 1:
            raise ValueError("period must be a positive integer")
        offs = tuple(as_fraction(o) for o in self.offsets)
        for a, b in zip(offs, offs[1:]):
            if a >= b:
                raise ValueError("offsets must be strictly increasing")
        if offs and (offs[0] < 0 or offs[-1] >= self.period):
            raise ValueError("offsets must lie in [0, period)")
        object.__setattr__(self, "offsets", offs)

        lo, hi = self.edit_window
        _check_int(lo, "edit window start")
        _check_int(hi, "edit window end")
        if lo > hi:
            raise ValueError("edit window must satisfy lo <= hi")
        object.__setattr__(self, "edit_window", (lo, hi))

        edits: List[Tuple[str, Fraction]] = []
        added: List[Fraction] = []
        removed: List[Fraction] = []
        for op, point in self.edits:
            if op not in ("add", "remove"):
                raise ValueError("edit op must be 'add' or 'remove', got %r" % (op,))
            x = as_fraction(point)
            if x < lo or x > hi:
                raise ValueError("edit point %s outside edit window [%d, %d]" % (x, lo, hi))
            if op == "remove":
                if not self._periodic_contains(x):
                    raise ValueError("removal of %s does not hit a periodic point" % x)
                if x in removed:
                    raise ValueError("point %s removed twice" % x)
                removed.append(x)
            else:
                if x in added:
                    raise ValueError("point %s added twice" % x)
                added.append(x)
            edits.append((op, x))
        for x in added:
            if self._periodic_contains(x) and x not in removed:
                raise ValueError("added point %s duplicates a periodic point" % x)
        object.__setattr__(self, "edits", tuple(edits))

    def _periodic_contains(self, x: Fraction) -> bool:
        return bool(self.offsets) and (x % self.period) in self.offsets

    def per_period_count(self) -> int:
        return len(self.offsets)

    def contains(self, x) -> bool:
        x = as_fraction(x)
        present = self._periodic_contains(x)
        for op, p in self.edits:
            if p == x:
                present = op == "add"
        return present

    def points_in(self, lo: int, hi: int) -> Tuple[Fraction, ...]:
        """All points of the set inside the closed interval [lo, hi]."""
        pts = []
        for off in self.offsets:
            k = math.ceil(Fraction(lo - off, self.period))
            x = k * self.period + off
            while x <= hi:
                pts.append(x)
                x += self.period
        out = set(pts)
        for op, p in self.edits:
            if lo <= p <= hi:
                if op == "add":
                    out.add(p)
                else:
                    out.discard(p)
        return tuple(sorted(out))


@dataclass(frozen=True)
class Violation:
    """First failed inequality of a certification run."""

    condition: str
    params: Dict[str, object] = field(default_factory=dict)
    observed: int = 0
    required: int = 0


@dataclass(frozen=True)
class CertificateReport:
    verdict: bool
    violated: Optional[Violation] = None

    def __post_init__(self) -> None:
        if self.verdict != (self.violated is None):
            raise ValueError("verdict must be false exactly when a violation is present")


PointSet = Union[SampleSet, PeriodicSetDescriptor]


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------


def count(point_set: PointSet, lo, hi, *, include_lo: bool, include_hi: bool):
    """Number of points in an interval, with explicit endpoint-inclusion flags.

    ``lo``/``hi`` may be None on a descriptor for an unbounded end; the
    result is then ``math.inf`` whenever the periodic part is nonempty,
    and an exact int in every other case.
    """
    if isinstance(point_set, SampleSet):
        if lo is None or hi is None:
            raise ValueError("finite sample sets require finite interval endpoints")
        return _count_sorted(point_set.points, as_fraction(lo), as_fraction(hi), include_lo, include_hi)
    if isinstance(point_set, PeriodicSetDescriptor):
        return _count_descriptor(point_set, lo, hi, include_lo, include_hi)
    raise TypeError("expected a SampleSet or PeriodicSetDescriptor")


def _count_sorted(points, lo, hi, include_lo: bool, include_hi: bool) -> int:
    if hi < lo or (hi == lo and not (include_lo and include_hi)):
        return 0
    total = 0
    for x in points:
        if (x > lo or (include_lo and x == lo)) and (x < hi or (include_hi and x == hi)):
            total += 1
    return total


def _count_periodic_offsets(desc: PeriodicSetDescriptor, lo, hi, include_lo, include_hi) -> int:
    # Points k*period + off inside the interval, exact floor/ceil arithmetic.
    total = 0
    P = desc.period
    for off in desc.offsets:
        a = Fraction(lo - off, P)
        b = Fraction(hi - off, P)
        k_min = math.ceil(a) if include_lo else math.floor(a) + 1
        k_max = math.floor(b) if include_hi else math.ceil(b) - 1
        if k_max >= k_min:
            total += k_max - k_min + 1
    return total


def _count_descriptor(desc, lo, hi, include_lo, include_hi):
    if lo is None or hi is None:
        if desc.offsets:
            return math.inf
        lo_f = None if lo is None else as_fraction(lo)
        hi_f = None if hi is None else as_fraction(hi)
        total = 0
        for op, p in desc.edits:
            if op != "add":
                continue
            if lo_f is not None and (p < lo_f or (p == lo_f and not include_lo)):
                continue
            if hi_f is not None and (p > hi_f or (p == hi_f and not include_hi)):
                continue
            total += 1
        return total
    lo = as_fraction(lo)
    hi = as_fraction(hi)
    if hi < lo or (hi == lo and not (include_lo and include_hi)):
        return 0
    total = _count_periodic_offsets(desc, lo, hi, include_lo, include_hi)
    for op, p in desc.edits:
        inside = (p > lo or (include_lo and p == lo)) and (p < hi or (include_hi and p == hi))
        if inside:
            total += 1 if op == "add" else -1
    return total


def _c_open(E: PointSet, a, b):
    return count(E, a, b, include_lo=False, include_hi=False)


def _c_closed(E: PointSet, a, b):
    return count(E, a, b, include_lo=True, include_hi=True)


def _c_left_closed(E: PointSet, a, b):
    """Count over [a, b)."""
    return count(E, a, b, include_lo=True, include_hi=False)


def _c_right_closed(E: PointSet, a, b):
    """Count over (a, b]."""
    return count(E, a, b, include_lo=False, include_hi=True)


# ---------------------------------------------------------------------------
# Local certifiers
# ---------------------------------------------------------------------------
#
# Each certifier checks a family of count lower bounds over the window
# [n1, n2] and reports the first failure in the fixed order: cardinality,
# interior windows (lexicographic), left prefixes, right suffixes.


def _run_window_checks(E: SampleSet, m: int, cardinality, interior, prefix, suffix) -> CertificateReport:
    n1, n2 = E.window
    width = n2 - n1

    observed = len(E)
    if observed < cardinality:
        return CertificateReport(
            False, Violation("cardinality", {}, observed, cardinality)
        )
    for a in range(n1, n2):
        for b in range(a + 1, n2 + 1):
            required = interior(b - a)
            if required <= 0:
                continue
            got = _c_open(E, a, b)
            if got < required:
                return CertificateReport(
                    False, Violation("interior", {"n1": a, "n2": b}, got, required)
                )
    for k in range(1, width + 1):
        required = prefix(k)
        got = _c_left_closed(E, n1, n1 + k)
        if got < required:
            return CertificateReport(
                False, Violation("left_prefix", {"k": k}, got, required)
            )
    for k in range(1, width + 1):
        required = suffix(k)
        got = _c_right_closed(E, n2 - k, n2)
        if got < required:
            return CertificateReport(
                False, Violation("right_suffix", {"k": k}, got, required)
            )
    return CertificateReport(True)


def is_local_sampling(E: SampleSet, m: int) -> CertificateReport:
    """Certify that every windowed spline is linearly determined by its values on E.

    Conditions, for the window [n1, n2] of width w: at least w + m points
    in total, at least k points in each prefix [n1, n1+k) and suffix
    (n2-k, n2], and at least b - a - m points strictly inside every
    integer subwindow (a, b).
    """
    check_degree(m)
    width = E.window[1] - E.window[0]
    return _run_window_checks(
        E,
        m,
        cardinality=width + m,
        interior=lambda w: w - m,
        prefix=lambda k: k,
        suffix=lambda k: k,
    )


def is_almost_phaseless(E: SampleSet, m: int) -> CertificateReport:
    """Certify recovery up to sign of all windowed splines outside a null set.

    Same shape as the sampling conditions with every bound raised by one,
    except the interior bound which becomes b - a - m + 1.
    """
    check_degree(m)
    width = E.window[1] - E.window[0]
    return _run_window_checks(
        E,
        m,
        cardinality=width + m + 1,
        interior=lambda w: w - m + 1,
        prefix=lambda k: k + 1,
        suffix=lambda k: k + 1,
    )


def is_local_phaseless(E: SampleSet, m: int) -> CertificateReport:
    """Certify recovery up to sign of every nonseparable windowed spline.

    Conditions: at least 2(w + m) - 1 points in total, 2k + m - 1 in each
    boundary prefix/suffix of width k, and 2(b - a) - 1 strictly inside
    every integer subwindow (a, b).
    """
    check_degree(m)
    width = E.window[1] - E.window[0]
    return _run_window_checks(
        E,
        m,
        cardinality=2 * (width + m) - 1,
        interior=lambda w: 2 * w - 1,
        prefix=lambda k: 2 * k + m - 1,
        suffix=lambda k: 2 * k + m - 1,
    )


# ---------------------------------------------------------------------------
# Global certifier
# ---------------------------------------------------------------------------


def _pure_closed_count(desc: PeriodicSetDescriptor, lo, hi) -> int:
    """Closed-interval count against the periodic part alone (edits ignored)."""
    return _count_periodic_offsets(desc, as_fraction(lo), as_fraction(hi), True, True)


def _pure_open_count(desc: PeriodicSetDescriptor, lo, hi) -> int:
    return _count_periodic_offsets(desc, as_fraction(lo), as_fraction(hi), False, False)


def _scan_bounds(desc: PeriodicSetDescriptor) -> Tuple[int, int]:
    lo, hi = desc.edit_window
    P = desc.period
    return lo - 2 * P - 2, hi + 2 * P + 2


def _find_density_violation(desc: PeriodicSetDescriptor, start: int) -> Tuple[int, int, int, int]:
    # Per-period density below 2 forces arbitrarily deep interior deficits;
    # widen until one is found (termination is guaranteed by the deficit).
    b = start + 1
    while True:
        got = _c_open(desc, start, b)
        required = 2 * (b - start) - 1
        if got < required:
            return start, b, got, required
        b += 1


def _p1_violation(desc: PeriodicSetDescriptor) -> Optional[Violation]:
    lo, hi = _scan_bounds(desc)
    for a in range(lo, hi):
        for b in range(a + 1, hi + 1):
            got = _c_open(desc, a, b)
            required = 2 * (b - a) - 1
            if got < required:
                return Violation("P1", {"n1": a, "n2": b}, got, required)
    delta = desc.per_period_count() - 2 * desc.period
    if delta < 0:
        a, b, got, required = _find_density_violation(desc, hi)
        return Violation("P1", {"n1": a, "n2": b}, got, required)
    return None


def _max_periodic_excess(desc: PeriodicSetDescriptor) -> int:
    # Excess of closed windows against the pure periodic pattern.  With
    # per-period density exactly 2 the excess is periodic in both window
    # endpoints, so starts in one period and lengths up to one period
    # exhaust all values.
    P = desc.period
    best = None
    for a in range(0, P):
        for length in range(1, P + 1):
            excess = _pure_closed_count(desc, a, a + length) - 2 * length
            if best is None or excess > best:
                best = excess
    return best


def _p2_violation(desc: PeriodicSetDescriptor, m: int) -> Optional[Violation]:
    delta = desc.per_period_count() - 2 * desc.period
    if delta > 0:
        return None
    best = _max_periodic_excess(desc)
    required = 2 * m - 1
    if best >= required:
        return None
    return Violation("P2", {"max_window_excess": best}, best, required)


def _p2prime_violation(desc: PeriodicSetDescriptor) -> Optional[Violation]:
    lo, hi = _scan_bounds(desc)
    P = desc.period

    # A closed unit interval in the periodic tails holds three points for
    # some residue iff it does so for infinitely many on both sides.
    tail_triples = any(
        _pure_closed_count(desc, n - 1, n) >= 3 for n in range(0, P)
    )
    if tail_triples:
        return None

    triples = [n for n in range(lo, hi + 1) if _c_closed(desc, n - 1, n) >= 3]
    if not triples:
        return Violation("P2prime", {"reason": "no unit interval holds three points"}, 0, 1)

    first, last = triples[0], triples[-1]
    for n in range(last, hi + 1):
        got = _c_open(desc, n, n + 1)
        if got != 2:
            return Violation("P2prime", {"n": n, "side": "right"}, got, 2)
    for n in range(lo - 1, first):
        got = _c_open(desc, n, n + 1)
        if got != 2:
            return Violation("P2prime", {"n": n, "side": "left"}, got, 2)
    for n in range(0, P):
        got = _pure_open_count(desc, n, n + 1)
        if got != 2:
            return Violation("P2prime", {"n": "periodic residue %d" % n, "side": "tail"}, got, 2)
    return None


def is_global_phaseless(D: PeriodicSetDescriptor, m: int) -> CertificateReport:
    """Certify recovery up to sign of every nonseparable spline on the whole line.

    Checks the interior density condition (at least 2w - 1 points strictly
    inside every integer window of width w) and, on top of it, the
    two-sided window-excess condition for degrees two and up or the
    triple-point unit-interval pattern for degree one.  The infinite
    quantifiers are reduced to finite scans around the edit window plus
    one period of the tails.
    """
    check_degree(m)
    if not isinstance(D, PeriodicSetDescriptor):
        raise TypeError("global certification requires a PeriodicSetDescriptor")
    violation = _p1_violation(D)
    if violation is None:
        violation = _p2_violation(D, m) if m >= 2 else _p2prime_violation(D)
    if violation is not None:
        return CertificateReport(False, violation)
    return CertificateReport(True)


def excess_sup(D: PeriodicSetDescriptor, n0: int, direction: str):
    """Supremum of closed-window point counts beyond twice the window width.

    For ``direction="right"`` this is sup over n > n0 of
    #(E in [n0, n]) - 2(n - n0); for ``"left"`` the mirror image.  The
    value is ``math.inf`` exactly when the per-period point count exceeds
    twice the period, and an exact int otherwise.
    """
    _check_int(n0, "n0")
    if direction not in ("left", "right"):
        raise ValueError("direction must be 'left' or 'right'")
    P = D.period
    delta = D.per_period_count() - 2 * P
    if delta > 0:
        return math.inf
    lo, hi = D.edit_window
    if direction == "right":
        stop = max(n0, hi + 1) + P
        values = (
            _c_closed(D, n0, n) - 2 * (n - n0) for n in range(n0 + 1, stop + 1)
        )
    else:
        stop = min(n0, lo - 1) - P
        values = (
            _c_closed(D, n, n0) - 2 * (n0 - n) for n in range(stop, n0)
        )
    return max(values)


# ---------------------------------------------------------------------------
# Constructive subsequence searches
# ---------------------------------------------------------------------------


def extract_minimal_almost(E: SampleSet, m: int) -> SampleSet:
    """Shrink an almost-phaseless set to one of minimal cardinality.

    Returns a subset with exactly width + m + 1 points that still passes
    :func:`is_almost_phaseless`.  For degree two and up, points are
    removed one at a time from the unit interval singled out by the
    prefix-slack rule (smallest point first when several qualify); for
    degree one that rule can break the interior bound, so the smallest
    point whose removal keeps all conditions is dropped instead.
    """
    check_degree(m)
    if not is_almost_phaseless(E, m).verdict:
        raise ValueError("input must pass the almost-phaseless certification")
    n1, n2 = E.window
    width = n2 - n1
    target = width + m + 1
    points = list(E.points)

    while len(points) > target:
        if m == 1:
            for i, x in enumerate(points):
                candidate = SampleSet(tuple(points[:i] + points[i + 1:]), E.window)
                if is_almost_phaseless(candidate, m).verdict:
                    del points[i]
                    break
            else:  # pragma: no cover - impossible while the certificate holds
                raise RuntimeError("no removable point found")
        else:
            current = SampleSet(tuple(points), E.window)
            # slack of the prefix counts: l_k = #(E in [n1, n1+k)) - k - 1
            slack = [
                _c_left_closed(current, n1, n1 + k) - k - 1 for k in range(1, width + 1)
            ]
            k0 = width
            for k in range(width, 0, -1):
                if slack[k - 1] >= 1:
                    k0 = k
                else:
                    break
            removable = [x for x in points if n1 + k0 - 1 < x < n1 + k0]
            points.remove(removable[0])
    result = SampleSet(tuple(points), E.window)
    if not is_almost_phaseless(result, m).verdict:  # pragma: no cover
        raise RuntimeError("extraction produced an invalid subset")
    return result


def find_sampling_subwindow(E: SampleSet, m: int) -> Optional[Tuple[int, int]]:
    """Find an integer subwindow on which E restricts to a sampling sequence.

    Returns None exactly when E has fewer than width + m points.  The
    search recurses on the first failing count condition, checking the
    boundary prefixes and suffixes before interior windows: the recursion
    step for an interior violation is only valid once the boundary counts
    hold.
    """
    check_degree(m)
    n1, n2 = E.window
    if len(E) < (n2 - n1) + m:
        return None
    return _search_sampling(E, n1, n2, m)


def _search_sampling(E: SampleSet, a: int, b: int, m: int) -> Tuple[int, int]:
    sub = E.restrict(a, b)
    if is_local_sampling(sub, m).verdict:
        return (a, b)
    width = b - a
    for k in range(1, width + 1):
        if _c_left_closed(sub, a, a + k) < k:
            return _search_sampling(E, a + k, b, m)
    for k in range(1, width + 1):
        if _c_right_closed(sub, b - k, b) < k:
            return _search_sampling(E, a, b - k, m)
    for lo in range(a, b):
        for hi in range(lo + 1, b + 1):
            if hi - lo <= m:
                continue
            if _c_open(sub, lo, hi) < hi - lo - m:
                if lo > a:
                    return _search_sampling(E, a, lo, m)
                return _search_sampling(E, hi, b, m)
    raise AssertionError("certifier and subwindow search disagree")  # pragma: no cover
