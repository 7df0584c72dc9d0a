"""Sign recovery from unsigned samples, the brute-force phaseless oracle,
and constructive counterexamples for failing sample sets.

The oracle and the counterexample builder share one engine: for a split of
the samples into two halves, the coefficient vectors vanishing on each half
form exact rational null spaces, and a recovery ambiguity exists precisely
when some pair of realizable coefficient supports, one per side, has a
union with no zero-gap of length m+1.  Scaling one side so its smallest
nonzero magnitude beats the other's largest (no accidental cancellation)
turns any such pair of supports into an explicit pair of nonseparable
splines agreeing in modulus on every sample.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .bspline import SplineFunction, as_fraction, check_degree, eval_spline, is_separable, _bspline_value
from .collocation import null_space
from .sequences import CertificateReport, SampleSet, Violation, is_local_phaseless

__all__ = [
    "CounterexamplePair",
    "InternalInconsistencyError",
    "PARTITION_ORACLE_CAP",
    "RecoveryResult",
    "UnsignedSamples",
    "build_counterexample",
    "partition_oracle",
    "reconstruct",
    "verify_modulus_agreement",
]

PARTITION_ORACLE_CAP = 20


class InternalInconsistencyError(RuntimeError):
    """A certified-failing sample set yielded no counterexample; one must exist."""


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnsignedSamples:
    """Nonnegative sample magnitudes aligned with the points of a sample set."""

    sample_set: SampleSet
    values: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        vals = tuple(as_fraction(v) for v in self.values)
        if len(vals) != len(self.sample_set.points):
            raise ValueError("one value per sample point is required")
        if any(v < 0 for v in vals):
            raise ValueError("unsigned sample values must be nonnegative")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class RecoveryResult:
    """Outcome of sign recovery: unique, ambiguous or infeasible.

    Solutions are canonical representatives (first nonzero coefficient
    positive) and each reproduces the unsigned samples exactly.  For an
    ambiguous outcome, ``certificate`` holds two solutions that are not
    equal up to a global sign.
    """

    status: str
    solutions: Tuple[SplineFunction, ...]
    certificate: Optional[Tuple[SplineFunction, SplineFunction]] = None

    def __post_init__(self) -> None:
        if self.status not in ("unique", "ambiguous", "infeasible"):
            raise ValueError("status must be unique, ambiguous or infeasible")
        if self.status == "unique" and len(self.solutions) != 1:
            raise ValueError("a unique recovery carries exactly one representative")


@dataclass(frozen=True)
class CounterexamplePair:
    """Two windowed splines with equal moduli on a sample set, not sign-equal."""

    f1: SplineFunction
    f2: SplineFunction
    nonseparable: Tuple[bool, bool]


# ---------------------------------------------------------------------------
# Incremental exact linear systems
# ---------------------------------------------------------------------------


class _Eliminator:
    """Row-echelon accumulator over the rationals with exact consistency checks."""

    __slots__ = ("ncols", "rows", "rhs", "pivot_cols")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: List[List[Fraction]] = []
        self.rhs: List[Fraction] = []
        self.pivot_cols: List[int] = []

    def copy(self) -> "_Eliminator":
        other = _Eliminator.__new__(_Eliminator)
        other.ncols = self.ncols
        other.rows = [row[:] for row in self.rows]
        other.rhs = self.rhs[:]
        other.pivot_cols = self.pivot_cols[:]
        return other

    def add(self, row: Sequence[Fraction], rhs: Fraction) -> bool:
        """Fold one equation in; False means the system became inconsistent."""
        row = list(row)
        for i, pc in enumerate(self.pivot_cols):
            if row[pc] != 0:
                factor = row[pc] / self.rows[i][pc]
                row = [a - factor * b for a, b in zip(row, self.rows[i])]
                rhs = rhs - factor * self.rhs[i]
        pivot = next((c for c in range(self.ncols) if row[c] != 0), None)
        if pivot is None:
            return rhs == 0
        position = next(
            (i for i, pc in enumerate(self.pivot_cols) if pc > pivot),
            len(self.pivot_cols),
        )
        self.rows.insert(position, row)
        self.rhs.insert(position, rhs)
        self.pivot_cols.insert(position, pivot)
        return True

    def solve(self) -> Tuple[Tuple[Fraction, ...], Tuple[Tuple[Fraction, ...], ...]]:
        """Particular solution (free coordinates zero) and a null-space basis."""
        # Back-substitute into reduced form first.
        rows = [row[:] for row in self.rows]
        rhs = self.rhs[:]
        for i in range(len(rows) - 1, -1, -1):
            pc = self.pivot_cols[i]
            pv = rows[i][pc]
            rows[i] = [v / pv for v in rows[i]]
            rhs[i] = rhs[i] / pv
            for j in range(i):
                f = rows[j][pc]
                if f != 0:
                    rows[j] = [a - f * b for a, b in zip(rows[j], rows[i])]
                    rhs[j] = rhs[j] - f * rhs[i]
        particular = [Fraction(0)] * self.ncols
        for i, pc in enumerate(self.pivot_cols):
            particular[pc] = rhs[i]
        free_cols = [c for c in range(self.ncols) if c not in self.pivot_cols]
        basis = []
        for fc in free_cols:
            vec = [Fraction(0)] * self.ncols
            vec[fc] = Fraction(1)
            for i, pc in enumerate(self.pivot_cols):
                vec[pc] = -rows[i][fc]
            basis.append(tuple(vec))
        return tuple(particular), tuple(basis)


# ---------------------------------------------------------------------------
# Reconstruction
# ---------------------------------------------------------------------------


def _canonical_coeffs(coeffs: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    for c in coeffs:
        if c != 0:
            if c < 0:
                return tuple(-v for v in coeffs)
            break
    return tuple(coeffs)


def reconstruct(samples: UnsignedSamples, m: int, *, _branch_zero_values: bool = False) -> RecoveryResult:
    """Recover the windowed splines consistent with unsigned sample values.

    Runs a depth-first search over sign assignments of the nonzero values,
    samples in increasing point order with the leading nonzero sign pinned
    to +1.  Each partial assignment feeds an exact incremental elimination
    and is pruned the moment the linear system for the coefficients turns
    inconsistent; surviving leaves yield candidate splines which are merged
    up to global sign.

    Zero values never branch (both signs give the same equation) unless
    the private knob ``_branch_zero_values`` forces it, which must not
    change the outcome.
    """
    check_degree(m)
    E = samples.sample_set
    n1, n2 = E.window
    shifts = range(n1 - m, n2)
    ncols = (n2 - n1) + m
    rows = [
        tuple(_bspline_value(m, x - n) for n in shifts) for x in E.points
    ]
    values = samples.values
    branching = [
        i for i, y in enumerate(values) if y != 0 or _branch_zero_values
    ]
    pinned = next((i for i, y in enumerate(values) if y != 0), None)

    exact_solutions: List[Tuple[Fraction, ...]] = []
    families: List[Tuple[Tuple[Fraction, ...], Tuple[Tuple[Fraction, ...], ...]]] = []

    def descend(index: int, state: _Eliminator) -> None:
        if index == len(values):
            particular, basis = state.solve()
            if basis:
                families.append((particular, basis))
            else:
                exact_solutions.append(particular)
            return
        y = values[index]
        if index in branching and index != pinned:
            signs = (1, -1)
        else:
            signs = (1,)
        for sign in signs:
            branch = state.copy() if len(signs) > 1 else state
            if branch.add(rows[index], sign * y):
                descend(index + 1, branch)

    descend(0, _Eliminator(ncols))

    def to_spline(coeffs: Sequence[Fraction]) -> SplineFunction:
        return SplineFunction(m, n1 - m, tuple(coeffs), (n1, n2))

    seen: Dict[Tuple[Fraction, ...], SplineFunction] = {}

    def admit(coeffs: Sequence[Fraction]) -> None:
        canon = _canonical_coeffs(coeffs)
        if canon not in seen:
            seen[canon] = to_spline(canon)

    for sol in exact_solutions:
        admit(sol)
    for particular, basis in families:
        direction = basis[0]
        admit(particular)
        admit([a + b for a, b in zip(particular, direction)])
        admit([a + 2 * b for a, b in zip(particular, direction)])
        for extra in basis[1:]:
            admit([a + b for a, b in zip(particular, extra)])

    solutions = tuple(seen[key] for key in sorted(seen))
    if not solutions:
        return RecoveryResult("infeasible", ())
    if len(solutions) == 1 and not families:
        return RecoveryResult("unique", solutions)
    return RecoveryResult("ambiguous", solutions, (solutions[0], solutions[1]))


def verify_modulus_agreement(f1: SplineFunction, f2: SplineFunction, probes: Iterable) -> bool:
    """Exact check that |f1| and |f2| agree at every probe point."""
    if f1.window != f2.window or f1.m != f2.m:
        raise ValueError("modulus comparison requires matching degree and window")
    return all(
        abs(eval_spline(f1, x)) == abs(eval_spline(f2, x)) for x in probes
    )


# ---------------------------------------------------------------------------
# Support analysis of vanishing splines
# ---------------------------------------------------------------------------


def _support_mask(vec: Sequence[Fraction]) -> int:
    mask = 0
    for j, v in enumerate(vec):
        if v != 0:
            mask |= 1 << j
    return mask


def _cancellation_free_sum(vectors: Sequence[Tuple[Fraction, ...]]) -> Tuple[Fraction, ...]:
    # Combine so the support is exactly the union: each coordinate rules out
    # at most one scaling factor, so small positive integers always work.
    acc = list(vectors[0])
    for vec in vectors[1:]:
        target = _support_mask(acc) | _support_mask(vec)
        if _support_mask(acc) == target:
            continue
        c = 1
        while True:
            candidate = [a + c * b for a, b in zip(acc, vec)]
            if _support_mask(candidate) == target:
                acc = candidate
                break
            c += 1
    return tuple(acc)


@lru_cache(maxsize=32768)
def _vanishing_basis(m: int, window: Tuple[int, int], points: Tuple[Fraction, ...]) -> Tuple[Tuple[Fraction, ...], ...]:
    """Basis of coefficient vectors whose windowed spline vanishes on the points."""
    n1, n2 = window
    shifts = range(n1 - m, n2)
    ncols = (n2 - n1) + m
    if not points:
        identity = []
        for j in range(ncols):
            vec = [Fraction(0)] * ncols
            vec[j] = Fraction(1)
            identity.append(tuple(vec))
        return tuple(identity)
    equations = tuple(
        tuple(_bspline_value(m, x - n) for n in shifts) for x in points
    )
    return null_space(equations)


@lru_cache(maxsize=32768)
def _support_analysis(
    m: int, window: Tuple[int, int], points: Tuple[Fraction, ...]
) -> Tuple[Tuple[int, ...], Dict[int, Tuple[Fraction, ...]]]:
    """Realizable supports (as bitmasks over the shift range) with witnesses.

    A support S is realizable when some vanishing spline has nonzero
    coefficients exactly on S; equivalently, the vanishing vectors
    supported inside S have maximal support equal to S.
    """
    basis = _vanishing_basis(m, window, points)
    if not basis:
        return (), {}
    dim = len(basis)
    ncols = len(basis[0])
    max_mask = 0
    for vec in basis:
        max_mask |= _support_mask(vec)
    witnesses: Dict[int, Tuple[Fraction, ...]] = {}
    sub = max_mask
    while sub:
        outside = [j for j in range(ncols) if not (sub >> j) & 1]
        if outside:
            constraints = tuple(
                tuple(basis[i][j] for i in range(dim)) for j in outside
            )
            lam_basis = null_space(constraints)
        else:
            lam_basis = tuple(
                tuple(Fraction(1 if i == k else 0) for i in range(dim))
                for k in range(dim)
            )
        if lam_basis:
            vectors = []
            for lam in lam_basis:
                vec = [Fraction(0)] * ncols
                for weight, bvec in zip(lam, basis):
                    if weight != 0:
                        vec = [a + weight * b for a, b in zip(vec, bvec)]
                vectors.append(tuple(vec))
            union = 0
            for vec in vectors:
                union |= _support_mask(vec)
            if union == sub:
                witnesses[sub] = _cancellation_free_sum(vectors)
        sub = (sub - 1) & max_mask
    return tuple(sorted(witnesses)), witnesses


def _union_nonseparable(mask: int, m: int, window: Tuple[int, int]) -> bool:
    # Windows shorter than two units admit no separable function at all.
    if window[1] - window[0] < 2:
        return True
    indices = [j for j in range(mask.bit_length()) if (mask >> j) & 1]
    return all(b - a <= m for a, b in zip(indices, indices[1:]))


def _find_support_violation(
    m: int,
    window: Tuple[int, int],
    side1: Tuple[Fraction, ...],
    side2: Tuple[Fraction, ...],
) -> Optional[Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]]:
    masks1, wit1 = _support_analysis(m, window, side1)
    if not masks1:
        return None
    masks2, wit2 = _support_analysis(m, window, side2)
    if not masks2:
        return None
    for s1 in masks1:
        for s2 in masks2:
            if _union_nonseparable(s1 | s2, m, window):
                return wit1[s1], wit2[s2]
    return None


def _scaled_pair(
    m: int,
    window: Tuple[int, int],
    vanish_on_first: Tuple[Fraction, ...],
    vanish_on_second: Tuple[Fraction, ...],
) -> Tuple[SplineFunction, SplineFunction]:
    # Scale the second vector so its smallest nonzero magnitude dominates
    # the first's largest; the sum and difference then have nonzero
    # coefficients exactly on the union of the two supports.
    g = vanish_on_first
    h = vanish_on_second
    g_top = max((abs(v) for v in g if v != 0), default=Fraction(0))
    h_bottom = min(abs(v) for v in h if v != 0)
    scale = g_top / h_bottom + 1
    f1 = tuple((gv + scale * hv) / 2 for gv, hv in zip(g, h))
    f2 = tuple((gv - scale * hv) / 2 for gv, hv in zip(g, h))
    n1 = window[0]
    return (
        SplineFunction(m, n1 - m, f1, window),
        SplineFunction(m, n1 - m, f2, window),
    )


# ---------------------------------------------------------------------------
# Partition enumeration
# ---------------------------------------------------------------------------


def _unordered_partitions(points: Tuple[Fraction, ...]) -> Iterator[Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]]:
    # Anchoring the smallest point on the first side visits every unordered
    # split exactly once; the two sides play symmetric roles downstream.
    if not points:
        yield (), ()
        return
    rest = points[1:]
    n = len(rest)
    for bits in range(1 << n):
        side1 = [points[0]]
        side2 = []
        for i, x in enumerate(rest):
            if (bits >> i) & 1:
                side1.append(x)
            else:
                side2.append(x)
        yield tuple(side1), tuple(side2)


def partition_oracle(E: SampleSet, m: int) -> bool:
    """Definition-level test that E pins down nonseparable splines up to sign.

    Enumerates every split of E into a sign-agreement and a sign-reversal
    half and searches the two vanishing null spaces for a pair of
    realizable supports whose union has no zero-gap of length m+1.  Such a
    pair is exactly a recovery ambiguity between two nonseparable splines,
    so the oracle returns True when no split admits one.
    """
    check_degree(m)
    if len(E) > PARTITION_ORACLE_CAP:
        raise ValueError(
            "partition oracle is capped at %d points, got %d"
            % (PARTITION_ORACLE_CAP, len(E))
        )
    for side1, side2 in _unordered_partitions(E.points):
        if _find_support_violation(m, E.window, side1, side2) is not None:
            return False
    return True


# ---------------------------------------------------------------------------
# Counterexamples
# ---------------------------------------------------------------------------


def _transversal(points: Sequence[Fraction], lo: int, hi: int) -> List[Fraction]:
    picks = []
    for unit in range(lo, hi):
        inside = [x for x in points if unit < x < unit + 1]
        if inside:
            picks.append(inside[0])
    return picks


def _guided_sides(E: SampleSet, violation: Violation) -> Iterator[Tuple[Fraction, ...]]:
    n1, n2 = E.window
    pts = E.points
    if violation.condition == "left_prefix":
        k = int(violation.params["k"])
        yield tuple(x for x in pts if x < n1 + k)
    elif violation.condition == "right_suffix":
        k = int(violation.params["k"])
        yield tuple(x for x in pts if x > n2 - k)
    elif violation.condition == "interior":
        a = int(violation.params["n1"])
        b = int(violation.params["n2"])
        yield tuple(x for x in pts if x <= a)
        inside = [x for x in pts if a < x < b]
        transversal = set(_transversal(inside, a, b))
        yield tuple(x for x in inside if x not in transversal)
    else:  # cardinality
        transversal = set(_transversal(pts, n1, n2))
        yield tuple(x for x in pts if x not in transversal)
        yield tuple(x for x in pts if x in transversal)


def _partition_order(E: SampleSet, violation: Violation) -> Iterator[Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]]:
    seen = set()
    pts = set(E.points)
    for side in _guided_sides(E, violation):
        key = frozenset(side)
        if key in seen or frozenset(pts - set(side)) in seen:
            continue
        seen.add(key)
        complement = tuple(sorted(pts - set(side)))
        yield side, complement
    exhaustive = sorted(
        _unordered_partitions(E.points),
        key=lambda pair: (abs(len(pair[0]) - len(pair[1])), pair),
    )
    for side1, side2 in exhaustive:
        key = frozenset(side1)
        if key in seen or frozenset(side2) in seen:
            continue
        seen.add(key)
        yield side1, side2


def build_counterexample(E: SampleSet, m: int) -> CounterexamplePair:
    """Construct two nonseparable splines that defeat recovery on a failing E.

    Requires the phaseless certification to fail.  Splits suggested by the
    violated condition are tried first, then all splits by increasing size
    imbalance; the first realizable support pair with a gap-free union
    yields the pair.  Exhausting the search would contradict the
    certifier, so that raises :class:`InternalInconsistencyError`.
    """
    check_degree(m)
    report = is_local_phaseless(E, m)
    if report.verdict:
        raise ValueError("sample set passes phaseless certification; nothing to refute")
    for side1, side2 in _partition_order(E, report.violated):
        hit = _find_support_violation(m, E.window, side1, side2)
        if hit is None:
            continue
        f1, f2 = _scaled_pair(m, E.window, hit[0], hit[1])
        if not verify_modulus_agreement(f1, f2, E.points):  # pragma: no cover
            raise InternalInconsistencyError("constructed pair fails modulus agreement")
        if f1.coeffs == f2.coeffs or f1.coeffs == f2.negated().coeffs:  # pragma: no cover
            raise InternalInconsistencyError("constructed pair is sign-equal")
        flags = (not is_separable(f1), not is_separable(f2))
        return CounterexamplePair(f1, f2, flags)
    raise InternalInconsistencyError(
        "no counterexample found although certification failed"
    )
