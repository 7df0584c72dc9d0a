"""Phaseless sampling in real cardinal B-spline spaces, exactly over Q.

The library certifies whether finite or eventually periodic point sets
admit sampling, almost phaseless sampling or phaseless sampling for the
space of windowed cardinal B-spline combinations, reconstructs splines up
to sign from unsigned samples, and constructs explicit counterexamples
when certification fails.  Brute-force definitional oracles validate every
certifier; all arithmetic is exact rational.
"""

from .bspline import (
    SplineFunction,
    as_fraction,
    eval_bspline,
    eval_spline,
    is_separable,
)
from .collocation import (
    CollocationMatrix,
    build_collocation,
    exact_rank,
    null_space,
    schoenberg_whitney,
)
from .frames import (
    NotAFrameError,
    SignPattern,
    almost_pr_by_criterion,
    apply_signs,
    is_almost_phase_retrievable,
    is_full_spark,
    is_weak_full_spark,
    sign_patterns,
)
from .retrieval import (
    CounterexamplePair,
    InternalInconsistencyError,
    RecoveryResult,
    UnsignedSamples,
    build_counterexample,
    partition_oracle,
    reconstruct,
    verify_modulus_agreement,
)
from .sequences import (
    CertificateReport,
    PeriodicSetDescriptor,
    SampleSet,
    Violation,
    count,
    excess_sup,
    extract_minimal_almost,
    find_sampling_subwindow,
    is_almost_phaseless,
    is_global_phaseless,
    is_local_phaseless,
    is_local_sampling,
)

__all__ = [
    "CertificateReport",
    "CollocationMatrix",
    "CounterexamplePair",
    "InternalInconsistencyError",
    "NotAFrameError",
    "PeriodicSetDescriptor",
    "RecoveryResult",
    "SampleSet",
    "SignPattern",
    "SplineFunction",
    "UnsignedSamples",
    "Violation",
    "almost_pr_by_criterion",
    "apply_signs",
    "as_fraction",
    "build_collocation",
    "build_counterexample",
    "count",
    "eval_bspline",
    "eval_spline",
    "exact_rank",
    "excess_sup",
    "extract_minimal_almost",
    "find_sampling_subwindow",
    "is_almost_phase_retrievable",
    "is_almost_phaseless",
    "is_full_spark",
    "is_global_phaseless",
    "is_local_phaseless",
    "is_local_sampling",
    "is_separable",
    "is_weak_full_spark",
    "null_space",
    "partition_oracle",
    "reconstruct",
    "schoenberg_whitney",
    "sign_patterns",
    "verify_modulus_agreement",
]

__version__ = "0.1.0"
