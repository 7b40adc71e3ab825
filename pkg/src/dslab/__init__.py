"""Walsh and Walsh-Kaczmarz summability on the finite dyadic group."""

from .analysis import PAtom, hardy_norm, lp_norm, make_atom, validate_atom, weak_lp_norm
from .dyadic import DyadicInterval, DyadicPoint, IndexExpansion, bit_length, decompose, interval_cells
from .estimators import SummabilityTransformer, WalshTransformer
from .exceptions import DegenerateWeightsError, DomainError, DyadicError, ModeError, ResolutionError
from .kernels import (
    Kernel,
    cesaro_coefficient,
    cesaro_kernel,
    dirichlet_kernel,
    fejer_kernel,
    norlund_kernel,
)
from .means import (
    MeanId,
    apply_mean,
    apply_mean_convolution,
    apply_mean_partial_sums,
    martingale_maximal,
    maximal_operator,
    parse_mean,
)
from .report import ExperimentReport
from .systems import (
    SystemId,
    kaczmarz_eval,
    lower_bit_reverse,
    rademacher_eval,
    system_values,
    walsh_eval,
)
from .transforms import (
    CoefficientVector,
    SampledFunction,
    forward_transform,
    inverse_transform,
    partial_sum,
)
from .verification import (
    blowup_theorem2,
    blowup_theorem3,
    convergence_experiment,
    corollary_presets_suite,
    verify_lemma2,
    verify_lemma3,
)
from .weights import ConditionReport, WeightSequence, abel_decompose, check_condition, parse_preset, preset

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
