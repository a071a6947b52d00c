"""Complex log-factorial ``ln z!`` from Stirling's original asymptotic series.

The series in ``Z = z + 1/2`` is summed with Levin's u-transform and reduced
to the principal branch with the unwinding number.  A shift recurrence on the
De Moivre series and a Binet-like integral provide independent checks.

>>> from stirling import lnfactorial
>>> out = lnfactorial(11 + 0.5j)
>>> round(out.value.real, 10), round(out.value.imag, 8)
(17.4914485209, 1.22148798)
"""

from .bernoulli import ExactRatio, bernoulli, bernoulli_upto
from .binet import QuadratureConfig, binet_integral, binet_integrand, lnfactorial_binet
from .branch import normalize_branch, unwinding_number
from .errors import (
    AccuracyError,
    DomainError,
    EvaluationError,
    PoleError,
    StirlingError,
    ZeroTermError,
)
from .evaluator import (
    EvalOutcome,
    Method,
    lnfactorial,
    lnfactorial_levin,
    lnfactorial_shifted,
    shift_outcome,
)
from .levin import AccelResult, LevinConfig, Status, levin_u, partial_sums
from .mapper import (
    CellStatus,
    GridSpec,
    MapCell,
    classify_point,
    generate_map,
    truncation_error_map,
)
from .series import (
    SeriesKind,
    demoivre_term,
    optimal_truncation_index,
    series_prefix,
    stirling_term,
    truncated_lnfactorial,
)

__version__ = "0.1.0"

__all__ = [
    "AccelResult", "AccuracyError", "CellStatus", "DomainError", "EvalOutcome",
    "EvaluationError", "ExactRatio", "GridSpec", "LevinConfig", "MapCell", "Method",
    "PoleError", "QuadratureConfig", "SeriesKind", "Status", "StirlingError",
    "ZeroTermError", "bernoulli", "bernoulli_upto", "binet_integral", "binet_integrand",
    "classify_point", "demoivre_term", "generate_map", "levin_u", "lnfactorial",
    "lnfactorial_binet", "lnfactorial_levin", "lnfactorial_shifted", "normalize_branch",
    "optimal_truncation_index", "partial_sums", "series_prefix", "shift_outcome",
    "stirling_term", "truncated_lnfactorial", "truncation_error_map", "unwinding_number",
]
