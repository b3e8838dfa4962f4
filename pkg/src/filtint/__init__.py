"""Log-magnitude sensitivity trade-off integrals for LTI filtering systems.

Given a signal model, a measurement model, and a stable causal filter, this
package constructs the error and estimate sensitivity functions, decides
boundedness of their log-magnitude frequency integrals, evaluates the
bounded ones in closed form from pole/zero data alone, and cross-validates
every value by independent routes (direct root-set evaluation, a
residue-based identity, and adaptive quadrature).
"""

from .closedform import (CaseTag, DifferenceFactorization, IntegralOutcome,
                         ResidueCrosscheck, ct_error_integral,
                         ct_estimate_integral, difference_factorization,
                         direct_ct_integral, direct_dt_integral,
                         dt_error_integral, dt_estimate_integral,
                         residue_crosscheck)
from .cli import (AnalysisOptions, AnalysisReport, SystemSpecDocument,
                  analyze, main, parse_spec)
from .errors import (BoundaryRoot, DegenerateGain, DegreeCollapse,
                     FiltintError, Inconclusive, NotConverged, OriginRoot,
                     ParseError, PoleEvaluation, PreconditionUnmet,
                     SchemaError, SharedPoleNotCancelled, ZeroGain, ZeroGx,
                     ZeroPolynomial)
from .poly import Polynomial, find_roots
from .quad import (QuadratureResult, ct_log_integral,
                   ct_weighted_log_integral, divergence_probe,
                   dt_log_integral)
from .rational import (ClassifiedRoots, RationalTF, TimeDomain, classify,
                       product_cancel)
from .suite import DOCUMENTS, SCENARIOS, paper_suite
from .sysmodel import (FilteringSystem, ValidationReport,
                       complementarity_check, error_sensitivity,
                       estimate_sensitivity, validate)

__version__ = "0.1.0"

__all__ = [
    "AnalysisOptions", "AnalysisReport", "BoundaryRoot", "CaseTag",
    "ClassifiedRoots", "DOCUMENTS", "DegenerateGain", "DegreeCollapse",
    "DifferenceFactorization", "FilteringSystem", "FiltintError",
    "Inconclusive", "IntegralOutcome", "NotConverged", "OriginRoot",
    "ParseError", "PoleEvaluation", "Polynomial", "PreconditionUnmet",
    "QuadratureResult", "RationalTF", "ResidueCrosscheck", "SCENARIOS",
    "SchemaError", "SharedPoleNotCancelled", "SystemSpecDocument",
    "TimeDomain", "ValidationReport", "ZeroGain", "ZeroGx",
    "ZeroPolynomial", "analyze", "classify", "complementarity_check",
    "ct_error_integral", "ct_estimate_integral", "ct_log_integral",
    "ct_weighted_log_integral", "difference_factorization",
    "direct_ct_integral", "direct_dt_integral", "divergence_probe",
    "dt_error_integral", "dt_estimate_integral", "dt_log_integral",
    "error_sensitivity", "estimate_sensitivity", "find_roots", "main",
    "paper_suite", "parse_spec", "product_cancel", "validate",
]
