"""Numerical verification of inequalities for the gamma and digamma functions.

Special functions with error-bounded enclosures (:mod:`~gammaineq.specfun`),
generalized logarithmic means (:mod:`~gammaineq.means`), classical sandwich
bounds for psi and the polygammas (:mod:`~gammaineq.bounds`), a registry of
margin functions (:mod:`~gammaineq.catalog`), the auxiliary functions of the
t/(1+2t) proof (:mod:`~gammaineq.proofsteps`) and a grid scanner
(:mod:`~gammaineq.verifier`).
"""

from .catalog import (
    CATALOG, dq_dx, integral_mean, margin_batir, margin_intmean, margin_remark_ratio,
    margin_thm1, q_xy,
)
from .enclosure import Enclosure
from .errors import DegenerateInputError, DomainError, PreconditionError, RegionError, UnknownIdError
from .means import GenLogMeanParams, gen_log_mean, identric_mean, log_mean
from .specfun import (
    EULER_GAMMA, digamma, digamma_enclosure, lgamma, lgamma_enclosure, polygamma,
    polygamma_enclosure,
)
from .verifier import ScanConfig, VerificationReport, check_monotone, scan, sharpness_probe

__version__ = "0.1.0"

__all__ = [
    "CATALOG", "dq_dx", "integral_mean", "margin_batir", "margin_intmean",
    "margin_remark_ratio", "margin_thm1", "q_xy", "Enclosure", "DegenerateInputError",
    "DomainError", "PreconditionError", "RegionError", "UnknownIdError", "GenLogMeanParams",
    "gen_log_mean", "identric_mean", "log_mean", "EULER_GAMMA", "digamma",
    "digamma_enclosure", "lgamma", "lgamma_enclosure", "polygamma", "polygamma_enclosure",
    "ScanConfig", "VerificationReport", "check_monotone", "scan", "sharpness_probe",
]
