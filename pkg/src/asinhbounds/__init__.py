"""Certified algebraic bounds for the inverse hyperbolic sine."""

from .analysis import (
    EnclosureCertificate,
    MinimumReport,
    bracket_minimum,
    certify_enclosure,
    find_minimum,
    midpoint_approx,
    zhu_sharp_constant,
)
from .core import (
    AlgebraicBound,
    DomainWindow,
    QZeros,
    Regime,
    f_theta,
    h_theta,
    lower_bound,
    q,
    regime,
    theta_zeros,
    upper_bound,
    upper_bound_coeff,
)
from .errors import ConvergenceError, DomainError, SingularityError
from .oracle import ExtReal, asinh_ext, asinh_minus_x_ext
from .verify import ScanReport, find_lower_violation, scan_inequality, scan_monotonicity, scan_oppenheim

__all__ = [
    "AlgebraicBound",
    "ConvergenceError",
    "DomainError",
    "DomainWindow",
    "EnclosureCertificate",
    "ExtReal",
    "MinimumReport",
    "QZeros",
    "Regime",
    "ScanReport",
    "SingularityError",
    "asinh_ext",
    "asinh_minus_x_ext",
    "bracket_minimum",
    "certify_enclosure",
    "f_theta",
    "find_lower_violation",
    "find_minimum",
    "h_theta",
    "lower_bound",
    "midpoint_approx",
    "q",
    "regime",
    "scan_inequality",
    "scan_monotonicity",
    "scan_oppenheim",
    "theta_zeros",
    "upper_bound",
    "upper_bound_coeff",
    "zhu_sharp_constant",
]
