"""Numerical toolkit for M-harmonic Besov-Bergman spaces on the unit ball of C^n.

Modules:

* :mod:`mhbesov.specfun` - log-gamma, Pochhammer symbols, Gauss 2F1 on [0, 1];
* :mod:`mhbesov.quadrature` - Gauss-Jacobi rules and adaptive integration;
* :mod:`mhbesov.radial` - radial profiles S_pq and their derivatives;
* :mod:`mhbesov.coeffs` - Bergman coefficients c_pq(s) and c_pq,k(s);
* :mod:`mhbesov.harmonic` - exact polynomial algebra and tangential fields;
* :mod:`mhbesov.mh` - finite M-harmonic sums, their norms, Moebius maps;
* :mod:`mhbesov.funcspec` - JSON function-spec files;
* :mod:`mhbesov.verify` - verification suites behind ``mhbesov verify``;
* :mod:`mhbesov.cli` - the ``mhbesov`` command.
"""

from .coeffs import (CoeffRequest, CoeffResult, DIVERGENT, c_0q_closed, c_pq, c_pq_double_integral,
                     c_pq_k, c_pq_quadrature, c_pq_series_noninteger, c_pq_value, normalized_c)
from .harmonic import BigradedPolynomial, GaussianRational, MultiIndexPair
from .mh import MhComponent, MhFunction, NormReport
from .quadrature import QuadratureRule, build_rule, integrate, integrate_2d
from .radial import RadialProfile, i_pqs, radial_factor, radial_k_derivative, s_pq
from .specfun import (ConvergenceError, HypParams, gauss_2f1, gauss_2f1_at_1, log_gamma, pochhammer,
                      ratio_series_around_1)

__version__ = "0.1.0"

__all__ = [
    "BigradedPolynomial", "CoeffRequest", "CoeffResult", "ConvergenceError", "DIVERGENT",
    "GaussianRational", "HypParams", "MhComponent", "MhFunction", "MultiIndexPair", "NormReport",
    "QuadratureRule", "RadialProfile", "build_rule", "c_0q_closed", "c_pq", "c_pq_double_integral",
    "c_pq_k", "c_pq_quadrature", "c_pq_series_noninteger", "c_pq_value", "gauss_2f1", "gauss_2f1_at_1",
    "i_pqs", "integrate", "integrate_2d", "log_gamma", "normalized_c", "pochhammer", "radial_factor",
    "radial_k_derivative", "ratio_series_around_1", "s_pq",
]
