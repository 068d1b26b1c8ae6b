"""Normal and chi-square distribution and quantile functions.

Thin validated wrappers over ``scipy.special``: the chi-square quantile is
the inverse regularized lower incomplete gamma function rescaled by two,
the normal quantile is ``ndtri``.
"""

import numpy as np
from scipy import special

from .errors import InvalidArgumentError


def _as_probability(p):
    values = np.asarray(p, dtype=float)
    if not np.all(np.isfinite(values)) or np.any(values <= 0.0) or np.any(values >= 1.0):
        raise InvalidArgumentError(f'probability must lie strictly inside (0, 1), got {p}')
    return values


def _as_degrees_of_freedom(d) -> int:
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise InvalidArgumentError(f'degrees of freedom must be a positive integer, got {d}')
    return int(d)


def _unwrap(values, original):
    if np.ndim(original) == 0:
        return float(values)
    return values


def cdf_normal(x):
    return _unwrap(special.ndtr(np.asarray(x, dtype=float)), x)


def inv_cdf_normal(p):
    values = _as_probability(p)
    return _unwrap(special.ndtri(values), p)


def cdf_chisq(x, d):
    d = _as_degrees_of_freedom(d)
    x = np.asarray(x, dtype=float)
    return _unwrap(special.gammainc(d / 2.0, np.maximum(x, 0.0) / 2.0), x)


def inv_cdf_chisq(p, d):
    values = _as_probability(p)
    d = _as_degrees_of_freedom(d)
    return _unwrap(2.0 * special.gammaincinv(d / 2.0, values), p)


def vdw_radius(p, d):
    """Radial van der Waerden score sqrt(F^{-1}_{chi2_d}(p))."""
    return _unwrap(np.sqrt(inv_cdf_chisq(p, d)), p)


def sf_chisq(x, d):
    """Upper tail 1 - F_{chi2_d}(x), accurate far in the tail."""
    d = _as_degrees_of_freedom(d)
    x = np.asarray(x, dtype=float)
    return _unwrap(special.gammaincc(d / 2.0, np.maximum(x, 0.0) / 2.0), x)
