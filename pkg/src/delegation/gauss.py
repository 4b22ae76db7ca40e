"""Standard-normal kernels and truncated-Gaussian moments.

Every function accepts a Python float or a numpy array and returns the same
shape back (a numpy float64 scalar for scalar input).  Upper tails go
through the complementary error function, and the hazard rate goes through
the scaled form ``erfcx`` so that neither underflows for large arguments.
"""

import math

import numpy as np
from scipy import special

from .errors import DomainError

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def _finite(z, name="z"):
    arr = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite, got {z!r}")
    return arr


def _out(arr):
    return arr[()] if arr.ndim == 0 else arr


def pdf(z):
    """Standard normal density."""
    z = _finite(z)
    return _out(_INV_SQRT_2PI * np.exp(-0.5 * z * z))


def cdf_c(z):
    """Upper tail probability 1 - Phi(z), accurate far into the right tail."""
    z = _finite(z)
    return _out(0.5 * special.erfc(z * _INV_SQRT2))


def hazard(z):
    """Hazard rate pdf(z) / cdf_c(z) of the standard normal.

    For z >= 0 this is ``sqrt(2/pi) / erfcx(z/sqrt(2))``, the same ratio with
    the common factor ``exp(-z**2/2)`` cancelled analytically, so it behaves
    like ``z + 1/z`` for large ``z`` without underflow.  For z < 0 the tail is
    at least 1/2 and the plain ratio is used; it follows the density down to
    the subnormal range and is exactly 0 below about z = -38.6.
    """
    z = _finite(z)
    pos = z >= 0
    zp = np.where(pos, z, 0.0)
    zn = np.where(pos, 0.0, z)
    # H(z) > z exactly; the max only repairs a last-ulp rounding for huge z.
    h_pos = np.maximum(_SQRT_2_OVER_PI / special.erfcx(zp * _INV_SQRT2), zp)
    h_neg = _INV_SQRT_2PI * np.exp(-0.5 * zn * zn) / (0.5 * special.erfc(zn * _INV_SQRT2))
    return _out(np.where(pos, h_pos, h_neg))


def truncated_mean(mu, sigma, a):
    """Mean of N(mu, sigma**2) conditioned on being at least ``a``."""
    sigma = np.asarray(sigma, dtype=float)
    if np.any(~(sigma > 0)):
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    mu = _finite(mu, "mu")
    a = _finite(a, "a")
    return _out(mu + sigma * hazard((a - mu) / sigma))


def posterior_scale(sigma_true, sigma_obs):
    """Shrinkage factor sigma_true**2 / sigma_obs**2.

    For ``obs = true + independent noise`` this maps a conditional mean of
    the observation onto the conditional mean of the latent value, e.g.
    ``E[s | s_obs >= tau] = posterior_scale * E[s_obs | s_obs >= tau]``.
    """
    if not sigma_true > 0:
        raise DomainError(f"sigma_true must be positive, got {sigma_true!r}")
    if not sigma_obs >= sigma_true:
        raise DomainError(
            f"sigma_obs ({sigma_obs!r}) must be at least sigma_true ({sigma_true!r})"
        )
    return (sigma_true / sigma_obs) ** 2
