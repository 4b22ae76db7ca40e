"""Applicant-group parameters and the quality scales derived from them."""

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class PopulationParams:
    """Distribution of one applicant group.

    True fit ``f ~ N(0, sigma_f**2)`` and ability ``s ~ N(0, sigma_s**2)`` are
    observed through ``f~ = f + e_f`` and ``s~ = s + e_s - beta`` with
    independent zero-mean Gaussian noise.  ``beta`` is the downward shift of
    the ability signal's mean (0 for an unbiased group).
    """

    sigma_f: float
    sigma_s: float
    sigma_ef: float = 0.0
    sigma_es: float = 0.0
    beta: float = 0.0
    label: str = "A"

    def __post_init__(self):
        for name in ("sigma_f", "sigma_s"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive and finite, got {v!r}")
        for name in ("sigma_ef", "sigma_es", "beta"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise DomainError(f"{name} must be nonnegative and finite, got {v!r}")

    @classmethod
    def from_signal_sds(cls, sigma_f, sigma_s, sigma_f_tilde, sigma_s_tilde,
                        beta=0.0, label="A"):
        """Build from the SDs of the observed signals instead of the noise SDs."""
        if sigma_f_tilde < sigma_f or sigma_s_tilde < sigma_s:
            raise DomainError("signal SDs must be at least the true-trait SDs")
        return cls(
            sigma_f=sigma_f,
            sigma_s=sigma_s,
            sigma_ef=math.sqrt(sigma_f_tilde**2 - sigma_f**2),
            sigma_es=math.sqrt(sigma_s_tilde**2 - sigma_s**2),
            beta=beta,
            label=label,
        )

    @property
    def sigma_f_tilde(self):
        return math.hypot(self.sigma_f, self.sigma_ef)

    @property
    def sigma_s_tilde(self):
        return math.hypot(self.sigma_s, self.sigma_es)


@dataclass(frozen=True)
class PrincipalPrefs:
    """Principal's weight on fit, per-application review cost and capacity.

    ``k`` is an expected-hire budget and may be fractional.
    """

    alpha: float
    c_rev: float = 0.0
    k: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {self.alpha!r}")
        if not (math.isfinite(self.c_rev) and self.c_rev >= 0):
            raise DomainError(f"c_rev must be nonnegative, got {self.c_rev!r}")
        if not (math.isfinite(self.k) and self.k > 0):
            raise DomainError(f"k must be positive, got {self.k!r}")


@dataclass(frozen=True)
class QualityScales:
    """SDs of true quality t and perceived quality t~ for one group."""

    sigma_t: float
    sigma_t_tilde: float

    def __post_init__(self):
        if not (self.sigma_t > 0 and math.isfinite(self.sigma_t)):
            raise DomainError(
                f"sigma_t must be positive (degenerate quality), got {self.sigma_t!r}"
            )
        # Relative slack: both values come from separate sqrt calls.
        if self.sigma_t_tilde < self.sigma_t * (1 - 1e-15):
            raise DomainError("sigma_t_tilde must be at least sigma_t")


def derive_scales(pop: PopulationParams, prefs: PrincipalPrefs) -> QualityScales:
    a = prefs.alpha
    if not 0.0 <= a <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {a!r}")
    b = 1.0 - a
    var_t = (a * pop.sigma_f) ** 2 + (b * pop.sigma_s) ** 2
    noise = (a * pop.sigma_ef) ** 2 + (b * pop.sigma_es) ** 2
    return QualityScales(math.sqrt(var_t), math.sqrt(var_t + noise))


def quality_bias(pop: PopulationParams, prefs: PrincipalPrefs) -> float:
    """Downward shift of the perceived-quality mean caused by ``pop.beta``."""
    return (1.0 - prefs.alpha) * pop.beta
