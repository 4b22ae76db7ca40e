"""Selection delegated to an agent that admits everyone with s~ >= tau1."""

import math
from dataclasses import dataclass

from . import gauss
from .errors import DegenerateThresholdError, DomainError
from .population import PopulationParams, PrincipalPrefs

# Mixture tail mass below which a threshold is treated as admitting nobody.
MIN_TAIL = 1e-300


@dataclass(frozen=True)
class DelegatedPolicy:
    tau1: float

    def __post_init__(self):
        if not math.isfinite(self.tau1):
            raise DomainError(f"tau1 must be finite, got {self.tau1!r}")


@dataclass(frozen=True)
class GroupMix:
    """Two intrinsically identical groups mixed in proportion ``lambda_a``."""

    lambda_a: float
    pop_a: PopulationParams
    pop_b: PopulationParams

    def __post_init__(self):
        if not 0.0 < self.lambda_a < 1.0:
            raise DomainError(f"lambda_a must lie in (0, 1), got {self.lambda_a!r}")
        if (self.pop_a.sigma_f != self.pop_b.sigma_f
                or self.pop_a.sigma_s != self.pop_b.sigma_s):
            raise DomainError("both groups must share sigma_f and sigma_s")

    @property
    def lambda_b(self):
        return 1.0 - self.lambda_a

    @property
    def sd_ratio(self):
        """r = sigma_s~(B) / sigma_s~(A)."""
        return self.pop_b.sigma_s_tilde / self.pop_a.sigma_s_tilde


@dataclass(frozen=True)
class FairnessStats:
    """Expected composition and parity statistics of delegated hires.

    ``comp_a``/``comp_b`` are the expected hire shares divided by each
    group's population share, so ``lambda_a*comp_a + lambda_b*comp_b == 1``.
    """

    comp_a: float
    comp_b: float
    e_d: float
    e_abs_d_lower: float
    e_abs_d_upper: float


def delegated_utility_per_hire(pop: PopulationParams, prefs: PrincipalPrefs,
                               pol: DelegatedPolicy) -> float:
    """Expected quality E[t | s~ >= tau1] of one agent-selected hire.

    Total delegated utility for ``k`` hires is ``k`` times this value.
    """
    sd = pop.sigma_s_tilde
    z = (pol.tau1 + pop.beta) / sd
    return float((1.0 - prefs.alpha) * pop.sigma_s**2 / sd * gauss.hazard(z))


def _tails(mix, pol):
    tail_a = float(gauss.cdf_c((pol.tau1 + mix.pop_a.beta) / mix.pop_a.sigma_s_tilde))
    tail_b = float(gauss.cdf_c((pol.tau1 + mix.pop_b.beta) / mix.pop_b.sigma_s_tilde))
    tail_m = mix.lambda_a * tail_a + mix.lambda_b * tail_b
    if tail_m < MIN_TAIL:
        raise DegenerateThresholdError(
            f"tau1={pol.tau1!r} admits essentially nobody (mixture tail {tail_m:.3g})"
        )
    return tail_a, tail_b, tail_m


def group_select_prob(mix: GroupMix, pol: DelegatedPolicy):
    """Probabilities that an admitted applicant belongs to group A and B."""
    tail_a, tail_b, tail_m = _tails(mix, pol)
    p_a = mix.lambda_a * tail_a / tail_m
    return p_a, 1.0 - p_a


def fairness_stats(mix: GroupMix, pol: DelegatedPolicy) -> FairnessStats:
    tail_a, tail_b, tail_m = _tails(mix, pol)
    return FairnessStats(
        comp_a=tail_a / tail_m,
        comp_b=tail_b / tail_m,
        e_d=(tail_a - tail_b) / tail_m,
        e_abs_d_lower=abs(tail_a - tail_b) / tail_m,
        e_abs_d_upper=(tail_a + tail_b) / tail_m,
    )


def unfairness_direction(mix: GroupMix, pol: DelegatedPolicy, tol=1e-12) -> int:
    """Sign of E[D] from the closed-form rule on (r - 1) * tau1 - beta.

    Returns +1 when hires favour group A, -1 when they favour group B and 0
    at parity.  Group A is taken as the unbiased reference.
    """
    r = mix.sd_ratio
    beta = mix.pop_b.beta - mix.pop_a.beta
    # E[D] > 0 iff (tau1 + beta_b) / (r sd_a) > (tau1 + beta_a) / sd_a.
    stat = (r - 1.0) * (pol.tau1 + mix.pop_a.beta) - beta
    if abs(stat) <= tol:
        return 0
    return 1 if stat < 0 else -1
