"""Non-delegated selection: the principal reviews applications at a cost.

The principal hires everyone whose perceived quality clears ``tau``.  The
net value of one hire is

    v(tau) = (sigma_t**2 / sigma_t~) * H(z) - c_rev / cdf_c(z),   z = tau / sigma_t~

which is maximised where ``g(z) = a * (pdf(z) - z * cdf_c(z)) - c_rev``
crosses zero (``a = sigma_t**2 / sigma_t~``).  ``g`` is strictly decreasing
(``g'(z) = -a * cdf_c(z)``), so the root is found by bisection.
"""

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from . import gauss
from .delegated import GroupMix
from .errors import DegenerateThresholdError, DomainError, SolverError
from .population import (PopulationParams, PrincipalPrefs, QualityScales,
                         derive_scales, quality_bias)

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_EPS = np.finfo(float).eps

# Ties between the groups' per-hire values, relative.
TIE_RTOL = 1e-9


@dataclass(frozen=True)
class SolverDiagnostics:
    bracket: Tuple[float, float]
    iterations: int
    residual: float


@dataclass(frozen=True)
class DirectPolicy:
    """Optimal threshold policy of a principal who reviews applications.

    ``z_star`` is the standardized root of ``g``.  ``bias`` is the mean
    shift of the group's perceived quality; ``tau_star`` is expressed in that
    group's own (shifted) units, i.e. ``tau_star = sigma_t~ * z_star - bias``.
    """

    tau_star: float
    n_rev_star: float
    viable: bool
    v_star: float
    z_star: float
    bias: float = 0.0
    diagnostics: Optional[SolverDiagnostics] = field(default=None, compare=False)

    @property
    def accept_prob(self):
        """P[t~ >= tau_star] for the group the policy was solved for."""
        return float(gauss.cdf_c(self.z_star))


@dataclass(frozen=True)
class JointAllocation:
    """Split of a shared capacity ``k`` between two groups.

    ``share_a``/``share_b`` are the fractions of hires from each group (both
    0 when neither group is worth reviewing); ``r_a``/``r_b`` are the
    corresponding expected hire counts.
    """

    r_a: float
    r_b: float
    share_a: float
    share_b: float
    policy_a: DirectPolicy
    policy_b: DirectPolicy

    @property
    def composition(self):
        return self.share_a, self.share_b


def _slope(scales):
    return scales.sigma_t**2 / scales.sigma_t_tilde


def net_value(scales: QualityScales, prefs: PrincipalPrefs, tau):
    """Net expected utility per hire at perceived-quality threshold ``tau``."""
    z = np.asarray(tau, dtype=float) / scales.sigma_t_tilde
    tail = gauss.cdf_c(z)
    if np.any(tail < 1e-300):
        raise DegenerateThresholdError(f"threshold {tau!r} admits essentially nobody")
    v = _slope(scales) * gauss.hazard(z) - prefs.c_rev / tail
    return v[()] if np.ndim(v) == 0 else v


def g_fn(scales: QualityScales, prefs: PrincipalPrefs, z):
    """First-order condition of ``net_value`` in standardized units."""
    z = np.asarray(z, dtype=float)
    g = _slope(scales) * (gauss.pdf(z) - z * gauss.cdf_c(z)) - prefs.c_rev
    return g[()] if np.ndim(g) == 0 else g


def solve_threshold(scales: QualityScales, prefs: PrincipalPrefs, *,
                    xtol=1e-15, max_iter=200) -> DirectPolicy:
    """Optimal threshold, review count and per-hire value for one group.

    The sign of ``g(0)`` fixes the side of the root (and viability), so the
    bracket is grown geometrically away from 0 on that side only.  This
    keeps ``tau_star > 0`` exactly equivalent to ``c_rev`` being below the
    viability bound ``a / sqrt(2 pi)``.
    """
    c = prefs.c_rev
    if c == 0:
        raise DomainError(
            "costless review (c_rev = 0) is out of model: g > 0 everywhere and "
            "the optimal threshold diverges"
        )
    a = _slope(scales)

    def g(z):
        return a * (float(gauss.pdf(z)) - z * float(gauss.cdf_c(z))) - c

    g0 = a * _INV_SQRT_2PI - c
    viable = g0 > 0
    lo = hi = 0.0
    if viable:
        hi = 1.0
        while g(hi) > 0:
            lo, hi = hi, 2.0 * hi
    elif g0 < 0:
        lo = -1.0
        while g(lo) <= 0:
            lo, hi = 2.0 * lo, lo
    bracket = (lo, hi)
    for iterations in range(max_iter + 1):
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol + 4 * _EPS * abs(mid):
            break
        gm = g(mid)
        if gm > 0:
            lo = mid
        elif gm < 0:
            hi = mid
        else:
            lo = hi = mid
    else:
        raise SolverError(
            f"bisection did not converge in {max_iter} iterations; "
            f"initial bracket {bracket}, final [{lo!r}, {hi!r}]"
        )
    z = mid
    diag = SolverDiagnostics(bracket=bracket, iterations=iterations, residual=g(z))
    if viable:
        tail = float(gauss.cdf_c(z))
        n_rev = prefs.k / tail
        v = a * float(gauss.hazard(z)) - c / tail
    else:
        n_rev = 0.0
        v = 0.0
    return DirectPolicy(tau_star=scales.sigma_t_tilde * z, n_rev_star=n_rev,
                        viable=viable, v_star=v, z_star=z, diagnostics=diag)


def per_hire_utility_identity(policy: DirectPolicy, scales: QualityScales) -> float:
    """Per-hire value at the optimum rewritten as (sigma_t / sigma_t~)**2 * tau.

    ``tau`` is measured in the unshifted frame, so a biased group's policy
    gives the same value as the unbiased one.
    """
    if not policy.viable:
        raise DomainError("the identity only holds for a viable policy")
    return (scales.sigma_t / scales.sigma_t_tilde) ** 2 * (policy.tau_star + policy.bias)


def solve_group(pop: PopulationParams, prefs: PrincipalPrefs, **kw) -> DirectPolicy:
    """Group-specific optimum; a biased group's threshold is shifted down."""
    policy = solve_threshold(derive_scales(pop, prefs), prefs, **kw)
    shift = quality_bias(pop, prefs)
    if shift:
        policy = replace(policy, tau_star=policy.tau_star - shift, bias=shift)
    return policy


def joint_allocate(mix: GroupMix, prefs: PrincipalPrefs) -> JointAllocation:
    """Optimal split of the shared capacity between the two groups.

    The joint problem decouples into per-group problems, and total value is
    linear in the share given to each group, so all capacity goes to the
    group with the strictly higher per-hire value.  Exact ties (as produced
    by a known mean bias) are broken towards demographic parity.
    """
    pa = solve_group(mix.pop_a, prefs)
    pb = solve_group(mix.pop_b, prefs)
    if not (pa.viable or pb.viable):
        share_a = share_b = 0.0
    elif pa.viable and pb.viable and math.isclose(pa.v_star, pb.v_star,
                                                  rel_tol=TIE_RTOL):
        share_a, share_b = mix.lambda_a, mix.lambda_b
    elif not pb.viable or (pa.viable and pa.v_star > pb.v_star):
        share_a, share_b = 1.0, 0.0
    else:
        share_a, share_b = 0.0, 1.0

    def scaled(p, share):
        n = share * prefs.k / p.accept_prob if share > 0 else 0.0
        return replace(p, n_rev_star=n)

    return JointAllocation(
        r_a=share_a * prefs.k, r_b=share_b * prefs.k,
        share_a=share_a, share_b=share_b,
        policy_a=scaled(pa, share_a), policy_b=scaled(pb, share_b),
    )
