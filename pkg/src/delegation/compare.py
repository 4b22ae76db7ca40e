"""Delegating versus reviewing in person, per selected applicant.

Positive deltas mean delegation is better for the principal.  When the
principal's own process is not viable nobody is hired by it, so the quality
delta is undefined (NaN, written as ``NA``) and the utility delta is the
delegated value itself.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

from . import gauss
from .delegated import DelegatedPolicy, delegated_utility_per_hire
from .direct import DirectPolicy, solve_group
from .errors import DomainError, ModelError
from .population import PopulationParams, PrincipalPrefs, derive_scales
from .report import write_csv

SWEEP_COLUMNS = ("alpha", "tau1", "delta_quality", "delta_utility", "viable")
ERROR_MARK = "ERR"


@dataclass(frozen=True)
class DeltaResult:
    delta_quality: float
    delta_utility: float
    delegation_preferred_quality: bool
    delegation_preferred_utility: bool
    viable: bool


@dataclass(frozen=True)
class SweepCell:
    alpha: float
    tau1: float
    result: Optional[DeltaResult] = None
    error: Optional[str] = None

    def as_row(self):
        if self.result is None:
            return {"alpha": self.alpha, "tau1": self.tau1,
                    "delta_quality": ERROR_MARK, "delta_utility": ERROR_MARK,
                    "viable": ERROR_MARK}
        r = self.result
        return {"alpha": self.alpha, "tau1": self.tau1,
                "delta_quality": r.delta_quality, "delta_utility": r.delta_utility,
                "viable": r.viable}


def direct_quality(pop: PopulationParams, prefs: PrincipalPrefs,
                   policy: DirectPolicy) -> float:
    """E[t | t~ >= tau_star]; the group's mean shift cancels out."""
    scales = derive_scales(pop, prefs)
    return scales.sigma_t**2 / scales.sigma_t_tilde * float(gauss.hazard(policy.z_star))


def _delta(pop, prefs, pol, policy):
    u = delegated_utility_per_hire(pop, prefs, pol)
    if not policy.viable:
        return DeltaResult(math.nan, u, False, u >= 0, False)
    dq = u - direct_quality(pop, prefs, policy)
    du = u - policy.v_star
    return DeltaResult(dq, du, dq > 0, du > 0, True)


def compare_point(pop: PopulationParams, prefs: PrincipalPrefs,
                  pol: DelegatedPolicy) -> DeltaResult:
    return _delta(pop, prefs, pol, solve_group(pop, prefs))


def _check_grid(grid, name):
    if len(grid) == 0:
        raise DomainError(f"{name} grid is empty")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise DomainError(f"{name} grid must be sorted ascending")


def _row(pop, prefs, alpha, tau1_grid):
    try:
        p = PrincipalPrefs(alpha=alpha, c_rev=prefs.c_rev, k=prefs.k)
        policy = solve_group(pop, p)
    except ModelError as exc:
        return [SweepCell(alpha, t, error=str(exc)) for t in tau1_grid]
    cells = []
    for t in tau1_grid:
        try:
            cells.append(SweepCell(alpha, t, _delta(pop, p, DelegatedPolicy(t), policy)))
        except ModelError as exc:
            cells.append(SweepCell(alpha, t, error=str(exc)))
    return cells


def sweep_grid(pop: PopulationParams, prefs: PrincipalPrefs,
               alpha_grid: Sequence[float], tau1_grid: Sequence[float],
               threads: int = 1) -> List[SweepCell]:
    """Row-major table of comparisons, alpha outer and tau1 inner.

    ``prefs.alpha`` is ignored; each row uses its own alpha.  The direct
    side is solved once per row since it does not depend on tau1.
    """
    alpha_grid = [float(a) for a in alpha_grid]
    tau1_grid = [float(t) for t in tau1_grid]
    _check_grid(alpha_grid, "alpha")
    _check_grid(tau1_grid, "tau1")
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            rows = list(ex.map(lambda a: _row(pop, prefs, a, tau1_grid), alpha_grid))
    else:
        rows = [_row(pop, prefs, a, tau1_grid) for a in alpha_grid]
    return [cell for row in rows for cell in row]


def write_sweep_csv(fh, cells):
    write_csv(fh, SWEEP_COLUMNS, (c.as_row() for c in cells))
