import numpy as np
import pytest

from delegation import PopulationParams, PrincipalPrefs, derive_scales

# Lines reported by the acceptance suite, echoed in the terminal summary.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_instance(rng, c_scale=(0.0, 1.0)):
    """Population, prefs and scales with c_rev = u * viability bound, u ~ U(c_scale)."""
    pop = PopulationParams(rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0),
                           rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0))
    alpha = rng.uniform(0.0, 1.0)
    scales = derive_scales(pop, PrincipalPrefs(alpha))
    bound = scales.sigma_t**2 / scales.sigma_t_tilde / np.sqrt(2 * np.pi)
    u = rng.uniform(*c_scale)
    while u == 0.0:
        u = rng.uniform(*c_scale)
    prefs = PrincipalPrefs(alpha, c_rev=u * bound, k=rng.uniform(0.5, 50.0))
    return pop, prefs, scales
