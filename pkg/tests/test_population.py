import math

import numpy as np
import pytest

from delegation import PopulationParams, PrincipalPrefs, QualityScales, derive_scales, quality_bias
from delegation.errors import DomainError


def test_alpha_zero_collapses_to_ability():
    assert derive_scales(PopulationParams(7.0, 2.0), PrincipalPrefs(0.0)).sigma_t == 2.0


def test_caption_scales():
    s = derive_scales(PopulationParams(1.0, 1.5), PrincipalPrefs(0.5))
    assert s.sigma_t == pytest.approx(math.sqrt(0.25 + 0.5625), rel=1e-15)
    assert s.sigma_t_tilde == s.sigma_t
    s = derive_scales(PopulationParams(1.0, 1.5, 0.5, 0.5), PrincipalPrefs(0.5))
    assert s.sigma_t_tilde == pytest.approx(math.sqrt(0.25 * 1.25 + 0.25 * 2.5), rel=1e-15)


def test_sigma_t_convex_with_interior_minimum():
    pop = PopulationParams(1.0, 1.5)
    a = np.linspace(0, 1, 101)
    st = np.array([derive_scales(pop, PrincipalPrefs(x)).sigma_t for x in a])
    assert np.all(np.diff(st, 2) > 0)
    i = int(np.argmin(st))
    assert 0 < i < 100


def test_quality_bias():
    assert quality_bias(PopulationParams(1, 1), PrincipalPrefs(0.3)) == 0.0
    assert quality_bias(PopulationParams(1, 1, beta=5), PrincipalPrefs(1.0)) == 0.0
    assert quality_bias(PopulationParams(1, 1, beta=1), PrincipalPrefs(0.5)) == 0.5
    pop = PopulationParams(1, 1, beta=2)
    b = [quality_bias(pop, PrincipalPrefs(x)) for x in np.linspace(0, 1, 21)]
    assert all(y <= x for x, y in zip(b, b[1:]))


def test_signal_sd_parameterization():
    pop = PopulationParams.from_signal_sds(1.0, 2.0, 1.12, 2.06, beta=0.3, label="B")
    assert pop.sigma_f_tilde == pytest.approx(1.12, rel=1e-15)
    assert pop.sigma_s_tilde == pytest.approx(2.06, rel=1e-15)
    assert pop.beta == 0.3 and pop.label == "B"
    with pytest.raises(DomainError):
        PopulationParams.from_signal_sds(1.0, 2.0, 0.9, 2.06)


@pytest.mark.parametrize("kw", [
    dict(sigma_f=0, sigma_s=1), dict(sigma_f=1, sigma_s=-1), dict(sigma_f=1, sigma_s=1, sigma_ef=-0.1),
    dict(sigma_f=1, sigma_s=1, sigma_es=math.nan), dict(sigma_f=1, sigma_s=1, beta=-1),
    dict(sigma_f=math.inf, sigma_s=1),
])
def test_population_validation(kw):
    with pytest.raises(DomainError):
        PopulationParams(**kw)


@pytest.mark.parametrize("kw", [dict(alpha=-0.1), dict(alpha=1.1), dict(alpha=0.5, c_rev=-1),
                                dict(alpha=0.5, k=0), dict(alpha=0.5, k=math.inf)])
def test_prefs_validation(kw):
    with pytest.raises(DomainError):
        PrincipalPrefs(**kw)


def test_quality_scales_validation():
    with pytest.raises(DomainError):
        QualityScales(0.0, 1.0)
    with pytest.raises(DomainError):
        QualityScales(1.0, 0.5)


def test_fractional_capacity_allowed():
    assert PrincipalPrefs(0.2, 0.1, 2.5).k == 2.5
