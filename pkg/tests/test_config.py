import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from delegation.config import ConfigError, RunConfig, parse_grid

FULL = """
[population.a]
sigma_f = 1
sigma_s = 2
sigma_f_tilde = 1.12
sigma_s_tilde = 2.06

[population.b]
sigma_f = 1
sigma_s = 2
sigma_es = 0.9
beta = 0.4
label = minority

[mix]
lambda_a = 0.65

[preferences]
alpha = 0.3
c_rev = 0.1
k = 5

[policy]
tau1 = 1.5
tau = 0.25

[sweep]
alpha = 0:0.2:0.1
tau1 = 0, 0.5

[mc]
seed = 42
n_samples = 20000

[output]
path = out.json
format = json
"""


def test_parse_grid():
    assert parse_grid("0:1:0.25") == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert parse_grid("0:0.3:0.1") == [0.0, 0.1, 0.2, 0.3]
    assert parse_grid("1, 2.5,3") == [1.0, 2.5, 3.0]
    assert parse_grid("") == []
    for bad in ("0:1", "0:1:0", "1:0:0.1", "a,b", "0:x:1"):
        with pytest.raises(ConfigError):
            parse_grid(bad)


def test_full_config():
    cfg = RunConfig.from_ini(FULL)
    a, b = cfg.populations
    assert a.sigma_s_tilde == pytest.approx(2.06) and b.beta == 0.4 and b.label == "minority"
    mix = cfg.require_mix()
    assert mix.lambda_a == 0.65
    assert cfg.prefs.k == 5 and cfg.tau1 == 1.5 and cfg.tau == 0.25
    assert cfg.alpha_grid == [0.0, 0.1, 0.2] and cfg.tau1_grid == [0.0, 0.5]
    assert cfg.mc.seed == 42 and cfg.mc.n_samples == 20000
    assert cfg.out == "out.json" and cfg.format == "json"


def test_round_trip_is_idempotent():
    once = RunConfig.from_ini(FULL).to_ini()
    assert RunConfig.from_ini(once).to_ini() == once
    assert RunConfig.from_ini(once) == RunConfig.from_ini(FULL)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 100), st.floats(0.01, 100), st.floats(0, 10), st.floats(0, 1),
       st.floats(0, 5), st.integers(0, 2**64 - 1))
def test_round_trip_property(sf, ss, es, alpha, tau1, seed):
    text = (f"[population]\nsigma_f = {sf!r}\nsigma_s = {ss!r}\nsigma_es = {es!r}\n"
            f"[preferences]\nalpha = {alpha!r}\n[policy]\ntau1 = {tau1!r}\n[mc]\nseed = {seed}\n")
    cfg = RunConfig.from_ini(text)
    out = cfg.to_ini()
    assert RunConfig.from_ini(out) == cfg
    assert RunConfig.from_ini(out).to_ini() == out


def test_overrides():
    cfg = RunConfig.from_ini(FULL, ["preferences.alpha=0.7", "mc.seed=3", "policy.tau1 = 2"])
    assert cfg.prefs.alpha == 0.7 and cfg.mc.seed == 3 and cfg.tau1 == 2.0
    cfg = RunConfig.from_ini("", ["population.sigma_f=1", "population.sigma_s=1"])
    assert cfg.single.sigma_s == 1.0
    with pytest.raises(ConfigError):
        RunConfig.from_ini(FULL, ["alpha=0.7"])


@pytest.mark.parametrize("text", [
    "[bogus]\nx = 1\n",
    "[population]\nsigma_f = 1\n",
    "[population]\nsigma_f = 1\nsigma_s = 1\nwidth = 3\n",
    "[population]\nsigma_f = 1\nsigma_s = 1\n[population.a]\nsigma_f = 1\nsigma_s = 1\n",
    "[population.a]\nsigma_f = 1\nsigma_s = 1\n",
    "[population]\nsigma_f = 1\nsigma_s = 2\nsigma_s_tilde = 3\nsigma_es = 1\n",
    "[population]\nsigma_f = 1\nsigma_s = 2\nsigma_s_tilde = 1\n",
    "[preferences]\nalpha = 1.5\n",
    "[preferences]\nalpha = half\n",
    "[mc]\nthreads = 2\n",
    "[mc]\nseed = -4\n",
    "[output]\nformat = xml\n",
    "not an ini file",
])
def test_malformed_configs(text):
    with pytest.raises(ConfigError):
        RunConfig.from_ini(text)


def test_requirements():
    cfg = RunConfig.from_ini("")
    with pytest.raises(ConfigError):
        cfg.single
    with pytest.raises(ConfigError):
        cfg.require_prefs()
    one = RunConfig.from_ini("[population]\nsigma_f = 1\nsigma_s = 1\n")
    with pytest.raises(ConfigError):
        one.require_mix()
    two = RunConfig.from_ini(FULL.replace("lambda_a = 0.65", ""))
    with pytest.raises(ConfigError):
        two.require_mix()
