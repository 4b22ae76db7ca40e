"""Seeded Monte Carlo oracle for the closed forms.

Work is cut into fixed-size chunks, each driven by its own PCG64 substream
keyed by ``(seed, estimator tag, chunk index)``.  Per-chunk moments are
merged by a fixed pairwise tree, so results are bit-identical for a given
config no matter how many threads evaluate the chunks.  Conditioning is
done by plain rejection.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .delegated import DelegatedPolicy, GroupMix
from .errors import DomainError, InsufficientSamplesError
from .population import PopulationParams, PrincipalPrefs

THREADS_ENV = "DELEGATION_THREADS"
MIN_EFFECTIVE = 100

_TAG_DELEGATED = 1
_TAG_DIRECT = 2
_TAG_FAIRNESS = 3


@dataclass(frozen=True)
class McConfig:
    seed: int = 0
    n_samples: int = 1_000_000
    n_trials: int = 10_000
    k_hires: int = 100
    chunk_size: int = 1 << 16

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        for name in ("n_samples", "n_trials", "k_hires", "chunk_size"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} must be positive")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    n_effective: int

    def within(self, value, n_se=3.0):
        return abs(self.mean - value) <= n_se * self.std_error


def default_threads():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def substream(seed, tag, index):
    ss = np.random.SeedSequence(seed, spawn_key=(tag, index))
    return np.random.Generator(np.random.PCG64(ss))


def _map(fn, items, threads):
    threads = default_threads() if threads is None else threads
    if threads <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(threads) as ex:
        return list(ex.map(fn, items))


# Moments are (n, mean, M2) triples.
def _moments(x):
    n = x.size
    if n == 0:
        return 0, 0.0, 0.0
    m = float(x.mean())
    return n, m, float(np.sum((x - m) ** 2))


def _merge(a, b):
    na, ma, qa = a
    nb, mb, qb = b
    n = na + nb
    if n == 0:
        return a
    d = mb - ma
    return n, ma + d * nb / n, qa + qb + d * d * na * nb / n


def _reduce(parts):
    parts = list(parts)
    if not parts:
        return 0, 0.0, 0.0
    while len(parts) > 1:
        nxt = [_merge(parts[i], parts[i + 1]) for i in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            nxt.append(parts[-1])
        parts = nxt
    return parts[0]


def _estimate(mom, what):
    n, m, q = mom
    if n < MIN_EFFECTIVE:
        raise InsufficientSamplesError(
            f"only {n} samples survived conditioning for {what} (need {MIN_EFFECTIVE})"
        )
    return McEstimate(mean=m, std_error=math.sqrt(q / (n - 1) / n), n_effective=n)


def _chunks(total, size):
    return [min(size, total - start) for start in range(0, total, size)]


def sample_applicants(pop: PopulationParams, prefs: PrincipalPrefs, rng, size):
    """Draw applicants; returns arrays ``(t, s_tilde, t_tilde)``."""
    z = rng.standard_normal((4, size))
    f = pop.sigma_f * z[0]
    s = pop.sigma_s * z[1]
    f_tilde = f + pop.sigma_ef * z[2]
    s_tilde = s + pop.sigma_es * z[3] - pop.beta
    a = prefs.alpha
    t = a * f + (1.0 - a) * s
    t_tilde = a * f_tilde + (1.0 - a) * s_tilde
    return t, s_tilde, t_tilde


def estimate_delegated(pop, prefs, pol: DelegatedPolicy, cfg: McConfig,
                       threads=None) -> McEstimate:
    """E[t | s~ >= tau1] by rejection."""
    sizes = _chunks(cfg.n_samples, cfg.chunk_size)

    def work(i):
        t, s_tilde, _ = sample_applicants(pop, prefs, substream(cfg.seed, _TAG_DELEGATED, i),
                                          sizes[i])
        return _moments(t[s_tilde >= pol.tau1])

    return _estimate(_reduce(_map(work, range(len(sizes)), threads)), "delegated quality")


def estimate_direct(pop, prefs, tau, cfg: McConfig, threads=None):
    """Quality E[t | t~ >= tau] and acceptance probability P[t~ >= tau]."""
    sizes = _chunks(cfg.n_samples, cfg.chunk_size)

    def work(i):
        t, _, t_tilde = sample_applicants(pop, prefs, substream(cfg.seed, _TAG_DIRECT, i),
                                          sizes[i])
        keep = t_tilde >= tau
        return _moments(t[keep]), _moments(keep.astype(float))

    parts = _map(work, range(len(sizes)), threads)
    quality = _estimate(_reduce(p[0] for p in parts), "direct quality")
    n, p, _ = _reduce(p[1] for p in parts)
    accept = McEstimate(mean=p, std_error=math.sqrt(p * (1.0 - p) / n), n_effective=n)
    return quality, accept


def net_value_estimate(quality: McEstimate, accept: McEstimate, c_rev) -> McEstimate:
    """quality - c_rev / accept, with a delta-method standard error."""
    p = accept.mean
    if p <= 0:
        raise InsufficientSamplesError("no applicant cleared the threshold")
    se = math.hypot(quality.std_error, c_rev / p**2 * accept.std_error)
    return McEstimate(quality.mean - c_rev / p, se, quality.n_effective)


def _admitted_groups(mix, tau1, rng, needed, max_draws):
    """Group-A indicators of the first ``needed`` admits from the mixture.

    Within a batch the applicants are exchangeable, so the admits are
    generated as counts per group and then put in uniformly random order.
    """
    # s~ >= tau1  <=>  standardized draw >= (tau1 + beta) / sd for each group.
    cut_a = (tau1 + mix.pop_a.beta) / mix.pop_a.sigma_s_tilde
    cut_b = (tau1 + mix.pop_b.beta) / mix.pop_b.sigma_s_tilde
    got, have, drawn = [], 0, 0
    batch = max(4096, 2 * needed)
    while have < needed:
        if drawn >= max_draws:
            raise InsufficientSamplesError(
                f"fewer than {needed} admits after {drawn} draws at tau1={tau1!r}"
            )
        n_a = int(rng.binomial(batch, mix.lambda_a))
        adm_a = int(np.count_nonzero(rng.standard_normal(n_a) >= cut_a))
        adm_b = int(np.count_nonzero(rng.standard_normal(batch - n_a) >= cut_b))
        admit = np.zeros(adm_a + adm_b, dtype=bool)
        admit[:adm_a] = True
        rng.shuffle(admit)
        got.append(admit)
        have += admit.size
        drawn += batch
        rate = have / drawn
        if rate > 0:
            batch = int(min(1 << 22, max(4096, 1.1 * (needed - have) / rate + 1024)))
        else:
            batch = min(1 << 22, 2 * batch)
    return np.concatenate(got)[:needed]


def estimate_fairness(mix: GroupMix, pol: DelegatedPolicy, cfg: McConfig, threads=None,
                      max_draws_per_admit=1e6):
    """Mean and mean absolute value of the parity gap D over repeated hiring rounds.

    Each trial hires ``cfg.k_hires`` applicants by scanning the mixed pool in
    arrival order and admitting everyone with ``s~ >= tau1``.
    """
    k = cfg.k_hires
    per_chunk = max(1, cfg.chunk_size // k)
    sizes = _chunks(cfg.n_trials, per_chunk)
    lam_a, lam_b = mix.lambda_a, mix.lambda_b

    def work(i):
        rng = substream(cfg.seed, _TAG_FAIRNESS, i)
        needed = sizes[i] * k
        groups = _admitted_groups(mix, pol.tau1, rng, needed,
                                  max_draws=max_draws_per_admit * needed)
        y_a = groups.reshape(sizes[i], k).mean(axis=1)
        d = y_a / lam_a - (1.0 - y_a) / lam_b
        return _moments(d), _moments(np.abs(d))

    parts = _map(work, range(len(sizes)), threads)
    e_d = _estimate(_reduce(p[0] for p in parts), "fairness gap")
    e_abs = _estimate(_reduce(p[1] for p in parts), "absolute fairness gap")
    return e_d, e_abs
