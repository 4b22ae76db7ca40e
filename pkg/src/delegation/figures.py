"""Data behind the reproduced figures, driven by ``data/figures.ini``.

One CSV per figure:

fig1, fig2
    ``lambda_a, beta, r, tau1, comp_a, comp_b, e_d, e_abs_d_lower,
    e_abs_d_upper``; ``comp_*`` is the expected hire share of a group
    divided by its population share.
fig3
    ``panel, alpha, sigma_f, sigma_s, sigma_t, sigma_t_tilde, tau_star,
    v_star, viable``; panel ``b`` only has the scale columns.
fig4
    ``tau1, alpha, delta_quality, delta_utility, viable``.
fig5
    the sweep schema ``alpha, tau1, delta_quality, delta_utility, viable``
    at heatmap cell centres.
fig7
    ``alpha, sigma_s_tilde, tau1, quality``.
"""

import configparser
import math
import os
from importlib import resources

from .compare import SWEEP_COLUMNS, compare_point, sweep_grid
from .config import parse_grid
from .delegated import (DelegatedPolicy, GroupMix, delegated_utility_per_hire,
                        fairness_stats)
from .direct import solve_threshold
from .population import PopulationParams, PrincipalPrefs, derive_scales
from .report import write_csv

_FAIR_COLS = ("lambda_a", "beta", "r", "tau1", "comp_a", "comp_b", "e_d",
              "e_abs_d_lower", "e_abs_d_upper")

COLUMNS = {
    "fig1": _FAIR_COLS,
    "fig2": _FAIR_COLS,
    "fig3": ("panel", "alpha", "sigma_f", "sigma_s", "sigma_t", "sigma_t_tilde",
             "tau_star", "v_star", "viable"),
    "fig4": ("tau1", "alpha", "delta_quality", "delta_utility", "viable"),
    "fig5": SWEEP_COLUMNS,
    "fig7": ("alpha", "sigma_s_tilde", "tau1", "quality"),
}


def load_manifest(path=None):
    cp = configparser.ConfigParser(inline_comment_prefixes=(";",), interpolation=None)
    if path is None:
        cp.read_string(resources.files("delegation").joinpath("data/figures.ini")
                       .read_text(encoding="utf-8"))
    else:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    return cp


def _f(sec, key):
    return sec.getfloat(key)


def _grid(sec, key):
    return parse_grid(sec[key])


def centres(edges):
    return [round(0.5 * (a + b), 12) for a, b in zip(edges, edges[1:])]


def fairness_cases(man, fig):
    """Yield ``(lambda_a, beta, r, mix)`` for every curve of fig1 or fig2."""
    sec = man[fig]
    sigma_f, sigma_s, sigma_es = _f(sec, "sigma_f"), _f(sec, "sigma_s"), _f(sec, "sigma_es")
    pop_a = PopulationParams(sigma_f, sigma_s, sigma_es=sigma_es, label="A")
    for lam in _grid(sec, "lambda_a"):
        for beta in _grid(sec, "beta"):
            for r in _grid(sec, "r"):
                sd_b = r * pop_a.sigma_s_tilde
                pop_b = PopulationParams(sigma_f, sigma_s,
                                         sigma_es=math.sqrt(max(sd_b**2 - sigma_s**2, 0.0)),
                                         beta=beta, label="B")
                yield lam, beta, r, GroupMix(lam, pop_a, pop_b)


def _fairness_rows(man, fig):
    for lam, beta, r, mix in fairness_cases(man, fig):
        for t in _grid(man[fig], "tau1"):
            fs = fairness_stats(mix, DelegatedPolicy(t))
            yield {"lambda_a": lam, "beta": beta, "r": r, "tau1": t,
                   "comp_a": fs.comp_a, "comp_b": fs.comp_b, "e_d": fs.e_d,
                   "e_abs_d_lower": fs.e_abs_d_lower, "e_abs_d_upper": fs.e_abs_d_upper}


def _solve_row(panel, pop, prefs):
    scales = derive_scales(pop, prefs)
    pol = solve_threshold(scales, prefs)
    return {"panel": panel, "alpha": prefs.alpha, "sigma_f": pop.sigma_f,
            "sigma_s": pop.sigma_s, "sigma_t": scales.sigma_t,
            "sigma_t_tilde": scales.sigma_t_tilde, "tau_star": pol.tau_star,
            "v_star": pol.v_star, "viable": pol.viable}


def fig3c_values(man):
    """``(alpha, v_star)`` pairs of the non-monotonicity panel."""
    return [(r["alpha"], r["v_star"]) for r in _fig3_rows(man) if r["panel"] == "c"]


def _fig3_rows(man):
    a = man["fig3a"]
    alpha, c = _f(a, "alpha"), _f(a, "c_rev")
    for x in _grid(a, "sigma_fs"):
        pop = PopulationParams(x, x, _f(a, "sigma_ef"), _f(a, "sigma_es"))
        yield _solve_row("a", pop, PrincipalPrefs(alpha, c))
    b = man["fig3b"]
    pop = PopulationParams(_f(b, "sigma_f"), _f(b, "sigma_s"))
    for alpha in _grid(b, "alpha"):
        scales = derive_scales(pop, PrincipalPrefs(alpha))
        yield {"panel": "b", "alpha": alpha, "sigma_f": pop.sigma_f,
               "sigma_s": pop.sigma_s, "sigma_t": scales.sigma_t,
               "sigma_t_tilde": scales.sigma_t_tilde}
    c = man["fig3c"]
    pop = PopulationParams(_f(c, "sigma_f"), _f(c, "sigma_s"), _f(c, "sigma_ef"),
                           _f(c, "sigma_es"))
    for alpha in _grid(c, "alpha"):
        yield _solve_row("c", pop, PrincipalPrefs(alpha, _f(c, "c_rev")))


def comparison_population(man, fig="fig4"):
    sec = man[fig]
    return PopulationParams.from_signal_sds(
        _f(sec, "sigma_f"), _f(sec, "sigma_s"), _f(sec, "sigma_f_tilde"),
        _f(sec, "sigma_s_tilde"))


def _fig4_rows(man):
    sec = man["fig4"]
    pop = comparison_population(man, "fig4")
    for t in _grid(sec, "tau1"):
        for alpha in _grid(sec, "alpha"):
            d = compare_point(pop, PrincipalPrefs(alpha, _f(sec, "c_rev")), DelegatedPolicy(t))
            yield {"tau1": t, "alpha": alpha, "delta_quality": d.delta_quality,
                   "delta_utility": d.delta_utility, "viable": d.viable}


def fig5_cells(man, threads=1):
    sec = man["fig5"]
    pop = comparison_population(man, "fig5")
    return sweep_grid(pop, PrincipalPrefs(0.0, _f(sec, "c_rev")),
                      centres(_grid(sec, "alpha_edges")), centres(_grid(sec, "tau1_edges")),
                      threads=threads)


def _fig7_rows(man):
    sec = man["fig7"]
    sigma_f, sigma_s, t = _f(sec, "sigma_f"), _f(sec, "sigma_s"), _f(sec, "tau1")
    for alpha in _grid(sec, "alpha"):
        for sd in _grid(sec, "sigma_s_tilde"):
            pop = PopulationParams.from_signal_sds(sigma_f, sigma_s, sigma_f, sd)
            q = delegated_utility_per_hire(pop, PrincipalPrefs(alpha), DelegatedPolicy(t))
            yield {"alpha": alpha, "sigma_s_tilde": sd, "tau1": t, "quality": q}


def figure_rows(man, name, threads=1):
    if name in ("fig1", "fig2"):
        return list(_fairness_rows(man, name))
    if name == "fig3":
        return list(_fig3_rows(man))
    if name == "fig4":
        return list(_fig4_rows(man))
    if name == "fig5":
        return [c.as_row() for c in fig5_cells(man, threads)]
    if name == "fig7":
        return list(_fig7_rows(man))
    raise KeyError(name)


def write_figures(outdir, man=None, threads=1):
    """Write every figure CSV into ``outdir``; returns the paths written."""
    man = load_manifest() if man is None else man
    os.makedirs(outdir, exist_ok=True)
    paths = []
    for name, cols in COLUMNS.items():
        path = os.path.join(outdir, f"{name}.csv")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            write_csv(fh, cols, figure_rows(man, name, threads))
        paths.append(path)
    return paths
