"""Command-line front end: ``delegation <command> --config run.ini``.

Exit status is 0 on success, 2 for usage/config errors and 1 for model
errors.  Failures print one line to stderr of the form
``error: kind=<kind> message=<json string>``.
"""

import argparse
import io
import json
import math
import os
import sys

from . import mc
from .compare import SWEEP_COLUMNS, compare_point, direct_quality, sweep_grid
from .config import ConfigError, RunConfig
from .delegated import (DelegatedPolicy, delegated_utility_per_hire, fairness_stats,
                        group_select_prob, unfairness_direction)
from .direct import joint_allocate, net_value, solve_group, solve_threshold
from .errors import ModelError
from .figures import write_figures
from .gauss import hazard
from .population import derive_scales, quality_bias
from .report import dumps, write_csv


class UsageError(ConfigError):
    pass


def _tau1_values(cfg):
    if cfg.tau1_grid:
        return cfg.tau1_grid
    if cfg.tau1 is not None:
        return [cfg.tau1]
    raise UsageError("set [policy] tau1 or [sweep] tau1")


def _policy_dict(pol, verbose):
    d = {"tau_star": pol.tau_star, "z_star": pol.z_star, "n_rev_star": pol.n_rev_star,
         "v_star": pol.v_star, "viable": pol.viable, "bias": pol.bias}
    if verbose and pol.diagnostics is not None:
        diag = pol.diagnostics
        d["diagnostics"] = {"bracket": list(diag.bracket), "iterations": diag.iterations,
                            "residual": diag.residual}
    return d


def cmd_delegated(cfg, args):
    pop, prefs = cfg.single, cfg.require_prefs()
    rows = []
    for t in _tau1_values(cfg):
        u = delegated_utility_per_hire(pop, prefs, DelegatedPolicy(t))
        rows.append({"alpha": prefs.alpha, "tau1": t, "utility_per_hire": u,
                     "total_utility": prefs.k * u})
    return ("alpha", "tau1", "utility_per_hire", "total_utility"), rows


def cmd_solve(cfg, args):
    prefs = cfg.require_prefs()
    out = []
    for pop in cfg.populations or [cfg.single]:
        scales = derive_scales(pop, prefs)
        pol = solve_group(pop, prefs)
        d = {"label": pop.label, "alpha": prefs.alpha, "c_rev": prefs.c_rev, "k": prefs.k,
             "sigma_t": scales.sigma_t, "sigma_t_tilde": scales.sigma_t_tilde,
             "viability_bound": scales.sigma_t**2 / scales.sigma_t_tilde / math.sqrt(2 * math.pi)}
        d.update(_policy_dict(pol, args.verbose))
        out.append(d)
    return out[0] if len(out) == 1 else {"groups": out}


def cmd_fairness(cfg, args):
    mix = cfg.require_mix()
    rows = []
    for t in _tau1_values(cfg):
        pol = DelegatedPolicy(t)
        fs = fairness_stats(mix, pol)
        p_a, p_b = group_select_prob(mix, pol)
        rows.append({"tau1": t, "p_a": p_a, "p_b": p_b, "comp_a": fs.comp_a,
                     "comp_b": fs.comp_b, "e_d": fs.e_d, "e_abs_d_lower": fs.e_abs_d_lower,
                     "e_abs_d_upper": fs.e_abs_d_upper,
                     "direction": unfairness_direction(mix, pol)})
    return ("tau1", "p_a", "p_b", "comp_a", "comp_b", "e_d", "e_abs_d_lower",
            "e_abs_d_upper", "direction"), rows


def cmd_joint(cfg, args):
    mix, prefs = cfg.require_mix(), cfg.require_prefs()
    alloc = joint_allocate(mix, prefs)
    return {"k": prefs.k, "lambda_a": mix.lambda_a, "r_a": alloc.r_a, "r_b": alloc.r_b,
            "share_a": alloc.share_a, "share_b": alloc.share_b,
            "policy_a": _policy_dict(alloc.policy_a, args.verbose),
            "policy_b": _policy_dict(alloc.policy_b, args.verbose)}


def cmd_compare(cfg, args):
    pop, prefs = cfg.single, cfg.require_prefs()
    if cfg.tau1 is None:
        raise UsageError("compare needs [policy] tau1")
    pol = DelegatedPolicy(cfg.tau1)
    d = compare_point(pop, prefs, pol)
    direct = solve_group(pop, prefs)
    return {"alpha": prefs.alpha, "tau1": cfg.tau1,
            "delegated_quality": delegated_utility_per_hire(pop, prefs, pol),
            "direct_quality": direct_quality(pop, prefs, direct) if direct.viable else None,
            "direct_value": direct.v_star, "delta_quality": d.delta_quality,
            "delta_utility": d.delta_utility,
            "delegation_preferred_quality": d.delegation_preferred_quality,
            "delegation_preferred_utility": d.delegation_preferred_utility,
            "viable": d.viable}


def cmd_sweep(cfg, args):
    pop, prefs = cfg.single, cfg.require_prefs()
    if not cfg.alpha_grid or not cfg.tau1_grid:
        raise UsageError("sweep needs [sweep] alpha and tau1 grids")
    cells = sweep_grid(pop, prefs, cfg.alpha_grid, cfg.tau1_grid, threads=args.threads)
    return SWEEP_COLUMNS, [c.as_row() for c in cells]


def _est(e):
    return {"estimate": e.mean, "std_error": e.std_error, "n_effective": e.n_effective}


def cmd_simulate(cfg, args):
    m = cfg.mc
    out = {"target": args.target, "seed": m.seed, "n_samples": m.n_samples}
    if args.target == "delegated":
        pop, prefs = cfg.single, cfg.require_prefs()
        if cfg.tau1 is None:
            raise UsageError("simulate --target delegated needs [policy] tau1")
        pol = DelegatedPolicy(cfg.tau1)
        out.update(_est(mc.estimate_delegated(pop, prefs, pol, m, threads=args.threads)))
        out["closed_form"] = delegated_utility_per_hire(pop, prefs, pol)
        out["tau1"] = cfg.tau1
    elif args.target == "direct":
        pop, prefs = cfg.single, cfg.require_prefs()
        scales = derive_scales(pop, prefs)
        if cfg.tau is not None:
            tau = cfg.tau
        else:
            tau = solve_threshold(scales, prefs).tau_star - quality_bias(pop, prefs)
        quality, accept = mc.estimate_direct(pop, prefs, tau, m, threads=args.threads)
        net = mc.net_value_estimate(quality, accept, prefs.c_rev)
        out.update(_est(quality))
        out["tau"] = tau
        z = (tau + quality_bias(pop, prefs)) / scales.sigma_t_tilde
        out["closed_form"] = float(scales.sigma_t**2 / scales.sigma_t_tilde * hazard(z))
        out["accept_prob"] = _est(accept)
        out["net_value"] = _est(net)
        out["net_value"]["closed_form"] = float(
            net_value(scales, prefs, tau + quality_bias(pop, prefs)))
    else:
        mix = cfg.require_mix()
        if cfg.tau1 is None:
            raise UsageError("simulate --target fairness needs [policy] tau1")
        pol = DelegatedPolicy(cfg.tau1)
        e_d, e_abs = mc.estimate_fairness(mix, pol, m, threads=args.threads)
        fs = fairness_stats(mix, pol)
        out.update(_est(e_d))
        out.update({"tau1": cfg.tau1, "n_trials": m.n_trials, "k_hires": m.k_hires,
                    "closed_form": fs.e_d, "abs": _est(e_abs),
                    "abs_lower": fs.e_abs_d_lower, "abs_upper": fs.e_abs_d_upper})
    return out


def cmd_repro(cfg, args):
    outdir = args.out or cfg.out or "figures"
    paths = write_figures(outdir, threads=args.threads)
    return {"written": [os.path.relpath(p, outdir) for p in paths], "out": outdir}


COMMANDS = {
    "delegated": (cmd_delegated, "per-hire utility of agent selection over tau1"),
    "solve": (cmd_solve, "optimal review threshold of the principal"),
    "fairness": (cmd_fairness, "composition and parity statistics of delegated hires"),
    "joint": (cmd_joint, "capacity split between two groups without delegation"),
    "compare": (cmd_compare, "delegation versus direct review at one point"),
    "sweep": (cmd_sweep, "(alpha, tau1) grid of comparison deltas"),
    "simulate": (cmd_simulate, "Monte Carlo estimate next to the closed form"),
    "repro-figures": (cmd_repro, "write the CSV data behind every reproduced figure"),
}


def build_parser():
    p = argparse.ArgumentParser(prog="delegation", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        s = sub.add_parser(name, help=help_)
        s.add_argument("--config", help="INI run configuration")
        s.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE",
                       help="override one config value (repeatable)")
        s.add_argument("--seed", type=int, help="override [mc] seed")
        s.add_argument("--out", help="output file (directory for repro-figures)")
        s.add_argument("--format", choices=("csv", "json"))
        s.add_argument("--threads", type=int, default=None,
                       help=f"worker threads (default ${mc.THREADS_ENV} or 1)")
        s.add_argument("-v", "--verbose", action="store_true",
                       help="include solver diagnostics")
        if name == "simulate":
            s.add_argument("--target", choices=("delegated", "direct", "fairness"),
                           default="delegated")
    return p


def _load(args):
    text = ""
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
    overrides = list(args.set)
    if args.seed is not None:
        overrides.append(f"mc.seed={args.seed}")
    return RunConfig.from_ini(text, overrides)


def _render(result, fmt):
    buf = io.StringIO()
    if isinstance(result, tuple):
        cols, rows = result
        if fmt == "json":
            buf.write(dumps([{c: r.get(c) for c in cols} for r in rows]))
        else:
            write_csv(buf, cols, rows)
    else:
        if fmt == "csv":
            flat = {k: v for k, v in result.items() if not isinstance(v, (dict, list))}
            write_csv(buf, list(flat), [flat])
        else:
            buf.write(dumps(result))
    return buf.getvalue()


def _fail(exc, code):
    msg = json.dumps(str(exc))
    print(f"error: kind={getattr(exc, 'kind', 'internal')} message={msg}", file=sys.stderr)
    return code


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads is None:
        args.threads = mc.default_threads()
    try:
        cfg = _load(args)
        result = COMMANDS[args.command][0](cfg, args)
    except ConfigError as exc:
        return _fail(exc, 2)
    except ModelError as exc:
        return _fail(exc, 1)
    if args.command == "repro-figures":
        fmt = args.format or "json"
        sys.stdout.write(_render(result, fmt))
        return 0
    fmt = args.format or cfg.format or ("csv" if isinstance(result, tuple) else "json")
    text = _render(result, fmt)
    out = args.out or cfg.out
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main():
    sys.exit(run())
