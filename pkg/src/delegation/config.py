"""INI-style run configuration.

Sections (all optional except where a command needs them)::

    [population]            ; or [population.a] and [population.b]
    sigma_f = 1
    sigma_s = 2
    sigma_ef = 0.5          ; or sigma_f_tilde = 1.12
    sigma_es = 0.5          ; or sigma_s_tilde = 2.06
    beta = 0
    label = A

    [mix]
    lambda_a = 0.5

    [preferences]
    alpha = 0.5
    c_rev = 0.1
    k = 1

    [policy]
    tau1 = 1.0
    tau = 0.8               ; explicit perceived-quality threshold for `simulate`

    [sweep]
    alpha = 0.05:0.95:0.05  ; start:stop:step (inclusive) or a comma list
    tau1 = 0, 0.5, 1

    [mc]
    seed = 0
    n_samples = 1000000
    n_trials = 10000
    k_hires = 100

    [output]
    path = out.csv
    format = csv

Serialization writes noise SDs (not signal SDs) and expanded grids, so
``to_ini(from_ini(to_ini(c))) == to_ini(c)``.
"""

import configparser
import math
from dataclasses import dataclass, field, fields
from typing import List, Optional

from .errors import DomainError, ModelError
from .mc import McConfig
from .population import PopulationParams, PrincipalPrefs


class ConfigError(ModelError, ValueError):
    kind = "usage"


_POP_KEYS = {"sigma_f", "sigma_s", "sigma_ef", "sigma_es", "sigma_f_tilde",
             "sigma_s_tilde", "beta", "label"}


def parse_grid(text):
    """Parse ``start:stop:step`` (stop inclusive) or a comma-separated list."""
    text = text.strip()
    if not text:
        return []
    if ":" in text:
        try:
            start, stop, step = (float(p) for p in text.split(":"))
        except ValueError:
            raise ConfigError(f"bad grid range {text!r}") from None
        if not step > 0 or stop < start:
            raise ConfigError(f"bad grid range {text!r}")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        # Round to kill accumulated binary noise such as 0.30000000000000004.
        return [round(start + i * step, 12) for i in range(n)]
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(f"bad grid list {text!r}") from None


def _num(x):
    return repr(float(x))


@dataclass
class RunConfig:
    populations: List[PopulationParams] = field(default_factory=list)
    lambda_a: Optional[float] = None
    prefs: Optional[PrincipalPrefs] = None
    tau1: Optional[float] = None
    tau: Optional[float] = None
    alpha_grid: Optional[List[float]] = None
    tau1_grid: Optional[List[float]] = None
    mc: McConfig = field(default_factory=McConfig)
    out: Optional[str] = None
    format: Optional[str] = None

    def __post_init__(self):
        if len(self.populations) > 2:
            raise ConfigError("at most two population blocks are supported")

    @property
    def single(self):
        if not self.populations:
            raise ConfigError("a [population] section is required")
        return self.populations[0]

    def require_prefs(self):
        if self.prefs is None:
            raise ConfigError("a [preferences] section is required")
        return self.prefs

    def require_mix(self):
        from .delegated import GroupMix

        if len(self.populations) != 2:
            raise ConfigError("this command needs [population.a] and [population.b]")
        if self.lambda_a is None:
            raise ConfigError("[mix] lambda_a is required for two groups")
        return GroupMix(self.lambda_a, *self.populations)

    # -- parsing -----------------------------------------------------------

    @classmethod
    def from_ini(cls, text, overrides=()):
        cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"),
                                       interpolation=None)
        try:
            cp.read_string(text)
        except configparser.Error as exc:
            raise ConfigError(f"malformed config: {exc}") from None
        for item in overrides:
            key, sep, value = item.partition("=")
            section, dot, option = key.strip().rpartition(".")
            if not (sep and dot and section and option):
                raise ConfigError(f"override must look like section.key=value: {item!r}")
            if not cp.has_section(section):
                cp.add_section(section)
            cp.set(section, option, value.strip())
        try:
            return cls._from_parser(cp)
        except ConfigError:
            raise
        except (ValueError, TypeError, DomainError) as exc:
            raise ConfigError(f"invalid config value: {exc}") from None

    @classmethod
    def _from_parser(cls, cp):
        known = {"population", "population.a", "population.b", "mix", "preferences",
                 "policy", "sweep", "mc", "output"}
        unknown = set(cp.sections()) - known
        if unknown:
            raise ConfigError(f"unknown section(s): {sorted(unknown)}")
        if cp.has_section("population") and (cp.has_section("population.a")
                                             or cp.has_section("population.b")):
            raise ConfigError("use either [population] or [population.a]/[population.b]")
        names = ["population"] if cp.has_section("population") else [
            n for n in ("population.a", "population.b") if cp.has_section(n)]
        pops = []
        for name in names:
            sec = cp[name]
            extra = set(sec) - _POP_KEYS
            if extra:
                raise ConfigError(f"unknown key(s) in [{name}]: {sorted(extra)}")
            default_label = "A" if name != "population.b" else "B"
            label = sec.get("label", default_label)
            sf, ss = sec.getfloat("sigma_f"), sec.getfloat("sigma_s")
            if sf is None or ss is None:
                raise ConfigError(f"[{name}] needs sigma_f and sigma_s")
            beta = sec.getfloat("beta", 0.0)
            if "sigma_f_tilde" in sec or "sigma_s_tilde" in sec:
                if "sigma_ef" in sec or "sigma_es" in sec:
                    raise ConfigError(f"[{name}] mixes noise SDs and signal SDs")
                pops.append(PopulationParams.from_signal_sds(
                    sf, ss, sec.getfloat("sigma_f_tilde", sf),
                    sec.getfloat("sigma_s_tilde", ss), beta=beta, label=label))
            else:
                pops.append(PopulationParams(sf, ss, sec.getfloat("sigma_ef", 0.0),
                                             sec.getfloat("sigma_es", 0.0), beta, label))
        if len(pops) == 1 and names[0] != "population":
            raise ConfigError("two-group configs need both [population.a] and [population.b]")

        prefs = None
        if cp.has_section("preferences"):
            p = cp["preferences"]
            prefs = PrincipalPrefs(p.getfloat("alpha", 0.0), p.getfloat("c_rev", 0.0),
                                   p.getfloat("k", 1.0))
        pol = cp["policy"] if cp.has_section("policy") else {}
        sweep = cp["sweep"] if cp.has_section("sweep") else {}
        mc_kw = {}
        if cp.has_section("mc"):
            names_mc = {f.name for f in fields(McConfig)}
            for key, value in cp["mc"].items():
                if key not in names_mc:
                    raise ConfigError(f"unknown key in [mc]: {key}")
                mc_kw[key] = int(value)
        out = cp["output"] if cp.has_section("output") else {}
        fmt = out.get("format")
        if fmt is not None and fmt not in ("csv", "json"):
            raise ConfigError(f"output format must be csv or json, got {fmt!r}")
        return cls(
            populations=pops,
            lambda_a=cp.getfloat("mix", "lambda_a") if cp.has_option("mix", "lambda_a") else None,
            prefs=prefs,
            tau1=float(pol["tau1"]) if "tau1" in pol else None,
            tau=float(pol["tau"]) if "tau" in pol else None,
            alpha_grid=parse_grid(sweep["alpha"]) if "alpha" in sweep else None,
            tau1_grid=parse_grid(sweep["tau1"]) if "tau1" in sweep else None,
            mc=McConfig(**mc_kw),
            out=out.get("path"),
            format=fmt,
        )

    # -- serialization -----------------------------------------------------

    def to_ini(self):
        lines = []

        def section(name, items):
            lines.append(f"[{name}]")
            lines.extend(f"{k} = {v}" for k, v in items)
            lines.append("")

        names = ["population"] if len(self.populations) == 1 else ["population.a", "population.b"]
        for name, pop in zip(names, self.populations):
            section(name, [("sigma_f", _num(pop.sigma_f)), ("sigma_s", _num(pop.sigma_s)),
                           ("sigma_ef", _num(pop.sigma_ef)), ("sigma_es", _num(pop.sigma_es)),
                           ("beta", _num(pop.beta)), ("label", pop.label)])
        if self.lambda_a is not None:
            section("mix", [("lambda_a", _num(self.lambda_a))])
        if self.prefs is not None:
            section("preferences", [("alpha", _num(self.prefs.alpha)),
                                    ("c_rev", _num(self.prefs.c_rev)),
                                    ("k", _num(self.prefs.k))])
        pol = [(k, _num(v)) for k, v in (("tau1", self.tau1), ("tau", self.tau))
               if v is not None]
        if pol:
            section("policy", pol)
        sweep = [(k, ", ".join(_num(x) for x in v))
                 for k, v in (("alpha", self.alpha_grid), ("tau1", self.tau1_grid))
                 if v is not None]
        if sweep:
            section("sweep", sweep)
        section("mc", [(f.name, str(getattr(self.mc, f.name))) for f in fields(McConfig)])
        out = [(k, v) for k, v in (("path", self.out), ("format", self.format)) if v]
        if out:
            section("output", out)
        return "\n".join(lines)
