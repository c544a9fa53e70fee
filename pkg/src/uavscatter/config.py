"""Run configuration: flat key-value text with bracketed section headers.

An empty (or absent) config reproduces the reference setup in full, so every
key is optional.  The parser is deliberately hand-rolled: it tracks the line
number of every key so validation failures point at the offending line, which
configparser cannot do for semantic errors.

Format example::

    # comment
    [system]
    p_v = 10.0        # watts
    rates = 1, 1, 1

    [scenario]
    tag_seed = 1
    tag_range = 20.0
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .channel import ChannelParams
from .errors import ConfigError
from .geometry import Scenario, place_tags
from .montecarlo import McConfig
from .outage import SystemParams

_SECTIONS = ("system", "channel", "scenario", "mc", "sweep", "output")
_SWEEP_VARIABLES = ("x1", "p_v")
_SWEEP_SCALES = ("linear", "log")

DEFAULT_TAG_SEED = 1
DEFAULT_TAG_RANGE = 20.0


@dataclass(frozen=True)
class SweepSpec:
    """One swept axis: variable name, bounds, point count, and spacing."""

    variable: str = "x1"
    lo: float = 0.0
    hi: float = 300.0
    steps: int = 31
    scale: str = "linear"

    def __post_init__(self) -> None:
        if self.variable not in _SWEEP_VARIABLES:
            raise ValueError(
                f"sweep variable must be one of {_SWEEP_VARIABLES}, got {self.variable!r}"
            )
        if self.scale not in _SWEEP_SCALES:
            raise ValueError(
                f"sweep scale must be one of {_SWEEP_SCALES}, got {self.scale!r}"
            )
        if self.steps < 1:
            raise ValueError(f"steps must be at least 1, got {self.steps}")
        if self.steps == 1:
            if self.lo != self.hi:
                raise ValueError("a single-point sweep needs lo == hi")
        elif not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if self.scale == "log" and not self.lo > 0.0:
            raise ValueError("log spacing needs a positive lower bound")

    def grid(self) -> list[float]:
        if self.steps == 1:
            return [self.lo]
        if self.scale == "log":
            return [float(x) for x in np.geomspace(self.lo, self.hi, self.steps)]
        step = (self.hi - self.lo) / (self.steps - 1)
        return [self.lo + i * step for i in range(self.steps - 1)] + [self.hi]


@dataclass(frozen=True)
class RunConfig:
    """Everything a CLI command needs: parameters, scenario, MC, sweep, output.

    `mc.trials == 0` disables Monte-Carlo columns; `tag_layout` records
    whether tag positions were given explicitly or placed from a seed.
    """

    system: SystemParams = field(default_factory=SystemParams)
    channel: ChannelParams = field(default_factory=ChannelParams)
    scenario: Scenario = field(
        default_factory=lambda: _default_scenario(SystemParams().num_tags)
    )
    mc_trials: int = 100_000
    mc_seed: int = 12345
    mc_mode: str = "paper_faithful"
    sweep: SweepSpec = field(default_factory=SweepSpec)
    output_path: str | None = None
    # provenance marker, not a parameter: rendering pins explicit positions
    tag_layout: str = field(default="seeded", compare=False)

    def mc_config(self, trials: int | None = None) -> McConfig:
        n = self.mc_trials if trials is None else trials
        return McConfig(trials=n, seed=self.mc_seed, correlation_mode=self.mc_mode)


def _default_scenario(num_tags: int, seed: int = DEFAULT_TAG_SEED,
                      range_m: float = DEFAULT_TAG_RANGE) -> Scenario:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    return Scenario(
        tag_x=place_tags(num_tags, range_m, rng),
        x1=100.0,
        x2=300.0,
        x_b=500.0,
        h=50.0,
    )


class _Entry:
    __slots__ = ("value", "line", "used")

    def __init__(self, value: str, line: int):
        self.value = value
        self.line = line
        self.used = False


def _parse_sections(text: str, path: str) -> dict[str, dict[str, _Entry]]:
    sections: dict[str, dict[str, _Entry]] = {name: {} for name in _SECTIONS}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip().lower()
            if name not in sections:
                raise ConfigError(f"{path}:{lineno}: unknown section [{name}]")
            current = name
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        if current is None:
            raise ConfigError(f"{path}:{lineno}: key outside any [section]")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"{path}:{lineno}: empty key")
        if key in sections[current]:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r} in [{current}]")
        sections[current][key.lower()] = _Entry(value, lineno)
    return sections


class _SectionReader:
    def __init__(self, path: str, name: str, entries: dict[str, _Entry]):
        self.path = path
        self.name = name
        self.entries = entries

    def _fail(self, key: str, line: int, message: str):
        raise ConfigError(f"{self.path}:{line}: [{self.name}] {key}: {message}")

    def has(self, key: str) -> bool:
        return key in self.entries

    def take(self, key: str, parse, default):
        entry = self.entries.get(key)
        if entry is None:
            return default
        entry.used = True
        try:
            return parse(entry.value)
        except ConfigError:
            raise
        except Exception as exc:
            self._fail(key, entry.line, str(exc))

    def line(self, key: str) -> int:
        return self.entries[key].line

    def check_consumed(self):
        for key, entry in self.entries.items():
            if not entry.used:
                raise ConfigError(
                    f"{self.path}:{entry.line}: unknown key {key!r} in [{self.name}]"
                )


def _parse_float(text: str) -> float:
    value = float(text)
    if value != value or value in (float("inf"), float("-inf")):
        raise ValueError(f"not a finite number: {text!r}")
    return value


def _parse_int(text: str) -> int:
    return int(text, 0)


def _parse_float_list(text: str) -> tuple[float, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("expected at least one value")
    return tuple(_parse_float(p) for p in parts)


def _parse_int_list(text: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("expected at least one value")
    return tuple(int(p) for p in parts)


def _parse_choice(options) -> callable:
    def parse(text: str) -> str:
        value = text.strip().lower()
        if value not in options:
            raise ValueError(f"must be one of {', '.join(options)}; got {text!r}")
        return value

    return parse


def parse_config_text(text: str, path: str = "<config>") -> RunConfig:
    """Build a RunConfig from config text, raising ConfigError with line info."""
    sections = _parse_sections(text, path)
    defaults_sys = SystemParams()
    defaults_ch = ChannelParams()
    defaults_sweep = SweepSpec()

    sec = _SectionReader(path, "system", sections["system"])
    num_tags = sec.take("tags", _parse_int, defaults_sys.num_tags)
    rates = sec.take("rates", _parse_float_list, None)
    if rates is None:
        rates = (1.0,) * num_tags
    elif len(rates) == 1:
        rates = rates * num_tags
    system_kwargs = dict(
        num_tags=num_tags,
        p_v=sec.take("p_v", _parse_float, defaults_sys.p_v),
        p_c=sec.take("p_c", _parse_float, defaults_sys.p_c),
        p_f=sec.take("p_f", _parse_float, defaults_sys.p_f),
        eta_r=sec.take("eta_r", _parse_float, defaults_sys.eta_r),
        eta_c=sec.take("eta_c", _parse_float, defaults_sys.eta_c),
        t_b=sec.take("t_b", _parse_float, defaults_sys.t_b),
        t_u=sec.take("t_u", _parse_float, defaults_sys.t_u),
        sigma2_um=sec.take("sigma2_um", _parse_float, defaults_sys.sigma2_um),
        sigma2_v=sec.take("sigma2_v", _parse_float, defaults_sys.sigma2_v),
        sigma2_b=sec.take("sigma2_b", _parse_float, defaults_sys.sigma2_b),
        rates=rates,
        v=sec.take("v", _parse_float, defaults_sys.v),
        e_total=sec.take("e_total", _parse_float, defaults_sys.e_total),
    )
    try:
        system = SystemParams(**system_kwargs)
    except ValueError as exc:
        raise ConfigError(f"{path}: [system]: {exc}") from exc
    sec.check_consumed()

    sec = _SectionReader(path, "channel", sections["channel"])
    channel_kwargs = dict(
        c=sec.take("c", _parse_float, defaults_ch.c),
        q=sec.take("q", _parse_float, defaults_ch.q),
        beta0=sec.take("beta0", _parse_float, defaults_ch.beta0),
        alpha=sec.take("alpha", _parse_float, defaults_ch.alpha),
        k_los=sec.take("k_los", _parse_float, defaults_ch.k_los),
        k_nlos=sec.take("k_nlos", _parse_float, defaults_ch.k_nlos),
        eta_nlos=sec.take("eta_nlos", _parse_float, defaults_ch.eta_nlos),
    )
    try:
        channel = ChannelParams(**channel_kwargs)
    except ValueError as exc:
        raise ConfigError(f"{path}: [channel]: {exc}") from exc
    sec.check_consumed()

    sec = _SectionReader(path, "scenario", sections["scenario"])
    explicit = sec.take("tag_x", _parse_float_list, None)
    has_seeded_keys = sec.has("tag_seed") or sec.has("tag_range")
    if explicit is not None and has_seeded_keys:
        key = "tag_seed" if sec.has("tag_seed") else "tag_range"
        raise ConfigError(
            f"{path}:{sec.line(key)}: [scenario] {key}: "
            "give either explicit tag_x or (tag_seed, tag_range), not both"
        )
    tag_seed = sec.take("tag_seed", _parse_int, DEFAULT_TAG_SEED)
    tag_range = sec.take("tag_range", _parse_float, DEFAULT_TAG_RANGE)
    if explicit is not None:
        if len(explicit) != system.num_tags:
            raise ConfigError(
                f"{path}:{sec.line('tag_x')}: [scenario] tag_x: "
                f"expected {system.num_tags} positions, got {len(explicit)}"
            )
        tag_x = explicit
        tag_layout = "explicit"
    else:
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(tag_seed)))
        tag_x = place_tags(system.num_tags, tag_range, rng)
        tag_layout = "seeded"
    slots = sec.take("slots", _parse_int_list, None)
    scenario_kwargs = dict(
        tag_x=tag_x,
        x1=sec.take("x1", _parse_float, 100.0),
        x2=sec.take("x2", _parse_float, 300.0),
        x_b=sec.take("x_b", _parse_float, 500.0),
        h=sec.take("h", _parse_float, 50.0),
        slots=slots,
    )
    try:
        scenario = Scenario(**scenario_kwargs)
    except ValueError as exc:
        raise ConfigError(f"{path}: [scenario]: {exc}") from exc
    sec.check_consumed()

    sec = _SectionReader(path, "mc", sections["mc"])
    mc_trials = sec.take("trials", _parse_int, 100_000)
    if mc_trials < 0:
        raise ConfigError(
            f"{path}:{sec.line('trials')}: [mc] trials: must be nonnegative"
        )
    mc_seed = sec.take("seed", _parse_int, 12345)
    mc_mode = sec.take("mode", _parse_choice(("paper_faithful", "physical")),
                       "paper_faithful")
    sec.check_consumed()

    sec = _SectionReader(path, "sweep", sections["sweep"])
    sweep_kwargs = dict(
        variable=sec.take("variable", _parse_choice(_SWEEP_VARIABLES),
                          defaults_sweep.variable),
        lo=sec.take("lo", _parse_float, defaults_sweep.lo),
        hi=sec.take("hi", _parse_float, defaults_sweep.hi),
        steps=sec.take("steps", _parse_int, defaults_sweep.steps),
        scale=sec.take("scale", _parse_choice(_SWEEP_SCALES), defaults_sweep.scale),
    )
    try:
        sweep = SweepSpec(**sweep_kwargs)
    except ValueError as exc:
        raise ConfigError(f"{path}: [sweep]: {exc}") from exc
    sec.check_consumed()

    sec = _SectionReader(path, "output", sections["output"])
    output_path = sec.take("path", str, None)
    sec.check_consumed()

    return RunConfig(
        system=system,
        channel=channel,
        scenario=scenario,
        mc_trials=mc_trials,
        mc_seed=mc_seed,
        mc_mode=mc_mode,
        sweep=sweep,
        output_path=output_path,
        tag_layout=tag_layout,
    )


def load_config(path: str | None) -> RunConfig:
    """Parse the file at `path`; None yields the built-in defaults."""
    if path is None:
        return RunConfig()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config: {exc}") from exc
    return parse_config_text(text, path)


def render_config(cfg: RunConfig) -> str:
    """Serialize a RunConfig so that parsing the result reproduces it."""
    lines = [
        "[system]",
        f"tags = {cfg.system.num_tags}",
        f"p_v = {cfg.system.p_v!r}",
        f"p_c = {cfg.system.p_c!r}",
        f"p_f = {cfg.system.p_f!r}",
        f"eta_r = {cfg.system.eta_r!r}",
        f"eta_c = {cfg.system.eta_c!r}",
        f"t_b = {cfg.system.t_b!r}",
        f"t_u = {cfg.system.t_u!r}",
        f"sigma2_um = {cfg.system.sigma2_um!r}",
        f"sigma2_v = {cfg.system.sigma2_v!r}",
        f"sigma2_b = {cfg.system.sigma2_b!r}",
        "rates = " + ", ".join(repr(r) for r in cfg.system.rates),
        f"v = {cfg.system.v!r}",
        f"e_total = {cfg.system.e_total!r}",
        "",
        "[channel]",
        f"c = {cfg.channel.c!r}",
        f"q = {cfg.channel.q!r}",
        f"beta0 = {cfg.channel.beta0!r}",
        f"alpha = {cfg.channel.alpha!r}",
        f"k_los = {cfg.channel.k_los!r}",
        f"k_nlos = {cfg.channel.k_nlos!r}",
        f"eta_nlos = {cfg.channel.eta_nlos!r}",
        "",
        "[scenario]",
        "tag_x = " + ", ".join(repr(x) for x in cfg.scenario.tag_x),
        f"x1 = {cfg.scenario.x1!r}",
        f"x2 = {cfg.scenario.x2!r}",
        f"x_b = {cfg.scenario.x_b!r}",
        f"h = {cfg.scenario.h!r}",
    ]
    if cfg.scenario.slots is not None:
        lines.append("slots = " + ", ".join(str(s) for s in cfg.scenario.slots))
    lines += [
        "",
        "[mc]",
        f"trials = {cfg.mc_trials}",
        f"seed = {cfg.mc_seed}",
        f"mode = {cfg.mc_mode}",
        "",
        "[sweep]",
        f"variable = {cfg.sweep.variable}",
        f"lo = {cfg.sweep.lo!r}",
        f"hi = {cfg.sweep.hi!r}",
        f"steps = {cfg.sweep.steps}",
        f"scale = {cfg.sweep.scale}",
    ]
    if cfg.output_path is not None:
        lines += ["", "[output]", f"path = {cfg.output_path}"]
    return "\n".join(lines) + "\n"


def apply_overrides(
    cfg: RunConfig,
    out: str | None = None,
    trials: int | None = None,
    seed: int | None = None,
    mode: str | None = None,
) -> RunConfig:
    """Fold command-line flag values over a parsed configuration."""
    updates = {}
    if out is not None:
        updates["output_path"] = out
    if trials is not None:
        if trials < 0:
            raise ConfigError(f"--trials must be nonnegative, got {trials}")
        updates["mc_trials"] = trials
    if seed is not None:
        updates["mc_seed"] = seed
    if mode is not None:
        if mode not in ("paper_faithful", "physical"):
            raise ConfigError(f"--mode must be paper_faithful or physical, got {mode!r}")
        updates["mc_mode"] = mode
    return replace(cfg, **updates) if updates else cfg
