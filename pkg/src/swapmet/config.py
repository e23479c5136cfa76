"""Flat key=value experiment configuration with per-experiment defaults.

A config file is plain UTF-8 text, one ``key = value`` pair per line;
blank lines and ``#`` comments are ignored.  List-valued keys accept
comma-separated entries, and float lists additionally accept the range
shorthand ``start:stop:count`` for evenly spaced sweeps.  Command-line
overrides reuse the same syntax, so errors from both paths carry the
offending source location (``line N`` or the ``--set`` pair).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "ConfigError",
    "EXPERIMENTS",
    "ExperimentConfig",
    "METHOD_CHOICES",
    "apply_overrides",
    "default_config",
    "parse_config",
]

EXPERIMENTS = (
    "FigVariance",
    "FigBiasIIDP",
    "FigSingle",
    "FigMulti",
    "FigSuppAlpha",
    "Validate",
)

METHOD_CHOICES = ("naive", "vsp", "swap", "swap-alpha")
PLACEMENT_CHOICES = ("auto", "end", "per-unit")
NOISE_CHOICES = ("dephasing", "iidp")

#: Every recognized key, with a short description used by error text.
_KEY_HELP = {
    "experiment": "experiment name",
    "n": "qubit counts (int list)",
    "lambda1": "first coupling values (float list)",
    "lambda2": "second coupling (float)",
    "p_z1": "per-site dephasing rates (float list)",
    "p_x1": "per-site bit-flip rates (float list)",
    "p1": "shared per-site error rates (float list)",
    "nu": "shots per point (int or 'inf')",
    "t_start": "first evolution time (int)",
    "t_stop": "last evolution time (int, 0 = auto)",
    "t_step": "evolution time step (int)",
    "t_list": "explicit evolution times (int list)",
    "reps": "repetitions per point (int)",
    "seed": "root seed (int)",
    "placement": "noise placement (auto | end | per-unit)",
    "noise": "noise model (dephasing | iidp)",
    "methods": "estimation methods (list)",
    "out": "output CSV path",
    "workers": "work-pool size (int)",
}


class ConfigError(ValueError):
    """Configuration rejected; the message names the source location."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated parameters of one experiment run."""

    experiment: str
    n: tuple[int, ...] = (3,)
    lambda1: tuple[float, ...] = (1e-3,)
    lambda2: float | None = None
    p_z1: tuple[float, ...] = (5e-4,)
    p_x1: tuple[float, ...] = (0.0,)
    p1: tuple[float, ...] = (5e-4,)
    nu: int | None = 10**6
    t_start: int = 1
    t_stop: int = 0
    t_step: int = 10
    t_list: tuple[int, ...] | None = None
    reps: int = 10
    seed: int = 0
    placement: str = "auto"
    noise: str = "dephasing"
    methods: tuple[str, ...] = ("naive", "vsp", "swap")
    out: str | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(
                f"unknown experiment {self.experiment!r}; "
                f"choose from {', '.join(EXPERIMENTS)}"
            )
        for name in ("n", "lambda1", "p_z1", "p_x1", "p1"):
            if len(getattr(self, name)) == 0:
                raise ConfigError(f"{name} axis is empty")
        if any(v < 1 for v in self.n):
            raise ConfigError("n values must be >= 1")
        if any(v <= 0.0 for v in self.lambda1):
            raise ConfigError("lambda1 values must be positive")
        for name in ("p_z1", "p_x1", "p1"):
            if any(not 0.0 <= v <= 1.0 for v in getattr(self, name)):
                raise ConfigError(f"{name} values must lie in [0, 1]")
        if self.nu is not None and self.nu < 1:
            raise ConfigError("nu must be >= 1 or 'inf'")
        if self.t_start < 0 or self.t_stop < 0 or self.t_step < 1:
            raise ConfigError("time sweep needs t_start, t_stop >= 0 and t_step >= 1")
        if self.t_list is not None:
            if len(self.t_list) == 0:
                raise ConfigError("t_list is empty")
            if any(t < 0 for t in self.t_list):
                raise ConfigError("t_list values must be >= 0")
        if self.reps < 1:
            raise ConfigError("reps must be >= 1")
        if self.seed < 0:
            raise ConfigError("seed must be >= 0")
        if self.placement not in PLACEMENT_CHOICES:
            raise ConfigError(
                f"placement must be one of {', '.join(PLACEMENT_CHOICES)}"
            )
        if self.noise not in NOISE_CHOICES:
            raise ConfigError(f"noise must be one of {', '.join(NOISE_CHOICES)}")
        if len(self.methods) == 0:
            raise ConfigError("methods list is empty")
        for method in self.methods:
            if method not in METHOD_CHOICES:
                raise ConfigError(
                    f"unknown method {method!r}; choose from {', '.join(METHOD_CHOICES)}"
                )
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.experiment in ("FigMulti", "FigSuppAlpha") and self.lambda2 is None:
            raise ConfigError(f"{self.experiment} requires lambda2")


#: Per-experiment default values, expressed in config syntax so the
#: file, the overrides, and the built-in defaults share one code path.
_DEFAULTS: dict[str, dict[str, str]] = {
    "FigVariance": {
        "n": "3",
        "lambda1": "5e-4",
        "p_z1": "5e-4",
        "nu": "1",
        "reps": "1",
        "methods": "swap",
        "noise": "dephasing",
    },
    "FigBiasIIDP": {
        "n": "3",
        "lambda1": "5e-4",
        "p1": "5e-4",
        "nu": "inf",
        "reps": "1",
        "methods": "swap",
        "noise": "iidp",
        "placement": "per-unit",
    },
    "FigSingle": {
        "n": "3",
        "lambda1": "1e-3",
        "p_z1": "5e-4",
        "p_x1": "0",
        "nu": "1000000",
        "reps": "10",
        "methods": "naive,vsp,swap",
        "noise": "dephasing",
    },
    "FigMulti": {
        "n": "3",
        "lambda1": "1e-3",
        "lambda2": "2e-3",
        "p1": "1e-4:2.5e-3:10",
        "nu": "1000000",
        "t_start": "100",
        "t_stop": "100",
        "t_step": "1",
        "reps": "10",
        "methods": "naive,vsp,swap",
        "noise": "dephasing",
    },
    "FigSuppAlpha": {
        "n": "3",
        "lambda1": "1",
        "lambda2": "0.25",
        "p_z1": "1e-4:2.5e-3:10",
        "nu": "inf",
        "t_list": "40,70,100",
        "reps": "1",
        "methods": "swap,swap-alpha",
        "noise": "dephasing",
        "placement": "end",
    },
    "Validate": {},
}


def _fail(where: str, key: str, message: str) -> ConfigError:
    return ConfigError(f"{where}: field {key!r}: {message}")


def _as_int(where: str, key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise _fail(where, key, f"expected an integer, got {raw!r}") from None


def _as_float(where: str, key: str, raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise _fail(where, key, f"expected a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise _fail(where, key, f"expected a finite number, got {raw!r}")
    return value


def _as_int_list(where: str, key: str, raw: str) -> tuple[int, ...]:
    parts = [p.strip() for p in raw.split(",") if p.strip()]
    if not parts:
        raise _fail(where, key, "expected at least one integer")
    return tuple(_as_int(where, key, p) for p in parts)


def _as_float_list(where: str, key: str, raw: str) -> tuple[float, ...]:
    if ":" in raw:
        parts = raw.split(":")
        if len(parts) != 3:
            raise _fail(where, key, "range shorthand is start:stop:count")
        start = _as_float(where, key, parts[0])
        stop = _as_float(where, key, parts[1])
        count = _as_int(where, key, parts[2])
        if count < 1:
            raise _fail(where, key, "range count must be >= 1")
        return tuple(float(v) for v in np.linspace(start, stop, count))
    items = [p.strip() for p in raw.split(",") if p.strip()]
    if not items:
        raise _fail(where, key, "expected at least one number")
    return tuple(_as_float(where, key, p) for p in items)


def _as_nu(where: str, key: str, raw: str) -> int | None:
    if raw.strip().lower() == "inf":
        return None
    return _as_int(where, key, raw)


def _as_str_list(where: str, key: str, raw: str) -> tuple[str, ...]:
    items = tuple(p.strip() for p in raw.split(",") if p.strip())
    if not items:
        raise _fail(where, key, "expected at least one entry")
    return items


_PARSERS = {
    "experiment": lambda where, key, raw: raw.strip(),
    "n": _as_int_list,
    "lambda1": _as_float_list,
    "lambda2": _as_float,
    "p_z1": _as_float_list,
    "p_x1": _as_float_list,
    "p1": _as_float_list,
    "nu": _as_nu,
    "t_start": _as_int,
    "t_stop": _as_int,
    "t_step": _as_int,
    "t_list": _as_int_list,
    "reps": _as_int,
    "seed": _as_int,
    "placement": lambda where, key, raw: raw.strip(),
    "noise": lambda where, key, raw: raw.strip(),
    "methods": _as_str_list,
    "out": lambda where, key, raw: raw.strip(),
    "workers": _as_int,
}


def _scan_pairs(text: str, source: str) -> dict[str, tuple[str, str]]:
    """Map key -> (raw value, location label), rejecting malformed lines."""
    pairs: dict[str, tuple[str, str]] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        where = f"{source}, line {line_no}"
        if "=" not in stripped:
            raise ConfigError(f"{where}: expected 'key = value', got {stripped!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        raw = raw.split("#", 1)[0].strip()
        if key not in _KEY_HELP:
            raise ConfigError(f"{where}: unknown key {key!r}")
        if not raw:
            raise ConfigError(f"{where}: field {key!r}: empty value")
        if key in pairs:
            raise ConfigError(f"{where}: duplicate key {key!r}")
        pairs[key] = (raw, where)
    return pairs


def _build(pairs: dict[str, tuple[str, str]], source: str) -> ExperimentConfig:
    if "experiment" not in pairs:
        raise ConfigError(f"{source}: missing required key 'experiment'")
    experiment = pairs["experiment"][0]
    if experiment not in EXPERIMENTS:
        raise ConfigError(
            f"{pairs['experiment'][1]}: field 'experiment': unknown experiment "
            f"{experiment!r}; choose from {', '.join(EXPERIMENTS)}"
        )
    merged: dict[str, tuple[str, str]] = {
        key: (raw, f"default for {experiment}")
        for key, raw in _DEFAULTS[experiment].items()
    }
    merged.update(pairs)
    kwargs = {}
    for key, (raw, where) in merged.items():
        kwargs[key] = _PARSERS[key](where, key, raw)
    try:
        return ExperimentConfig(**kwargs)
    except ConfigError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def parse_config(text: str, source: str = "config") -> ExperimentConfig:
    """Parse config text; raises :class:`ConfigError` with locations."""
    return _build(_scan_pairs(text, source), source)


def default_config(experiment: str) -> ExperimentConfig:
    """Built-in defaults for one experiment, no file required."""
    return parse_config(f"experiment = {experiment}", source="defaults")


def apply_overrides(config: ExperimentConfig, pairs: list[str]) -> ExperimentConfig:
    """Apply ``key=value`` overrides from the command line."""
    updates = {}
    for pair in pairs:
        where = f"--set {pair!r}"
        if "=" not in pair:
            raise ConfigError(f"{where}: expected key=value")
        key, _, raw = pair.partition("=")
        key, raw = key.strip(), raw.strip()
        if key not in _KEY_HELP:
            raise ConfigError(f"{where}: unknown key {key!r}")
        if key == "experiment":
            raise ConfigError(f"{where}: the experiment cannot be overridden")
        if not raw:
            raise ConfigError(f"{where}: field {key!r}: empty value")
        updates[key] = _PARSERS[key](where, key, raw)
    try:
        return replace(config, **updates)
    except ConfigError as exc:
        raise ConfigError(f"--set: {exc}") from None
