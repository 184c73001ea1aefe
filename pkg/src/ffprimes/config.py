"""Run configuration: a typed key schema, `key = value` files and a canonical dump.

Values come from three layers, later ones winning: schema defaults, a
config file, command-line flags.  Runtime keys (thread count, paths) do
not affect results and are left out of the echo block, so outputs are
byte-identical across thread counts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ConfigError
from .report import fmt_float


@dataclass(frozen=True)
class Key:
    name: str
    kind: type
    help: str
    default: object = None
    choices: tuple | None = None
    runtime: bool = False

    @property
    def flag(self) -> str:
        return "--" + self.name.replace("_", "-")


def _k(name, kind, help, default=None, choices=None, runtime=False):
    return Key(name, kind, help, default, choices, runtime)


KEYS = {k.name: k for k in [
    _k("q", int, "field order (prime power)"),
    _k("p", int, "field characteristic, with --e"),
    _k("e", int, "extension degree over F_p", 1),
    _k("seed", int, "random seed", 0),
    _k("threads", int, "worker threads", 1, runtime=True),
    _k("out", str, "output path (stdout if absent)", runtime=True),
    _k("format", str, "output format", "json", ("json", "csv")),
    # cache
    _k("max_deg", int, "largest degree in the cache"),
    _k("cache", str, "cache file path (.gz compresses)", runtime=True),
    _k("mode", str, "subcommand mode"),
    _k("spot_checks", int, "entries re-factored during verification", 100),
    # sieve
    _k("r", int, "window parameter r"),
    _k("k", int, "target size parameter k", 1),
    _k("w", int, "W = product of primes of degree <= w (default 1)", 1),
    _k("R", float, "truncation level (default: schedule in r, k, q)"),
    _k("alpha", str, "residue alpha coprime to W", "1"),
    _k("g", str, "monic squarefree twist polynomial", "1"),
    _k("bump", str, "bump function label", "mollifier"),
    _k("normalization", str, "measure constant", "calibrated", ("calibrated", "literal")),
    _k("window", int, "box degree (default r)"),
    _k("poly", str, "polynomials, ';'-separated"),
    _k("samples", str, "sample points, ','-separated"),
    # correlations
    _k("forms", str, "linear forms, rows by '|', coefficients by ';'"),
    _k("shifts", str, "shift polynomials by '|'"),
    _k("estimator", str, "summation mode", "exhaustive", ("exhaustive", "sampling")),
    _k("draws", int, "samples in sampling mode", 1 << 16),
    _k("budget", int, "term or candidate budget"),
    _k("s", int, "number of shifts or class window"),
    _k("family_size", int, "calibration family size", 200),
    _k("calibration", str, "calibration JSON path", runtime=True),
    # quotient
    _k("N", str, "ring modulus, monic"),
    _k("j", int, "vertex index in J", 0),
    _k("omegas", str, "patterns as 0/1 strings, ';'-separated"),
    _k("x0", str, "fixed assignment on the edge, '|'-separated", ""),
    # patterns
    _k("deg_a_max", int, "largest degree of a"),
    _k("deg_m_max", int, "largest degree of m"),
    _k("deg_m_min", int, "smallest degree of m", 1),
    _k("guard", bool, "require deg a >= deg m + s", True),
    _k("W", str, "twist modulus W"),
    _k("M", str, "equivalence class modulus"),
    _k("residue", str, "equivalence class residue", "0"),
]}

COMMON = ("q", "p", "e", "seed", "threads", "out", "format")
SIEVE = ("r", "k", "w", "R", "alpha", "g", "bump", "normalization")


@dataclass(frozen=True)
class Subcommand:
    name: str
    keys: tuple[str, ...]
    required: tuple[str, ...]
    modes: tuple[str, ...] = ()


SUBCOMMANDS = {s.name: s for s in [
    Subcommand("irreducibles", ("max_deg", "cache", "mode", "spot_checks"), ("max_deg",), ("build", "verify")),
    Subcommand("lambda", ("R", "poly", "bump"), ("R", "poly")),
    Subcommand("cphi", ("bump", "samples"), ()),
    Subcommand("measure", SIEVE + ("window",), ("r",)),
    Subcommand("correlate", SIEVE + ("mode", "window", "forms", "shifts", "estimator", "draws", "budget",
                                     "s", "family_size", "calibration"),
               ("r", "window"), ("cross", "auto", "calibrate")),
    Subcommand("lift", ("N", "k", "w", "R", "alpha", "bump", "normalization", "mode", "j", "omegas", "x0",
                        "budget"), ("N", "R"), ("table", "one", "two")),
    Subcommand("search", ("s", "deg_a_max", "deg_m_max", "deg_m_min", "guard", "budget", "W", "alpha"),
               ("s", "deg_a_max")),
    Subcommand("search-in-class", ("M", "residue", "W", "alpha", "r", "s", "budget", "deg_m_max", "guard"),
               ("M", "W", "r", "s")),
]}


def convert(key: Key, raw):
    if raw is None or not isinstance(raw, str):
        return raw
    try:
        if key.kind is bool:
            low = raw.strip().lower()
            if low not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(raw)
            return low in ("true", "1", "yes")
        if key.kind is int:
            return int(raw.strip(), 0)
        if key.kind is float:
            return float(raw.strip())
        return raw.strip()
    except ValueError as exc:
        raise ConfigError(f"{key.name}: cannot read {raw!r} as {key.kind.__name__}") from exc


def parse_text(text: str) -> dict:
    """Read `key = value` lines; '#' starts a comment.

    Output files are accepted too: JSON outputs contribute their "config"
    block, CSV outputs their "#@ key = value" echo lines.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad JSON config: {exc}") from exc
        return {k: (v if isinstance(v, str) else json.dumps(v)) for k, v in data.get("config", data).items()}
    lines = text.splitlines()
    if stripped.startswith("#@"):
        # a CSV output: the echo block carries the config, the rest is data
        lines = [ln if ln.startswith("#@") else "" for ln in lines]
    out = {}
    for lineno, line in enumerate(lines, 1):
        if line.startswith("#@"):
            line = line[2:]
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        k, v = (part.strip() for part in line.split("=", 1))
        out[k] = v
    return out


@dataclass
class RunConfig:
    subcommand: str
    values: dict = field(default_factory=dict)

    def __getitem__(self, name):
        return self.values.get(name)

    def get(self, name, default=None):
        v = self.values.get(name)
        return default if v is None else v

    def echo(self) -> dict:
        """Result-affecting keys in canonical order, with the subcommand first."""
        out = {"subcommand": self.subcommand}
        for name in sorted(self.values):
            v = self.values[name]
            if v is None or KEYS[name].runtime:
                continue
            out[name] = v
        return out

    def dump(self) -> str:
        return "".join(f"{k} = {format_value(v)}\n" for k, v in self.echo().items())


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    return str(v)


def build(subcommand: str, file_values: dict, flag_values: dict) -> RunConfig:
    """Merge defaults, file values and flags; validate before any computation."""
    if subcommand not in SUBCOMMANDS:
        raise ConfigError(f"unknown subcommand {subcommand!r}")
    sub = SUBCOMMANDS[subcommand]
    allowed = set(COMMON) | set(sub.keys)
    file_values = dict(file_values)
    file_sub = file_values.pop("subcommand", subcommand)
    if file_sub != subcommand:
        raise ConfigError(f"config is for {file_sub!r}, not {subcommand!r}")
    values = {name: KEYS[name].default for name in allowed}
    for name, raw in file_values.items():
        if name not in allowed:
            raise ConfigError(f"key {name!r} does not apply to {subcommand}")
        values[name] = convert(KEYS[name], raw)
    for name, v in flag_values.items():
        if v is not None and name in allowed:
            values[name] = convert(KEYS[name], v)
    for name in sub.required:
        if values.get(name) is None:
            raise ConfigError(f"{subcommand} requires {KEYS[name].flag}")
    if values.get("q") is None and values.get("p") is None:
        raise ConfigError("give the field as --q or --p/--e")
    if values.get("q") is not None and values.get("p") is not None:
        raise ConfigError("give --q or --p/--e, not both")
    if sub.modes:
        if values.get("mode") is None:
            values["mode"] = sub.modes[0]
        if values["mode"] not in sub.modes:
            raise ConfigError(f"mode must be one of {sub.modes}")
    for name, v in values.items():
        key = KEYS[name]
        if key.choices and v is not None and v not in key.choices:
            raise ConfigError(f"{name} must be one of {key.choices}")
        if key.kind is int and v is not None and name not in ("seed",) and v < 0:
            raise ConfigError(f"{name} must be >= 0")
    if values.get("threads") is not None and values["threads"] < 1:
        raise ConfigError("threads must be >= 1")
    # normalize the field to q
    if values.get("p") is not None:
        values["q"] = values["p"] ** values.get("e", 1)
    values.pop("p", None)
    values.pop("e", None)
    return RunConfig(subcommand, values)
