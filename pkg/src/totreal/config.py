"""Runtime configuration read from a key=value file named by TOTREAL_CONFIG."""
from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .qlattice.enumerate import DEFAULT_BUDGET

ENV_VAR = "TOTREAL_CONFIG"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    default_precision_bits: int = 64
    enumeration_budget: int = DEFAULT_BUDGET
    output_format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.enumeration_budget <= 0:
            raise ConfigError("enumeration_budget must be positive")
        if self.default_precision_bits < 32:
            raise ConfigError("default_precision_bits must be at least 32")
        if self.output_format not in ("json", "text"):
            raise ConfigError("output_format must be json or text")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be a 64-bit unsigned integer")


def parse_config(text: str, base: Config = Config()) -> Config:
    """Parse ``key = value`` lines; blank lines and ``#`` comments are ignored."""
    types = {f.name: f.type for f in fields(Config)}
    updates = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (s.strip() for s in line.partition("="))
        if not sep:
            raise ConfigError(f"line {lineno}: expected key = value")
        if key not in types:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if types[key] in ("int", int):
            try:
                updates[key] = int(value, 0)
            except ValueError:
                raise ConfigError(f"line {lineno}: {key} must be an integer") from None
        else:
            updates[key] = value
    return replace(base, **updates)


def load_config(environ=os.environ) -> Config:
    path = environ.get(ENV_VAR)
    if not path:
        return Config()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return parse_config(text)
