"""Flat, line-oriented `key = value` config files with dotted section keys.

No nesting, no quoting; `#` starts a comment.  Parsing preserves key order,
and serialize(parse(text)) round-trips to the same mapping.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import ConfigError, FormatError


def parse_config(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FormatError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        value = value.strip()
        if not key:
            raise FormatError(f"line {lineno}: empty key")
        if key in out:
            raise FormatError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def serialize_config(cfg: dict[str, str]) -> str:
    return "".join(f"{k} = {v}\n" for k, v in cfg.items())


def get_str(cfg: dict[str, str], key: str, default: str | None = None) -> str:
    if key in cfg:
        return cfg[key]
    if default is None:
        raise ConfigError(f"missing config key {key!r}")
    return default


def get_int(cfg: dict[str, str], key: str, default: int | None = None) -> int:
    if key not in cfg:
        if default is None:
            raise ConfigError(f"missing config key {key!r}")
        return default
    try:
        return int(cfg[key])
    except ValueError:
        raise ConfigError(f"config key {key!r} must be an integer, got {cfg[key]!r}") from None


def get_float(cfg: dict[str, str], key: str, default: float | None = None) -> float:
    if key not in cfg:
        if default is None:
            raise ConfigError(f"missing config key {key!r}")
        return default
    try:
        return float(Fraction(cfg[key]))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"config key {key!r} must be a number, got {cfg[key]!r}") from None


def get_fraction(cfg: dict[str, str], key: str, default: Fraction | None = None) -> Fraction:
    if key not in cfg:
        if default is None:
            raise ConfigError(f"missing config key {key!r}")
        return default
    try:
        return Fraction(cfg[key])
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"config key {key!r} must be a fraction, got {cfg[key]!r}") from None


def get_int_list(cfg: dict[str, str], key: str, default: list[int] | None = None) -> list[int]:
    if key not in cfg:
        if default is None:
            raise ConfigError(f"missing config key {key!r}")
        return default
    try:
        return [int(tok) for tok in cfg[key].split(",") if tok.strip() != ""]
    except ValueError:
        raise ConfigError(f"config key {key!r} must be comma-separated integers") from None
