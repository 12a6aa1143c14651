"""JSON family descriptions (schema in ``docs/schema.md``)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .engine import ContinuationParams
from .spectra import CommutingFamily, OperatorWord, SpectralBase, exact

__all__ = ["ConfigError", "FamilyConfig", "load_config", "parse_config", "bundled_configs"]

_TOP = {"description", "base", "operators", "defaults"}
_BASE = {"k0", "multiplicity", "exceptions"}
_OPERATOR = {"name", "factors"}
_FACTOR = {"shift", "order"}
_DEFAULTS = {"target_error", "K", "J", "tolerance"}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyConfig:
    family: CommutingFamily
    params: ContinuationParams
    tolerance: float
    source: str
    description: str = ""


def bundled_configs() -> list[str]:
    root = resources.files("zetadet") / "configs"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def _read(path_or_name: str) -> tuple[str, str]:
    path = Path(path_or_name)
    if path.is_file():
        return path.read_text(encoding="utf-8"), str(path)
    stem = path_or_name[:-5] if path_or_name.endswith(".json") else path_or_name
    if stem in bundled_configs():
        res = resources.files("zetadet") / "configs" / f"{stem}.json"
        return res.read_text(encoding="utf-8"), f"<bundled:{stem}>"
    raise ConfigError(f"{path_or_name}: no such file or bundled config (bundled: {', '.join(bundled_configs())})")


def _fields(obj, allowed: set[str], required: set[str], where: str) -> dict:
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ConfigError(f"{where}: unknown field(s) {', '.join(unknown)}")
    missing = sorted(required - set(obj))
    if missing:
        raise ConfigError(f"{where}: missing field(s) {', '.join(missing)}")
    return obj


def _number(value, where: str):
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ConfigError(f"{where}: expected a number or decimal string, got {value!r}")
    try:
        return exact(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{where}: {exc}") from None


def _integer(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}: expected an integer, got {value!r}")
    return value


def parse_config(text: str, source: str = "<string>") -> FamilyConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    top = _fields(raw, _TOP, {"base", "operators"}, source)

    b = _fields(top["base"], _BASE, {"k0", "multiplicity"}, "base")
    k0 = _integer(b["k0"], "base.k0")
    if not isinstance(b["multiplicity"], list) or not b["multiplicity"]:
        raise ConfigError("base.multiplicity: expected a non-empty list of coefficients")
    coeffs = tuple(_number(c, f"base.multiplicity[{i}]") for i, c in enumerate(b["multiplicity"]))
    exceptions = []
    for i, e in enumerate(b.get("exceptions", [])):
        if not (isinstance(e, list) and len(e) == 2):
            raise ConfigError(f"base.exceptions[{i}]: expected [index, multiplicity]")
        exceptions.append((_integer(e[0], f"base.exceptions[{i}][0]"), _integer(e[1], f"base.exceptions[{i}][1]")))
    try:
        base = SpectralBase(k0=k0, multiplicity_coeffs=coeffs, exceptions=tuple(exceptions))
    except ValueError as exc:
        raise ConfigError(f"base: {exc}") from None

    if not isinstance(top["operators"], list) or not top["operators"]:
        raise ConfigError("operators: expected a non-empty list")
    pairs = []
    for i, op in enumerate(top["operators"]):
        where = f"operators[{i}]"
        op = _fields(op, _OPERATOR, _OPERATOR, where)
        name = op["name"]
        if not isinstance(name, str) or not name or "," in name:
            raise ConfigError(f"{where}.name: expected a non-empty string without commas")
        if not isinstance(op["factors"], list) or not op["factors"]:
            raise ConfigError(f"{where}.factors: expected a non-empty list")
        factors = []
        for j, f in enumerate(op["factors"]):
            fw = f"{where}.factors[{j}]"
            f = _fields(f, _FACTOR, _FACTOR, fw)
            factors.append((_number(f["shift"], f"{fw}.shift"), _number(f["order"], f"{fw}.order")))
        try:
            pairs.append((name, OperatorWord(tuple(factors))))
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from None
    try:
        family = CommutingFamily.from_pairs(base, pairs)
    except ValueError as exc:
        raise ConfigError(f"operators: {exc}") from None

    d = _fields(top.get("defaults", {}), _DEFAULTS, set(), "defaults")
    try:
        params = ContinuationParams(
            K=d.get("K"),
            J=d.get("J", ContinuationParams.J),
            target_error=float(d.get("target_error", ContinuationParams.target_error)),
        )
        tolerance = float(d.get("tolerance", 1e-6))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"defaults: {exc}") from None
    description = top.get("description", "")
    if not isinstance(description, str):
        raise ConfigError("description: expected a string")
    return FamilyConfig(family, params, tolerance, source, description)


def load_config(path_or_name: str) -> FamilyConfig:
    """Load a config from a file path, or by bundled name (``flat``, ``circle``, ...)."""
    text, source = _read(path_or_name)
    return parse_config(text, source)
