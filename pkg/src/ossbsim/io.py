"""Flat JSON configuration files and CSV/JSON dataset writers."""
from __future__ import annotations

import csv
import json
import math
import sys

from ._errors import DomainError
from .hom import HomParams
from .sideband import ModulatorConfig


class ConfigError(ValueError):
    """Malformed configuration; ``key`` names the offending field."""

    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key


_FIELDS = {
    "modulator": {
        "m": (True, float),
        "f_m": (True, float),
        "biases": (False, list),
        "insertion_loss_db": (False, float),
        "n_max": (False, int),
    },
    "hom": {
        "sigma_s": (True, float),
        "sigma_i": (True, float),
        "delta": (False, float),
        "car": (False, float),
    },
}


def _coerce(key, value, kind):
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(key, f"expected a number, got {value!r}")
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(key, f"expected an integer, got {value!r}")
        return value
    if not isinstance(value, list) or len(value) != 4:
        raise ConfigError(key, "expected four [alpha, theta] pairs")
    out = []
    for pair in value:
        if not (isinstance(pair, list) and len(pair) == 2
                and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)):
            raise ConfigError(key, f"bad bias pair {pair!r}")
        out.append([float(pair[0]), float(pair[1])])
    return out


def validate(data, kind):
    """Check a flat mapping against the field set of ``kind``; unknown keys are rejected."""
    if not isinstance(data, dict):
        raise ConfigError("<root>", "configuration must be a JSON object")
    fields = _FIELDS[kind]
    for key in data:
        if key not in fields:
            raise ConfigError(key, "unknown key")
    clean = {}
    for key, (required, typ) in fields.items():
        if key not in data or data[key] is None:
            if required:
                raise ConfigError(key, "missing required key")
            continue
        clean[key] = _coerce(key, data[key], typ)
    return clean


def load_config(path, kind):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError("<file>", f"invalid JSON: {exc}") from exc
    return validate(data, kind)


def parse_config(text, kind):
    return validate(json.loads(text), kind)


def serialize_config(clean):
    return json.dumps(clean, sort_keys=True)


def modulator_from_config(clean):
    try:
        kwargs = {"m": clean["m"], "f_m": clean["f_m"]}
        if "biases" in clean:
            kwargs["biases"] = tuple(tuple(p) for p in clean["biases"])
        if "insertion_loss_db" in clean:
            kwargs["insertion_loss_db"] = clean["insertion_loss_db"]
        return ModulatorConfig(**kwargs)
    except DomainError as exc:
        raise ConfigError(_guess_key(str(exc), _FIELDS["modulator"]), str(exc)) from exc


def hom_from_config(clean):
    try:
        return HomParams(clean["sigma_s"], clean["sigma_i"], clean.get("delta", 0.0), clean.get("car"))
    except DomainError as exc:
        raise ConfigError(_guess_key(str(exc), _FIELDS["hom"]), str(exc)) from exc


def _guess_key(message, fields):
    for key in sorted(fields, key=len, reverse=True):
        if key in message:
            return key
    return "<config>"


def config_from_modulator(cfg, n_max=None):
    out = {
        "m": cfg.m,
        "f_m": cfg.f_m,
        "biases": [list(p) for p in cfg.biases],
        "insertion_loss_db": cfg.insertion_loss_db,
    }
    if n_max is not None:
        out["n_max"] = n_max
    return out


def fmt(value):
    """Full-precision text form (17 significant digits) that parses back exactly."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.17g}"
    return str(value)


def write_csv(rows, header, out=None):
    """Write ``rows`` (sequences) under ``header``; ``out`` is a path or None for stdout."""
    if out is None:
        _csv_to(sys.stdout, rows, header)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        _csv_to(fh, rows, header)


def _csv_to(fh, rows, header):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return fmt(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def write_json(payload, out=None):
    text = json.dumps(_jsonable(payload), indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


def read_csv(path):
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))
