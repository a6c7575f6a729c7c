# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Flat ``key = value`` experiment files.

One setting per line, ``#`` starts a comment::

    # Steane code against an inconsistent dealer
    code = steane7
    t = 1
    r = 8
    strategy = dealer_inconsistent_tree
    strategy.positions = [3]
    trials = 10000
    seed = 4242
    out = runs/inconsistent.jsonl

Values are typed with YAML scalar rules (``8`` is an int, ``0.1`` a float,
``true`` a bool).  ``secret`` is always kept as text, ``cheaters`` is a comma
separated node list and ``strategy.<name>`` keys fill ``strategy_params``.

Recognized keys
---------------
``code``, ``n_c``, ``t``, ``t_prime``, ``r``, ``vcss_kind``, ``secret``,
``strategy``, ``strategy.<param>``, ``cheaters``, ``dealer``, ``reconstructor``,
``delta``, ``delta_p``, ``delta_pp``, ``trials``, ``seed``, ``out``, ``format``,
``nprocs``, ``round_log``, ``log_level``.
"""

from pathlib import Path

import yaml

KEYS = (
    "code",
    "n_c",
    "t",
    "t_prime",
    "r",
    "vcss_kind",
    "secret",
    "strategy",
    "cheaters",
    "dealer",
    "reconstructor",
    "delta",
    "delta_p",
    "delta_pp",
    "trials",
    "seed",
    "out",
    "format",
    "nprocs",
    "round_log",
    "log_level",
)
_TEXT = ("code", "secret", "strategy", "vcss_kind", "out", "format", "round_log")
# Key renamed on its way into the settings.
_RENAMED = {"seed": "master"}


class ExperimentFileError(ValueError):
    """An experiment file line could not be understood."""

    def __init__(self, message, path=None, lineno=None):
        where = f"{path}:{lineno}: " if path and lineno else ""
        super().__init__(f"{where}{message}")


def _node_list(value):
    if isinstance(value, (list, tuple)):
        return [int(v) for v in value]
    text = str(value).strip()
    if not text:
        return []
    return [int(tok) for tok in text.replace(";", ",").split(",") if tok.strip()]


def parse(text, path=None) -> dict:
    """Turn experiment text into a flat settings dictionary for :func:`qvhss.config.from_dict`."""
    settings = {}
    params = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ExperimentFileError(
                f"expected <key> = <value>, got {raw.strip()!r}", path, lineno
            )
        key, value = (part.strip() for part in line.split("=", 1))
        if key.startswith("strategy."):
            params[key.split(".", 1)[1]] = yaml.safe_load(value) if value else None
            continue
        if key not in KEYS:
            raise ExperimentFileError(f"unknown key <{key}>", path, lineno)
        if key == "cheaters":
            value = _node_list(value)
        elif key not in _TEXT:
            try:
                value = yaml.safe_load(value)
            except yaml.YAMLError as exc:
                raise ExperimentFileError(f"cannot read value of <{key}>", path, lineno) from exc
        settings[_RENAMED.get(key, key)] = value
    if params:
        settings["strategy_params"] = params
    return settings


def read(path) -> dict:
    path = Path(path)
    return parse(path.read_text(), path=path)


def dumps(settings: dict) -> str:
    """Inverse of :func:`parse` for the recognized keys."""
    inverse = {v: k for k, v in _RENAMED.items()}
    lines = []
    for key, value in settings.items():
        if key == "strategy_params":
            for k, v in value.items():
                text = yaml.safe_dump(v, default_flow_style=True).splitlines()[0]
                lines.append(f"strategy.{k} = {text}")
            continue
        key = inverse.get(key, key)
        if key not in KEYS or value is None:
            continue
        if key == "cheaters":
            value = ",".join(str(c) for c in value)
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"
