# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Run-wide, singleton *qvhss* settings.

Settings live as class attributes of non-instantiable section classes, so any
module reads them as ``config.<section>.<setting>``.  Each ``run`` writes them
next to its rows as ``qvhss.toml`` (:py:func:`to_filename`), and ``--config``
reads such a file back (:py:func:`load`)::

    [execution]
    trials = 100
    out = "/data/steane-honest.jsonl"
    format = "jsonl"
    log_level = 25
    nprocs = 1

    [protocol]
    code = "steane7"
    n_c = 7
    t = 1
    r = 8
    strategy = "honest"

    [seeds]
    master = 4242

The ``environment`` section is informative and is never read back.
"""

import os
import random
import sys
from pathlib import Path
from time import strftime
from uuid import uuid4

from . import __version__

_TRUTHY = ("1", "on", "true", "y", "yes")
_development = any(
    (
        "+" in __version__,
        __version__.endswith(".dirty"),
        os.getenv("QVHSS_DEV", "0").lower() in _TRUTHY,
        bool(os.getenv("RUNNING_PYTEST")),
    )
)
# Release builds log warnings; development builds only when asked to.
if not _development or os.getenv("QVHSS_WARNINGS", "0").lower() in _TRUTHY:
    from . import _warnings

    _warnings.install()

import logging  # noqa: E402

logging.addLevelName(25, "IMPORTANT")
logging.addLevelName(15, "VERBOSE")

CONFIG_FILENAME = "qvhss.toml"

# Debug modes: ``pdb`` drops into the debugger on uncaught errors, ``tableau``
# checks the symplectic invariants after every tableau operation.
DEBUG_MODES = ("pdb", "tableau")


def _available_gb():
    try:
        from psutil import virtual_memory
    except ImportError:
        return None
    return round(virtual_memory().available / 1024**3, 1)


class _Config:
    """Base of the sections; sections hold class attributes only."""

    _paths = ()

    def __init__(self):
        raise RuntimeError(f"{type(self).__name__} is a settings section, not a type.")

    @classmethod
    def load(cls, settings, init=True, ignore=None):
        """Copy the known, non-null entries of ``settings`` onto the section."""
        skipped = set(ignore or ())
        for key, value in settings.items():
            if value is None or key in skipped or not hasattr(cls, key):
                continue
            setattr(cls, key, Path(value).absolute() if key in cls._paths else value)
        if init and hasattr(cls, "init"):
            cls.init()

    @classmethod
    def get(cls):
        """Public, non-null settings of the section; paths as strings."""
        settings = {}
        for key, value in vars(cls).items():
            if key.startswith("_") or value is None or callable(getattr(cls, key)):
                continue
            settings[key] = str(value) if key in cls._paths else value
        return settings


class environment(_Config):
    """Read-only facts about the platform the simulation runs on."""

    cpu_count = os.cpu_count()
    """Number of available CPUs."""
    exec_env = f"{os.name}/{sys.platform}"
    """Operating system family and platform."""
    free_mem = _available_gb()
    """Free memory (GB) at start."""
    numpy_version = None
    """Version of the numpy the run computes with."""
    version = __version__
    """*qvhss*'s version."""

    @classmethod
    def init(cls):
        import numpy as np

        cls.numpy_version = np.__version__


class execution(_Config):
    """Run-level settings."""

    trials = 1
    """Number of independent protocol runs."""
    out = None
    """File receiving one row per trial."""
    format = "jsonl"
    """Row format, ``jsonl`` or ``csv``."""
    log_level = 25
    """Output verbosity."""
    nprocs = 1
    """Worker processes for the trial loop."""
    round_log = None
    """Optional file receiving one line per network message."""
    debug = []
    """Debug mode(s)."""
    run_uuid = f"{strftime('%Y%m%d-%H%M%S')}_{uuid4()}"
    """Unique identifier of this particular run."""

    _paths = ("out", "round_log")

    @classmethod
    def init(cls):
        if "all" in cls.debug:
            cls.debug = list(DEBUG_MODES)
        if cls.format not in ("jsonl", "csv"):
            raise ValueError(f"Unknown output format: <{cls.format}>.")
        if cls.nprocs is None or cls.nprocs < 1:
            cls.nprocs = os.cpu_count() or 1


class protocol(_Config):
    """Scheme and adversary of the simulated runs."""

    code = "steane7"
    """Packaged code name or path to a CSS fixture."""
    n_c = 7
    """Number of nodes taking part in the classical key sharing."""
    t = 1
    """Number of cheaters tolerated."""
    t_prime = 0
    """Erasures tolerated in addition to ``t`` (ramp parameters)."""
    r = 8
    """Verification rounds (quantum and classical)."""
    vcss_kind = "rabin_like"
    """Classical scheme flavour, ``rabin_like`` or ``stinson_like``."""
    secret = "generic"
    """Preset name or ``alpha,beta`` pair of complex amplitudes."""
    strategy = "honest"
    """Adversary strategy name."""
    strategy_params = {}
    """Parameters of the adversary strategy."""
    cheaters = []
    """Nodes under adversarial control."""
    dealer = 0
    """Index of the dealer."""
    reconstructor = 1
    """Index of the honest node that reconstructs the secret."""
    delta = 0.1
    """First analysis threshold of the abort bound."""
    delta_p = 0.1
    """Second analysis threshold of the abort bound."""
    delta_pp = 0.1
    """Third analysis threshold of the abort bound."""


class loggers:
    """Keep loggers easily accessible (see :py:func:`init`)."""

    _fmt = "%(asctime)s,%(msecs)d %(name)-2s %(levelname)-2s:\n\t %(message)s"
    _datefmt = "%y%m%d-%H:%M:%S"

    default = logging.getLogger()
    """The root logger."""
    cli = logging.getLogger("cli")
    """Command-line interface logging."""
    protocol = logging.getLogger("qvhss.protocol")
    """Protocol phases."""
    network = logging.getLogger("qvhss.network")
    """Network harness and adversaries."""
    vcss = logging.getLogger("qvhss.vcss")
    """Classical key sharing."""
    codes = logging.getLogger("qvhss.codes")
    """Classical and CSS codes."""
    quantum = logging.getLogger("qvhss.quantum")
    """Stabilizer tableau."""
    reports = logging.getLogger("qvhss.reports")
    """Row writers and aggregates."""

    @classmethod
    def init(cls):
        """Apply ``execution.log_level`` everywhere; give ``cli`` a stdout handler once."""
        if not cls.cli.hasHandlers():
            handler = logging.StreamHandler(stream=sys.stdout)
            handler.setFormatter(logging.Formatter(fmt=cls._fmt, datefmt=cls._datefmt))
            cls.cli.addHandler(handler)
        for logger in vars(cls).values():
            if isinstance(logger, logging.Logger):
                logger.setLevel(execution.log_level)


class seeds(_Config):
    """The master seed and what is derived from it."""

    master = None
    """Master seed; trial ``k`` runs on ``SeedSequence(master, spawn_key=(k,))``."""

    @classmethod
    def init(cls):
        if cls.master is None:
            cls.master = random.randint(1, 65536)
        random.seed(cls.master)


# Sections that are read from files, in load order.
SECTIONS = {"execution": execution, "protocol": protocol, "seeds": seeds}


def _wants_init(init, name):
    return init if isinstance(init, bool) else name in init


def from_dict(settings, init=True, ignore=None):
    """Apply a flat ``{setting: value}`` mapping to every section that knows the setting.

    Parameters
    ----------
    settings : dict
        Flat settings, as produced by the parser or :mod:`qvhss.utils.expfile`.
    init : bool or container of section names
        Run the ``init`` hook of all, none, or the named sections.
    ignore : container, optional
        Keys of ``settings`` to leave alone.

    """
    environment.init()
    for name, section in SECTIONS.items():
        section.load(settings, init=_wants_init(init, name), ignore=ignore)
    loggers.init()


def load(filename, skip=None, init=True):
    """Read a ``qvhss.toml`` written by :func:`to_filename`.

    ``skip`` maps a section name to the keys not to restore (``run_uuid``
    typically); ``init`` is as in :func:`from_dict`.
    """
    from toml import loads

    skip = skip or {}
    for name, values in loads(Path(filename).read_text()).items():
        if name not in SECTIONS:
            continue
        SECTIONS[name].load(values, init=_wants_init(init, name), ignore=skip.get(name))
    loggers.init()


def get(flat=False):
    """All sections as nested dicts, or as ``{"section.key": value}`` when ``flat``."""
    settings = {"environment": environment.get()}
    settings.update((name, section.get()) for name, section in SECTIONS.items())
    if not flat:
        return settings
    return {
        f"{name}.{key}": value
        for name, values in settings.items()
        for key, value in values.items()
    }


def dumps():
    """The settings as TOML text."""
    from toml import dumps as toml_dumps

    return toml_dumps(get())


def to_filename(filename):
    Path(filename).write_text(dumps())
