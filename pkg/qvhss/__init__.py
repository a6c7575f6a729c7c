# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Simulator of verifiable hybrid secret sharing of one qubit."""

try:
    from ._version import __version__
except ImportError:
    __version__ = "0+unknown"

import warnings

warnings.filterwarnings("ignore", category=ResourceWarning)
