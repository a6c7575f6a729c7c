# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Send Python warnings through the logging tree.

Once installed, every ``warnings.warn`` goes to the ``py.warnings`` logger
and ends up next to the run's other messages.  :mod:`qvhss.config` installs
it on release builds, or when ``QVHSS_WARNINGS`` is set.
"""

import logging
import warnings

_wlog = logging.getLogger("py.warnings")
_wlog.addHandler(logging.NullHandler())

_original = (warnings.warn, warnings.showwarning)


def _category_name(category):
    if category is None:
        return "UserWarning"
    if isinstance(category, type):
        return category.__name__
    return type(category).__name__


def _warn(message, category=None, stacklevel=1, source=None):
    if isinstance(message, Warning):
        category, message = type(message), str(message)
    _wlog.warning("%s: %s", _category_name(category), message)


def _showwarning(message, category, filename, lineno, file=None, line=None):
    _wlog.warning("%s: %s (%s:%s)", _category_name(category), message, filename, lineno)


def install():
    warnings.warn = _warn
    warnings.showwarning = _showwarning


def uninstall():
    warnings.warn, warnings.showwarning = _original
