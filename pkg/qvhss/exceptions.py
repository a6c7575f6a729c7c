# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Exceptions raised by *qvhss*.

Verdicts of the protocol (a decoding failure, an abort, a rejected dealer) are
returned as values.  The exceptions below are reserved for misuse and for
states the simulator cannot continue from.
"""


class QVHSSError(Exception):
    """Base class for all package errors."""


class LengthMismatchError(QVHSSError, ValueError):
    """Operands of a GF(2) operation have incompatible shapes."""

    def __init__(self, expected, received):
        self.expected = expected
        self.received = received
        super().__init__(f"Length mismatch: expected {expected}, received {received}.")


class DistanceUnavailableError(QVHSSError, ValueError):
    """Brute-force minimum distance was requested for a code that is too large."""


class ErasureAmbiguityError(QVHSSError, ValueError):
    """Too many erasures for a unique codeword."""


class CSSConstructionError(QVHSSError, ValueError):
    """A pair of classical codes does not define a one-qubit CSS code."""


class SchemeParameterError(QVHSSError, ValueError):
    """Scheme or experiment parameters violate a threshold budget."""


class VCSSError(QVHSSError, RuntimeError):
    """The classical key could not be reconstructed."""

    def __init__(self, message, excluded=()):
        self.excluded = tuple(sorted(excluded))
        super().__init__(message)


class NetworkError(QVHSSError, RuntimeError):
    """Misuse of the simulated network (unknown node, reused coin, foreign qubit)."""


class TableauError(QVHSSError, RuntimeError):
    """Invalid operation on, or corrupted state of, a stabilizer tableau."""


class UncorrectableError(TableauError):
    """A code block carries an error pattern beyond the decoder's reach."""
