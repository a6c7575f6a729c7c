# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
from .pauli import PauliString
from .tableau import AmplitudePair, LogicalTableau
