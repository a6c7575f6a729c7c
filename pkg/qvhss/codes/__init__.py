# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Binary linear algebra, classical codes and CSS codes.

.. automodule:: qvhss.codes.gf2
.. automodule:: qvhss.codes.classical
.. automodule:: qvhss.codes.css
.. automodule:: qvhss.codes.scheme

"""
