# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""
The three-phase protocol
~~~~~~~~~~~~~~~~~~~~~~~~

.. automodule:: qvhss.protocol.trees
.. automodule:: qvhss.protocol.state
.. automodule:: qvhss.protocol.sharing
.. automodule:: qvhss.protocol.verification
.. automodule:: qvhss.protocol.reconstruction
.. automodule:: qvhss.protocol.bounds
.. automodule:: qvhss.protocol.run
.. automodule:: qvhss.protocol.analysis

"""
