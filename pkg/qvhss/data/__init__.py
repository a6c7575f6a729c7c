"""Packaged data files of *qvhss*.

* ``codes/``: CSS code fixtures (generator of ``V``, generator of ``W``,
  optional ``d <int>``), resolvable by stem through
  :func:`qvhss.codes.css.resolve_code`.
* ``table1.txt``: reference rendering of the example-scheme table.
"""

from __future__ import annotations

import atexit
from contextlib import ExitStack
from functools import cache
from pathlib import Path

try:  # Prefer backport to leave consistency to dependency spec
    from importlib_resources import as_file, files
except ImportError:
    from importlib.resources import as_file, files  # type: ignore

__all__ = ["load"]


class Loader:
    """Resources shipped inside a package.

    :meth:`readable` gives read access without touching the disk;
    calling the loader gives a filesystem path that stays valid until the
    interpreter exits (zipped installs are unpacked to temporary files).
    """

    def __init__(self, anchor: str):
        self._anchor = anchor
        self.files = files(anchor)
        self._unpacked = ExitStack()
        atexit.register(self._unpacked.close)

    def __repr__(self):
        return f"Loader({self._anchor!r})"

    def readable(self, *segments):
        return self.files.joinpath(*segments)

    @cache  # noqa: B019
    def __call__(self, *segments) -> Path:
        return self._unpacked.enter_context(as_file(self.files.joinpath(*segments)))

    def code_names(self) -> list[str]:
        """Stems of the packaged CSS fixtures."""
        entries = self.readable("codes").iterdir()
        return sorted(p.name[:-4] for p in entries if p.name.endswith(".txt"))


load = Loader(__package__)
