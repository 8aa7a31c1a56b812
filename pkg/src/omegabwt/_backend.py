"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module. ``OMEGABWT_BACKEND=python`` forces the
fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BY_NAME = {"python": _pykernels}
if _ckernels is not None:
    _BY_NAME["cython"] = _ckernels


def available() -> list[str]:
    return sorted(_BY_NAME)


def get(name: str | None = None):
    if name is None:
        name = os.environ.get("OMEGABWT_BACKEND") or ("cython" if _ckernels else "python")
    try:
        return _BY_NAME[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available (have {available()})") from None


def default_name() -> str:
    return get().NAME
