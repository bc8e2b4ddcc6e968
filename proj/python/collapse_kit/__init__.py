"""Trapped-surface criterion, Jang equation and quasilocal energy for
spherically symmetric initial data."""

from ._core import (
    DataError,
    InitialData,
    analyze,
    criterion,
    energy,
    generate,
    jang,
    load,
    save,
    sweep,
    verify,
)

__all__ = [
    "DataError",
    "InitialData",
    "analyze",
    "criterion",
    "energy",
    "generate",
    "jang",
    "load",
    "save",
    "sweep",
    "verify",
]
