"""Built-in algebras with their defining and adjoint representations."""
from __future__ import annotations

from functools import lru_cache

from .liesuper import adjoint_rep, gl_superalgebra, osp_simple

__all__ = ["PRESETS", "load_preset"]

PRESETS = ("gl11", "gl12", "gl21", "gl22", "gl32", "gl33", "osp12")


@lru_cache(maxsize=None)
def _defining(name: str) -> tuple:
    if name.startswith("gl") and len(name) == 4 and name[2:].isdigit():
        return gl_superalgebra(int(name[2]), int(name[3]))
    if name == "osp12":
        rep = osp_simple(1)
        return rep.algebra, rep
    raise KeyError(name)


def load_preset(name: str, rep: str = "defining") -> tuple:
    """``(algebra, representation)`` for a preset; ``rep`` is defining or adjoint."""
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}")
    g, defining = _defining(name)
    if rep == "defining":
        return g, defining
    if rep == "adjoint":
        return g, adjoint_rep(g)
    raise KeyError(f"unknown representation {rep!r}")
