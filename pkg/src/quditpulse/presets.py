"""Catalog of built-in C matrices for spin-1 (d = 3) interactions.

All entries are exact rational / sqrt(3) expressions evaluated at load
time.  Isotropic strengths: ising_z_spin1 -> 1, target_A -> 5,
target_B -> 4, target_C -> 3, target_D -> 4; the secular dipolar matrix
is traceless.

The four targets are the C matrices of the nearest-neighbour terms of
H(p, q) = H1 + p H2 + q H3 at the corner points (2, 0), (1, -1/2),
(0, 0) and (1, 1/2), where H1 is the Heisenberg exchange, H2 its square
and H3 the fully symmetrized cubic term; ``hpq_target`` interpolates to
arbitrary (p, q).
"""

from __future__ import annotations

import numpy as np

from .cmatrix import CMatrix
from .errors import RepresentationError

_S3 = np.sqrt(3.0)

HPQ_CORNERS: dict[str, tuple[float, float]] = {
    "target_A": (2.0, 0.0),
    "target_B": (1.0, -0.5),
    "target_C": (0.0, 0.0),
    "target_D": (1.0, 0.5),
}


def _dipolar_secular() -> np.ndarray:
    # Secular spin-1 dipolar interaction under strong anharmonic level
    # splitting; single-quantum exchange on the (1,2) and (2,3) transitions
    # plus the Sz Sz part.  Traceless.
    c = np.zeros((8, 8))
    for idx in (0, 1, 3, 4):
        c[idx, idx] = -0.25
    c[6, 6] = 0.25
    c[6, 7] = c[7, 6] = _S3 / 4.0
    c[7, 7] = 0.75
    return c


def _ising_z() -> np.ndarray:
    # Sz x Sz: the Sz operator is (l7 + sqrt(3) l8) / 2
    c = np.zeros((8, 8))
    c[6, 6] = 0.25
    c[6, 7] = c[7, 6] = _S3 / 4.0
    c[7, 7] = 0.75
    return c


def _target_a() -> np.ndarray:
    return 0.5 * np.array([
        [1, -1, 0, 0, 0, 0, 0, 0],
        [-1, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 2, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, -1, 0, 0, 0],
        [0, 0, 0, -1, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 2, 0, 0],
        [0, 0, 0, 0, 0, 0, 1.5, -_S3 / 2],
        [0, 0, 0, 0, 0, 0, -_S3 / 2, 0.5],
    ])


def _target_b() -> np.ndarray:
    return 0.5 * np.array([
        [1, 0, 0, -1, 0, 0, 0, 0],
        [0, 1, 0, 0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0],
        [-1, 0, 0, 1, 0, 0, 0, 0],
        [0, 1, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, -0.5, -_S3 / 2],
        [0, 0, 0, 0, 0, -0.5, 1, 0],
        [0, 0, 0, 0, 0, -_S3 / 2, 0, 1],
    ])


def _target_c() -> np.ndarray:
    return 0.5 * np.array([
        [1, 1, 0, 0, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 1, 0, 0, 0],
        [0, 0, 0, 1, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0.5, _S3 / 2],
        [0, 0, 0, 0, 0, 0, _S3 / 2, 1.5],
    ])


def _target_d() -> np.ndarray:
    return 0.5 * np.array([
        [1, 0, 0, 1, 0, 0, 0, 0],
        [0, 1, 0, 0, -1, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0],
        [1, 0, 0, 1, 0, 0, 0, 0],
        [0, -1, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0.5, _S3 / 2],
        [0, 0, 0, 0, 0, 0.5, 1, 0],
        [0, 0, 0, 0, 0, _S3 / 2, 0, 1],
    ])


_BUILDERS = {
    "spin1_dipolar_secular": _dipolar_secular,
    "ising_z_spin1": _ising_z,
    "target_A": _target_a,
    "target_B": _target_b,
    "target_C": _target_c,
    "target_D": _target_d,
}


def preset_names() -> list[str]:
    return sorted(_BUILDERS) + ["isotropic(d)"]


def preset(name: str) -> CMatrix:
    """Look up a preset C matrix by name.

    ``isotropic(d)`` (e.g. ``isotropic(3)``) gives the m x m identity,
    the interaction sum_u l_u x l_u that no pulse sequence can alter.
    """
    if name in _BUILDERS:
        return CMatrix(d=3, entries=_BUILDERS[name]())
    if name.startswith("isotropic(") and name.endswith(")"):
        try:
            d = int(name[len("isotropic("):-1])
        except ValueError:
            raise RepresentationError(
                f"malformed isotropic preset {name!r}; valid names: {preset_names()}") from None
        if d < 2:
            raise RepresentationError(f"isotropic preset needs d >= 2, got {d}")
        return CMatrix(d=d, entries=np.eye(d * d - 1))
    raise RepresentationError(f"unknown preset {name!r}; valid names: {preset_names()}")


def hpq_target(p: float, q: float) -> CMatrix:
    """C matrix of the two-site H(p, q) term, as the affine interpolation
    of the four corner targets (exact: the corner C matrices are affine
    in (p, q))."""
    u = p / 2.0 + q
    v = p / 2.0 - q
    phi = {
        "target_A": u * v,
        "target_B": (1.0 - u) * v,
        "target_C": (1.0 - u) * (1.0 - v),
        "target_D": u * (1.0 - v),
    }
    entries = sum(w * preset(nm).entries for nm, w in phi.items())
    return CMatrix(d=3, entries=entries)
