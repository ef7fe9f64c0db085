"""Trace-orthonormal Hermitian operator bases and exchange projectors.

For qudit dimension d, the basis holds the m = d^2 - 1 generalized
Gell-Mann matrices normalized to tr(l_u l_v) = 2 d_uv, ordered as

  1. real symmetric off-diagonal pairs  E_ij + E_ji,
  2. imaginary antisymmetric pairs     -i E_ij + i E_ji,
  3. real diagonal matrices            (E_11 + .. + E_{k-1,k-1} - (k-1) E_kk) / sqrt(k(k-1)/2).

Off-diagonal pairs (i, j), i < j, are enumerated by ascending diagonal
offset j - i, then ascending i.  For d = 3 this reproduces the standard
Gell-Mann matrices with index order
l1 ~ (1,2), l2 ~ (2,3), l3 ~ (1,3); spin-1 states are ordered
(m = +1, m = 0, m = -1) so that S^z = diag(1, 0, -1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidDimensionError
from .linalg import dagger, expm_hermitian


def offdiag_pairs(d: int) -> list[tuple[int, int]]:
    """(i, j) index pairs, 0-based, in the basis enumeration order."""
    return [(i, i + k) for k in range(1, d) for i in range(d - k)]


def _gellmann_matrices(d: int) -> np.ndarray:
    pairs = offdiag_pairs(d)
    mats = []
    for (i, j) in pairs:
        m = np.zeros((d, d), dtype=complex)
        m[i, j] = 1.0
        m[j, i] = 1.0
        mats.append(m)
    for (i, j) in pairs:
        m = np.zeros((d, d), dtype=complex)
        m[i, j] = -1.0j
        m[j, i] = 1.0j
        mats.append(m)
    for k in range(2, d + 1):
        m = np.zeros((d, d), dtype=complex)
        for i in range(k - 1):
            m[i, i] = 1.0
        m[k - 1, k - 1] = -(k - 1)
        mats.append(m / np.sqrt(k * (k - 1) / 2.0))
    return np.array(mats)


@dataclass(frozen=True)
class OperatorBasis:
    """The m = d^2 - 1 trace-orthonormal Hermitian matrices for dimension d."""

    d: int
    lambdas: np.ndarray = field(repr=False)  # (m, d, d) complex

    @property
    def m(self) -> int:
        return self.d * self.d - 1

    def __len__(self) -> int:
        return self.m

    def __getitem__(self, mu: int) -> np.ndarray:
        return self.lambdas[mu]

    def expand_hermitian(self, a: np.ndarray) -> tuple[float, np.ndarray]:
        """Coefficients of a d x d Hermitian matrix: a = c0*I + sum_u c_u l_u."""
        c0 = np.trace(a).real / self.d
        coeff = 0.5 * np.einsum("uij,ji->u", self.lambdas, a)
        return c0, coeff.real


def build_basis(d: int) -> OperatorBasis:
    """Construct the generalized Gell-Mann basis for dimension d >= 2."""
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise InvalidDimensionError(f"qudit dimension must be an integer >= 2, got {d!r}")
    lams = _gellmann_matrices(int(d))
    lams.setflags(write=False)
    return OperatorBasis(d=int(d), lambdas=lams)


@dataclass(frozen=True)
class ExchangeStructure:
    """Exchange operator Pi and symmetric/antisymmetric projectors for two qudits."""

    d: int
    Pi: np.ndarray = field(repr=False)
    A: np.ndarray = field(repr=False)  # antisymmetric projector (I - Pi)/2
    S: np.ndarray = field(repr=False)  # symmetric projector (I + Pi)/2


def build_exchange(d: int) -> ExchangeStructure:
    """Pi = sum_ij |ij><ji| together with its even/odd eigenprojectors."""
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise InvalidDimensionError(f"qudit dimension must be an integer >= 2, got {d!r}")
    d = int(d)
    pi = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            pi[i * d + j, j * d + i] = 1.0
    eye = np.eye(d * d)
    a = (eye - pi) / 2.0
    s = (eye + pi) / 2.0
    for arr in (pi, a, s):
        arr.setflags(write=False)
    return ExchangeStructure(d=d, Pi=pi, A=a, S=s)


def spin1_generators() -> dict[str, np.ndarray]:
    """Named spin-1 operators in the d = 3 basis conventions.

    Returns X_a = l_a / 2 and Y_a = l_{a+3} / 2 for the three transitions
    a in {1, 2, 3} (pairs (1,2), (2,3), (1,3) of states ordered
    |+1>, |0>, |-1>), the spin-1 vector operators Sx, Sy, Sz, and the
    transition-z operators Z1, Z2 of the two single-quantum transitions.
    """
    basis = build_basis(3)
    lam = basis.lambdas
    ops: dict[str, np.ndarray] = {}
    for a in range(3):
        ops[f"X{a + 1}"] = lam[a] / 2.0
        ops[f"Y{a + 1}"] = lam[a + 3] / 2.0
    sqrt2 = np.sqrt(2.0)
    sp = np.zeros((3, 3), dtype=complex)
    sp[0, 1] = sp[1, 2] = sqrt2  # S+ for states (+1, 0, -1)
    sm = dagger(sp)
    ops["Sx"] = (sp + sm) / 2.0
    ops["Sy"] = (sp - sm) / 2.0j
    ops["Sz"] = np.diag([1.0, 0.0, -1.0]).astype(complex)
    ops["Z1"] = np.diag([1.0, -1.0, 0.0]).astype(complex)  # |+1> <-> |0|
    ops["Z2"] = np.diag([0.0, 1.0, -1.0]).astype(complex)  # |0> <-> |-1>
    for arr in ops.values():
        arr.setflags(write=False)
    return ops


def pulse_unitary(generator: np.ndarray, angle: float) -> np.ndarray:
    """exp(-i * angle * generator) for a Hermitian generator."""
    return expm_hermitian(generator, scale=-1j * angle)
