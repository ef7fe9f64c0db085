"""Small dense linear-algebra helpers used throughout the package.

Everything here works on plain ``numpy`` arrays; matrices are dense
``complex128`` unless stated otherwise.
"""

from __future__ import annotations

import numpy as np

DEFAULT_TOL = 1e-10


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def is_hermitian(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return bool(np.abs(a - dagger(a)).max() <= tol)


def is_unitary(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    n = a.shape[0]
    return bool(np.abs(dagger(a) @ a - np.eye(n)).max() <= tol)


def is_traceless(a: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return bool(abs(np.trace(a)) <= tol)


def expm_hermitian(gen: np.ndarray, scale: complex = -1j) -> np.ndarray:
    """exp(scale * gen) for Hermitian gen, via eigendecomposition.

    All pulse generators are Hermitian, so this is exact up to rounding
    and avoids series truncation.
    """
    w, v = np.linalg.eigh(gen)
    return (v * np.exp(scale * w)) @ v.conj().T


def unitary_eigenphases(u: np.ndarray) -> np.ndarray:
    """Eigenphases theta of a (numerically) unitary matrix, u ~ V e^{i theta} V^-1.

    Eigenvalues of a normal matrix are backward stable under ``eig`` even
    when eigenvectors are not; phases are normalized onto the unit circle.
    """
    ev = np.linalg.eigvals(u)
    return np.angle(ev)


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """True if a = e^{i phi} b for some global phase phi."""
    # pick the largest entry of b for a stable phase estimate
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) <= tol:
        return bool(np.abs(a).max() <= tol)
    phase = a[idx] / b[idx]
    if abs(abs(phase) - 1.0) > 1e-6:
        return False
    return bool(np.abs(a - phase * b).max() <= tol)


def kron_power(a: np.ndarray, n: int) -> np.ndarray:
    """n-fold Kronecker power a @ a @ ... (tensor product of n copies)."""
    out = np.array([[1.0 + 0j]])
    for _ in range(n):
        out = np.kron(out, a)
    return out


def embed_two_site(op: np.ndarray, i: int, j: int, n_sites: int, d: int) -> np.ndarray:
    """Embed a two-site operator (d^2 x d^2, site order (i, j)) into n_sites qudits.

    Sites are indexed 0..n_sites-1 with site 0 the leftmost tensor factor.
    """
    if i == j or not (0 <= i < n_sites and 0 <= j < n_sites):
        raise ValueError(f"invalid site pair ({i}, {j}) for {n_sites} sites")
    dim_rest = d ** (n_sites - 2)
    full = np.kron(op, np.eye(dim_rest, dtype=complex))
    # axes currently ordered (i, j, rest...) on both bra and ket sides
    order = [i, j] + [s for s in range(n_sites) if s not in (i, j)]
    inv = np.argsort(order)
    tens = full.reshape([d] * (2 * n_sites))
    tens = np.transpose(tens, list(inv) + [n_sites + k for k in inv])
    return np.ascontiguousarray(tens.reshape(d**n_sites, d**n_sites))


def random_hermitian(d: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (a + dagger(a)) / 2
