"""C-matrix representation of two-qudit interactions.

A homogeneous two-qudit interaction h (a d^2 x d^2 Hermitian,
exchange-symmetric matrix with no identity or single-body component)
is represented by the real symmetric m x m matrix

    C_uv = tr(h l_u x l_v) / 4,      h = sum_uv C_uv l_u x l_v,

with m = d^2 - 1.  The trace of C is the strength of the isotropic
component, which no sequence of global pulses can change; interactions
with tr(C) = 0 can be fully decoupled.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .basis import OperatorBasis, build_basis, build_exchange
from .errors import RepresentationError
from .linalg import dagger, is_hermitian

VALIDATION_TOL = 1e-10


@dataclass(frozen=True)
class TwoQuditInteraction:
    """A validated two-qudit interaction matrix of size d^2 x d^2."""

    d: int
    h: np.ndarray = field(repr=False)

    def __post_init__(self):
        h = np.asarray(self.h, dtype=complex)
        if h.shape != (self.d**2, self.d**2):
            raise RepresentationError(
                f"expected a {self.d**2} x {self.d**2} matrix, got shape {h.shape}")
        validate_interaction(h, self.d)
        h = h.copy()
        h.setflags(write=False)
        object.__setattr__(self, "h", h)


def validate_interaction(h: np.ndarray, d: int, tol: float = VALIDATION_TOL) -> None:
    """Raise RepresentationError naming the first violated invariant."""
    if not is_hermitian(h, tol):
        raise RepresentationError(
            f"interaction is not Hermitian: max |h - h^+| = {np.abs(h - dagger(h)).max():.3e}")
    ex = build_exchange(d)
    dev = np.abs(ex.Pi @ h @ ex.Pi - h).max()
    if dev > tol:
        raise RepresentationError(
            f"interaction is not exchange-symmetric: max |Pi h Pi - h| = {dev:.3e}")
    basis = build_basis(d)
    eye = np.eye(d)
    if abs(np.trace(h)) > tol * d:
        raise RepresentationError(
            f"interaction has an identity component: |tr h| = {abs(np.trace(h)):.3e}")
    for mu in range(basis.m):
        left = np.trace(h @ np.kron(basis.lambdas[mu], eye))
        right = np.trace(h @ np.kron(eye, basis.lambdas[mu]))
        if abs(left) > tol * d or abs(right) > tol * d:
            raise RepresentationError(
                f"interaction has a single-body component along basis element {mu}: "
                f"|tr(h l_{mu} x I)| = {abs(left):.3e}, |tr(h I x l_{mu})| = {abs(right):.3e}")


def strip_single_body(h: np.ndarray, d: int) -> tuple[np.ndarray, np.ndarray]:
    """Split h into (purified two-body part, identity + single-body remainder)."""
    basis = build_basis(d)
    eye = np.eye(d, dtype=complex)
    remainder = np.trace(h) / d**2 * np.eye(d**2, dtype=complex)
    for lam in basis.lambdas:
        remainder += np.trace(h @ np.kron(lam, eye)) / (2 * d) * np.kron(lam, eye)
        remainder += np.trace(h @ np.kron(eye, lam)) / (2 * d) * np.kron(eye, lam)
    return h - remainder, remainder


@dataclass(frozen=True)
class CMatrix:
    """Real symmetric coefficient matrix of a two-qudit interaction."""

    d: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = self.d**2 - 1
        e = np.asarray(self.entries, dtype=float)
        if e.shape != (m, m):
            raise RepresentationError(f"expected a {m} x {m} matrix, got shape {e.shape}")
        asym = np.abs(e - e.T).max()
        if asym > VALIDATION_TOL:
            raise RepresentationError(f"C matrix is not symmetric: max |C - C^T| = {asym:.3e}")
        e = (e + e.T) / 2.0
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def m(self) -> int:
        return self.d**2 - 1

    def trace(self) -> float:
        return float(np.trace(self.entries))


@dataclass(frozen=True)
class IsoAnisoSplit:
    """Isotropic strength s = tr(C) and the traceless anisotropic remainder."""

    s: float
    aniso: CMatrix


def c_matrix(h: TwoQuditInteraction | np.ndarray, basis: OperatorBasis) -> CMatrix:
    """C_uv = tr(h l_u x l_v) / 4 for a valid interaction h."""
    if isinstance(h, TwoQuditInteraction):
        if h.d != basis.d:
            raise RepresentationError(f"dimension mismatch: h has d={h.d}, basis d={basis.d}")
        mat = h.h
    else:
        mat = np.asarray(h, dtype=complex)
        validate_interaction(mat, basis.d)
    d, m = basis.d, basis.m
    # tr(h (l_u x l_v)) = h[(r1 r2),(c1 c2)] l_u[c1, r1] l_v[c2, r2]
    t = mat.reshape(d, d, d, d)
    c = np.einsum("iajb,uji,vba->uv", t, basis.lambdas, basis.lambdas) / 4.0
    if np.abs(c.imag).max() > VALIDATION_TOL:
        raise RepresentationError(
            f"C matrix not real (max imag {np.abs(c.imag).max():.3e}); invalid interaction")
    return CMatrix(d=d, entries=c.real)


def to_interaction(c: CMatrix, basis: OperatorBasis) -> TwoQuditInteraction:
    """h = sum_uv C_uv l_u x l_v (inverse of c_matrix)."""
    if c.d != basis.d:
        raise RepresentationError(f"dimension mismatch: C has d={c.d}, basis d={basis.d}")
    d = basis.d
    h = np.einsum("uv,uai,vbj->abij", c.entries, basis.lambdas, basis.lambdas)
    return TwoQuditInteraction(d=d, h=h.reshape(d * d, d * d))


def split_iso_aniso(c: CMatrix) -> IsoAnisoSplit:
    """C = (s/m) I + aniso with s = tr(C) and tr(aniso) = 0."""
    s = c.trace()
    aniso = c.entries - (s / c.m) * np.eye(c.m)
    return IsoAnisoSplit(s=s, aniso=CMatrix(d=c.d, entries=aniso))


def is_cancellable(c: CMatrix, tol: float = 1e-9) -> bool:
    """Theorem-level criterion: the interaction can be decoupled iff |tr C| < tol."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return abs(c.trace()) < tol


def exchange_trace_identity(h: TwoQuditInteraction) -> tuple[float, float, float]:
    """Return (tr(S h), tr(A h), tr C); the first equals the third, the second its negative."""
    ex = build_exchange(h.d)
    basis = build_basis(h.d)
    tr_s = float(np.trace(ex.S @ h.h).real)
    tr_a = float(np.trace(ex.A @ h.h).real)
    tr_c = c_matrix(h, basis).trace()
    return tr_s, tr_a, tr_c


# ---------------------------------------------------------------------------
# Vectorized (w) representation over a basis of real symmetric matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymmetricBasis:
    """Orthonormal basis {eta_a} of m x m real symmetric matrices, tr(eta_a eta_b) = 2 d_ab.

    Ordering: m diagonal units sqrt(2) E_aa, then symmetrized pairs
    E_ab + E_ba for a < b in lexicographic order; m(m+1)/2 elements total.
    """

    d: int
    etas: np.ndarray = field(repr=False)  # (K, m, m)

    @property
    def m(self) -> int:
        return self.d**2 - 1

    @property
    def size(self) -> int:
        return self.m * (self.m + 1) // 2

    def __len__(self) -> int:
        return self.size


def build_symmetric_basis(d: int) -> SymmetricBasis:
    m = d * d - 1
    etas = []
    for a in range(m):
        e = np.zeros((m, m))
        e[a, a] = np.sqrt(2.0)
        etas.append(e)
    for a in range(m):
        for b in range(a + 1, m):
            e = np.zeros((m, m))
            e[a, b] = e[b, a] = 1.0
            etas.append(e)
    arr = np.array(etas)
    arr.setflags(write=False)
    return SymmetricBasis(d=d, etas=arr)


@dataclass(frozen=True)
class WVector:
    """Vector representation (w)_a = tr(C eta_a) / 2 of a symmetric C matrix."""

    d: int
    entries: np.ndarray = field(repr=False)


def pack_symmetric(c: np.ndarray) -> np.ndarray:
    """w components of a symmetric matrix, matching build_symmetric_basis ordering.

    Diagonal entries contribute C_aa / sqrt(2), off-diagonal C_ab directly;
    |w|^2 = tr(C^2) / 2 under this normalization.
    """
    m = c.shape[0]
    iu = np.triu_indices(m, k=1)
    return np.concatenate([np.diagonal(c) / np.sqrt(2.0), c[iu]])


def unpack_symmetric(w: np.ndarray, m: int) -> np.ndarray:
    c = np.zeros((m, m))
    c[np.diag_indices(m)] = w[:m] * np.sqrt(2.0)
    iu = np.triu_indices(m, k=1)
    c[iu] = w[m:]
    c[(iu[1], iu[0])] = w[m:]
    return c


def w_vector(c: CMatrix, sbasis: SymmetricBasis) -> WVector:
    if c.d != sbasis.d:
        raise RepresentationError(f"dimension mismatch: C has d={c.d}, basis d={sbasis.d}")
    return WVector(d=c.d, entries=pack_symmetric(c.entries))


def from_w(w: WVector, sbasis: SymmetricBasis) -> CMatrix:
    if w.d != sbasis.d:
        raise RepresentationError(f"dimension mismatch: w has d={w.d}, basis d={sbasis.d}")
    if w.entries.shape != (sbasis.size,):
        raise RepresentationError(
            f"w has length {w.entries.shape}, expected ({sbasis.size},)")
    return CMatrix(d=w.d, entries=unpack_symmetric(np.asarray(w.entries, float), sbasis.m))


def perp_projector(w: np.ndarray) -> np.ndarray:
    """Projector onto the orthogonal complement of w: P = I - w w^T / |w|^2."""
    w = np.asarray(w, dtype=float)
    n2 = float(w @ w)
    if n2 <= 0.0:
        raise ValueError("cannot project orthogonally to the zero vector")
    return np.eye(len(w)) - np.outer(w, w) / n2


# ---------------------------------------------------------------------------
# Secular (energy-conserving) projection
# ---------------------------------------------------------------------------

def secular_effective(h: TwoQuditInteraction, h1: np.ndarray,
                      tol: float | None = None) -> TwoQuditInteraction:
    """Project h onto the terms commuting with h1 x I + I x h1.

    In the eigenbasis of h1, matrix elements <ab|h|cd> survive iff
    E_a + E_b = E_c + E_d within ``tol``.  The default tolerance is
    1e-9 times the spectral range of the pair Hamiltonian, separating
    exact degeneracies from accidental near-degeneracies.
    """
    h1 = np.asarray(h1, dtype=complex)
    if h1.shape != (h.d, h.d):
        raise RepresentationError(f"h1 must be {h.d} x {h.d}, got {h1.shape}")
    if not is_hermitian(h1):
        raise RepresentationError("single-particle Hamiltonian h1 is not Hermitian")
    energies, v = np.linalg.eigh(h1)
    pair_sums = (energies[:, None] + energies[None, :]).reshape(-1)
    if tol is None:
        spread = pair_sums.max() - pair_sums.min()
        tol = 1e-9 * (spread if spread > 0 else 1.0)
    vv = np.kron(v, v)
    h_rot = dagger(vv) @ h.h @ vv
    keep = np.abs(pair_sums[:, None] - pair_sums[None, :]) <= tol
    h_sec = vv @ (h_rot * keep) @ dagger(vv)
    return TwoQuditInteraction(d=h.d, h=h_sec)
