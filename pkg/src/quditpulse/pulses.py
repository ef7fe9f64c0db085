"""Global pulses, composite-pulse enumeration and induced representations.

A global unitary u acts on C matrices through the real orthogonal matrix

    O_uv = tr(l_v u^+ l_u u) / 2,       u^+ l_u u = sum_v O_uv l_v,

which composes directly, O(u v) = O(u) O(v).  Since O is blind to global
phases, composite pulses are deduplicated by their O fingerprint.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import adjoint_rep_batch
from .basis import OperatorBasis, build_basis, offdiag_pairs, pulse_unitary
from .cmatrix import CMatrix, SymmetricBasis
from .errors import RepresentationError
from .linalg import dagger, is_unitary

ANGLES = {"pi": np.pi, "pi/2": np.pi / 2}


@dataclass(frozen=True)
class ElementaryPulse:
    """A single rotation exp(-i * angle * generator) about a named generator."""

    name: str                 # generator label, e.g. "X1" or "Y3"
    generator: np.ndarray = field(repr=False)
    angle: float = np.pi

    @property
    def unitary(self) -> np.ndarray:
        return pulse_unitary(self.generator, self.angle)

    @property
    def token(self) -> str:
        mag = abs(self.angle)
        for label, val in ANGLES.items():
            if abs(mag - val) < 1e-12:
                sign = "+" if self.angle > 0 else "-"
                return f"{label}:{self.name}:{sign}"
        return f"{self.angle!r}:{self.name}:+"


def transition_generators(basis: OperatorBasis) -> dict[str, np.ndarray]:
    """X_k = l_k / 2 and Y_k = l_{k + npairs} / 2 for each off-diagonal pair."""
    npairs = len(offdiag_pairs(basis.d))
    gens = {}
    for k in range(npairs):
        gens[f"X{k + 1}"] = basis.lambdas[k] / 2.0
        gens[f"Y{k + 1}"] = basis.lambdas[k + npairs] / 2.0
    return gens


def elementary_pulses(basis: OperatorBasis,
                      angles: tuple[float, ...] = (np.pi / 2, -np.pi / 2, np.pi, -np.pi),
                      ) -> list[ElementaryPulse]:
    """The +-pi, +-pi/2 pulse set on every transition of the given basis."""
    gens = transition_generators(basis)
    return [ElementaryPulse(name=nm, generator=g, angle=a)
            for nm, g in gens.items() for a in angles]


def spin1_elementary_pulses() -> list[ElementaryPulse]:
    """The d = 3 elementary set: 8 pulses on each of the 3 transitions."""
    return elementary_pulses(build_basis(3))


def parse_token(token: str, basis: OperatorBasis) -> ElementaryPulse:
    """Parse "pi/2:X1:+" style recipe tokens."""
    parts = token.split(":")
    if len(parts) != 3 or parts[0] not in ANGLES or parts[2] not in "+-":
        raise RepresentationError(
            f"malformed pulse token {token!r}; expected e.g. 'pi/2:X1:+' or 'pi:Y2:-'")
    gens = transition_generators(basis)
    if parts[1] not in gens:
        raise RepresentationError(
            f"unknown generator {parts[1]!r} for d={basis.d}; valid: {sorted(gens)}")
    angle = ANGLES[parts[0]] * (1.0 if parts[2] == "+" else -1.0)
    return ElementaryPulse(name=parts[1], generator=gens[parts[1]], angle=angle)


def recipe_unitary(tokens: list[str] | tuple[str, ...], basis: OperatorBasis) -> np.ndarray:
    """Product of recipe pulses; the last token acts first (matrix order)."""
    u = np.eye(basis.d, dtype=complex)
    for tok in tokens:
        u = u @ parse_token(tok, basis).unitary
    return u


# ---------------------------------------------------------------------------
# Orthogonal (O) and symmetric-space (M) representations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrthogonalRep:
    """Action of a unitary on the operator basis: O_uv = tr(l_v u^+ l_u u)/2."""

    O: np.ndarray = field(repr=False)
    source: np.ndarray | None = field(default=None, repr=False)


def orthogonal_rep(u: np.ndarray, basis: OperatorBasis) -> OrthogonalRep:
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u):
        raise RepresentationError("matrix is not unitary within 1e-10")
    o = adjoint_rep_batch(u[None, :, :], basis.lambdas)[0]
    return OrthogonalRep(O=o, source=u)


def m_rep(o: OrthogonalRep | np.ndarray, sbasis: SymmetricBasis) -> np.ndarray:
    """M_ab = tr(eta_a O^T eta_b O) / 2, the induced map on packed w vectors."""
    omat = o.O if isinstance(o, OrthogonalRep) else np.asarray(o, float)
    rotated = np.einsum("ba,kbc,cd->kad", omat, sbasis.etas, omat)
    return 0.5 * np.einsum("aij,kij->ak", sbasis.etas, rotated)


# ---------------------------------------------------------------------------
# Pulse sequences (toggling frames + weights)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PulseSequence:
    """Toggling frames u_i with weights a_i = tau_i / T over one period.

    The pulses physically applied are p_i = u_i u_{i-1}^+ (u_0 = I), plus
    a closing pulse u_k^+ when the final frame is not the identity, so the
    frame returns to identity each period.  ``period_T`` is metadata for
    simulation; zeroth-order synthesis depends only on the weights.
    """

    d: int
    frames: np.ndarray = field(repr=False)   # (k, d, d) complex
    weights: np.ndarray = field(repr=False)  # (k,) nonnegative, sums to 1
    period_T: float = 1.0

    def __post_init__(self):
        frames = np.asarray(self.frames, dtype=complex)
        weights = np.asarray(self.weights, dtype=float)
        if frames.ndim != 3 or frames.shape[1:] != (self.d, self.d):
            raise RepresentationError(f"frames must be (k, {self.d}, {self.d}), got {frames.shape}")
        if weights.shape != (frames.shape[0],):
            raise RepresentationError("one weight per frame required")
        if weights.min() < -1e-12:
            raise RepresentationError(f"negative frame weight: {weights.min():.3e}")
        if abs(weights.sum() - 1.0) > 1e-9:
            raise RepresentationError(f"frame weights sum to {weights.sum()!r}, expected 1")
        if self.period_T <= 0:
            raise RepresentationError("period_T must be positive")
        for i, u in enumerate(frames):
            if not is_unitary(u):
                raise RepresentationError(f"frame {i} is not unitary within 1e-10")
        frames = frames.copy()
        weights = weights.copy()
        frames.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "frames", frames)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return self.frames.shape[0]

    def applied_pulses(self) -> np.ndarray:
        """p_i = u_i u_{i-1}^+ with u_0 = I (no closing pulse included)."""
        return frames_to_applied(self)

    def closing_pulse(self) -> np.ndarray:
        """u_k^+, restoring the identity frame at the end of the period."""
        return dagger(self.frames[-1])

    def applied_pulse_count(self, tol: float = 1e-9) -> int:
        """Number of non-identity pulses per period in steady cycling.

        The closing pulse merges with the next period's first pulse, so the
        cyclic pulse list is [u_1 u_k^+, p_2, ..., p_k]; identity entries
        (up to global phase) are not counted.
        """
        frames = self.frames
        pulses = [frames[0] @ dagger(frames[-1])]
        pulses.extend(frames[i] @ dagger(frames[i - 1]) for i in range(1, len(frames)))
        count = 0
        eye = np.eye(self.d)
        for p in pulses:
            phase = np.trace(p) / self.d
            if abs(abs(phase) - 1.0) > tol or np.abs(p - phase * eye).max() > tol:
                count += 1
        return count


def identity_sequence(d: int, period_T: float = 1.0) -> PulseSequence:
    return PulseSequence(d=d, frames=np.eye(d, dtype=complex)[None, :, :],
                         weights=np.array([1.0]), period_T=period_T)


def frames_to_applied(seq: PulseSequence) -> np.ndarray:
    """Applied pulses p_i = u_i u_{i-1}^+ (u_0 = I)."""
    frames = seq.frames
    out = np.empty_like(frames)
    prev = np.eye(seq.d, dtype=complex)
    for i, u in enumerate(frames):
        out[i] = u @ dagger(prev)
        prev = u
    return out


def applied_to_frames(pulses: np.ndarray) -> np.ndarray:
    """Accumulated frames u_i = p_i p_{i-1} ... p_1 from applied pulses."""
    pulses = np.asarray(pulses, dtype=complex)
    out = np.empty_like(pulses)
    acc = np.eye(pulses.shape[1], dtype=complex)
    for i, p in enumerate(pulses):
        acc = p @ acc
        out[i] = acc
    return out


def effective_c(seq: PulseSequence, c: CMatrix) -> CMatrix:
    """Zeroth-order average C_eff = sum_i a_i O_i^T C O_i."""
    if seq.d != c.d:
        raise RepresentationError(f"dimension mismatch: sequence d={seq.d}, C d={c.d}")
    basis = build_basis(seq.d)
    os = adjoint_rep_batch(seq.frames, basis.lambdas)
    rotated = np.einsum("nba,bc,ncd->nad", os, c.entries, os)
    return CMatrix(d=c.d, entries=np.tensordot(seq.weights, rotated, axes=1))


# ---------------------------------------------------------------------------
# Composite-pulse enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompositePulse:
    """A product of elementary pulses with its unitary and O fingerprint."""

    recipe: tuple[str, ...]   # tokens, leftmost factor first (rightmost acts first)
    u: np.ndarray = field(repr=False)
    O: np.ndarray = field(repr=False)


class CompositeSet:
    """Deduplicated composite pulses, stored as batched arrays.

    Behaves as a sequence of :class:`CompositePulse`.  ``unitaries`` and
    ``orto`` expose the raw (n, d, d) and (n, m, m) arrays used by the
    synthesis code.
    """

    def __init__(self, d: int, unitaries: np.ndarray, orto: np.ndarray,
                 recipes: list[tuple[str, ...]]):
        self.d = d
        self.unitaries = unitaries
        self.orto = orto
        self.recipes = recipes

    def __len__(self) -> int:
        return len(self.recipes)

    def __getitem__(self, i: int) -> CompositePulse:
        return CompositePulse(recipe=self.recipes[i], u=self.unitaries[i], O=self.orto[i])

    def __iter__(self):
        return (self[i] for i in range(len(self)))


def enumerate_composites(elementary: list[ElementaryPulse], max_depth: int,
                         dedup_tol: float = 1e-8) -> CompositeSet:
    """All products of up to ``max_depth`` elementary pulses, deduplicated.

    Two composites inducing the same orthogonal representation O act
    identically on every interaction, so dedup keys on O (entries rounded
    to 9 decimals; key collisions re-checked entrywise against
    ``dedup_tol``).  The identity (the empty product) is always present
    as the first element.  Breadth-first order makes the result
    deterministic for a fixed elementary list.
    """
    if not elementary:
        raise RepresentationError("elementary pulse set is empty")
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    d = elementary[0].generator.shape[0]
    basis = build_basis(d)
    m = basis.m

    gen_us = np.array([p.unitary for p in elementary])
    gen_os = adjoint_rep_batch(gen_us, basis.lambdas)
    gen_tokens = [p.token for p in elementary]

    def key_of(o: np.ndarray) -> bytes:
        return np.round(o, 9).tobytes()

    unitaries = [np.eye(d, dtype=complex)]
    orto = [np.eye(m)]
    recipes: list[tuple[str, ...]] = [()]
    # key -> list of class indices sharing it (hash collisions kept apart)
    index: dict[bytes, list[int]] = {key_of(orto[0]): [0]}

    frontier = [0]
    for _ in range(max_depth):
        new_frontier = []
        for parent in frontier:
            o_parent = orto[parent]
            u_parent = unitaries[parent]
            rec_parent = recipes[parent]
            for g in range(len(elementary)):
                o_child = o_parent @ gen_os[g]
                key = key_of(o_child)
                bucket = index.get(key)
                if bucket is not None:
                    if any(np.abs(orto[i] - o_child).max() < dedup_tol for i in bucket):
                        continue
                else:
                    bucket = index[key] = []
                idx = len(orto)
                bucket.append(idx)
                orto.append(o_child)
                unitaries.append(u_parent @ gen_us[g])
                recipes.append(rec_parent + (gen_tokens[g],))
                new_frontier.append(idx)
        frontier = new_frontier
    return CompositeSet(d=d, unitaries=np.array(unitaries), orto=np.array(orto),
                        recipes=recipes)


# ---------------------------------------------------------------------------
# The explicit 6-frame decoupling sequence for secular spin-1 dipolar coupling
# ---------------------------------------------------------------------------

_DIPOLAR_FRAME_RECIPES: tuple[tuple[str, ...], ...] = (
    ("pi/2:X3:+", "pi/2:Y3:+", "pi:X1:+", "pi/2:Y3:-", "pi/2:X3:-"),
    ("pi/2:X3:+", "pi/2:Y3:+", "pi:Y2:+", "pi/2:Y3:-", "pi/2:X3:-"),
    ("pi/2:Y3:+", "pi/2:X3:-", "pi/2:Y3:-", "pi/2:X3:-"),
    ("pi/2:Y3:+", "pi/2:X3:-", "pi:X1:+", "pi/2:Y3:-", "pi/2:X3:-"),
    ("pi/2:Y3:+", "pi/2:X3:-", "pi:Y2:+", "pi/2:Y3:-", "pi/2:X3:-"),
    (),
)


def dipolar_decoupling_sequence(period_T: float = 1.0) -> PulseSequence:
    """The explicit 6-frame, equal-weight sequence that decouples the
    secular spin-1 dipolar interaction (final frame is the identity)."""
    basis = build_basis(3)
    frames = np.array([recipe_unitary(rec, basis) for rec in _DIPOLAR_FRAME_RECIPES])
    return PulseSequence(d=3, frames=frames, weights=np.full(6, 1.0 / 6.0),
                         period_T=period_T)


def dipolar_decoupling_recipes() -> tuple[tuple[str, ...], ...]:
    return _DIPOLAR_FRAME_RECIPES
