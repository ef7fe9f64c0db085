"""Pulse-sequence synthesis by linear programming.

Three problems over a fixed set of composite pulses:

* ``decouple``      -- average an interaction to zero (possible iff its
                       C matrix is traceless);
* ``map_anisotropic`` -- map one traceless C matrix onto another,
                       maximizing the retained strength beta*;
* ``engineer``      -- map a general C0 onto beta * Cf where
                       beta = tr(C0)/tr(Cf) is fixed by the isotropic
                       components, concatenating a shape-mapping
                       sequence with a decoupling sequence.

``engineer_hpq`` specializes to the spin-1 H(p, q) family reachable from
Ising couplings inside the hull 2|q| <= p <= 2 - 2|q|, by convex
combination of the four corner-point sequences.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cmatrix import CMatrix, pack_symmetric, perp_projector, split_iso_aniso
from .errors import RepresentationError
from .presets import HPQ_CORNERS, hpq_target, preset
from .pulses import CompositeSet, PulseSequence, effective_c, identity_sequence
from .simplex import LinearProgram, SimplexResult, solve_lp

WEIGHT_CUTOFF = 1e-11


@dataclass(frozen=True)
class SynthesisResult:
    """Outcome of a synthesis problem.

    ``beta_star`` is the rescaling of the achieved interaction relative
    to the target (0 for pure decoupling); ``residual`` is the max-norm
    deviation of the achieved effective C matrix from its target, or a
    lower bound on it for infeasible problems.
    """

    status: str                                  # "optimal" | "infeasible" | "unbounded-degenerate"
    sequence: PulseSequence | None = None
    beta_star: float = 0.0
    residual: float = float("nan")
    message: str = ""
    aniso_beta_max: float | None = None
    composite_set_size: int = 0
    frames_used: int = 0
    recipes: tuple[tuple[str, ...], ...] | None = field(default=None, repr=False)

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def rotated_columns(composites: CompositeSet, c0: np.ndarray) -> np.ndarray:
    """w(O_i^T C0 O_i) for every composite, shape (n, m(m+1)/2)."""
    orto = composites.orto
    n, m = orto.shape[0], orto.shape[1]
    iu = np.triu_indices(m, k=1)
    cols = np.empty((n, m * (m + 1) // 2))
    chunk = 65536
    for s in range(0, n, chunk):
        ob = orto[s:s + chunk]
        rot = np.einsum("nba,bc,ncd->nad", ob, c0, ob)
        cols[s:s + chunk, :m] = rot[:, np.arange(m), np.arange(m)] / np.sqrt(2.0)
        cols[s:s + chunk, m:] = rot[:, iu[0], iu[1]]
    return cols


def _dedup_columns(cols: np.ndarray) -> np.ndarray:
    """Indices of representative columns (first occurrence per unique value)."""
    _, first = np.unique(np.round(cols, 10), axis=0, return_index=True)
    return np.sort(first)


def _sequence_from_solution(composites: CompositeSet, rep_idx: np.ndarray,
                            alpha: np.ndarray, period_T: float = 1.0,
                            ) -> tuple[PulseSequence, tuple[tuple[str, ...], ...]]:
    support = np.nonzero(alpha > WEIGHT_CUTOFF)[0]
    sel = rep_idx[support]
    weights = alpha[support]
    weights = weights / weights.sum()
    frames = composites.unitaries[sel]
    recipes = tuple(composites.recipes[i] for i in sel)
    seq = PulseSequence(d=composites.d, frames=frames, weights=weights, period_T=period_T)
    return seq, recipes


def decouple(c: CMatrix, composites: CompositeSet, tol: float = 1e-9) -> SynthesisResult:
    """Find weights over the composite set that average C to zero.

    A nonzero trace is a proven obstruction, so the LP is only attempted
    for |tr C| < tol.
    """
    n_total = len(composites)
    s = c.trace()
    if abs(s) >= tol:
        return SynthesisResult(
            status="infeasible",
            residual=abs(s) / c.m,     # ||C_eff||_max >= |tr C| / m for every sequence
            message=f"tr(C) = {s:.6g} is nonzero: the isotropic component cannot be decoupled",
            composite_set_size=n_total)
    cols = rotated_columns(composites, c.entries)
    rep = _dedup_columns(cols)
    a_eq = np.vstack([cols[rep].T, np.ones(len(rep))])
    b_eq = np.zeros(a_eq.shape[0])
    b_eq[-1] = 1.0
    lp = LinearProgram(objective=np.zeros(len(rep)), A_eq=a_eq, b_eq=b_eq)
    res = solve_lp(lp, tol=tol)
    if res.status != "optimal":
        return SynthesisResult(
            status="infeasible", residual=res.infeasibility,
            message="no convex combination of rotated interactions reaches zero "
                    "over this composite set",
            composite_set_size=n_total)
    seq, recipes = _sequence_from_solution(composites, rep, res.x)
    residual = float(np.abs(effective_c(seq, c).entries).max())
    return SynthesisResult(status="optimal", sequence=seq, beta_star=0.0,
                           residual=residual, composite_set_size=n_total,
                           frames_used=len(seq), recipes=recipes)


def map_anisotropic(c0: CMatrix, cf: CMatrix, composites: CompositeSet,
                    tol: float = 1e-9) -> SynthesisResult:
    """Map traceless C0 onto beta* Cf with the largest possible beta*.

    Maximizes the overlap with Cf subject to a vanishing component
    orthogonal to it (the shape-mapping stage of interaction engineering).
    """
    if c0.d != cf.d or c0.d != composites.d:
        raise RepresentationError("dimension mismatch between C matrices and composites")
    if abs(c0.trace()) >= tol or abs(cf.trace()) >= tol:
        raise RepresentationError(
            f"anisotropic mapping requires traceless inputs: tr(C0) = {c0.trace():.3g}, "
            f"tr(Cf) = {cf.trace():.3g}")
    wf = pack_symmetric(cf.entries)
    wf_norm2 = float(wf @ wf)
    if wf_norm2 <= tol**2:
        raise RepresentationError("target C matrix is zero; use decouple instead")
    n_total = len(composites)
    cols = rotated_columns(composites, c0.entries)
    rep = _dedup_columns(cols)
    cols = cols[rep]
    perp = perp_projector(wf)
    a_eq = np.vstack([perp @ cols.T, np.ones(len(rep))])
    b_eq = np.zeros(a_eq.shape[0])
    b_eq[-1] = 1.0
    lp = LinearProgram(objective=cols @ wf, A_eq=a_eq, b_eq=b_eq)
    res = solve_lp(lp, tol=tol)
    if res.status != "optimal":
        return SynthesisResult(
            status="infeasible" if res.status == "infeasible" else "unbounded-degenerate",
            residual=res.infeasibility,
            message="no weights align the rotated interaction with the target direction",
            composite_set_size=n_total)
    beta = res.objective_value / wf_norm2
    if beta <= tol:
        return SynthesisResult(
            status="infeasible", residual=float("nan"), beta_star=0.0,
            message=f"maximum achievable overlap is not positive (beta* = {beta:.3g})",
            composite_set_size=n_total)
    seq, recipes = _sequence_from_solution(composites, rep, res.x)
    achieved = effective_c(seq, c0).entries
    residual = float(np.abs(achieved - beta * cf.entries).max())
    return SynthesisResult(status="optimal", sequence=seq, beta_star=float(beta),
                           residual=residual, composite_set_size=n_total,
                           frames_used=len(seq), recipes=recipes)


def concatenate(parts: list[tuple[float, PulseSequence]],
                period_T: float | None = None) -> PulseSequence:
    """Concatenate sequences with outer weights (gamma_j sums to 1)."""
    if not parts:
        raise ValueError("nothing to concatenate")
    gammas = np.array([g for g, _ in parts], dtype=float)
    if gammas.min() < 0 or abs(gammas.sum() - 1.0) > 1e-9:
        raise ValueError("outer weights must be nonnegative and sum to 1")
    d = parts[0][1].d
    frames = np.concatenate([seq.frames for _, seq in parts])
    weights = np.concatenate([g * seq.weights for g, seq in parts])
    keep = weights > WEIGHT_CUTOFF
    weights = weights[keep] / weights[keep].sum()
    return PulseSequence(d=d, frames=frames[keep], weights=weights,
                         period_T=period_T or parts[0][1].period_T)


def engineer(c0: CMatrix, cf: CMatrix, composites: CompositeSet,
             tol: float = 1e-9) -> SynthesisResult:
    """Map C0 onto beta Cf, beta fixed to tr(C0)/tr(Cf) by the isotropic parts.

    Both traces zero delegates to the anisotropic mapping; exactly one
    zero is impossible (isotropic components are invariant under global
    pulses).  Otherwise a maximal-strength anisotropic mapping P1 is
    concatenated with an anisotropic decoupling P2 in proportions
    (beta/beta1*, 1 - beta/beta1*).
    """
    s0, sf = c0.trace(), cf.trace()
    zero0, zerof = abs(s0) < tol, abs(sf) < tol
    n_total = len(composites)
    if zero0 and zerof:
        return map_anisotropic(c0, cf, composites, tol)
    if zero0 != zerof:
        return SynthesisResult(
            status="infeasible",
            message=f"isotropic components cannot be created or destroyed: "
                    f"tr(C0) = {s0:.6g}, tr(Cf) = {sf:.6g}",
            composite_set_size=n_total)
    beta = s0 / sf
    if beta <= 0:
        return SynthesisResult(
            status="infeasible",
            message=f"isotropic components force beta = tr(C0)/tr(Cf) = {beta:.6g} <= 0",
            composite_set_size=n_total)
    bar0 = split_iso_aniso(c0).aniso
    barf = split_iso_aniso(cf).aniso
    norm_barf = np.abs(barf.entries).max()
    norm_bar0 = np.abs(bar0.entries).max()

    if norm_barf < tol:
        # isotropic target: decouple the anisotropic part of the source
        if norm_bar0 < tol:
            seq = identity_sequence(c0.d)
            recipes: tuple[tuple[str, ...], ...] | None = ((),)
            aniso_beta = None
        else:
            sub = decouple(bar0, composites, tol)
            if not sub.optimal:
                return SynthesisResult(
                    status="infeasible",
                    message="anisotropic part of the source cannot be decoupled: "
                    + sub.message,
                    composite_set_size=n_total)
            seq, recipes, aniso_beta = sub.sequence, sub.recipes, None
    else:
        r1 = map_anisotropic(bar0, barf, composites, tol)
        if not r1.optimal:
            return SynthesisResult(
                status="infeasible",
                message="anisotropic shape mapping failed: " + r1.message,
                composite_set_size=n_total, aniso_beta_max=r1.beta_star or None)
        beta1 = r1.beta_star
        gamma = beta / beta1
        if gamma > 1.0 + 1e-9:
            return SynthesisResult(
                status="infeasible", aniso_beta_max=beta1,
                message=f"required rescaling beta = {beta:.6g} exceeds the maximum "
                        f"achievable anisotropic strength beta1* = {beta1:.6g}",
                composite_set_size=n_total)
        gamma = min(gamma, 1.0)
        if 1.0 - gamma > 1e-12:
            r2 = decouple(bar0, composites, tol)
            if not r2.optimal:
                return SynthesisResult(
                    status="infeasible", aniso_beta_max=beta1,
                    message="anisotropic decoupling stage failed: " + r2.message,
                    composite_set_size=n_total)
            seq = concatenate([(gamma, r1.sequence), (1.0 - gamma, r2.sequence)])
            recipes = None
        else:
            seq, recipes = r1.sequence, r1.recipes
        aniso_beta = beta1

    achieved = effective_c(seq, c0).entries
    residual = float(np.abs(achieved - beta * cf.entries).max())
    return SynthesisResult(status="optimal", sequence=seq, beta_star=float(beta),
                           residual=residual, aniso_beta_max=aniso_beta,
                           composite_set_size=n_total, frames_used=len(seq),
                           recipes=recipes)


def hpq_corner_sequences(composites: CompositeSet,
                         tol: float = 1e-9) -> dict[str, SynthesisResult]:
    """Engineer Ising -> target_{A, B, C, D}; inputs for engineer_hpq."""
    c_i = preset("ising_z_spin1")
    return {name: engineer(c_i, preset(name), composites, tol) for name in HPQ_CORNERS}


def engineer_hpq(p: float, q: float, composites: CompositeSet,
                 corners: dict[str, SynthesisResult] | None = None,
                 tol: float = 1e-9) -> SynthesisResult:
    """Engineer H(p, q) from Ising couplings, strength beta = 1/(3 + p).

    Feasible exactly on the hull 2|q| <= p <= 2 - 2|q| (the convex hull
    of the four corner targets); inside it, the corner sequences are
    concatenated with the bilinear hull weights rescaled by the corner
    isotropic strengths.
    """
    u = p / 2.0 + q
    v = p / 2.0 - q
    edge = 1e-12
    if not (-edge <= u <= 1.0 + edge and -edge <= v <= 1.0 + edge):
        checks = []
        if p < 2 * abs(q):
            checks.append(f"p >= 2|q| violated (p = {p:.6g}, 2|q| = {2 * abs(q):.6g})")
        if p > 2 - 2 * abs(q):
            checks.append(f"p <= 2 - 2|q| violated (p = {p:.6g}, 2 - 2|q| = {2 - 2 * abs(q):.6g})")
        return SynthesisResult(
            status="infeasible",
            message="(p, q) outside the engineerable hull: " + "; ".join(checks))
    phi = {
        "target_A": u * v,
        "target_B": (1.0 - u) * v,
        "target_C": (1.0 - u) * (1.0 - v),
        "target_D": u * (1.0 - v),
    }
    if corners is None:
        corners = hpq_corner_sequences(composites, tol)
    parts = []
    for name, weight in phi.items():
        if weight <= 1e-14:
            continue
        sub = corners[name]
        if not sub.optimal:
            return SynthesisResult(
                status="infeasible",
                message=f"corner sequence {name} unavailable: {sub.message}")
        # outer weight: hull weight rescaled by the corner isotropic strength
        p_k = HPQ_CORNERS[name][0]
        parts.append((weight * (3.0 + p_k) / (3.0 + p), sub.sequence))
    seq = concatenate(parts)
    beta = 1.0 / (3.0 + p)
    target = hpq_target(p, q)
    achieved = effective_c(seq, preset("ising_z_spin1")).entries
    residual = float(np.abs(achieved - beta * target.entries).max())
    return SynthesisResult(status="optimal", sequence=seq, beta_star=beta,
                           residual=residual, frames_used=len(seq),
                           composite_set_size=len(composites))


def symmetrize(seq: PulseSequence) -> PulseSequence:
    """Time-reversed doubling over period 2T; cancels the first-order
    Magnus term while leaving the zeroth order unchanged."""
    frames = np.concatenate([seq.frames, seq.frames[::-1]])
    weights = np.concatenate([seq.weights, seq.weights[::-1]]) / 2.0
    return PulseSequence(d=seq.d, frames=frames, weights=weights,
                         period_T=2.0 * seq.period_T)
