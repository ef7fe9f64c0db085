"""Embedded dense two-phase simplex solver.

Solves   maximize c . x   subject to   A x = b,  x >= 0.

The problems produced by sequence synthesis are small in rows (at most
m(m+1)/2 + 1) but can have hundreds of thousands of columns, one per
composite pulse.  Redundant equality rows (the orthogonal-complement
projector is rank deficient by construction) are removed by a Gram-based
row reduction before phase 1.  The pivot loop lives in ``_kernels``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels

FEASIBILITY_TOL = 1e-9
STALL_LIMIT = 512
MAX_ITER = 500_000


@dataclass(frozen=True)
class LinearProgram:
    """maximize objective . x  with  A_eq x = b_eq,  x >= 0."""

    objective: np.ndarray = field(repr=False)
    A_eq: np.ndarray = field(repr=False)
    b_eq: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float)
        a = np.atleast_2d(np.asarray(self.A_eq, dtype=float))
        b = np.atleast_1d(np.asarray(self.b_eq, dtype=float))
        if a.shape != (len(b), len(c)):
            raise ValueError(f"inconsistent LP shapes: A {a.shape}, b {b.shape}, c {c.shape}")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "A_eq", a)
        object.__setattr__(self, "b_eq", b)


@dataclass(frozen=True)
class SimplexResult:
    status: str                      # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None
    objective_value: float | None
    basis: np.ndarray | None
    iterations: int
    infeasibility: float = 0.0       # phase-1 residual when infeasible


def _independent_rows(a: np.ndarray, b: np.ndarray, rank_tol: float,
                      consistency_tol: float) -> tuple[np.ndarray, np.ndarray, bool]:
    """Select a maximal independent row subset via pivoted elimination on
    the Gram matrix; returns (A_kept, b_kept, consistent)."""
    k = a.shape[0]
    gram = a @ a.T
    resid = gram.copy()
    selected: list[int] = []
    remaining = list(range(k))
    threshold = rank_tol * max(gram.diagonal().max(), 1.0)
    for _ in range(k):
        diag = resid.diagonal()
        best, best_val = -1, threshold
        for i in remaining:
            if diag[i] > best_val:
                best, best_val = i, diag[i]
        if best < 0:
            break
        selected.append(best)
        remaining.remove(best)
        col = resid[:, best].copy()
        resid -= np.outer(col, col) / col[best]
    selected.sort()
    dropped = [i for i in range(k) if i not in selected]
    if dropped:
        g_ss = gram[np.ix_(selected, selected)]
        g_ds = gram[np.ix_(dropped, selected)]
        coeff = np.linalg.solve(g_ss, g_ds.T).T      # dropped rows = coeff @ kept rows
        mismatch = np.abs(coeff @ b[selected] - b[dropped]).max()
        if mismatch > consistency_tol:
            return a[selected], b[selected], False
    return a[selected], b[selected], True


def solve_lp(lp: LinearProgram, tol: float = FEASIBILITY_TOL,
             max_iter: int = MAX_ITER) -> SimplexResult:
    """Two-phase dense simplex; deterministic for a fixed column order.

    Both phases run on one extended tableau [A | I | b]: the identity
    block carries the artificial variables in phase 1 and then stays on
    as the lexicographic tie-break keys (the running basis inverse), so
    degenerate problems terminate without cycling.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    c = lp.objective
    a = lp.A_eq.copy()
    b = lp.b_eq.copy()
    n = len(c)

    # scale rows to unit max-entry, flip signs so b >= 0; rows that are zero
    # up to rounding must have (near-)zero rhs and are dropped
    norms = np.abs(a).max(axis=1)
    scale = max(norms.max(initial=0.0), np.abs(b).max(initial=0.0), 1e-30)
    keep = norms > 1e-13 * scale
    if not keep.all():
        if np.abs(b[~keep]).max(initial=0.0) > tol * scale:
            return SimplexResult("infeasible", None, None, None, 0,
                                 infeasibility=float(np.abs(b[~keep]).max()))
        a, b, norms = a[keep], b[keep], norms[keep]
    a /= norms[:, None]
    b /= norms
    flip = b < 0
    a[flip] *= -1.0
    b[flip] *= -1.0

    a, b, consistent = _independent_rows(a, b, rank_tol=1e-10, consistency_tol=1e-7)
    if not consistent:
        return SimplexResult("infeasible", None, None, None, 0, infeasibility=float("nan"))
    r = a.shape[0]

    # phase 1: minimize the sum of artificial variables
    tab = np.zeros((r + 1, n + r + 1))
    tab[:r, :n] = a
    tab[:r, n:n + r] = np.eye(r)
    tab[:r, -1] = b
    tab[-1, :n] = -a.sum(axis=0)
    tab[-1, -1] = -b.sum()
    basis = np.arange(n, n + r, dtype=np.int64)
    status, it1 = _kernels.simplex_iterate(tab, basis, n, tol, STALL_LIMIT, max_iter)
    if status == _kernels.ITERATION_LIMIT:
        raise RuntimeError(f"simplex phase 1 hit the iteration limit ({max_iter})")
    if status == _kernels.UNBOUNDED:
        raise RuntimeError("phase 1 reported unbounded; the artificial objective "
                           "is bounded below, so the tableau is corrupt")
    infeas = -tab[-1, -1]
    if infeas > tol * max(1.0, abs(b).max()):
        return SimplexResult("infeasible", None, None, None, it1, infeasibility=float(infeas))

    # drive leftover (degenerate) artificial variables out of the basis,
    # preferring positive pivots to keep the rows lexicographically positive
    drop = np.zeros(r, dtype=bool)
    for i in range(r):
        if basis[i] >= n:
            row = tab[i, :n]
            j = int(np.argmax(row))
            if row[j] <= tol:
                j = int(np.argmax(np.abs(row)))
            if abs(row[j]) <= tol:
                drop[i] = True
                continue
            piv = tab[i, j]
            tab[i, :] /= piv
            factors = tab[:, j].copy()
            factors[i] = 0.0
            tab -= np.outer(factors, tab[i, :])
            tab[:, j] = 0.0
            tab[i, j] = 1.0
            basis[i] = j
    if drop.any():
        rows = [i for i in range(r) if not drop[i]]
        tab = np.ascontiguousarray(tab[rows + [r], :])
        basis = basis[rows]
        a, b = a[rows], b[rows]
        r = len(rows)

    it2 = 0
    if np.any(c != 0.0):
        # phase 2: maximize c.x == minimize (-c).x over the original columns
        tab[-1, :] = 0.0
        tab[-1, :n] = -c
        for i in range(r):
            cb = -c[basis[i]]
            if cb != 0.0:
                tab[-1, :] -= cb * tab[i, :]
        status, it2 = _kernels.simplex_iterate(tab, basis, n, tol, STALL_LIMIT, max_iter)
        if status == _kernels.ITERATION_LIMIT:
            raise RuntimeError(f"simplex phase 2 hit the iteration limit ({max_iter})")
        if status == _kernels.UNBOUNDED:
            return SimplexResult("unbounded", None, None, basis.copy(), it1 + it2)

    x = np.zeros(n)
    x[basis] = tab[:r, -1]
    # re-solve the vertex exactly from the reduced row system for precision
    try:
        xb = np.linalg.solve(a[:, basis], b)
        if np.abs(xb - tab[:r, -1]).max() < 1e-6:
            x[:] = 0.0
            x[basis] = xb
    except np.linalg.LinAlgError:
        pass
    np.clip(x, 0.0, None, out=x)
    return SimplexResult("optimal", x, float(c @ x), basis.copy(), it1 + it2)
