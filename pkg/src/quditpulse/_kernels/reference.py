"""Pure-numpy implementations of the hot kernels.

These are the fallback used when the compiled extension is unavailable;
they must match `_native` decision-for-decision (same pivot rules, same
tie-breaking) so both backends produce identical results.
"""

from __future__ import annotations

import numpy as np

OPTIMAL, UNBOUNDED, ITERATION_LIMIT = 0, 1, 2

_TIE_BAND = 1e-9
_LEX_BAND = 1e-12
_PROGRESS_EPS = 1e-13


def adjoint_rep_batch(us: np.ndarray, lams: np.ndarray, chunk: int = 8192) -> np.ndarray:
    """O[n, a, b] = Re tr(l_b u_n^+ l_a u_n) / 2 for a batch of unitaries."""
    us = np.asarray(us, dtype=complex)
    lams = np.asarray(lams, dtype=complex)
    n, m = us.shape[0], lams.shape[0]
    out = np.empty((n, m, m))
    for s in range(0, n, chunk):
        ub = us[s:s + chunk]
        rot = np.einsum("nji,ajk,nkl->nail", ub.conj(), lams, ub)
        out[s:s + chunk] = 0.5 * np.einsum("bij,naji->nab", lams, rot).real
    return out


def simplex_iterate(tab: np.ndarray, basis: np.ndarray, n_enter: int, tol: float,
                    stall_limit: int, max_iter: int) -> tuple[int, int]:
    """Run simplex pivots in place on a minimization tableau.

    ``tab`` is (m+1) x (n_total+1): constraint rows with the rhs in the
    last column and the reduced-cost row last (tab[-1, -1] holds minus
    the objective).  Only columns < ``n_enter`` may enter; the remaining
    columns (the initial identity block, i.e. the running basis inverse)
    provide lexicographic tie-break keys for the leaving row, which is
    what prevents cycling under degeneracy.  A Bland entering rule kicks
    in as a final guard after ``stall_limit`` non-improving pivots.

    Entering: most-negative reduced cost, first index on ties.
    Leaving:  minimum of max(rhs, 0)/pivot; ties resolved
              lexicographically by (key column / pivot), then by the
              smallest basis label.  Returns (status, iterations).
    """
    nrows = tab.shape[0] - 1
    ncols = tab.shape[1] - 1
    cost = tab[-1, :n_enter]
    rhs_col = ncols
    bland = False
    stall = 0
    last_obj = tab[-1, rhs_col]
    iters = 0
    while iters < max_iter:
        if bland:
            neg = np.nonzero(cost < -tol)[0]
            if len(neg) == 0:
                return OPTIMAL, iters
            enter = int(neg[0])
        else:
            enter = int(np.argmin(cost))
            if cost[enter] >= -tol:
                return OPTIMAL, iters

        col = tab[:nrows, enter]
        eligible = np.nonzero(col > tol)[0]
        if len(eligible) == 0:
            return UNBOUNDED, iters
        ratios = np.maximum(tab[eligible, rhs_col], 0.0) / col[eligible]
        best = ratios.min()
        cand = eligible[ratios <= best + _TIE_BAND * (1.0 + abs(best))]
        for lex in range(n_enter, ncols):
            if len(cand) == 1:
                break
            keys = tab[cand, lex] / col[cand]
            kbest = keys.min()
            cand = cand[keys <= kbest + _LEX_BAND * (1.0 + abs(kbest))]
        leave = int(cand[np.argmin(basis[cand])])

        piv = tab[leave, enter]
        tab[leave, :] /= piv
        factors = tab[:, enter].copy()
        factors[leave] = 0.0
        tab -= np.outer(factors, tab[leave, :])
        tab[:, enter] = 0.0
        tab[leave, enter] = 1.0
        basis[leave] = enter
        iters += 1

        obj = tab[-1, rhs_col]
        if obj > last_obj + _PROGRESS_EPS * max(1.0, abs(last_obj)):
            stall = 0
        else:
            stall += 1
            if stall >= stall_limit:
                bland = True
        last_obj = obj
    return ITERATION_LIMIT, iters
