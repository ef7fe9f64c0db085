# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: simplex pivoting and batched adjoint representations.

Mirrors `reference.py` decision-for-decision; both backends must stay
interchangeable.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

OPTIMAL, UNBOUNDED, ITERATION_LIMIT = 0, 1, 2

cdef double _TIE_BAND = 1e-9
cdef double _LEX_BAND = 1e-12
cdef double _PROGRESS_EPS = 1e-13


def adjoint_rep_batch(us, lams):
    """O[n, a, b] = Re tr(l_b u_n^+ l_a u_n) / 2 for a batch of unitaries."""
    cdef const double complex[:, :, ::1] u = np.ascontiguousarray(us, dtype=np.complex128)
    cdef const double complex[:, :, ::1] lam = np.ascontiguousarray(lams, dtype=np.complex128)
    cdef Py_ssize_t n = u.shape[0], m = lam.shape[0], d = u.shape[1]
    out_arr = np.empty((n, m, m), dtype=np.float64)
    cdef double[:, :, ::1] out = out_arr
    scratch = np.empty((d, d), dtype=np.complex128)
    cdef double complex[:, ::1] rot = scratch
    cdef Py_ssize_t k, a, b, i, j, p, r
    cdef double complex acc, s

    for k in range(n):
        for a in range(m):
            # rot = u^+ l_a u
            for i in range(d):
                for j in range(d):
                    acc = 0
                    for p in range(d):
                        s = 0
                        for r in range(d):
                            s = s + lam[a, p, r] * u[k, r, j]
                        acc = acc + u[k, p, i].conjugate() * s
                    rot[i, j] = acc
            for b in range(m):
                acc = 0
                for i in range(d):
                    for j in range(d):
                        acc = acc + lam[b, i, j] * rot[j, i]
                out[k, a, b] = 0.5 * acc.real
    return out_arr


def simplex_iterate(double[:, ::1] tab, long long[::1] basis, Py_ssize_t n_enter,
                    double tol, long long stall_limit, long long max_iter):
    """Run simplex pivots in place on a minimization tableau.

    See reference.simplex_iterate for the tableau layout and pivot rules
    (Dantzig entering with a Bland guard; clamped ratio test with
    lexicographic tie-breaking over the identity-block columns).
    Returns (status, iterations).
    """
    cdef Py_ssize_t nrows = tab.shape[0] - 1
    cdef Py_ssize_t ncols = tab.shape[1] - 1
    cdef Py_ssize_t i, j, enter, leave, lex, ncand, ncand_new
    cdef double best_cost, cj, piv, ratio, best, band, key, kbest, f, obj, last_obj, rhs
    cdef bint bland = False
    cdef long long stall = 0, iters = 0

    cand_arr = np.empty(nrows, dtype=np.intp)
    cdef Py_ssize_t[::1] cand = cand_arr

    last_obj = tab[nrows, ncols]
    while iters < max_iter:
        enter = -1
        if bland:
            for j in range(n_enter):
                if tab[nrows, j] < -tol:
                    enter = j
                    break
        else:
            best_cost = -tol
            for j in range(n_enter):
                cj = tab[nrows, j]
                if cj < best_cost:
                    best_cost = cj
                    enter = j
        if enter < 0:
            return OPTIMAL, iters

        # clamped ratio test
        best = 0.0
        ncand = 0
        for i in range(nrows):
            piv = tab[i, enter]
            if piv > tol:
                rhs = tab[i, ncols]
                if rhs < 0.0:
                    rhs = 0.0
                ratio = rhs / piv
                if ncand == 0 or ratio < best:
                    best = ratio
                ncand += 1
        if ncand == 0:
            return UNBOUNDED, iters
        band = best + _TIE_BAND * (1.0 + (best if best > 0 else -best))
        ncand = 0
        for i in range(nrows):
            piv = tab[i, enter]
            if piv > tol:
                rhs = tab[i, ncols]
                if rhs < 0.0:
                    rhs = 0.0
                if rhs / piv <= band:
                    cand[ncand] = i
                    ncand += 1
        # lexicographic narrowing over the identity-block key columns
        for lex in range(n_enter, ncols):
            if ncand == 1:
                break
            kbest = tab[cand[0], lex] / tab[cand[0], enter]
            for j in range(1, ncand):
                key = tab[cand[j], lex] / tab[cand[j], enter]
                if key < kbest:
                    kbest = key
            band = kbest + _LEX_BAND * (1.0 + (kbest if kbest > 0 else -kbest))
            ncand_new = 0
            for j in range(ncand):
                if tab[cand[j], lex] / tab[cand[j], enter] <= band:
                    cand[ncand_new] = cand[j]
                    ncand_new += 1
            ncand = ncand_new
        leave = cand[0]
        for j in range(1, ncand):
            if basis[cand[j]] < basis[leave]:
                leave = cand[j]

        piv = tab[leave, enter]
        for j in range(ncols + 1):
            tab[leave, j] /= piv
        for i in range(nrows + 1):
            if i == leave:
                continue
            f = tab[i, enter]
            if f != 0.0:
                for j in range(ncols + 1):
                    tab[i, j] -= f * tab[leave, j]
        for i in range(nrows + 1):
            tab[i, enter] = 0.0
        tab[leave, enter] = 1.0
        basis[leave] = enter
        iters += 1

        obj = tab[nrows, ncols]
        if obj > last_obj + _PROGRESS_EPS * max(1.0, abs(last_obj)):
            stall = 0
        else:
            stall += 1
            if stall >= stall_limit:
                bland = True
        last_obj = obj
    return ITERATION_LIMIT, iters
