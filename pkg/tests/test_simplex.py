import itertools

import numpy as np
import pytest

import quditpulse as qp
from quditpulse.simplex import LinearProgram, solve_lp


def vertex_enumeration_optimum(c, a, b, tol=1e-9):
    """Brute-force oracle: best objective over all basic feasible solutions."""
    k, n = a.shape
    best = None
    for cols in itertools.combinations(range(n), k):
        sub = a[:, cols]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        x_b = np.linalg.solve(sub, b)
        if x_b.min() < -tol:
            continue
        x = np.zeros(n)
        x[list(cols)] = x_b
        val = c @ x
        if best is None or val > best:
            best = val
    return best


def random_feasible_lp(rng, n, k):
    """Random bounded-feasible LP: b is built from an interior point and a
    normalization row keeps the polytope bounded."""
    a = rng.normal(size=(k - 1, n))
    a = np.vstack([a, np.ones(n)])
    x0 = rng.dirichlet(np.ones(n)) * rng.uniform(0.5, 2.0)
    b = a @ x0
    c = rng.normal(size=n)
    return c, a, b


def test_trivial_max():
    lp = LinearProgram(objective=[1.0, 0.0], A_eq=[[1.0, 1.0]], b_eq=[1.0])
    res = solve_lp(lp)
    assert res.status == "optimal"
    assert np.abs(res.x - [1.0, 0.0]).max() < 1e-12
    assert abs(res.objective_value - 1.0) < 1e-12


def test_redundant_rows_are_reduced():
    a = np.array([[1.0, 1.0, 0.0], [2.0, 2.0, 0.0], [0.0, 0.0, 1.0]])
    b = np.array([1.0, 2.0, 0.5])
    res = solve_lp(LinearProgram(objective=[0.0, 1.0, 0.0], A_eq=a, b_eq=b))
    assert res.status == "optimal"
    assert abs(res.objective_value - 1.0) < 1e-10
    assert np.abs(a @ res.x - b).max() < 1e-9


def test_inconsistent_rows_infeasible():
    a = np.array([[1.0, 1.0], [1.0, 1.0]])
    res = solve_lp(LinearProgram(objective=[0.0, 0.0], A_eq=a, b_eq=[1.0, 2.0]))
    assert res.status == "infeasible"


def test_sign_infeasible():
    # x1 + x2 = -1 has no nonnegative solution
    res = solve_lp(LinearProgram(objective=[0.0, 0.0], A_eq=[[1.0, 1.0]], b_eq=[-1.0]))
    assert res.status == "infeasible"
    assert res.infeasibility > 0.5


def test_unbounded():
    res = solve_lp(LinearProgram(objective=[1.0, 0.0], A_eq=[[1.0, -1.0]], b_eq=[1.0]))
    assert res.status == "unbounded"


def test_zero_objective_feasibility_only():
    lp = LinearProgram(objective=[0.0, 0.0, 0.0],
                       A_eq=[[1.0, -1.0, 0.0], [1.0, 1.0, 1.0]], b_eq=[0.0, 1.0])
    res = solve_lp(lp)
    assert res.status == "optimal"
    assert res.x.min() >= -1e-12
    assert abs(res.x.sum() - 1.0) < 1e-9


@pytest.mark.parametrize("seed", range(10))
def test_random_lps_match_vertex_oracle(seed):
    rng = np.random.default_rng(1000 + seed)
    n = int(rng.integers(4, 13))
    k = int(rng.integers(2, min(n, 7)))
    c, a, b = random_feasible_lp(rng, n, k)
    res = solve_lp(LinearProgram(objective=c, A_eq=a, b_eq=b))
    assert res.status == "optimal"
    oracle = vertex_enumeration_optimum(c, a, b)
    assert oracle is not None
    assert abs(res.objective_value - oracle) < 1e-9
    assert np.abs(a @ res.x - b).max() < 1e-8


def test_degenerate_rhs_terminates():
    # highly degenerate: most rhs entries zero, as in the synthesis LPs
    rng = np.random.default_rng(7)
    n, k = 60, 8
    a = rng.normal(size=(k - 1, n))
    a = np.vstack([a, np.ones(n)])
    b = np.zeros(k)
    b[-1] = 1.0
    # make it feasible: force the first k columns to admit a solution
    x0 = np.zeros(n)
    x0[:3] = (1 / 3, 1 / 3, 1 / 3)
    a[:-1, 2] = -a[:-1, :2].sum(axis=1) / x0[2] * x0[0]
    b = a @ x0
    res = solve_lp(LinearProgram(objective=rng.normal(size=n), A_eq=a, b_eq=b))
    assert res.status == "optimal"


def test_backend_parity():
    from quditpulse._kernels import BACKEND, reference, simplex_iterate
    if BACKEND != "native":
        pytest.skip("compiled kernels unavailable")
    rng = np.random.default_rng(5)
    for _ in range(20):
        n = int(rng.integers(4, 16))
        k = int(rng.integers(2, 6))
        c, a, b = random_feasible_lp(rng, n, k)
        tab = np.zeros((k + 1, n + k + 1))
        tab[:k, :n] = a
        tab[:k, n:n + k] = np.eye(k)
        tab[:k, -1] = b
        tab[-1, :n] = -a.sum(axis=0)
        tab[-1, -1] = -b.sum()
        basis = np.arange(n, n + k, dtype=np.int64)
        tab2, basis2 = tab.copy(), basis.copy()
        s1, i1 = simplex_iterate(tab, basis, n, 1e-9, 512, 10000)
        s2, i2 = reference.simplex_iterate(tab2, basis2, n, 1e-9, 512, 10000)
        assert (s1, i1) == (s2, i2)
        assert np.array_equal(basis, basis2)
        assert np.abs(tab - tab2).max() < 1e-12
