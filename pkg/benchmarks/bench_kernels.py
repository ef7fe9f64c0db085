"""Benchmark the compiled kernels against the pure-numpy fallback.

Usage:  python benchmarks/bench_kernels.py [--quick]

Two workloads, mirroring where the package spends its time:

* adjoint  -- batched orthogonal representations O(u) for a batch of
              random SU(3) unitaries (the enumeration / effective-C kernel);
* simplex  -- phase-1 + phase-2 pivoting on the anisotropic-mapping LP
              built from a real composite set (Ising -> target_A).
"""

import argparse
import time

import numpy as np

import quditpulse as qp
from quditpulse._kernels import reference
from quditpulse.cmatrix import pack_symmetric, perp_projector, split_iso_aniso
from quditpulse.synthesis import _dedup_columns, rotated_columns

try:
    from quditpulse._kernels import _native
except ImportError:
    _native = None


def _time(fn, repeats=3):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_adjoint(n_batch: int):
    basis = qp.build_basis(3)
    rng = np.random.default_rng(0)
    a = rng.normal(size=(n_batch, 3, 3)) + 1j * rng.normal(size=(n_batch, 3, 3))
    us = np.linalg.qr(a)[0]
    rows = []
    t_ref = _time(lambda: reference.adjoint_rep_batch(us, basis.lambdas))
    rows.append(("reference", t_ref))
    if _native is not None:
        t_nat = _time(lambda: _native.adjoint_rep_batch(us, basis.lambdas))
        rows.append(("native", t_nat))
        err = np.abs(_native.adjoint_rep_batch(us[:64], basis.lambdas)
                     - reference.adjoint_rep_batch(us[:64], basis.lambdas)).max()
        assert err < 1e-12, f"backend mismatch: {err}"
    return rows


def _mapping_tableau(depth: int):
    comps = qp.enumerate_composites(qp.spin1_elementary_pulses(), max_depth=depth)
    c0 = split_iso_aniso(qp.preset("ising_z_spin1")).aniso
    cf = split_iso_aniso(qp.preset("target_A")).aniso
    cols = rotated_columns(comps, c0.entries)
    cols = cols[_dedup_columns(cols)]
    wf = pack_symmetric(cf.entries)
    a = np.vstack([perp_projector(wf) @ cols.T, np.ones(len(cols))])
    b = np.zeros(a.shape[0])
    b[-1] = 1.0
    return cols @ wf, a, b


def bench_simplex(depth: int):
    c, a, b = _mapping_tableau(depth)
    # assemble the extended phase-1 tableau once; each run pivots a fresh copy
    norms = np.abs(a).max(axis=1)
    keep = norms > 1e-13
    a, b, norms = a[keep], b[keep], norms[keep]
    a = a / norms[:, None]
    b = b / norms
    r, n = a.shape[0], a.shape[1]
    tab0 = np.zeros((r + 1, n + r + 1))
    tab0[:r, :n] = a
    tab0[:r, n:n + r] = np.eye(r)
    tab0[:r, -1] = b
    tab0[-1, :n] = -a.sum(axis=0)
    tab0[-1, -1] = -b.sum()

    def run(kernel):
        tab = tab0.copy()
        basis = np.arange(n, n + r, dtype=np.int64)
        status, iters = kernel(tab, basis, n, 1e-9, 512, 500_000)
        assert status == 0
        return iters

    rows = [("reference", _time(lambda: run(reference.simplex_iterate), repeats=2))]
    if _native is not None:
        rows.append(("native", _time(lambda: run(_native.simplex_iterate), repeats=2)))
        assert run(reference.simplex_iterate) == run(_native.simplex_iterate)
    return rows, a.shape, run(reference.simplex_iterate)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true",
                        help="smaller workloads (depth 3, 20k batch)")
    args = parser.parse_args()
    n_batch = 20_000 if args.quick else 100_000
    depth = 3 if args.quick else 4

    if _native is None:
        print("note: compiled kernels not built; timing the fallback only\n")

    print(f"adjoint_rep_batch: {n_batch} random SU(3) unitaries, m = 8")
    rows = bench_adjoint(n_batch)
    base = rows[0][1]
    for name, t in rows:
        print(f"  {name:>9}: {t * 1e3:8.1f} ms   ({base / t:4.1f}x vs reference)")

    print(f"\nsimplex_iterate: anisotropic-mapping LP, composite depth {depth}")
    rows, shape, iters = bench_simplex(depth)
    print(f"  tableau {shape[0] + 1} x {shape[1] + shape[0] + 1}, "
          f"{iters} phase-1 pivots")
    base = rows[0][1]
    for name, t in rows:
        print(f"  {name:>9}: {t * 1e3:8.1f} ms   ({base / t:4.1f}x vs reference)")


if __name__ == "__main__":
    main()
