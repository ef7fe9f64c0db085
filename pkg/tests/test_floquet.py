import numpy as np
import pytest
import scipy.linalg

import quditpulse as qp
from quditpulse.errors import ResourceLimitError
from quditpulse.linalg import dagger, equal_up_to_phase, kron_power

from conftest import random_interaction, random_sequence


def ising_spec(n, seed=0, J=1.0, cap=4096):
    h = qp.to_interaction(qp.preset("ising_z_spin1"), qp.build_basis(3))
    return qp.EnsembleSpec(N=n, d=3, couplings=qp.random_couplings(n, J, seed),
                           interaction=h, cap=cap)


def test_random_couplings_contract():
    j1 = qp.random_couplings(6, 1.0, 42)
    j2 = qp.random_couplings(6, 1.0, 42)
    assert np.array_equal(j1, j2)
    assert np.abs(j1 - j1.T).max() == 0.0
    assert np.abs(np.diagonal(j1)).max() == 0.0
    assert np.abs(j1).max() <= 1.0
    assert not np.array_equal(j1, qp.random_couplings(6, 1.0, 43))


def test_random_couplings_mean():
    # ~1.1e4 i.i.d. entries; the sample mean should sit within 3 sigma of 0
    j = qp.random_couplings(150, 1.0, 7)
    vals = j[np.triu_indices(150, 1)]
    sigma = 1.0 / np.sqrt(3 * len(vals))
    assert abs(vals.mean()) < 3 * sigma


def test_build_hamiltonian_two_sites():
    spec = ising_spec(2, seed=1)
    ham = qp.build_hamiltonian(spec)
    sz = np.diag([1.0, 0.0, -1.0])
    expected = spec.couplings[0, 1] * np.kron(sz, sz)
    assert np.abs(ham - expected).max() < 1e-12


def test_build_hamiltonian_zero_couplings():
    h = qp.to_interaction(qp.preset("target_B"), qp.build_basis(3))
    spec = qp.EnsembleSpec(N=3, d=3, couplings=np.zeros((3, 3)), interaction=h)
    assert np.abs(qp.build_hamiltonian(spec)).max() == 0.0


def test_build_hamiltonian_matches_kron_chain_oracle(basis3):
    """Independent oracle: embed via explicit kron chains over the C expansion."""
    rng = np.random.default_rng(9)
    h = random_interaction(3, rng)
    n = 3
    couplings = qp.random_couplings(n, 1.0, 5)
    spec = qp.EnsembleSpec(N=n, d=3, couplings=couplings, interaction=h)
    ham = qp.build_hamiltonian(spec)

    c = qp.c_matrix(h, basis3).entries
    oracle = np.zeros((27, 27), dtype=complex)
    for i in range(n):
        for j in range(i + 1, n):
            for mu in range(8):
                for nu in range(8):
                    if c[mu, nu] == 0.0:
                        continue
                    ops = [np.eye(3, dtype=complex)] * n
                    ops[i] = basis3.lambdas[mu]
                    ops[j] = basis3.lambdas[nu]
                    term = ops[0]
                    for op in ops[1:]:
                        term = np.kron(term, op)
                    oracle += couplings[i, j] * c[mu, nu] * term
    assert np.abs(ham - oracle).max() < 1e-9


def test_dimension_cap():
    with pytest.raises(ResourceLimitError):
        ising_spec(8)  # 3^8 = 6561 > 4096
    ising_spec(8, cap=10000)  # explicit override allowed


def test_floquet_identity_sequence():
    spec = ising_spec(2, seed=3)
    ham = qp.build_hamiltonian(spec)
    fu = qp.floquet_unitary(ham, qp.identity_sequence(3), T=0.7)
    expected = scipy.linalg.expm(-1j * ham * 0.7)
    assert np.abs(fu.U_T - expected).max() < 1e-9


def test_floquet_zero_hamiltonian_closure():
    rng = np.random.default_rng(21)
    seq = random_sequence(3, 4, rng)
    fu = qp.floquet_unitary(np.zeros((9, 9), dtype=complex), seq, T=1.0)
    assert equal_up_to_phase(fu.U_T, np.eye(9), 1e-9)


def test_floquet_unitarity_and_toggling_equivalence():
    rng = np.random.default_rng(33)
    spec = ising_spec(2, seed=11)
    ham = qp.build_hamiltonian(spec)
    seq = random_sequence(3, 4, rng)
    T = 0.37
    fu = qp.floquet_unitary(ham, seq, T)
    assert np.abs(dagger(fu.U_T) @ fu.U_T - np.eye(9)).max() < 1e-8
    # toggling-frame product with Hbar_i = U_i^+ H U_i
    expected = np.eye(9, dtype=complex)
    for u, w in zip(seq.frames, seq.weights):
        big = kron_power(u, 2)
        hbar = dagger(big) @ ham @ big
        expected = scipy.linalg.expm(-1j * hbar * (w * T)) @ expected
    assert np.abs(fu.U_T - expected).max() < 1e-8


def test_fidelity_identity_and_bounds():
    fu = qp.FloquetUnitary(U_T=np.eye(16, dtype=complex), period_T=1.0)
    tr = qp.fidelity_trace(fu, 10)
    assert np.abs(tr.values - 1.0).max() < 1e-12
    phases = np.exp(2j * np.pi * np.arange(16) / 16)
    fu = qp.FloquetUnitary(U_T=np.diag(phases), period_T=1.0)
    tr = qp.fidelity_trace(fu, 50)
    assert tr.values[0] == 1.0
    assert tr.values.min() >= 0.0 and tr.values.max() <= 1.0
    assert tr.values[1] < 1e-12  # uniformly spread phases cancel exactly


def test_magnus0_identity_and_two_frames():
    spec = ising_spec(2, seed=2)
    ham = qp.build_hamiltonian(spec)
    assert np.abs(qp.magnus0(ham, qp.identity_sequence(3)) - ham).max() < 1e-12
    rng = np.random.default_rng(8)
    u = random_sequence(3, 1, rng).frames[0]
    seq = qp.PulseSequence(d=3, frames=np.array([np.eye(3, dtype=complex), u]),
                           weights=np.array([0.4, 0.6]))
    u2 = kron_power(u, 2)
    expected = 0.4 * ham + 0.6 * (dagger(u2) @ ham @ u2)
    assert np.abs(qp.magnus0(ham, seq) - expected).max() < 1e-10


def test_magnus0_consistent_with_effective_c(basis3):
    rng = np.random.default_rng(14)
    h = random_interaction(3, rng)
    c = qp.c_matrix(h, basis3)
    seq = random_sequence(3, 4, rng)
    spec = qp.EnsembleSpec(N=2, d=3, couplings=np.array([[0.0, 1.0], [1.0, 0.0]]),
                           interaction=h)
    ham = qp.build_hamiltonian(spec)
    lhs = qp.magnus0(ham, seq)
    rhs = qp.to_interaction(qp.effective_c(seq, c), basis3).h
    assert np.abs(lhs - rhs).max() < 1e-9


def test_magnus0_dipolar_sequence_zero():
    h = qp.to_interaction(qp.preset("spin1_dipolar_secular"), qp.build_basis(3))
    spec = qp.EnsembleSpec(N=2, d=3, couplings=np.array([[0.0, 1.0], [1.0, 0.0]]),
                           interaction=h)
    ham = qp.build_hamiltonian(spec)
    assert np.abs(qp.magnus0(ham, qp.dipolar_decoupling_sequence())).max() < 1e-9


def test_magnus1_identity_frames_zero():
    spec = ising_spec(2, seed=4)
    ham = qp.build_hamiltonian(spec)
    seq = qp.PulseSequence(d=3, frames=np.array([np.eye(3, dtype=complex)] * 3),
                           weights=np.full(3, 1 / 3))
    assert np.abs(qp.magnus1(ham, seq)).max() < 1e-12


def test_magnus1_two_frame_formula():
    rng = np.random.default_rng(26)
    spec = ising_spec(2, seed=6)
    ham = qp.build_hamiltonian(spec)
    u = random_sequence(3, 1, rng).frames[0]
    seq = qp.PulseSequence(d=3, frames=np.array([np.eye(3, dtype=complex), u]),
                           weights=np.array([0.35, 0.65]), period_T=0.8)
    taus = seq.weights * seq.period_T
    u2 = kron_power(u, 2)
    h1 = taus[0] * ham
    h2 = taus[1] * (dagger(u2) @ ham @ u2)
    expected = -0.5j / seq.period_T * (h2 @ h1 - h1 @ h2)
    assert np.abs(qp.magnus1(ham, seq) - expected).max() < 1e-10


def test_magnus1_symmetrized_vanishes():
    rng = np.random.default_rng(30)
    spec = ising_spec(2, seed=9)
    ham = qp.build_hamiltonian(spec)
    seq = random_sequence(3, 4, rng)
    assert np.abs(qp.magnus1(ham, qp.symmetrize(seq))).max() < 1e-9
    assert np.abs(qp.magnus1(ham, seq)).max() > 1e-6  # generically nonzero


def test_magnus_log_consistency():
    """(i/T) log U(T) - H0 - H1 shrinks ~T^2 (checked via a factor-of-10 sweep)."""
    rng = np.random.default_rng(55)
    h = random_interaction(3, rng)
    spec = qp.EnsembleSpec(N=2, d=3, couplings=np.array([[0.0, 1.0], [1.0, 0.0]]),
                           interaction=h)
    ham = qp.build_hamiltonian(spec)
    seq = random_sequence(3, 3, rng)
    errs = []
    for T in (1e-2, 1e-3):
        seq_t = qp.PulseSequence(d=3, frames=seq.frames, weights=seq.weights, period_T=T)
        fu = qp.floquet_unitary(ham, seq_t, T)
        heff = (1j / T) * scipy.linalg.logm(fu.U_T)
        err = np.abs(heff - qp.magnus0(ham, seq_t) - qp.magnus1(ham, seq_t)).max()
        errs.append(err)
    assert errs[1] < errs[0] / 50.0


def test_fast_driving_limit():
    # 1/JT = 100: the decoupled evolution stays essentially frozen to 10/J
    h = qp.to_interaction(qp.preset("spin1_dipolar_secular"), qp.build_basis(3))
    spec = qp.EnsembleSpec(N=4, d=3, couplings=qp.random_couplings(4, 1.0, 3),
                           interaction=h)
    bench = qp.benchmark_decoupling(spec, qp.dipolar_decoupling_sequence(), [0.01], n_max=1000)
    assert bench.traces[0].values.min() > 0.99


def test_benchmark_decoupling_smoke():
    spec = ising_spec(3, seed=13)
    seq = qp.dipolar_decoupling_sequence()
    bench = qp.benchmark_decoupling(spec, seq, [0.2, 0.1], n_max=20)
    assert len(bench.traces) == 2
    assert all(tr.values[0] == 1.0 for tr in bench.traces)
    assert bench.baseline.values[0] == 1.0
    assert len(bench.baseline.times) >= len(bench.traces[0].times)
    sym = qp.benchmark_decoupling(spec, seq, [0.2], n_max=10, symmetrized=True)
    assert abs(sym.traces[0].times[1] - 0.4) < 1e-12  # cycle spans 2T
