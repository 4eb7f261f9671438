import math

import numpy as np
import pytest

from spinwedge import (
    CapacityError,
    Graph,
    ModelSpec,
    SpinBasisMap,
    WaveState,
    block_hamiltonian,
    complete_graph,
    evolve_block,
    evolve_full_oracle,
    path_graph,
    transfer_fidelity,
)


def _basis_state(dim, i):
    x = np.zeros(dim, dtype=complex)
    x[i] = 1.0
    return x


def test_t0_is_identity():
    g = path_graph(4)
    state = WaveState(2, _basis_state(6, 3))
    out = evolve_block(g, ModelSpec("xy"), state, 0.0)
    assert np.allclose(out.amplitudes, state.amplitudes, atol=1e-12)
    full = _basis_state(16, 5)
    assert np.allclose(evolve_full_oracle(g, ModelSpec("xy"), full, 0.0), full, atol=1e-12)


def test_p2_perfect_transfer_at_half_pi():
    # 2x2 case: U(t) = cos(t) I - i sin(t) X, so |<1|U|0>|^2 = sin^2 t.
    probs = transfer_fidelity(path_graph(2), ModelSpec("xy"), 0, 1, [math.pi / 2])
    assert probs[0] == pytest.approx(1.0, abs=1e-9)


def test_p3_end_to_end_transfer():
    # Eigenphases of A(P_3) realign at t = pi/sqrt(2) with amplitude -1.
    probs = transfer_fidelity(path_graph(3), ModelSpec("xy"), 0, 2, [math.pi / math.sqrt(2)])
    assert probs[0] == pytest.approx(1.0, abs=1e-9)


def test_transfer_t0_off_target_is_zero():
    probs = transfer_fidelity(path_graph(3), ModelSpec("xy"), 0, 2, [0.0])
    assert probs[0] == pytest.approx(0.0, abs=1e-12)


def test_transfer_probabilities_bounded():
    probs = transfer_fidelity(complete_graph(4), ModelSpec("heisenberg", 0.2), 0, 3, [0.3, 1.7, 4.1])
    assert all(0.0 <= p <= 1.0 + 1e-12 for p in probs)


def test_group_property():
    g = complete_graph(4)
    spec = ModelSpec("xy")
    state = WaveState(2, _basis_state(6, 0))
    once = evolve_block(g, spec, evolve_block(g, spec, state, 0.7), 1.6)
    combined = evolve_block(g, spec, state, 2.3)
    assert np.linalg.norm(once.amplitudes - combined.amplitudes) <= 1e-9


@pytest.mark.parametrize("model", ["xy", "heisenberg"])
def test_block_matches_full_oracle_gamma1_p4(model):
    g = path_graph(4)
    spec = ModelSpec(model)
    basis = SpinBasisMap(4, 1)
    state = WaveState(1, _basis_state(4, 2))
    full = np.zeros(16, dtype=complex)
    full[np.array(basis.states)] = state.amplitudes
    evolved_block = evolve_block(g, spec, state, 1.0)
    evolved_full = evolve_full_oracle(g, spec, full, 1.0)
    assert np.linalg.norm(evolved_full[np.array(basis.states)] - evolved_block.amplitudes) <= 1e-9


def test_state_spanning_two_sectors_evolves_per_sector():
    g = path_graph(4)
    spec = ModelSpec("heisenberg")
    b1, b2 = SpinBasisMap(4, 1), SpinBasisMap(4, 2)
    x1 = np.array([0.5, 0.5, 0.5, 0.5], dtype=complex)
    x2 = np.zeros(6, dtype=complex)
    x2[1] = 1.0
    full = np.zeros(16, dtype=complex)
    full[np.array(b1.states)] = x1 / math.sqrt(2)
    full[np.array(b2.states)] = x2 / math.sqrt(2)
    out = evolve_full_oracle(g, spec, full, 2.5)
    block1 = evolve_block(g, spec, WaveState(1, x1), 2.5)
    block2 = evolve_block(g, spec, WaveState(2, x2), 2.5)
    assert np.linalg.norm(out[np.array(b1.states)] - block1.amplitudes / math.sqrt(2)) <= 1e-9
    assert np.linalg.norm(out[np.array(b2.states)] - block2.amplitudes / math.sqrt(2)) <= 1e-9


def test_unitarity_and_energy_conservation():
    g = complete_graph(4)
    spec = ModelSpec("xy", 0.5)
    h = block_hamiltonian(g, 2, spec)
    rng = np.random.default_rng(11)
    z = rng.normal(size=6) + 1j * rng.normal(size=6)
    z /= np.linalg.norm(z)
    state = WaveState(2, z)
    e0 = np.real(np.conj(z) @ (h @ z))
    for t in (0.5, 1.0, 5.0):
        out = evolve_block(g, spec, state, t)
        assert abs(np.linalg.norm(out.amplitudes) - 1.0) <= 1e-10
        et = np.real(np.conj(out.amplitudes) @ (h @ out.amplitudes))
        assert abs(et - e0) <= 1e-9


def test_field_changes_only_global_phase():
    g = path_graph(5)
    state = WaveState(2, _basis_state(10, 4))
    t = 1.3
    plain = evolve_block(g, ModelSpec("xy"), state, t)
    shifted = evolve_block(g, ModelSpec("xy", 0.8), state, t)
    phase = np.exp(-1j * 0.8 * (5 - 2 * 2) * t)
    assert np.linalg.norm(shifted.amplitudes - phase * plain.amplitudes) <= 1e-9
    assert np.allclose(np.abs(shifted.amplitudes) ** 2, np.abs(plain.amplitudes) ** 2, atol=1e-12)


def test_wavestate_rejects_unnormalized():
    with pytest.raises(ValueError):
        WaveState(1, np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        WaveState(1, np.ones((2, 2)))


def test_evolve_block_dimension_check():
    with pytest.raises(ValueError):
        evolve_block(path_graph(4), ModelSpec("xy"), WaveState(1, _basis_state(6, 0)), 1.0)


def test_evolve_rejects_nonfinite_time():
    with pytest.raises(ValueError):
        evolve_block(path_graph(3), ModelSpec("xy"), WaveState(1, _basis_state(3, 0)), math.nan)


def test_full_oracle_capacity_guard():
    with pytest.raises(CapacityError):
        evolve_full_oracle(Graph(11, ()), ModelSpec("xy"), np.zeros(2**11), 1.0)


def test_transfer_vertex_range_check():
    with pytest.raises(ValueError):
        transfer_fidelity(path_graph(3), ModelSpec("xy"), 0, 3, [1.0])
