"""Continuous-time evolution: one excitation sector is one particle hopping.

Propagators are exact spectral exponentials U(t) = V exp(-i t diag) V^T of
the real symmetric sector (or full-space) hamiltonian, so unitarity holds to
solver precision and no time stepping is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import CapacityError, Graph
from .spectra import EigenDecomposition, UNITARITY_TOL, eigh
from .spins import ModelSpec, block_hamiltonian, full_hamiltonian

__all__ = [
    "FULL_EVOLUTION_LIMIT",
    "WaveState",
    "propagate",
    "evolve_block",
    "evolve_full_oracle",
    "transfer_fidelity",
]

FULL_EVOLUTION_LIMIT = 10


@dataclass(frozen=True)
class WaveState:
    """Normalized complex amplitudes over one excitation sector's subsets."""

    k: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1:
            raise ValueError(f"amplitudes must be a vector, got shape {amps.shape}")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > UNITARITY_TOL:
            raise ValueError(f"state norm {norm} is not 1 within {UNITARITY_TOL}")
        object.__setattr__(self, "amplitudes", amps)


def propagate(dec: EigenDecomposition, amplitudes: np.ndarray, t: float) -> np.ndarray:
    """Apply exp(-i t H) given the spectral decomposition of H."""
    if not math.isfinite(t):
        raise ValueError(f"time must be finite, got {t}")
    phases = np.exp(-1j * t * dec.values)
    return dec.vectors @ (phases * (dec.vectors.T @ np.asarray(amplitudes, dtype=complex)))


def evolve_block(g: Graph, spec: ModelSpec, state: WaveState, t: float) -> WaveState:
    """Evolve a sector state for time t under the sector hamiltonian."""
    h = block_hamiltonian(g, state.k, spec)
    if h.shape[0] != state.amplitudes.shape[0]:
        raise ValueError(
            f"state has {state.amplitudes.shape[0]} amplitudes but sector k={state.k} "
            f"of this graph has dimension {h.shape[0]}"
        )
    return WaveState(state.k, propagate(eigh(h), state.amplitudes, t))


def evolve_full_oracle(g: Graph, spec: ModelSpec, full_state: np.ndarray, t: float) -> np.ndarray:
    """Exact evolution on the whole 2^n space; the cross-check for evolve_block."""
    if g.n > FULL_EVOLUTION_LIMIT:
        raise CapacityError(f"full evolution limited to {FULL_EVOLUTION_LIMIT} spins, got {g.n}")
    full_state = np.asarray(full_state, dtype=complex)
    if full_state.shape != (1 << g.n,):
        raise ValueError(f"full state must have length {1 << g.n}, got shape {full_state.shape}")
    return propagate(eigh(full_hamiltonian(g, spec)), full_state, t)


def transfer_fidelity(g: Graph, spec: ModelSpec, from_vertex: int, to_vertex: int, times) -> list[float]:
    """Single-excitation transfer probabilities |<to| U(t) |from>|^2."""
    for v in (from_vertex, to_vertex):
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    dec = eigh(block_hamiltonian(g, 1, spec))
    start = np.zeros(g.n, dtype=complex)
    start[from_vertex] = 1.0
    probs = []
    for t in times:
        amps = propagate(dec, start, t)
        probs.append(float(abs(amps[to_vertex]) ** 2))
    return probs
