"""XY and Heisenberg hamiltonians on a graph: full-space oracle and sectors.

Computational-basis convention: bit v of a basis index is 1 when the spin at
vertex v is flipped, carrying z-projection -1, so the total-z operator is
diagonal with value n - 2 * popcount.  A uniform field B adds B*(n - 2k) to
every eigenvalue of the k-excitation sector and leaves eigenvectors alone.

Per edge and per basis state, the XY interaction hops a single flipped spin
along the edge with amplitude +1 when the far end is unflipped; Heisenberg
additionally counts the legal hops on the diagonal, which is exactly degree
minus adjacency of the wedge power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import CapacityError, Graph
from .spectra import Spectrum
from .wedge import build_wedge_graph, unrank_subset, wedge_adjacency, wedge_laplacian

__all__ = [
    "FULL_SPIN_LIMIT",
    "ModelSpec",
    "SpinBasisMap",
    "full_hamiltonian",
    "block_hamiltonian",
    "block_matvec",
    "project_full_to_blocks",
]

# Full-space work is dense 2^n x 2^n; fail fast beyond desk scale.
FULL_SPIN_LIMIT = 14

_MODELS = ("xy", "heisenberg")


@dataclass(frozen=True)
class ModelSpec:
    """Which pairwise interaction, plus the uniform z-field coefficient."""

    model: str
    field_b: float = 0.0

    def __post_init__(self) -> None:
        m = self.model.lower()
        if m == "heis":
            m = "heisenberg"
        if m not in _MODELS:
            raise ValueError(f"unknown model {self.model!r}, expected one of {_MODELS}")
        object.__setattr__(self, "model", m)
        if not math.isfinite(self.field_b):
            raise ValueError(f"field coefficient must be finite, got {self.field_b}")

    @property
    def is_xy(self) -> bool:
        return self.model == "xy"


class SpinBasisMap:
    """Bijection between combinadic ranks of k-subsets and weight-k bitstrings.

    Bit b of ``to_state(r)`` is set iff vertex b belongs to the rank-r subset.
    Colex rank order coincides with ascending numeric order of the masks.
    """

    def __init__(self, n: int, k: int):
        if not 0 <= k <= n:
            raise ValueError(f"need 0 <= k <= {n}, got k={k}")
        self.n = n
        self.k = k
        states = []
        for r in range(math.comb(n, k)):
            mask = 0
            for v in unrank_subset(r, n, k):
                mask |= 1 << v
            states.append(mask)
        self.states = tuple(states)
        self._ranks = {s: r for r, s in enumerate(states)}

    def __len__(self) -> int:
        return len(self.states)

    def to_state(self, rank: int) -> int:
        return self.states[rank]

    def to_rank(self, state: int) -> int:
        try:
            return self._ranks[state]
        except KeyError:
            raise ValueError(f"state {state:#b} does not have weight {self.k}") from None


def _check_full_capacity(n: int) -> None:
    if n > FULL_SPIN_LIMIT:
        raise CapacityError(f"full hamiltonian limited to {FULL_SPIN_LIMIT} spins, got {n}")


def full_hamiltonian(g: Graph, spec: ModelSpec) -> np.ndarray:
    """Dense 2^n hamiltonian in the computational basis (the brute-force oracle)."""
    n = g.n
    _check_full_capacity(n)
    dim = 1 << n
    h = np.zeros((dim, dim))
    s = np.arange(dim)
    for u, v in g.edges:
        differ = ((s >> u) & 1) != ((s >> v) & 1)
        src = s[differ]
        dst = src ^ ((1 << u) | (1 << v))
        if spec.is_xy:
            h[dst, src] += 1.0
        else:
            h[src, src] += 1.0
            h[dst, src] -= 1.0
    if spec.field_b != 0.0:
        pop = np.array([int(x).bit_count() for x in range(dim)])
        h[s, s] += spec.field_b * (n - 2 * pop)
    return h


def block_hamiltonian(g: Graph, k: int, spec: ModelSpec) -> np.ndarray:
    """The k-excitation sector: wedge adjacency (XY) or laplacian (Heisenberg),
    shifted by the sector field energy B*(n - 2k)."""
    w = build_wedge_graph(g, k)
    h = wedge_adjacency(w) if spec.is_xy else wedge_laplacian(w)
    if spec.field_b != 0.0:
        h = h + spec.field_b * (g.n - 2 * k) * np.eye(w.num_vertices)
    return h


def block_matvec(g: Graph, k: int, spec: ModelSpec, x: np.ndarray) -> np.ndarray:
    """Apply the k-sector hamiltonian by bitwise hop enumeration.

    Matrix-free counterpart of :func:`block_hamiltonian`; never materializes
    the matrix.
    """
    basis = SpinBasisMap(g.n, k)
    x = np.asarray(x)
    if x.shape != (len(basis),):
        raise ValueError(f"state vector must have length {len(basis)}, got shape {x.shape}")
    y = np.zeros(len(basis), dtype=np.result_type(x.dtype, float))
    for a, s in enumerate(basis.states):
        xa = x[a]
        if xa == 0:
            continue
        for u, v in g.edges:
            if ((s >> u) & 1) != ((s >> v) & 1):
                b = basis.to_rank(s ^ ((1 << u) | (1 << v)))
                if spec.is_xy:
                    y[b] += xa
                else:
                    y[a] += xa
                    y[b] -= xa
    if spec.field_b != 0.0:
        y += spec.field_b * (g.n - 2 * k) * x
    return y


def project_full_to_blocks(g: Graph, spec: ModelSpec) -> list[Spectrum]:
    """Permute the full hamiltonian into excitation blocks and diagonalize each.

    Raises RuntimeError if any entry couples different excitation numbers;
    a nonzero there would mean the interaction fails to conserve total z-spin.
    """
    n = g.n
    _check_full_capacity(n)
    h = full_hamiltonian(g, spec)
    maps = [SpinBasisMap(n, k) for k in range(n + 1)]
    order = np.array([s for m in maps for s in m.states])
    permuted = h[np.ix_(order, order)]
    spectra: list[Spectrum] = []
    offset = 0
    sizes = [len(m) for m in maps]
    for k, size in enumerate(sizes):
        sl = slice(offset, offset + size)
        block = permuted[sl, sl]
        off_rows = np.concatenate([permuted[sl, : offset].ravel(), permuted[sl, offset + size :].ravel()])
        if off_rows.size and np.any(off_rows != 0.0):
            raise RuntimeError(
                f"nonzero coupling between excitation sector {k} and the rest; "
                "total z-spin conservation is broken"
            )
        spectra.append(Spectrum(tuple(np.linalg.eigvalsh(block))))
        offset += size
    return spectra
