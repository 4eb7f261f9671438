"""Combinadic k-subset indexing and the signed wedge power of a graph.

The k-th wedge power of a graph G has one vertex per k-subset of V(G); two
subsets are adjacent when they differ by moving a single element along an
edge of G.  Each such hop carries a sign: the parity of the number of
occupied vertices strictly between the source and destination of the moved
element.  That sign is exactly the matrix element of the antisymmetrized
k-fold coupling of A(G) in the ordered wedge basis, which
:func:`alt_delta_oracle` constructs literally for cross-checking.

Subsets are indexed by their colexicographic combinadic rank, which for
bitmask representations coincides with ascending numeric order of the masks.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .graphs import CapacityError, Graph, export_dot

__all__ = [
    "BLOCK_DIM_LIMIT",
    "TENSOR_DIM_LIMIT",
    "KSubset",
    "WedgeGraph",
    "rank_subset",
    "unrank_subset",
    "subset_name",
    "hop_sign",
    "build_wedge_graph",
    "signed_matrix",
    "wedge_adjacency",
    "wedge_degrees",
    "wedge_laplacian",
    "alt_delta_oracle",
    "wedge_to_json",
    "wedge_to_dot",
]

# Dense per-sector matrices are kept small enough for exact desk-scale work.
BLOCK_DIM_LIMIT = 5000

# The literal tensor-space oracle materializes N^k dimensional operators.
TENSOR_DIM_LIMIT = 10**6


def rank_subset(elements, n: int) -> int:
    """Colexicographic rank of a strictly increasing subset of range(n)."""
    elems = tuple(elements)
    prev = -1
    for e in elems:
        if not isinstance(e, (int, np.integer)):
            raise ValueError(f"subset elements must be integers, got {e!r}")
        if e <= prev:
            raise ValueError(f"subset {elems} is not strictly increasing")
        if not 0 <= e < n:
            raise ValueError(f"element {e} out of range for n={n}")
        prev = e
    return sum(math.comb(int(e), i + 1) for i, e in enumerate(elems))


def unrank_subset(rank: int, n: int, k: int) -> tuple[int, ...]:
    """Inverse of :func:`rank_subset`: the rank-th k-subset in colex order."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    total = math.comb(n, k)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} out of range [0, {total}) for C({n},{k})")
    out = [0] * k
    r = rank
    e = n - 1
    for i in range(k, 0, -1):
        while math.comb(e, i) > r:
            e -= 1
        out[i - 1] = e
        r -= math.comb(e, i)
        e -= 1
    return tuple(out)


@dataclass(frozen=True)
class KSubset:
    """A k-subset together with its colex combinadic rank."""

    elements: tuple[int, ...]
    rank: int

    @classmethod
    def from_elements(cls, elements, n: int) -> "KSubset":
        elems = tuple(int(e) for e in elements)
        return cls(elems, rank_subset(elems, n))

    @classmethod
    def from_rank(cls, rank: int, n: int, k: int) -> "KSubset":
        return cls(unrank_subset(rank, n, k), rank)


def subset_name(elements) -> str:
    """Concatenated-label vertex name, e.g. (0, 2, 4) -> "024".

    Labels wider than one digit are dot-separated to stay unambiguous.
    """
    elems = tuple(elements)
    if any(e >= 10 for e in elems):
        return ".".join(str(e) for e in elems)
    return "".join(str(e) for e in elems)


def hop_sign(subset, src: int, dst: int) -> int:
    """Sign of moving occupied src to empty dst with the rest of subset fixed.

    Equals the parity of the re-sorting permutation: -1 raised to the number
    of occupied vertices strictly between src and dst.
    """
    lo, hi = (src, dst) if src < dst else (dst, src)
    crossed = sum(1 for x in subset if lo < x < hi)
    return -1 if crossed & 1 else 1


@dataclass(frozen=True)
class WedgeGraph:
    """The k-th wedge power of a base graph, with signed hop edges.

    ``signed_edges`` holds (a, b, sign) with a < b combinadic ranks; each
    entry corresponds to exactly one base-graph edge traversal.
    """

    base: Graph
    k: int
    num_vertices: int
    signed_edges: tuple[tuple[int, int, int], ...]

    def skeleton(self) -> Graph:
        """Unsigned graph on the subset ranks."""
        return Graph(self.num_vertices, tuple((a, b) for a, b, _ in self.signed_edges))

    def vertex_subset(self, rank: int) -> tuple[int, ...]:
        return unrank_subset(rank, self.base.n, self.k)

    def vertex_names(self) -> list[str]:
        return [subset_name(self.vertex_subset(r)) for r in range(self.num_vertices)]

    def negative_edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b, s in self.signed_edges if s < 0]


def build_wedge_graph(g: Graph, k: int) -> WedgeGraph:
    """Enumerate the k-subset vertices and all signed single-element hops.

    Cost O(C(n,k) * |E| * k).  k=0 gives the one-vertex edgeless graph, k=1
    reproduces g itself with every sign +1.
    """
    n = g.n
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= {n}, got k={k}")
    m = math.comb(n, k)
    if m > BLOCK_DIM_LIMIT:
        raise CapacityError(
            f"wedge power has C({n},{k})={m} vertices, limit {BLOCK_DIM_LIMIT}"
        )
    edges = []
    for a in range(m):
        subset = unrank_subset(a, n, k)
        occupied = 0
        for e in subset:
            occupied |= 1 << e
        for u, v in g.edges:
            for src, dst in ((u, v), (v, u)):
                if occupied >> src & 1 and not occupied >> dst & 1:
                    target = tuple(sorted(subset[: subset.index(src)] + subset[subset.index(src) + 1 :] + (dst,)))
                    b = rank_subset(target, n)
                    if a < b:
                        edges.append((a, b, hop_sign(subset, src, dst)))
    edges.sort()
    return WedgeGraph(g, k, m, tuple(edges))


def signed_matrix(w: WedgeGraph) -> np.ndarray:
    """Matrix of the antisymmetrized hops: entries in {-1, 0, +1}."""
    c = np.zeros((w.num_vertices, w.num_vertices))
    for a, b, s in w.signed_edges:
        c[a, b] = s
        c[b, a] = s
    return c


def wedge_adjacency(w: WedgeGraph) -> np.ndarray:
    """Plain adjacency of the wedge power: absolute value of the signed matrix."""
    return np.abs(signed_matrix(w))


def wedge_degrees(w: WedgeGraph) -> np.ndarray:
    """Legal single-element moves out of each subset."""
    d = np.zeros(w.num_vertices)
    for a, b, _ in w.signed_edges:
        d[a] += 1.0
        d[b] += 1.0
    return d


def wedge_laplacian(w: WedgeGraph) -> np.ndarray:
    return np.diag(wedge_degrees(w)) - wedge_adjacency(w)


def _tuple_indices(n: int, k: int, dim: int) -> np.ndarray:
    """Little-endian digit index of the sorted tuple of every k-subset rank."""
    idx = np.empty(math.comb(n, k), dtype=np.int64)
    for r in range(idx.size):
        t = unrank_subset(r, n, k)
        idx[r] = sum(t[j] * n**j for j in range(k))
    return idx


def alt_delta_oracle(g: Graph, k: int) -> np.ndarray:
    """Literal tensor-space construction of the signed wedge matrix.

    Builds the k-fold one-particle coupling of A(G) on the full n^k tensor
    space, conjugates it with the explicit antisymmetrization projector (the
    signed sum over all k! factor permutations), and compresses to the
    ordered-subset basis.  All arithmetic is exact in int64; the compression
    rescales so that matrix entries come out as integers.

    Intended as an independent oracle for :func:`signed_matrix`; guarded to
    n^k <= TENSOR_DIM_LIMIT.
    """
    n = g.n
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= {n}, got k={k}")
    if k == 0:
        return np.zeros((1, 1))
    dim = n**k
    if dim > TENSOR_DIM_LIMIT:
        raise CapacityError(f"tensor space n^k = {dim} exceeds limit {TENSOR_DIM_LIMIT}")
    m = math.comb(n, k)
    if m > BLOCK_DIM_LIMIT:
        raise CapacityError(f"compressed matrix C({n},{k})={m} exceeds limit {BLOCK_DIM_LIMIT}")

    a = sp.lil_matrix((n, n), dtype=np.int64)
    for u, v in g.edges:
        a[u, v] = 1
        a[v, u] = 1
    a = a.tocsr()

    # Coupling: sum over factor positions of I x .. x A x .. x I.
    delta = sp.csr_matrix((dim, dim), dtype=np.int64)
    for j in range(k):
        term = sp.identity(n**j, dtype=np.int64, format="csr")
        term = sp.kron(sp.kron(sp.identity(n ** (k - 1 - j), dtype=np.int64, format="csr"), a), term, format="csr")
        delta = delta + term

    # Unnormalized projector: sum over permutations pi of sign(pi) * P_pi,
    # where P_pi sends the basis tuple t to (t[pi(0)], ..., t[pi(k-1)]).
    cols = np.arange(dim, dtype=np.int64)
    digits = [(cols // n**j) % n for j in range(k)]
    rows_all, vals_all = [], []
    for perm in itertools.permutations(range(k)):
        sign = _perm_sign(perm)
        rows = sum(digits[perm[j]] * n**j for j in range(k))
        rows_all.append(rows)
        vals_all.append(np.full(dim, sign, dtype=np.int64))
    alt_un = sp.coo_matrix(
        (np.concatenate(vals_all), (np.concatenate(rows_all), np.tile(cols, math.factorial(k)))),
        shape=(dim, dim),
    ).tocsr()

    conjugated = alt_un @ delta @ alt_un  # k!^2 times Alt Delta Alt, exactly
    idx = _tuple_indices(n, k, dim)
    sub = conjugated[idx][:, idx].toarray()
    fact = math.factorial(k)
    q, rem = np.divmod(sub, fact)
    if np.any(rem):
        raise RuntimeError("antisymmetrized matrix entries are not integral; projector construction is broken")
    return q.astype(float)


def _perm_sign(perm) -> int:
    inversions = sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )
    return -1 if inversions & 1 else 1


def wedge_to_json(w: WedgeGraph) -> str:
    """Graph JSON on subset ranks plus a "signs" map for the negative edges."""
    signs = {f"{a}-{b}": -1 for a, b in w.negative_edges()}
    return json.dumps(
        {
            "n": w.num_vertices,
            "edges": [[a, b] for a, b, _ in w.signed_edges],
            "signs": signs,
        }
    )


def wedge_to_dot(w: WedgeGraph) -> str:
    """DOT drawing with concatenated-label vertex names and -1 edge labels."""
    labels = {(a, b): "-1" for a, b in w.negative_edges()}
    return export_dot(w.skeleton(), w.vertex_names(), edge_labels=labels)
