"""Labelled simple graphs: families, matrices, serialization, isomorphism search.

Vertices are identified with their labels 0..n-1; the integer order on labels
is the total vertex order used everywhere else in the package (subset sorting,
hop signs).  Matrices are plain dense ``numpy`` arrays, constructed exactly
symmetric.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass

import numpy as np

__all__ = [
    "CapacityError",
    "Graph",
    "graph_from_edge_list",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "erdos_renyi_graph",
    "adjacency",
    "degree_matrix",
    "laplacian",
    "connected_components",
    "find_isomorphism",
    "export_dot",
    "graph_to_json",
    "graph_from_json",
]

# Isomorphism search is intended for small graphs only (invariant screening
# plus backtracking, no canonical labelling).
ISOMORPHISM_VERTEX_LIMIT = 5000

# Dense spectral screening inside find_isomorphism is skipped above this size.
_SPECTRAL_SCREEN_LIMIT = 512


class CapacityError(ValueError):
    """A request exceeds the built-in desk-scale size guards."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Edges are stored canonically: each pair oriented ``u < v``, the tuple
    sorted, no duplicates, no self-loops.  The constructor normalizes pair
    orientation and ordering but rejects duplicates and out-of-range labels.
    Instances are immutable and hashable.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        canon = []
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge {tuple(e)} out of range for n={self.n}")
            canon.append((u, v))
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        d = [0] * self.n
        for u, v in self.edges:
            d[u] += 1
            d[v] += 1
        return d

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edges

    def neighbor_masks(self) -> list[int]:
        """Adjacency as one python int bitmask per vertex."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks


def graph_from_edge_list(n: int, pairs) -> Graph:
    """Canonical graph from a possibly unsorted, repeated edge list."""
    dedup = set()
    for u, v in pairs:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        dedup.add((min(u, v), max(u, v)))
    return Graph(n, tuple(sorted(dedup)))


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError(f"path needs n >= 1, got {n}")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    return Graph(n, tuple(sorted(edges)))


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError(f"complete graph needs n >= 1, got {n}")
    return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))


def erdos_renyi_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p) with a stdlib RNG so the draw is stable across platforms."""
    if n < 0 or not (0.0 <= p <= 1.0):
        raise ValueError(f"bad G(n, p) parameters n={n}, p={p}")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, tuple(edges))


def adjacency(g: Graph) -> np.ndarray:
    """{0,1} adjacency matrix with zero diagonal."""
    a = np.zeros((g.n, g.n))
    for u, v in g.edges:
        a[u, v] = 1.0
        a[v, u] = 1.0
    return a


def degree_matrix(g: Graph) -> np.ndarray:
    return np.diag(np.asarray(g.degrees(), dtype=float))


def laplacian(g: Graph) -> np.ndarray:
    """Combinatorial laplacian D - A; rows sum to zero."""
    return degree_matrix(g) - adjacency(g)


def connected_components(g: Graph) -> int:
    """Number of connected components (union-find)."""
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return len({find(v) for v in range(g.n)})


def _refine_colors(g1: Graph, g2: Graph) -> tuple[list[int], list[int]] | None:
    """Joint iterated neighborhood color refinement over both graphs.

    Returns stable vertex colorings drawn from a shared palette, or None when
    the color histograms already certify non-isomorphism.
    """
    nb1, nb2 = g1.neighbor_masks(), g2.neighbor_masks()
    deg1, deg2 = g1.degrees(), g2.degrees()
    c1, c2 = list(deg1), list(deg2)
    num_colors = -1
    while True:
        sig1 = [
            (c1[v], tuple(sorted(c1[w] for w in _bits(nb1[v])))) for v in range(g1.n)
        ]
        sig2 = [
            (c2[v], tuple(sorted(c2[w] for w in _bits(nb2[v])))) for v in range(g2.n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sig1) | set(sig2)))}
        c1 = [palette[s] for s in sig1]
        c2 = [palette[s] for s in sig2]
        if Counter(c1) != Counter(c2):
            return None
        if len(palette) == num_colors:
            return c1, c2
        num_colors = len(palette)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def find_isomorphism(g1: Graph, g2: Graph) -> list[int] | None:
    """Search for a bijection perm with (u,v) in E1 iff (perm[u],perm[v]) in E2.

    Invariant screening (size, degree sequence, adjacency spectrum for small
    graphs, color refinement) followed by most-constrained-first backtracking.
    Absence of an isomorphism returns None.
    """
    if g1.n != g2.n or g1.num_edges != g2.num_edges:
        return None
    n = g1.n
    if n > ISOMORPHISM_VERTEX_LIMIT:
        raise CapacityError(f"isomorphism search limited to {ISOMORPHISM_VERTEX_LIMIT} vertices, got {n}")
    if n == 0:
        return []
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return None
    if n <= _SPECTRAL_SCREEN_LIMIT:
        s1 = np.round(np.linalg.eigvalsh(adjacency(g1)), 6)
        s2 = np.round(np.linalg.eigvalsh(adjacency(g2)), 6)
        if not np.array_equal(s1, s2):
            return None

    refined = _refine_colors(g1, g2)
    if refined is None:
        return None
    col1, col2 = refined
    nb1, nb2 = g1.neighbor_masks(), g2.neighbor_masks()
    by_color2: dict[int, list[int]] = {}
    for w in range(n):
        by_color2.setdefault(col2[w], []).append(w)

    mapping = [-1] * n
    image = [-1] * n  # inverse map on g2
    mapped_mask = 0

    # Explicit stack of (vertex, candidate iterator) frames; recursion depth
    # would otherwise track n.
    stack: list[tuple[int, object]] = []

    def pick_vertex() -> int:
        best, best_key = -1, None
        for v in range(n):
            if mapping[v] != -1:
                continue
            anchored = (nb1[v] & mapped_mask).bit_count()
            key = (-anchored, len(by_color2[col1[v]]), v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def candidates(v: int):
        req = 0
        for u in _bits(nb1[v] & mapped_mask):
            req |= 1 << mapping[u]
        img_mask = 0
        for u in _bits(mapped_mask):
            img_mask |= 1 << mapping[u]
        for w in by_color2[col1[v]]:
            if image[w] == -1 and (nb2[w] & img_mask) == req:
                yield w

    v = pick_vertex()
    stack.append((v, candidates(v)))
    while stack:
        v, it = stack[-1]
        w = next(it, None)
        if w is None:
            stack.pop()
            if mapping[v] != -1:
                image[mapping[v]] = -1
                mapping[v] = -1
                mapped_mask ^= 1 << v
            continue
        if mapping[v] != -1:
            image[mapping[v]] = -1
            mapping[v] = -1
            mapped_mask ^= 1 << v
        mapping[v] = w
        image[w] = v
        mapped_mask |= 1 << v
        if mapped_mask.bit_count() == n:
            break
        nxt = pick_vertex()
        stack.append((nxt, candidates(nxt)))

    if mapped_mask.bit_count() != n:
        return None
    # Final full check: edges map onto edges bijectively.
    e2 = set(g2.edges)
    for u, v in g1.edges:
        a, b = mapping[u], mapping[v]
        if (min(a, b), max(a, b)) not in e2:
            return None
    return mapping


def _dot_id(name: str) -> str:
    if name.isdigit() or (name.isidentifier() and name.isascii()):
        return name
    escaped = name.replace('"', '\\"')
    return f'"{escaped}"'


def export_dot(g: Graph, vertex_names: list[str] | None = None,
               edge_labels: dict[tuple[int, int], str] | None = None) -> str:
    """Undirected graphviz source. Names are quoted when not plain ids."""
    if vertex_names is not None and len(vertex_names) != g.n:
        raise ValueError(f"expected {g.n} vertex names, got {len(vertex_names)}")
    names = vertex_names if vertex_names is not None else [str(v) for v in range(g.n)]
    used = set()
    lines = ["graph {"]
    for u, v in g.edges:
        used.add(u)
        used.add(v)
        label = ""
        if edge_labels and (u, v) in edge_labels:
            label = f' [label="{edge_labels[(u, v)]}"]'
        lines.append(f"  {_dot_id(names[u])} -- {_dot_id(names[v])}{label};")
    for v in range(g.n):
        if v not in used:
            lines.append(f"  {_dot_id(names[v])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]})


def graph_from_json(text: str) -> Graph:
    """Parse the canonical JSON graph format.

    Malformed JSON propagates json.JSONDecodeError (carries line/column);
    schema violations raise ValueError.
    """
    data = json.loads(text)
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise ValueError('graph JSON must be an object with "n" and "edges"')
    n = data["n"]
    if not isinstance(n, int):
        raise ValueError(f'"n" must be an integer, got {n!r}')
    edges = data["edges"]
    if not isinstance(edges, list):
        raise ValueError('"edges" must be a list of [u, v] pairs')
    pairs = []
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise ValueError(f"bad edge entry {e!r}")
        pairs.append((e[0], e[1]))
    return graph_from_edge_list(n, pairs)
