"""Built-in verification corpus and every cross-check the package makes.

The corpus covers the two solved families (paths, complete graphs), cycles,
and a handful of seeded random graphs.  Checks pit independent computation
routes against each other: bitwise sector hamiltonians against the full
2^n oracle, the combinatorial signed wedge construction against the literal
tensor-space projector, closed forms against dense diagonalization, and
sector dynamics against full-space dynamics.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dynamics import propagate
from .graphs import (
    Graph,
    adjacency,
    complete_graph,
    connected_components,
    cycle_graph,
    erdos_renyi_graph,
    find_isomorphism,
    path_graph,
)
from .spectra import (
    DEFAULT_TOL,
    MATVEC_RTOL,
    UNITARITY_TOL,
    Spectrum,
    compare_spectra,
    eigh,
    johnson_spectrum,
    lift_eigenvector,
    lift_spectrum,
    path_eigenvector,
    path_spectrum,
    xy_path_spectrum,
)
from .spins import (
    ModelSpec,
    SpinBasisMap,
    block_hamiltonian,
    block_matvec,
    full_hamiltonian,
    project_full_to_blocks,
)
from .wedge import alt_delta_oracle, build_wedge_graph, signed_matrix, wedge_adjacency, wedge_laplacian

__all__ = [
    "FIELD_VALUES",
    "DYNAMICS_TIMES",
    "CheckResult",
    "VerificationReport",
    "default_corpus",
    "run_verification",
]

FIELD_VALUES = (0.5, -1.3)
DYNAMICS_TIMES = (0.5, 1.0, 5.0)

# The literal projector oracle is exercised at these sizes only.
ORACLE_MAX_N = 6
ORACLE_MAX_K = 3

_MODELS = (ModelSpec("xy"), ModelSpec("heisenberg"))


@dataclass
class CheckResult:
    check: str
    subject: str
    max_error: float
    tol: float
    passed: bool
    k: int | None = None
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        where = self.subject + (f" k={self.k}" if self.k is not None else "")
        text = f"[{status}] {self.check:<26} {where:<18} max_err={self.max_error:9.3e}  tol={self.tol:.1e}"
        if self.note:
            text += f"  ({self.note})"
        return text


@dataclass
class VerificationReport:
    results: list[CheckResult] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def first_failure(self) -> CheckResult | None:
        return next((r for r in self.results if not r.passed), None)

    def lines(self) -> list[str]:
        out = [r.line() for r in self.results]
        n_fail = sum(not r.passed for r in self.results)
        out.append(
            f"verification: {len(self.results)} checks, {len(self.results) - n_fail} passed, "
            f"{n_fail} failed, {self.elapsed:.1f}s"
        )
        if n_fail:
            f = self.first_failure
            out.append(f"first failure: ({f.subject}, k={f.k}, {f.check})")
        return out


def default_corpus() -> list[tuple[str, Graph]]:
    """Paths n=2..8, cycles 3..7, complete graphs 2..6, five seeded G(6, 1/2)."""
    entries: list[tuple[str, Graph]] = []
    for n in range(2, 9):
        entries.append((f"path:{n}", path_graph(n)))
    for n in range(3, 8):
        entries.append((f"cycle:{n}", cycle_graph(n)))
    for n in range(2, 7):
        entries.append((f"complete:{n}", complete_graph(n)))
    for s in range(5):
        entries.append((f"er:6:0.5:{s}", erdos_renyi_graph(6, 0.5, s)))
    return entries


def _result(check, subject, err, tol, k=None, note="") -> CheckResult:
    return CheckResult(check, subject, float(err), tol, bool(err <= tol), k, note)


def check_structure(name: str, g: Graph, wedges: dict) -> list[CheckResult]:
    """Dimensions, handshake sums, k=1 identity, one-subset end sectors."""
    results = []
    worst = 0.0
    bad_k = None
    for k, w in wedges.items():
        if w.num_vertices != math.comb(g.n, k):
            worst = max(worst, 1.0)
            bad_k = k
        degs = 2 * len(w.signed_edges)
        if degs != int(wedge_adjacency(w).sum()):
            worst = max(worst, 1.0)
            bad_k = k
    results.append(_result("wedge_dimensions", name, worst, 0.0, k=bad_k))

    w1 = wedges.get(1)
    if w1 is not None:
        same = w1.skeleton() == g and all(s == 1 for _, _, s in w1.signed_edges)
        results.append(_result("wedge_k1_identity", name, 0.0 if same else 1.0, 0.0, k=1))

    wn = wedges[g.n]
    top_ok = wn.num_vertices == 1 and not wn.signed_edges
    results.append(_result("wedge_full_tuple", name, 0.0 if top_ok else 1.0, 0.0, k=g.n))

    if name.startswith("path:"):
        neg_counts = {k: len(w.negative_edges()) for k, w in wedges.items()}
        neg = sum(neg_counts.values())
        first_bad = next((k for k, c in neg_counts.items() if c), None)
        results.append(_result("path_all_positive_signs", name, float(neg), 0.0, k=first_bad))
    if name.startswith("complete:"):
        worst = 0.0
        for k, w in wedges.items():
            want = k * (g.n - k)
            d = wedge_adjacency(w).sum(axis=1)
            if d.size and (d != want).any():
                worst = 1.0
        results.append(_result("johnson_regular_degree", name, worst, 0.0))
    return results


def check_sector_spectra(name: str, g: Graph, model: ModelSpec, wedges: dict, tol: float) -> list[CheckResult]:
    """Sector spectra from the wedge matrices against the full-space oracle."""
    try:
        full_blocks = project_full_to_blocks(g, model)
    except RuntimeError as exc:
        return [_result(f"sector_vs_full_{model.model}", name, math.inf, tol, note=str(exc))]
    worst = 0.0
    bad_k = None
    all_block_vals: list[float] = []
    for k, w in wedges.items():
        h = wedge_adjacency(w) if model.is_xy else wedge_laplacian(w)
        vals = np.linalg.eigvalsh(h)
        all_block_vals.extend(vals)
        cmp = compare_spectra(Spectrum(tuple(vals), tol), full_blocks[k])
        err = cmp.max_gap if cmp.equal else math.inf
        if err > worst:
            worst, bad_k = err, k
    union = Spectrum(tuple(all_block_vals), tol)
    full = Spectrum(tuple(np.linalg.eigvalsh(full_hamiltonian(g, model))), tol)
    cmp = compare_spectra(union, full)
    union_err = cmp.max_gap if cmp.equal else math.inf
    return [
        _result(f"sector_vs_full_{model.model}", name, worst, tol, k=bad_k),
        _result(f"sector_union_{model.model}", name, union_err, tol),
    ]


def check_block_matvec(name: str, g: Graph, model: ModelSpec, rng: np.random.Generator) -> CheckResult:
    """Matrix-free sector application against the dense product."""
    worst = 0.0
    bad_k = None
    for k in range(g.n + 1):
        h = block_hamiltonian(g, k, model)
        x = rng.normal(size=h.shape[0])
        dense = h @ x
        free = block_matvec(g, k, model, x)
        scale = max(1.0, float(np.linalg.norm(dense)))
        err = float(np.linalg.norm(free - dense)) / scale
        if err > worst:
            worst, bad_k = err, k
    return _result(f"block_matvec_{model.model}", name, worst, MATVEC_RTOL, k=bad_k)


def check_signed_oracle(name: str, g: Graph, wedges: dict) -> CheckResult | None:
    """Combinatorial signed matrix against the literal projector construction."""
    if g.n > ORACLE_MAX_N:
        return None
    worst = 0.0
    bad_k = None
    for k in range(min(g.n, ORACLE_MAX_K) + 1):
        diff = np.max(np.abs(signed_matrix(wedges[k]) - alt_delta_oracle(g, k))) if wedges[k].num_vertices else 0.0
        if diff > worst:
            worst, bad_k = float(diff), k
    return _result("signed_vs_projector_oracle", name, worst, 0.0, k=bad_k)


def check_lift(name: str, g: Graph, wedges: dict, tol: float) -> list[CheckResult]:
    """Sum-lift of base eigenvalues and determinant eigenvectors against the
    signed matrix of every wedge power."""
    base = eigh(adjacency(g))
    worst_gap, gap_k = 0.0, None
    worst_res, res_k = 0.0, None
    c_equals_a = True
    for k, w in wedges.items():
        c = signed_matrix(w)
        if np.any(c < 0):
            c_equals_a = False
        cmp = compare_spectra(lift_spectrum(base, k), Spectrum(tuple(np.linalg.eigvalsh(c)), tol))
        gap = cmp.max_gap if cmp.equal else math.inf
        if gap > worst_gap:
            worst_gap, gap_k = gap, k
        for combo in itertools.combinations(range(g.n), k):
            pair = lift_eigenvector(base, combo)
            res = float(np.linalg.norm(c @ pair.vector - pair.value * pair.vector))
            if res > worst_res:
                worst_res, res_k = res, k
    return [
        _result("lift_spectrum_vs_signed", name, worst_gap, tol, k=gap_k),
        _result("lift_eigenvector_residual", name, worst_res, tol, k=res_k,
                note=f"signed equals unsigned: {'yes' if c_equals_a else 'no'}"),
    ]


def check_heis_psd_kernel(name: str, g: Graph, wedges: dict, tol: float) -> CheckResult:
    """Heisenberg sectors are positive semidefinite with one zero mode per
    connected component of the wedge power."""
    worst = 0.0
    bad_k = None
    for k, w in wedges.items():
        vals = np.linalg.eigvalsh(wedge_laplacian(w))
        neg = max(0.0, float(-vals.min())) if vals.size else 0.0
        zeros = int(np.sum(np.abs(vals) <= tol))
        comps = connected_components(w.skeleton())
        err = neg if zeros == comps else math.inf
        if err > worst:
            worst, bad_k = err, k
    return _result("heis_psd_kernel", name, worst, tol, k=bad_k)


def check_field_shift(name: str, g: Graph, wedges: dict, tol: float) -> CheckResult:
    """Adding a field shifts sector eigenvalues by B*(n-2k) and keeps eigenvectors."""
    worst = 0.0
    bad_k = None
    for model_name in ("xy", "heisenberg"):
        for k in range(g.n + 1):
            dec0 = eigh(block_hamiltonian(g, k, ModelSpec(model_name)))
            for b in FIELD_VALUES:
                hb = block_hamiltonian(g, k, ModelSpec(model_name, b))
                shift = b * (g.n - 2 * k)
                gap = float(np.max(np.abs(np.linalg.eigvalsh(hb) - (dec0.values + shift))))
                resid = float(
                    np.max(np.linalg.norm(hb @ dec0.vectors - dec0.vectors * (dec0.values + shift), axis=0))
                )
                err = max(gap, resid)
                if err > worst:
                    worst, bad_k = err, k
    return _result("field_shift", name, worst, tol, k=bad_k)


def check_complement_isomorphism(name: str, g: Graph, wedges: dict) -> CheckResult:
    """Wedge powers k and n-k are isomorphic via subset complementation."""
    bad_k = None
    for k in range(g.n // 2 + 1):
        perm = find_isomorphism(wedges[k].skeleton(), wedges[g.n - k].skeleton())
        if perm is None:
            bad_k = k
            break
    return _result("complement_isomorphism", name, 0.0 if bad_k is None else 1.0, 0.0, k=bad_k)


def check_dynamics(
    name: str,
    g: Graph,
    model: ModelSpec,
    rng: np.random.Generator,
    n_states: int,
    times,
    tol: float,
) -> list[CheckResult]:
    """Sector evolution against full-space evolution for random sector states."""
    full_dec = eigh(full_hamiltonian(g, model))
    worst = 0.0
    bad_k = None
    worst_norm = 0.0
    worst_energy = 0.0
    dim_full = 1 << g.n
    for k in range(g.n + 1):
        h = block_hamiltonian(g, k, model)
        block_dec = eigh(h)
        basis = SpinBasisMap(g.n, k)
        idx = np.array(basis.states)
        for _ in range(n_states):
            z = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
            z /= np.linalg.norm(z)
            e0 = float(np.real(np.conj(z) @ (h @ z)))
            for t in times:
                zb = propagate(block_dec, z, t)
                full = np.zeros(dim_full, dtype=complex)
                full[idx] = z
                zf = propagate(full_dec, full, t)[idx]
                dev = float(np.linalg.norm(zb - zf))
                if dev > worst:
                    worst, bad_k = dev, k
                worst_norm = max(worst_norm, abs(float(np.linalg.norm(zb)) - 1.0))
                et = float(np.real(np.conj(zb) @ (h @ zb)))
                worst_energy = max(worst_energy, abs(et - e0))
    return [
        _result(f"dynamics_block_vs_full_{model.model}", name, worst, tol, k=bad_k),
        _result(f"dynamics_unitarity_{model.model}", name, worst_norm, UNITARITY_TOL),
        _result(f"dynamics_energy_{model.model}", name, worst_energy, tol),
    ]


def check_path_closed_form(n: int, tol: float, builder=None) -> list[CheckResult]:
    """Cosine spectrum, sine eigenvectors and their sector sums on the path."""
    builder = builder or build_wedge_graph
    name = f"path:{n}"
    g = path_graph(n)
    a = adjacency(g)
    cmp = compare_spectra(path_spectrum(n), Spectrum(tuple(np.linalg.eigvalsh(a)), tol))
    spec_err = cmp.max_gap if cmp.equal else math.inf
    vec_err = 0.0
    for j in range(n):
        v = path_eigenvector(n, j)
        lam = -2.0 * math.cos(math.pi * (j + 1) / (n + 1))
        vec_err = max(vec_err, float(np.linalg.norm(a @ v - lam * v)))
    sum_err, bad_k = 0.0, None
    for k in range(n + 1):
        w = builder(g, k)
        vals = np.linalg.eigvalsh(wedge_adjacency(w))
        cmp = compare_spectra(xy_path_spectrum(n, k), Spectrum(tuple(vals), tol))
        err = cmp.max_gap if cmp.equal else math.inf
        if err > sum_err:
            sum_err, bad_k = err, k
    return [
        _result("path_cosine_spectrum", name, spec_err, tol),
        _result("path_sine_eigenvectors", name, vec_err, tol),
        _result("path_sector_sums", name, sum_err, tol, k=bad_k),
    ]


def check_johnson_family(n: int, tol: float, builder=None) -> list[CheckResult]:
    """Johnson closed form, Heisenberg value set, and XY ground energy on K_n."""
    builder = builder or build_wedge_graph
    name = f"complete:{n}"
    g = complete_graph(n)
    worst, bad_k = 0.0, None
    for k in range(n + 1):
        vals = np.linalg.eigvalsh(wedge_adjacency(builder(g, k)))
        cmp = compare_spectra(johnson_spectrum(n, k), Spectrum(tuple(vals), tol))
        err = cmp.max_gap if cmp.equal else math.inf
        if err > worst:
            worst, bad_k = err, k
    results = [_result("johnson_formula", name, worst, tol, k=bad_k)]

    allowed = {j * (n + 1 - j) for j in range(n + 1)}
    heis_vals = np.linalg.eigvalsh(full_hamiltonian(g, ModelSpec("heisenberg")))
    heis_err = 0.0
    for v in heis_vals:
        nearest = min(allowed, key=lambda x: abs(x - v))
        heis_err = max(heis_err, abs(v - nearest))
    results.append(_result("heis_complete_value_set", name, heis_err, tol))

    e0 = float(np.linalg.eigvalsh(full_hamiltonian(g, ModelSpec("xy"))).min())
    if n % 2 == 0:
        results.append(_result("xy_complete_ground_energy", name, abs(e0 - (-n / 2)), tol,
                               note=f"E0={e0:.12g}"))
    else:
        results.append(_result("xy_complete_ground_energy", name, 0.0, tol,
                               note=f"odd n: measured E0={e0:.12g}, expected -(n-1)/2={-(n - 1) / 2}"))
    return results


def check_named_isomorphisms(builder=None) -> list[CheckResult]:
    """The two specific equivalences: the 5th power of the 6-path is the
    6-path, the 3rd power of K_4 is K_4."""
    builder = builder or build_wedge_graph
    out = []
    for label, g, k in (("path:6", path_graph(6), 5), ("complete:4", complete_graph(4), 3)):
        perm = find_isomorphism(builder(g, k).skeleton(), g)
        out.append(_result(f"named_isomorphism_k{k}", label, 0.0 if perm is not None else 1.0, 0.0, k=k))
    return out


def _graph_checks(index, name, g, tol, seed, n_states, times, builder) -> list[CheckResult]:
    wedges = {k: builder(g, k) for k in range(g.n + 1)}
    rng = np.random.default_rng([seed, index])
    results: list[CheckResult] = []
    results += check_structure(name, g, wedges)
    results += check_lift(name, g, wedges, tol)
    oracle = check_signed_oracle(name, g, wedges)
    if oracle is not None:
        results.append(oracle)
    results.append(check_heis_psd_kernel(name, g, wedges, tol))
    results.append(check_field_shift(name, g, wedges, tol))
    results.append(check_complement_isomorphism(name, g, wedges))
    for model in _MODELS:
        results += check_sector_spectra(name, g, model, wedges, tol)
        results.append(check_block_matvec(name, g, model, rng))
        results += check_dynamics(name, g, model, rng, n_states, times, tol)
    family = name.split(":", 1)[0]
    if family == "path":
        results += check_path_closed_form(g.n, tol, builder)
    elif family == "complete":
        results += check_johnson_family(g.n, tol, builder)
    return results


def run_verification(
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    random_states: int = 20,
    times=DYNAMICS_TIMES,
    threads: int | None = None,
    corpus: list[tuple[str, Graph]] | None = None,
    wedge_builder=None,
) -> VerificationReport:
    """Run every check over the corpus; deterministic for fixed arguments.

    ``wedge_builder`` substitutes the wedge construction everywhere the
    checks consume one (fault-injection hook for testing the suite itself).
    ``threads`` caps worker threads; results are ordered by corpus position
    regardless of thread count.
    """
    start = time.monotonic()
    builder = wedge_builder if wedge_builder is not None else build_wedge_graph
    entries = corpus if corpus is not None else default_corpus()

    def job(args):
        i, (name, g) = args
        return _graph_checks(i, name, g, tol, seed, random_states, times, builder)

    if threads is not None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_graph = list(pool.map(job, enumerate(entries)))
    else:
        per_graph = [job(item) for item in enumerate(entries)]
    results = [r for chunk in per_graph for r in chunk]
    results += check_named_isomorphisms(builder)
    return VerificationReport(results, time.monotonic() - start)
