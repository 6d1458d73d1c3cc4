"""Certified brackets on the minimum separable energy.

The bracket pairs two one-sided bounds: a seesaw over pure product
states gives an upper bound that is an exactly evaluated product
energy, and the PPT semidefinite relaxation gives a certified lower
bound.  For 2x2 and 2x3 systems the two coincide (PPT is exact there);
in general the gap between them is where bound entanglement lives.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field

import numpy as np

from .operators import (
    DENSE_CUTOFF,
    HermitianOperator,
    as_matrix_free,
    eig,
    lanczos_ground,
    random_state_vector,
    regroup,
)
from .sdp import PPTResult, solve_ppt_sdp

SEESAW_CONVERGENCE = 1e-12
DEGENERATE_SPLIT = 1e-12
MAX_SWEEPS = 500


@dataclass(frozen=True)
class ProductState:
    """One normalized local vector per subsystem."""

    locals: tuple

    def __post_init__(self):
        for v in self.locals:
            if abs(np.linalg.norm(v) - 1.0) > 1e-12:
                raise ValueError("local factors must be normalized")

    def vector(self) -> np.ndarray:
        out = np.array([1.0], dtype=complex)
        for v in self.locals:
            out = np.kron(out, v)
        return out

    def energy(self, h: HermitianOperator) -> float:
        return h.expectation(self.vector())


@dataclass(frozen=True)
class SepBracket:
    """Two-sided bracket on the minimum separable energy."""

    lower: float                    # PPT-certified
    upper: float                    # exactly evaluated product energy
    witness_state: ProductState
    certificate: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.lower > self.upper + 1e-7:
            raise ValueError(
                f"bracket inverted: lower {self.lower} > upper {self.upper}"
            )


@dataclass(frozen=True)
class GapReport:
    """Ground/maximum energies, separable-energy bracket and gap interval."""

    e0: float
    e_max: float
    sep: SepBracket
    gap_lower: float
    gap_upper: float
    scaled_gap_lower: float
    scaled_gap_upper: float
    witness_offset: float

    def to_dict(self) -> dict:
        return {
            "e0": self.e0,
            "e_max": self.e_max,
            "e_sep_lower": self.sep.lower,
            "e_sep_upper": self.sep.upper,
            "gap": [self.gap_lower, self.gap_upper],
            "scaled_gap": [self.scaled_gap_lower, self.scaled_gap_upper],
            "witness_offset": self.witness_offset,
        }


def _effective_site_operator(h_tensor, dims, vecs, site):
    """Contract H with every factor except ``site``; the result is the
    single-site operator whose ground state is the optimal replacement."""
    k = len(dims)
    letters = string.ascii_letters
    bra, ket = letters[:k], letters[k : 2 * k]
    operands, subs = [h_tensor], [bra + ket]
    for j in range(k):
        if j == site:
            continue
        operands.append(vecs[j].conj())
        subs.append(bra[j])
        operands.append(vecs[j])
        subs.append(ket[j])
    out = bra[site] + ket[site]
    m = np.einsum(",".join(subs) + "->" + out, *operands, optimize="greedy")
    return (m + m.conj().T) / 2


def _ground_factor(m: np.ndarray, previous: np.ndarray):
    """Ground eigenvector of the effective operator; inside a degenerate
    ground space take the direction closest to the previous iterate so
    the sweep cannot oscillate."""
    w, v = np.linalg.eigh(m)
    g = int(np.count_nonzero(w <= w[0] + DEGENERATE_SPLIT))
    if g == 1:
        return v[:, 0], float(w[0])
    block = v[:, :g]
    proj = block @ (block.conj().T @ previous)
    nrm = np.linalg.norm(proj)
    if nrm > 1e-8:
        return proj / nrm, float(w[0])
    return v[:, 0], float(w[0])


def seesaw_upper(
    h: HermitianOperator,
    restarts: int = 64,
    seed: int = 0,
    tol: float = SEESAW_CONVERGENCE,
    return_trace: bool = False,
):
    """Best exact product-state energy found by multi-start coordinate descent.

    Each pass replaces one factor with the ground state of its effective
    single-site operator, so the energy sequence within a run is
    non-increasing.  Restarts draw Haar product states from a generator
    seeded with (seed, restart index); ties go to the earlier restart.
    """
    if h.n_subsystems < 2:
        raise ValueError("seesaw needs a multipartite operator")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    dims = h.dims
    k = len(dims)
    h_tensor = h.matrix.reshape(dims + dims)
    best_energy, best_state, best_traces = np.inf, None, None

    for restart in range(restarts):
        rng = np.random.default_rng((seed, restart))
        vecs = [random_state_vector(d, rng) for d in dims]
        trace = []
        e_prev = np.inf
        for _ in range(MAX_SWEEPS):
            for s in range(k):
                m = _effective_site_operator(h_tensor, dims, vecs, s)
                vecs[s], e_now = _ground_factor(m, vecs[s])
                trace.append(e_now)
            if e_prev - trace[-1] < tol:
                break
            e_prev = trace[-1]
        state = ProductState(tuple(vecs))
        exact = state.energy(h)
        if exact < best_energy - 1e-15:
            best_energy, best_state, best_traces = exact, state, trace

    if return_trace:
        return best_energy, best_state, best_traces
    return best_energy, best_state


def ppt_lower(
    h: HermitianOperator,
    bipartition=None,
    gap_tol: float = 1e-7,
    feas_tol: float = 1e-8,
) -> tuple[float, PPTResult]:
    """Certified lower bound on the minimum separable energy from the PPT
    relaxation across the given bipartition (first-block site indices).

    With no bipartition a two-factor operator splits naturally; an
    operator with more factors is reduced over every contiguous
    bipartition and the largest (tightest) certified bound is returned.
    """
    if bipartition is None:
        if h.n_subsystems == 2:
            bipartition = [0]
        else:
            best = None
            for cut in range(1, h.n_subsystems):
                val, res = ppt_lower(h, bipartition=range(cut),
                                     gap_tol=gap_tol, feas_tol=feas_tol)
                if best is None or val > best[0]:
                    best = (val, res)
            return best
    flat = regroup(h, list(bipartition)) if h.n_subsystems != 2 else h
    result = solve_ppt_sdp(flat.matrix, flat.dims, gap_tol=gap_tol, feas_tol=feas_tol)
    return result.value, result


def sep_bracket(
    h: HermitianOperator,
    restarts: int = 64,
    seed: int = 0,
    gap_tol: float = 1e-7,
) -> SepBracket:
    """Bracket [PPT lower, seesaw upper] on the minimum separable energy."""
    upper, state = seesaw_upper(h, restarts=restarts, seed=seed)
    lower, res = ppt_lower(h, gap_tol=gap_tol)
    # a certified lower bound can only exceed the exact product energy
    # through solver failure; surface that instead of silently clipping
    return SepBracket(
        lower=lower,
        upper=upper,
        witness_state=state,
        certificate={
            "sdp_converged": res.converged,
            "sdp_gap": res.gap,
            "sdp_iterations": res.iterations,
            **res.residuals,
        },
    )


def entanglement_gap(
    h: HermitianOperator,
    restarts: int = 64,
    seed: int = 0,
    dense_cutoff: int = DENSE_CUTOFF,
    gap_tol: float = 1e-7,
) -> GapReport:
    """Full report: spectrum extremes, separable bracket, gap interval.

    The witness offset is the (conservative) seesaw upper bound, so the
    induced witness H - offset*I is non-negative on every product state
    actually found; energies below the PPT lower bound certify
    entanglement outright.
    """
    if h.dim <= dense_cutoff:
        spec = eig(h)
        e0, e_max = spec.e0, spec.e_max
    else:
        e0, _ = lanczos_ground(as_matrix_free(h))
        neg = HermitianOperator(-h.matrix, h.dims)
        e_max_neg, _ = lanczos_ground(as_matrix_free(neg))
        e_max = -e_max_neg
    sep = sep_bracket(h, restarts=restarts, seed=seed, gap_tol=gap_tol)
    e_tot = e_max - e0
    gap_lo = sep.lower - e0
    gap_hi = sep.upper - e0
    return GapReport(
        e0=e0,
        e_max=e_max,
        sep=sep,
        gap_lower=gap_lo,
        gap_upper=gap_hi,
        scaled_gap_lower=gap_lo / e_tot if e_tot > 0 else 0.0,
        scaled_gap_upper=gap_hi / e_tot if e_tot > 0 else 0.0,
        witness_offset=sep.upper,
    )


def bipartite_lattice_sep_energy(
    lattice, coupling: HermitianOperator, restarts: int = 64, seed: int = 0
):
    """Minimum separable energy per bond on a bipartite graph.

    A minimum-energy pair state |A>|B> tiles the whole graph (|A> on one
    color, |B> on the other), and no global separable state can do
    better because some bond marginal would have to beat the pair
    optimum.  Returns (per-bond energy, global product state).
    """
    coloring = lattice.bipartition_coloring()
    per_bond, pair = seesaw_upper(coupling, restarts=restarts, seed=seed)
    a, b = pair.locals
    vecs = tuple(a if coloring[i] == 0 else b for i in range(lattice.n_sites))
    state = ProductState(vecs)
    total = 0.0
    t = coupling.matrix.reshape(coupling.dims + coupling.dims)
    for (i, j) in lattice.bonds:
        vi, vj = vecs[i], vecs[j]
        total += float(
            np.real(
                np.einsum("abcd,a,b,c,d->", t, vi.conj(), vj.conj(), vi, vj)
            )
        )
    n_bonds = len(lattice.bonds)
    if abs(total - n_bonds * per_bond) > 1e-9 * max(1.0, abs(total)):
        raise RuntimeError(
            "global product energy disagrees with per-bond tiling; "
            "is the coupling swap-symmetric?"
        )
    return per_bond, state


def cluster_sep_energy(
    n: int, coupling: HermitianOperator, restarts: int = 64, seed: int = 0
) -> float:
    """Seesaw separable energy per bond of n spins coupled all-to-all.

    This is the building block for lattices tiled by complete clusters
    (triangles, tetrahedra): the cluster optimum extends to the lattice.
    """
    from .lattices import LatticeSpec, assemble

    if n < 2:
        raise ValueError("cluster needs n >= 2")
    spec = LatticeSpec.complete(n, local_dim=coupling.dims[0])
    assembled = assemble(spec, coupling)
    if assembled.dense is None:
        raise ValueError("cluster exceeds the dense cutoff")
    energy, _ = seesaw_upper(assembled.dense, restarts=restarts, seed=seed)
    return energy / len(spec.bonds)


def geometric_overlap(psi: np.ndarray, dims: tuple[int, int]) -> float:
    """Largest squared Schmidt coefficient: the maximum overlap between a
    bipartite pure state and any product state."""
    da, db = dims
    v = np.asarray(psi, dtype=complex).ravel()
    if v.size != da * db:
        raise ValueError("state size does not match dims")
    s = np.linalg.svd(v.reshape(da, db), compute_uv=False)
    return float(s[0] ** 2)


def build_witness(h: HermitianOperator, e_sep: float) -> HermitianOperator:
    """Witness Z = H - e_sep * I; non-negative on separable states when
    e_sep lower-bounds the separable minimum."""
    return h.shift(-float(e_sep))
