"""Gibbs states, thermal energy, and the entanglement-gap temperature.

Temperatures are in energy units (k_B = 1).  The entanglement-gap
temperature is where the thermal energy crosses a given separable
energy; below it the thermal state is certified entangled by its energy
alone.  Monotonicity of U(T) makes every crossing a bisection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .models import (
    ces_hamiltonian,
    max_entangled_projector_hamiltonian,
    symmetric_projector_hamiltonian,
)
from .operators import HermitianOperator, eig, partial_transpose, regroup
from .separability import ppt_lower

PPT_FLAG_TOL = -1e-10
BISECT_CAP = 200


@dataclass(frozen=True)
class ThermalCurve:
    """Sampled (T, U, ppt) triples plus the gap temperature when defined."""

    samples: tuple
    t_gap: float | None = None
    t_gap_scaled: float | None = None

    def __post_init__(self):
        ts = [s[0] for s in self.samples]
        us = [s[1] for s in self.samples]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("temperatures must be strictly increasing")
        if any(b < a - 1e-9 for a, b in zip(us, us[1:])):
            raise ValueError("thermal energy must be non-decreasing in T")


def thermal_energy(h, temperature: float) -> float:
    """U(T) = tr[H exp(-H/T)] / tr[exp(-H/T)], computed from the spectrum
    with the usual max-shift for stability."""
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    w = _eigenvalues(h)
    return _thermal_energy_from_levels(w, temperature)


def _eigenvalues(h) -> np.ndarray:
    if isinstance(h, HermitianOperator):
        return np.linalg.eigvalsh(h.matrix)
    return np.asarray(h, dtype=float)


def _thermal_energy_from_levels(w: np.ndarray, temperature: float) -> float:
    beta = 1.0 / temperature
    x = -beta * (w - w.min())
    weights = np.exp(x)
    z = weights.sum()
    return float((w * weights).sum() / z)


def gibbs_state(h: HermitianOperator, temperature: float) -> HermitianOperator:
    """Normalized thermal density matrix at the given temperature."""
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    spec = eig(h)
    w = spec.eigenvalues
    weights = np.exp(-(w - w.min()) / temperature)
    weights /= weights.sum()
    rho = (spec.eigenvectors * weights) @ spec.eigenvectors.conj().T
    return HermitianOperator(rho, h.dims)


def entanglement_gap_temperature(
    h, e_sep: float, tol: float = 1e-10
) -> float | None:
    """Temperature at which the thermal energy equals ``e_sep``.

    Returns None when no finite solution exists, i.e. when e_sep does
    not lie strictly between the ground energy and the infinite-T mean.
    Bisection under monotonicity; the result satisfies
    |U(T) - e_sep| <= tol.
    """
    w = _eigenvalues(h)
    e0, mean = float(w.min()), float(w.mean())
    if not (e0 < e_sep < mean):
        return None

    t_lo, t_hi = 1e-6, 1.0
    for _ in range(BISECT_CAP):
        if _thermal_energy_from_levels(w, t_lo) < e_sep:
            break
        t_lo /= 2
    for _ in range(BISECT_CAP):
        if _thermal_energy_from_levels(w, t_hi) > e_sep:
            break
        t_hi *= 2
    for _ in range(BISECT_CAP):
        t_mid = 0.5 * (t_lo + t_hi)
        u = _thermal_energy_from_levels(w, t_mid)
        if abs(u - e_sep) <= tol:
            return t_mid
        if u < e_sep:
            t_lo = t_mid
        else:
            t_hi = t_mid
    return 0.5 * (t_lo + t_hi)


def scaled_gap_temperature(h, e_sep: float, tol: float = 1e-10) -> float | None:
    """Gap temperature divided by the total spectral range."""
    w = _eigenvalues(h)
    t = entanglement_gap_temperature(w, e_sep, tol=tol)
    if t is None:
        return None
    e_tot = float(w.max() - w.min())
    return t / e_tot


def is_gibbs_ppt(
    h: HermitianOperator, temperature: float, bipartition=None
) -> bool:
    """Whether the thermal state has a positive partial transpose."""
    rho = gibbs_state(h, temperature)
    flat = rho if rho.n_subsystems == 2 and bipartition is None else regroup(
        rho, list(bipartition if bipartition is not None else [0])
    )
    pt = partial_transpose(flat, 0)
    return float(np.linalg.eigvalsh(pt.matrix)[0]) >= PPT_FLAG_TOL


def thermal_curve(
    h: HermitianOperator,
    temperatures,
    e_sep: float | None = None,
    bipartition=None,
) -> ThermalCurve:
    """Sample (T, U, ppt) on the given grid; attach the gap temperature
    for ``e_sep`` when one exists."""
    w = np.linalg.eigvalsh(h.matrix)
    samples = []
    for t in temperatures:
        samples.append(
            (
                float(t),
                _thermal_energy_from_levels(w, float(t)),
                is_gibbs_ppt(h, float(t), bipartition=bipartition),
            )
        )
    t_gap = t_scaled = None
    if e_sep is not None:
        t_gap = entanglement_gap_temperature(w, e_sep)
        if t_gap is not None:
            t_scaled = t_gap / float(w.max() - w.min())
    return ThermalCurve(samples=tuple(samples), t_gap=t_gap, t_gap_scaled=t_scaled)


def bound_entanglement_window(
    h: HermitianOperator,
    e_sep: float,
    t_min: float = 0.02,
    t_max: float = 3.0,
    n_grid: int = 80,
    bipartition=None,
    refine_tol: float = 1e-4,
):
    """Temperature window where the Gibbs state is PPT yet has energy
    below ``e_sep`` (so its entanglement is bound, witnessed by energy).

    Scans a log grid, takes the widest contiguous run, and refines both
    endpoints by boolean bisection to ``refine_tol``.  Returns
    (t_low, t_high), or None when the window is empty.
    """
    w = np.linalg.eigvalsh(h.matrix)

    def in_window(t: float) -> bool:
        return (
            _thermal_energy_from_levels(w, t) < e_sep
            and is_gibbs_ppt(h, t, bipartition=bipartition)
        )

    grid = np.geomspace(t_min, t_max, n_grid)
    flags = [in_window(float(t)) for t in grid]
    runs = []
    start = None
    for idx, flag in enumerate(flags):
        if flag and start is None:
            start = idx
        if not flag and start is not None:
            runs.append((start, idx - 1))
            start = None
    if start is not None:
        runs.append((start, len(flags) - 1))
    if not runs:
        return None
    lo_idx, hi_idx = max(runs, key=lambda r: r[1] - r[0])

    def refine(t_false: float, t_true: float) -> float:
        for _ in range(BISECT_CAP):
            if abs(t_true - t_false) <= refine_tol:
                break
            mid = 0.5 * (t_true + t_false)
            if in_window(mid):
                t_true = mid
            else:
                t_false = mid
        return t_true

    t_low = float(grid[lo_idx])
    if lo_idx > 0:
        t_low = refine(float(grid[lo_idx - 1]), t_low)
    t_high = float(grid[hi_idx])
    if hi_idx < len(grid) - 1:
        t_high = refine(float(grid[hi_idx + 1]), t_high)
    return (t_low, t_high)


def product_sampling_upper(
    h: HermitianOperator, n_samples: int, seed: int = 0
) -> float:
    """Upper bound on the separable energy from Haar product sampling
    (normal components, normalized), vectorized over all samples."""
    da, db = h.dims
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n_samples, da)) + 1j * rng.standard_normal((n_samples, da))
    b = rng.standard_normal((n_samples, db)) + 1j * rng.standard_normal((n_samples, db))
    a /= np.linalg.norm(a, axis=1, keepdims=True)
    b /= np.linalg.norm(b, axis=1, keepdims=True)
    t = h.matrix.reshape(da, db, da, db)
    e = np.einsum("abcd,na,nb,nc,nd->n", t, a.conj(), b.conj(), a, b, optimize="greedy")
    return float(np.real(e).min())


def temperature_comparison(
    dims=(3, 4, 5, 6),
    n_samples: int = 20000,
    seed: int = 0,
    gap_tol: float = 1e-7,
) -> list[dict]:
    """Scaled gap temperatures of the three projector families per dimension.

    The maximally-entangled and symmetric projectors have exact separable
    energies; the completely-entangled-subspace Hamiltonian gets a
    bracket (PPT lower bound, product-sampling upper bound) which maps
    monotonically onto a bracket for its gap temperature.
    """
    rows = []
    for d in dims:
        h_me = max_entangled_projector_hamiltonian(d)
        h_s = symmetric_projector_hamiltonian(d)
        h_ces = ces_hamiltonian(d)
        t_me = scaled_gap_temperature(h_me, 1.0 - 1.0 / d)
        t_s = scaled_gap_temperature(h_s, 0.5)
        e_low, _ = ppt_lower(h_ces, gap_tol=gap_tol)
        e_high = product_sampling_upper(h_ces, n_samples, seed=seed + d)
        rows.append(
            {
                "d": d,
                "t_maxent": t_me,
                "t_maxent_closed": 1.0 / np.log(d + 1.0),
                "t_symproj": t_s,
                "t_symproj_closed": 1.0 / np.log((d + 1.0) / (d - 1.0)),
                "ces_e_sep_bracket": [e_low, e_high],
                "t_ces_bracket": [
                    scaled_gap_temperature(h_ces, e_low),
                    scaled_gap_temperature(h_ces, e_high),
                ],
            }
        )
    return rows
