import numpy as np
import pytest

from entgap.models import (
    choi_hamiltonian,
    heisenberg_pair,
    max_entangled_projector_hamiltonian,
    symmetric_projector_hamiltonian,
    upb_hamiltonian,
)
from entgap.operators import random_hermitian
from entgap.sdp import solve_ppt_sdp


def random_two_qubit(seed):
    rng = np.random.default_rng(seed)
    return random_hermitian(4, rng)


def test_known_values():
    cases = [
        (heisenberg_pair().matrix, (2, 2), -1.0, 1e-8),
        (choi_hamiltonian().matrix, (3, 3), (3 - 2 * np.sqrt(3)) / 3, 1e-6),
        (max_entangled_projector_hamiltonian(3).matrix, (3, 3), 2 / 3, 1e-6),
        (symmetric_projector_hamiltonian(3).matrix, (3, 3), 0.5, 1e-6),
        (upb_hamiltonian().matrix, (3, 3), 0.0, 1e-6),
    ]
    for h, dims, expect, tol in cases:
        res = solve_ppt_sdp(h, dims)
        assert res.converged
        assert res.value == pytest.approx(expect, abs=tol)
        # certified value never exceeds the primal objective materially
        assert res.value <= res.objective + 1e-7


def test_certificate_is_self_verifying():
    """The returned (value, P, Q) must satisfy H - value*I = P + Q^{T_A}
    with both PSD: that is the whole point of certification."""
    for seed in range(8):
        h = random_two_qubit(seed)
        res = solve_ppt_sdp(h, (2, 2))
        q = res.witness_q
        p = res.witness_p
        assert np.linalg.eigvalsh(q)[0] >= -1e-12
        assert np.linalg.eigvalsh(p)[0] >= -1e-12
        qta = q.reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4)
        resid = h - res.value * np.eye(4) - p - qta
        assert np.max(np.abs(resid)) < 1e-10


def test_random_two_qubit_contracts():
    for seed in range(50):
        res = solve_ppt_sdp(random_two_qubit(100 + seed), (2, 2))
        assert res.converged
        scale = max(1.0, abs(res.objective))
        assert res.gap <= 1e-7 * scale
        assert res.residuals["primal"] <= 1e-8
        assert res.residuals["dual"] <= 1e-8
        # the primal solution is a PPT state up to tolerance
        rho = res.rho
        assert abs(np.trace(rho).real - 1) < 1e-9
        assert np.linalg.eigvalsh(rho)[0] > -1e-9
        pt = rho.reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4)
        assert np.linalg.eigvalsh(pt)[0] > -1e-7


def test_rectangular_bipartition():
    rng = np.random.default_rng(11)
    h = random_hermitian(6, rng)
    res = solve_ppt_sdp(h, (2, 3))
    assert res.converged
    # PPT minimum cannot lie below the ground energy
    assert res.value >= np.linalg.eigvalsh(h)[0] - 1e-8


def test_input_validation():
    with pytest.raises(ValueError):
        solve_ppt_sdp(np.eye(4), (2, 3))
    bad = np.eye(4, dtype=complex)
    bad[0, 1] = 1.0
    with pytest.raises(ValueError):
        solve_ppt_sdp(bad, (2, 2))


def test_werner_family_boundary():
    """Along the Werner line rho(f) for two qubits the PPT minimum of the
    singlet projector witness equals the known separability boundary."""
    s = np.zeros(4, dtype=complex)
    s[1], s[2] = 1 / np.sqrt(2), -1 / np.sqrt(2)
    proj = np.outer(s, s.conj())
    res = solve_ppt_sdp(np.eye(4) - proj, (2, 2))
    assert res.value == pytest.approx(0.5, abs=1e-8)
