import numpy as np
import pytest

from entgap.lattices import LatticeSpec, assemble
from entgap.models import (
    heisenberg_pair,
    max_entangled_projector_hamiltonian,
    max_entangled_state,
    symmetric_projector_hamiltonian,
    upb_hamiltonian,
    xy_pair,
)
from entgap.operators import (
    HermitianOperator,
    eig,
    kron,
    random_hermitian,
    random_state_vector,
    random_unitary,
)
from entgap.separability import (
    ProductState,
    bipartite_lattice_sep_energy,
    build_witness,
    cluster_sep_energy,
    entanglement_gap,
    geometric_overlap,
    ppt_lower,
    seesaw_upper,
    sep_bracket,
)


def random_two_qubit(seed, scale=1.0):
    rng = np.random.default_rng(seed)
    return HermitianOperator(random_hermitian(4, rng, scale=scale), (2, 2))


def test_seesaw_heisenberg_orthogonal_factors():
    e, state = seesaw_upper(heisenberg_pair(), restarts=16, seed=0)
    assert e == pytest.approx(-1.0, abs=1e-10)
    assert abs(np.vdot(state.locals[0], state.locals[1])) < 1e-6


def test_seesaw_symmetric_projector_half():
    for d in range(2, 7):
        e, _ = seesaw_upper(symmetric_projector_hamiltonian(d), restarts=16, seed=0)
        assert e == pytest.approx(0.5, abs=1e-8)


def test_seesaw_triangle_mercedes():
    asm = assemble(LatticeSpec.triangle(), heisenberg_pair())
    e, state = seesaw_upper(asm.dense, restarts=32, seed=0)
    assert e == pytest.approx(-1.5, abs=1e-9)
    # pairwise Bloch vectors sit at 120 degrees: every pair expectation -1/2
    # (the optimum manifold is energy-flat, so factors land within ~1e-4
    # of it when the total energy converges to 1e-12)
    for i, j in ((0, 1), (1, 2), (0, 2)):
        pair = np.kron(state.locals[i], state.locals[j])
        assert heisenberg_pair().expectation(pair) == pytest.approx(-0.5, abs=1e-6)


def test_seesaw_energy_trace_non_increasing():
    for seed in range(5):
        h = random_two_qubit(seed)
        _, _, trace = seesaw_upper(h, restarts=4, seed=seed, return_trace=True)
        diffs = np.diff(np.asarray(trace))
        assert np.all(diffs <= 1e-12)


def test_seesaw_validation():
    with pytest.raises(ValueError):
        seesaw_upper(HermitianOperator(np.eye(4), (4,)))
    with pytest.raises(ValueError):
        seesaw_upper(heisenberg_pair(), restarts=0)


def test_ppt_equals_seesaw_for_two_qubits_200():
    """PPT is exact for 2x2, so the bracket closes to 1e-6 there."""
    worst = 0.0
    for seed in range(200):
        h = random_two_qubit(seed)
        up, _ = seesaw_upper(h, restarts=12, seed=seed)
        lo, _ = ppt_lower(h)
        assert lo <= up + 1e-7
        worst = max(worst, abs(up - lo))
    assert worst <= 1e-6


def test_bracket_validity_on_models():
    for h in (
        heisenberg_pair(),
        xy_pair(0.3, 1.1),
        max_entangled_projector_hamiltonian(3),
        symmetric_projector_hamiltonian(3),
        upb_hamiltonian(),
    ):
        b = sep_bracket(h, restarts=16, seed=1)
        assert b.lower <= b.upper + 1e-7
        assert b.upper == pytest.approx(b.witness_state.energy(h), abs=1e-12)


def test_upb_relaxation_gap_exceeds_percent():
    b = sep_bracket(upb_hamiltonian(), restarts=64, seed=0)
    assert b.upper - b.lower > 0.01
    # golden number: the Tiles complement keeps product states this far out
    assert b.upper == pytest.approx(0.028416213336, abs=1e-6)
    assert b.lower == pytest.approx(0.0, abs=1e-6)


def test_gap_report_heisenberg():
    rep = entanglement_gap(heisenberg_pair(), restarts=16, seed=0)
    assert rep.e0 == pytest.approx(-3.0, abs=1e-10)
    assert rep.e_max == pytest.approx(1.0, abs=1e-10)
    assert rep.gap_lower == pytest.approx(2.0, abs=1e-7)
    assert rep.gap_upper == pytest.approx(2.0, abs=1e-10)
    assert rep.scaled_gap_upper == pytest.approx(0.5, abs=1e-10)
    assert rep.witness_offset == rep.sep.upper


def test_gap_report_maximal_family_scaled():
    for d in range(2, 5):
        rep = entanglement_gap(
            max_entangled_projector_hamiltonian(d), restarts=12, seed=0
        )
        assert rep.scaled_gap_upper == pytest.approx(1 - 1 / d, abs=1e-6)
        assert rep.scaled_gap_lower == pytest.approx(1 - 1 / d, abs=1e-6)


def test_gap_report_zero_gap_point():
    rep = entanglement_gap(xy_pair(0.6, 0.8), restarts=16, seed=0)
    assert abs(rep.gap_upper) <= 1e-7
    assert rep.gap_lower >= -1e-7


def test_local_unitary_invariance_of_gap():
    rng = np.random.default_rng(42)
    for _ in range(50):
        h = HermitianOperator(random_hermitian(4, rng), (2, 2))
        u = np.kron(random_unitary(2, rng), random_unitary(2, rng))
        h2 = HermitianOperator(u @ h.matrix @ u.conj().T, (2, 2))
        r1 = entanglement_gap(h, restarts=10, seed=1)
        r2 = entanglement_gap(h2, restarts=10, seed=1)
        assert r1.gap_upper == pytest.approx(r2.gap_upper, abs=1e-6)
        assert r1.gap_lower == pytest.approx(r2.gap_lower, abs=1e-6)


def test_level_raising_operator_inequality():
    """Scaling to [0,1] and lifting every excited level to 1 can only
    raise energies: I - |E0><E0| dominates the scaled Hamiltonian."""
    rng = np.random.default_rng(7)
    for _ in range(20):
        h = random_hermitian(4, rng)
        w, v = np.linalg.eigh(h)
        scaled = (h - w[0] * np.eye(4)) / (w[-1] - w[0])
        lifted = np.eye(4) - np.outer(v[:, 0], v[:, 0].conj())
        diff_w = np.linalg.eigvalsh(lifted - scaled)
        assert diff_w[0] >= -1e-10
        for _ in range(5):
            psi = random_state_vector(4, rng)
            e_scaled = float(np.real(np.vdot(psi, scaled @ psi)))
            e_lifted = float(np.real(np.vdot(psi, lifted @ psi)))
            assert e_scaled <= e_lifted + 1e-10


def test_bipartite_lattice_sep_energy_ring_and_star():
    h = heisenberg_pair()
    ring4 = LatticeSpec.ring(4)
    per_bond, state = bipartite_lattice_sep_energy(ring4, h, restarts=16, seed=0)
    assert per_bond == pytest.approx(-1.0, abs=1e-9)
    asm = assemble(ring4, h)
    assert asm.dense.expectation(state.vector()) == pytest.approx(-4.0, abs=1e-9)
    star6 = LatticeSpec.star(6)
    per_bond6, state6 = bipartite_lattice_sep_energy(star6, h, restarts=16, seed=0)
    asm6 = assemble(star6, h)
    assert asm6.dense.expectation(state6.vector()) == pytest.approx(-6.0, abs=1e-9)


def test_bipartite_lattice_xy_zero_gap_ring():
    spec = LatticeSpec.ring(6)
    coupling = xy_pair(1.0, 0.0)
    per_bond, _ = bipartite_lattice_sep_energy(spec, coupling, restarts=16, seed=0)
    assert per_bond == pytest.approx(-1.0, abs=1e-9)
    e0 = eig(assemble(spec, coupling).dense).e0
    assert e0 / 6 == pytest.approx(per_bond, abs=1e-9)


def test_bipartite_lattice_rejects_frustrated_graph():
    with pytest.raises(ValueError):
        bipartite_lattice_sep_energy(LatticeSpec.triangle(), heisenberg_pair())


def test_cluster_sep_energy_values():
    h = heisenberg_pair()
    assert cluster_sep_energy(2, h, restarts=8, seed=0) == pytest.approx(-1.0, abs=1e-9)
    assert cluster_sep_energy(3, h, restarts=16, seed=0) == pytest.approx(-0.5, abs=1e-9)
    assert cluster_sep_energy(4, h, restarts=16, seed=0) == pytest.approx(-1 / 3, abs=1e-8)
    with pytest.raises(ValueError):
        cluster_sep_energy(1, h)


def test_geometric_overlap():
    for d in (2, 3, 4):
        assert geometric_overlap(max_entangled_state(d), (d, d)) == pytest.approx(
            1 / d, abs=1e-12
        )
    rng = np.random.default_rng(9)
    a, b = random_state_vector(2, rng), random_state_vector(3, rng)
    assert geometric_overlap(np.kron(a, b), (2, 3)) == pytest.approx(1.0, abs=1e-12)


def test_geometric_overlap_matches_seesaw_oracle():
    rng = np.random.default_rng(10)
    for _ in range(5):
        psi = random_state_vector(4, rng)
        overlap = geometric_overlap(psi, (2, 2))
        neg_proj = HermitianOperator(-np.outer(psi, psi.conj()), (2, 2))
        e, _ = seesaw_upper(neg_proj, restarts=12, seed=3)
        assert overlap == pytest.approx(-e, abs=1e-8)


def test_build_witness():
    z = build_witness(heisenberg_pair(), -1.0)
    assert np.allclose(np.linalg.eigvalsh(z.matrix), [-2, 2, 2, 2])
    zero_gap = build_witness(xy_pair(0.6, 0.8), eig(xy_pair(0.6, 0.8)).e0)
    assert np.linalg.eigvalsh(zero_gap.matrix)[0] >= -1e-10
    rng = np.random.default_rng(11)
    for _ in range(20):
        a = random_state_vector(2, rng)
        b = random_state_vector(2, rng)
        assert z.expectation(np.kron(a, b)) >= -1e-9


def test_lattice_witness_decomposes_over_bonds():
    """tr[Z_lattice rho] evaluated through bond marginals equals the
    global expectation (2-local energies only see pair marginals)."""
    from entgap.lattices import bond_energy_decomposition

    h = heisenberg_pair()
    spec = LatticeSpec.ring(4)
    asm = assemble(spec, h)
    e_sep = -1.0
    rng = np.random.default_rng(12)
    a = rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16))
    rho_m = a @ a.conj().T
    rho_m /= np.trace(rho_m).real
    rho = HermitianOperator(rho_m, asm.matrix_free.dims)
    witness_global = asm.dense.matrix - len(spec.bonds) * e_sep * np.eye(16)
    direct = float(np.real(np.vdot(witness_global.conj().T, rho_m)))
    via_bonds = sum(bond_energy_decomposition(asm, rho)) - len(spec.bonds) * e_sep
    assert abs(direct - via_bonds) < 1e-10


def test_ppt_lower_multipartite_uses_best_cut():
    asm = assemble(LatticeSpec.chain(3), heisenberg_pair())
    val, res = ppt_lower(asm.dense)
    e0 = eig(asm.dense).e0
    up, _ = seesaw_upper(asm.dense, restarts=16, seed=0)
    assert e0 - 1e-8 <= val <= up + 1e-7


def test_product_state_validation():
    with pytest.raises(ValueError):
        ProductState((np.array([1.0, 1.0]),))


def test_gap_report_lanczos_branch_matches_dense():
    asm = assemble(LatticeSpec.ring(4), heisenberg_pair())
    dense_rep = entanglement_gap(asm.dense, restarts=8, seed=0)
    lanczos_rep = entanglement_gap(asm.dense, restarts=8, seed=0, dense_cutoff=8)
    assert lanczos_rep.e0 == pytest.approx(dense_rep.e0, abs=1e-8)
    assert lanczos_rep.e_max == pytest.approx(dense_rep.e_max, abs=1e-8)
    assert lanczos_rep.gap_upper == pytest.approx(dense_rep.gap_upper, abs=1e-8)
