#!/usr/bin/env python3
"""Entanglement gaps of two-spin Hamiltonians and the maximal-gap family.

Walks through the basic objects: the certified bracket on the minimum
separable energy, the gap between it and the ground energy, the witness
operator it induces, and the family I - |phi_d><phi_d| that maximizes
the scaled gap at 1 - 1/d.
"""

import numpy as np

from entgap import (
    build_witness,
    entanglement_gap,
    heisenberg_pair,
    max_entangled_projector_hamiltonian,
)

print("=" * 70)
print("Heisenberg antiferromagnet on two qubits")
print("=" * 70)

h = heisenberg_pair()
report = entanglement_gap(h, restarts=32, seed=0)
print(f"spectrum extremes:  E0 = {report.e0:+.6f}   E_max = {report.e_max:+.6f}")
print(f"separable bracket:  [{report.sep.lower:+.9f}, {report.sep.upper:+.9f}]")
print(f"entanglement gap:   [{report.gap_lower:.9f}, {report.gap_upper:.9f}]")
print(f"scaled gap:         {report.scaled_gap_upper:.6f}  (max possible for qubits: 0.5)")

state = report.sep.witness_state
print(f"optimal product factors overlap |<A|B>| = "
      f"{abs(np.vdot(state.locals[0], state.locals[1])):.2e}  (orthogonal)")

z = build_witness(h, report.sep.upper)
print(f"witness Z = H - E_sep I has eigenvalues {np.round(np.linalg.eigvalsh(z.matrix), 6)}")
print("negative direction <=> states certified entangled by energy alone")

print()
print("=" * 70)
print("Maximal-gap family: identity minus a maximally entangled projector")
print("=" * 70)
print(f"{'d':>3} {'scaled gap':>12} {'1 - 1/d':>10} {'bracket width':>14}")
for d in range(2, 7):
    rep = entanglement_gap(max_entangled_projector_hamiltonian(d), restarts=16, seed=0)
    width = rep.sep.upper - rep.sep.lower
    print(f"{d:>3} {rep.scaled_gap_upper:>12.8f} {1 - 1/d:>10.6f} {width:>14.2e}")

print()
print("The gap saturates the theoretical maximum 1 - 1/d for every d;")
print("the PPT lower bound and the seesaw upper bound pinch together,")
print("certifying the value from both sides.")
