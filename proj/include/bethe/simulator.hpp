#pragma once

#include "bethe/common.hpp"
#include "bethe/kernel.hpp"
#include "bethe/synth.hpp"

namespace bethe {

struct StateVector {
    int n_qubits = 0;
    Vec amplitudes;
};

/// Computational basis state; bits[q] is qubit q, qubit 0 most significant.
StateVector basis_state(const std::vector<int>& bits);

/// Applies the gate on its window, identity elsewhere.
StateVector apply_gate(const StateVector& state, const CircuitUnitary& gate);
void apply_gate_inplace(StateVector& state, const CircuitUnitary& gate);

/// Gates applied in order to the initial bitstring.
StateVector run_circuit(const Circuit& circuit);

/// |<a|b>| / (|a| |b|).
double fidelity(const StateVector& a, const StateVector& b);

struct EnergyDiagnostic {
    cplx energy;     // <psi|H|psi> / <psi|psi>
    double residual; // |H psi - E psi| / |psi|
};

/// Periodic chain H = sum_j X_j X_{j+1} + Y_j Y_{j+1} + Delta Z_j Z_{j+1}, applied matrix-free.
Vec apply_hamiltonian(const Vec& psi, int n_sites, cplx delta);
EnergyDiagnostic hamiltonian_residual(const StateVector& state, const ChainSpec& spec);

} // namespace bethe
