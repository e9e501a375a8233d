#include "bethe/simulator.hpp"

#include "bethe/tensor.hpp"

namespace bethe {

namespace {

constexpr int max_sim_qubits = 12;

std::size_t bit_of(int q, int n) { return std::size_t{1} << (n - 1 - q); }

} // namespace

StateVector basis_state(const std::vector<int>& bits) {
    const int n = static_cast<int>(bits.size());
    if (n > max_sim_qubits) throw SizeGuard("basis_state: more than 12 qubits");
    std::size_t idx = 0;
    for (int q = 0; q < n; ++q) {
        if (bits[q] != 0 && bits[q] != 1) throw InvalidInput("basis_state: bits must be 0 or 1");
        if (bits[q]) idx |= bit_of(q, n);
    }
    StateVector s{n, Vec::Zero(Eigen::Index{1} << n)};
    s.amplitudes(static_cast<Eigen::Index>(idx)) = 1.0;
    return s;
}

void apply_gate_inplace(StateVector& state, const CircuitUnitary& gate) {
    if (state.amplitudes.size() != (Eigen::Index{1} << state.n_qubits))
        throw InvalidInput("apply_gate: amplitude count does not match qubit count");
    for (int q : gate.window)
        if (q < 0 || q >= state.n_qubits) throw InvalidInput("apply_gate: window outside register");
    const auto w = window_index(gate.window, state.n_qubits);
    const auto d = static_cast<Eigen::Index>(w.offsets.size());
    if (gate.matrix.rows() != d || gate.matrix.cols() != d) throw InvalidInput("apply_gate: gate dimension mismatch");
    Vec in(d);
    for (std::size_t base : w.bases) {
        for (Eigen::Index s = 0; s < d; ++s) in(s) = state.amplitudes(static_cast<Eigen::Index>(base + w.offsets[s]));
        const Vec out = gate.matrix * in;
        for (Eigen::Index s = 0; s < d; ++s) state.amplitudes(static_cast<Eigen::Index>(base + w.offsets[s])) = out(s);
    }
}

StateVector apply_gate(const StateVector& state, const CircuitUnitary& gate) {
    StateVector out = state;
    apply_gate_inplace(out, gate);
    return out;
}

StateVector run_circuit(const Circuit& circuit) {
    if (circuit.n_qubits > max_sim_qubits) throw SizeGuard("run_circuit: N > 12");
    if (static_cast<int>(circuit.initial.size()) != circuit.n_qubits) throw InvalidInput("run_circuit: initial bitstring length");
    StateVector s = basis_state(circuit.initial);
    for (const auto& g : circuit.gates) apply_gate_inplace(s, g);
    return s;
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.n_qubits != b.n_qubits || a.amplitudes.size() != b.amplitudes.size())
        throw InvalidInput("fidelity: register sizes differ");
    const double na = a.amplitudes.norm();
    const double nb = b.amplitudes.norm();
    if (na == 0.0 || nb == 0.0) throw InvalidInput("fidelity: zero vector");
    return std::min(1.0, std::abs(a.amplitudes.dot(b.amplitudes)) / (na * nb));
}

Vec apply_hamiltonian(const Vec& psi, int n_sites, cplx delta) {
    if (n_sites < 2) throw InvalidInput("apply_hamiltonian: need at least two sites");
    if (n_sites > 16) throw SizeGuard("apply_hamiltonian: N > 16");
    if (psi.size() != (Eigen::Index{1} << n_sites)) throw InvalidInput("apply_hamiltonian: dimension mismatch");
    Vec out = Vec::Zero(psi.size());
    const int bonds = n_sites == 2 ? 1 : n_sites;
    const double weight = n_sites == 2 ? 2.0 : 1.0;
    for (int a = 0; a < bonds; ++a) {
        const std::size_t ma = bit_of(a, n_sites);
        const std::size_t mb = bit_of((a + 1) % n_sites, n_sites);
        for (std::size_t x = 0; x < static_cast<std::size_t>(psi.size()); ++x) {
            const bool ba = x & ma;
            const bool bb = x & mb;
            const auto ix = static_cast<Eigen::Index>(x);
            out(ix) += weight * (ba == bb ? delta : -delta) * psi(ix);
            if (ba != bb) out(static_cast<Eigen::Index>(x ^ ma ^ mb)) += weight * 2.0 * psi(ix);
        }
    }
    return out;
}

EnergyDiagnostic hamiltonian_residual(const StateVector& state, const ChainSpec& spec) {
    if (!spec.homogeneous()) throw InvalidInput("hamiltonian_residual: homogeneous spec required");
    if (state.n_qubits > 10) throw SizeGuard("hamiltonian_residual: N > 10");
    if (state.n_qubits != spec.n_sites) throw InvalidInput("hamiltonian_residual: state size differs from chain length");
    const double nrm = state.amplitudes.norm();
    if (nrm == 0.0) throw InvalidInput("hamiltonian_residual: zero vector");
    const Vec psi = state.amplitudes / nrm;
    const Vec h = apply_hamiltonian(psi, spec.n_sites, spec.delta());
    const cplx e = psi.dot(h);
    return {e, (h - e * psi).norm()};
}

} // namespace bethe
