#pragma once

#include "bethe/cba.hpp"
#include "bethe/common.hpp"
#include "bethe/kernel.hpp"

#include <vector>

namespace bethe {

/// Bethe family at support k and r magnons: columns are the states with selections drawn
/// from 1..min(k, M) in chi order; rows run over sector(k, r).
Mat bethe_family(int k, int r, const ChainSpec& spec);

/// C = B^dagger B.
Mat gram_matrix(int k, int r, const ChainSpec& spec);

struct OrthFactor {
    int k = 0;
    int r = 0;
    Mat x;     // upper triangular, orthonormalises the family
    Mat x_inv; // upper triangular, x_inv^dagger x_inv = C
};

/// Upper factor of the Gram matrix, taken from a QR factorisation of the family.
OrthFactor orth_factor(int k, int r, const ChainSpec& spec);

/// Leading-minor determinant route; sector dimension at most 10.
OrthFactor orth_factor_determinant(int k, int r, const ChainSpec& spec);

struct ShortTensor {
    int site = 0;
    int k = 0;
    std::vector<Mat> zero; // index r = 0..k; binom(k-1, r) x binom(k, r)
    std::vector<Mat> one;  // index r = 0..k; binom(k-1, r-1) x binom(k, r)

    const Mat& block(int i, int r) const { return i == 0 ? zero.at(r) : one.at(r); }
};

/// Linear-solve route.
ShortTensor short_tensor(int j, const ChainSpec& spec);

/// Cramer's-rule route with determinant ratios.
ShortTensor short_tensor_cramer(int j, const ChainSpec& spec);

enum class GateKind { long_gate, short_gate };

struct CircuitUnitary {
    int site = 0;            // 1-based j
    std::vector<int> window; // 0-based qubits, most significant first
    Mat matrix;
    GateKind kind = GateKind::long_gate;
};

CircuitUnitary long_unitary(int j, const ChainSpec& spec);
CircuitUnitary short_unitary(int j, const ChainSpec& spec);

/// Max residual of Omega^{[i,r]} = L^{[r-i]} Lambda^{[i,r]} at site j (k = N - j + 1 <= M).
double ruiz_equivalence_check(int j, const ChainSpec& spec);

struct RecursionEntry {
    GateKind kind;
    int k;
    int r;
    double residual;
};

struct RecursionReport {
    std::vector<RecursionEntry> entries;
    double max_residual = 0.0;
};

/// C_k = Lambda0^dagger C_{k-1} Lambda0 + Lambda1^dagger C_{k-1}^{[r-1]} Lambda1 for k = M+1..N
/// and the Omega analogue for k = 2..M.
RecursionReport unitarity_recursions(const ChainSpec& spec);

struct Circuit {
    int n_qubits = 0;
    std::vector<int> initial; // one bit per qubit
    std::vector<CircuitUnitary> gates;
};

Circuit synthesize_circuit(const ChainSpec& spec);

} // namespace bethe
