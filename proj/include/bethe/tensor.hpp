#pragma once

#include "bethe/common.hpp"
#include "bethe/kernel.hpp"

#include <vector>

namespace bethe {

/// Qubit q of an n-qubit register is bit (n - 1 - q) of the basis index.
inline constexpr int max_dense_qubits = 13;

/// 4x4 R-matrix; first qubit is the most significant index.
Mat build_r(cplx u, cplx gamma, double tol = 1e-10);

/// Two-qubit swap.
Mat swap_gate();

/// Basis offsets of a qubit window and the bases of the complementary register:
/// full index = bases[i] + offsets[s] for window sub-index s.
struct WindowIndex {
    std::vector<std::size_t> offsets;
    std::vector<std::size_t> bases;
};
WindowIndex window_index(const std::vector<int>& positions, int total);

/// op acting on the listed qubits (0-based, in op's own qubit order), identity elsewhere.
Mat embed(const Mat& op, const std::vector<int>& positions, int total);

/// target <- embed(op, positions, total) * target, without forming the embedding.
void apply_left(const Mat& op, const std::vector<int>& positions, Mat& target);

double ybe_residual(cplx u1, cplx u2, cplx u3, cplx gamma, double tol = 1e-10);

/// Row-to-row monodromy R_{0N}(u - v_N) ... R_{01}(u - v_1) with the ancilla on qubit
/// `ancilla` and spin j on qubit first_spin + j - 1 of a `total`-qubit register.
Mat monodromy_on(cplx u, const ChainSpec& spec, int ancilla, int first_spin, int total);

/// Ancilla is qubit 0, spins are qubits 1..N.
Mat build_monodromy(cplx u, const ChainSpec& spec);

/// Reversed product R_{01}(u - v_1) ... R_{0N}(u - v_N); same layout as build_monodromy.
Mat build_monodromy_reversed(cplx u, const ChainSpec& spec);

/// Ancilla blocks of a monodromy matrix with the ancilla on qubit 0.
struct MonodromyBlocks {
    Mat a, b, c, d;
};
MonodromyBlocks monodromy_blocks(const Mat& t);

/// Ancilla trace A(u) + D(u).
Mat transfer_matrix(cplx u, const ChainSpec& spec);

/// max |R_{12}(u-w) T_1(u) T_2(w) - T_2(w) T_1(u) R_{12}(u-w)|.
double rtt_residual(cplx u, cplx w, const ChainSpec& spec);

/// 0-based permutation: sigma[p] is the label placed at position p.
using Permutation = std::vector<int>;

void check_permutation(const Permutation& sigma);
Permutation compose(const Permutation& s, const Permutation& t); // (s o t)[p] = s[t[p]]
Permutation inverse(const Permutation& s);

/// Pi^sigma |j_1 .. j_M> = |j_sigma(1) .. j_sigma(M)>.
Mat permutation_matrix(const Permutation& sigma);

/// Adjacent-position swaps taking the identity arrangement to sigma (bubble sort).
std::vector<int> bubble_word(const Permutation& sigma);

/// R^sigma from an explicit word of adjacent-position swaps; the word must realise sigma.
Mat r_from_word(const std::vector<int>& word, const Permutation& sigma, const std::vector<cplx>& rapidities,
                cplx gamma, double tol = 1e-10);

/// R^sigma with R^sigma T_1 ... T_M = T_sigma(1) ... T_sigma(M) R^sigma.
Mat permutation_r(const Permutation& sigma, const std::vector<cplx>& rapidities, cplx gamma, double tol = 1e-10);

} // namespace bethe
