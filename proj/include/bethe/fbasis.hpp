#pragma once

#include "bethe/common.hpp"
#include "bethe/kernel.hpp"
#include "bethe/tensor.hpp"

#include <vector>

namespace bethe {

Mat build_f2(cplx u, cplx gamma, double tol = 1e-10);

/// F_{12..M}: product over a = M-1 (leftmost) down to 1 of
/// |0><0|_a + |1><1|_a R_{aM} R_{a,M-1} ... R_{a,a+1}.
Mat build_fM(const std::vector<cplx>& rapidities, cplx gamma, double tol = 1e-10);

/// (Pi^sigma)^dagger F(u_sigma(1), .., u_sigma(M)) Pi^sigma.
Mat build_f_sigma(const Permutation& sigma, const std::vector<cplx>& rapidities, cplx gamma, double tol = 1e-10);

/// max |F_sigma^{-1} F - R^sigma|.
double rfm_residual(const Permutation& sigma, const std::vector<cplx>& rapidities, cplx gamma, double tol = 1e-10);

/// max |R_{12}(u) - F_{21}^{-1}(-u) F_{12}(u)|.
double rff_residual(cplx u, cplx gamma, double tol = 1e-10);

/// Twist relation F T_1..T_M F^{-1} = F_sigma T_sigma(1)..T_sigma(M) F_sigma^{-1} with
/// T_a = T(u_a) on ancilla a. Requires M <= 3 and N <= 2.
double twist_consistency_residual(const Permutation& sigma, const ChainSpec& spec);

/// Column-to-column product R_{1j}(u_1 - v_j) ... R_{Mj}(u_M - v_j); ancillae on qubits
/// 0..M-1, spin j on qubit M. j is 1-based.
Mat dual_monodromy(int j, const ChainSpec& spec);

/// Same product with an explicit spectral parameter v.
Mat dual_monodromy_at(cplx v, const std::vector<cplx>& rapidities, cplx gamma, double tol = 1e-10);

/// T_1(v1) T_2(v2) R_{12}(v1 - v2) - R_{12}(v1 - v2) T_2(v2) T_1(v1), max norm.
double dual_rtt_residual(cplx v1, cplx v2, const std::vector<cplx>& rapidities, cplx gamma, double tol = 1e-10,
                         const Mat* f = nullptr);

/// (F x 1) T (F x 1)^{-1}.
Mat dress_dual(const Mat& dual, const Mat& f);

/// Dressed dual monodromy at spectral parameter v.
Mat dressed_dual_at(cplx v, const std::vector<cplx>& rapidities, cplx gamma, double tol = 1e-10);

/// Max deviation of (Pi^sigma)^dagger T~(v; u_sigma) Pi^sigma from T~(v; u).
double exchange_symmetry_residual(const Permutation& sigma, cplx v, const std::vector<cplx>& rapidities, cplx gamma,
                                  double tol = 1e-10);

/// Spin blocks <s'|T|s> of an operator whose spin is the last qubit.
struct SpinBlocks {
    Mat a; // <0|T|0>
    Mat b; // <0|T|1>
    Mat c; // <1|T|0>
    Mat d; // <1|T|1>
};
SpinBlocks spin_blocks(const Mat& dual);

/// Closed forms of A~_j, B~_j, C~_j on the M ancillae.
struct FBasisOperators {
    Mat a, b, c;
};
FBasisOperators fbasis_operators(int j, const ChainSpec& spec);

} // namespace bethe
