#pragma once

#include "bethe/common.hpp"
#include "bethe/index.hpp"
#include "bethe/kernel.hpp"

#include <functional>
#include <vector>

namespace bethe {

/// V_j = (x)_a diag(g_{aj}, prod_{b != a} f_{ab}).
Mat gauge_v(int j, const ChainSpec& spec);

/// Sector blocks of the site-j tensor; block(i, r) maps sector(M, r) to sector(M, r - i).
struct LambdaTensor {
    int site = 0;
    int n_magnons = 0;
    std::vector<Mat> zero; // index r = 0..M
    std::vector<Mat> one;  // index r = 0..M, empty 0 x binom(M,0) at r = 0

    const Mat& block(int i, int r) const { return i == 0 ? zero.at(r) : one.at(r); }
};

LambdaTensor lambda_tensor(int j, const ChainSpec& spec);

/// Assembled 2^M x 2^M operator Lambda_j^i.
Mat lambda_operator(const LambdaTensor& t, int i);

/// max over i of |Lambda_j^i - V_j^{-1} T~_j^i V_j|, with T~_j^i = <i|T~_j|0> on the spin.
double lambda_gauge_residual(int j, const ChainSpec& spec);

/// r-magnon state over the last k spins; selection holds magnon labels in 1..M.
struct BetheState {
    int k = 0;
    int r = 0;
    std::vector<int> selection;
    Vec amplitudes; // over sector(k, r) in chi order
};

/// Explicit plane-wave sum.
BetheState bethe_state_explicit(int k, const std::vector<int>& selection, const ChainSpec& spec);

enum class MpsRegister { full, reduced };

/// Sequential sector-block contraction <0| Lambda_N .. Lambda_{j_k} |selection>.
BetheState bethe_state_mps(int k, const std::vector<int>& selection, const ChainSpec& spec,
                           MpsRegister reg = MpsRegister::full);

/// Generic sum over positions n_1 < .. < n_r of the last k sites and over orderings a of the
/// labels: prod_{q<p} pair(a_q, a_p) * prod_p site(a_p, n_p) [* sign(a)]. Sites are absolute.
using PairWeight = std::function<cplx(int, int)>;
using SiteWeight = std::function<cplx(int, int)>;
Vec permutation_sum(int k, const std::vector<int>& labels, int n_sites, const PairWeight& pair, const SiteWeight& site,
                    bool signed_sum = false);

/// B(u_1) .. B(u_M) |0..0> as a 2^N vector.
Vec aba_reference_state(const ChainSpec& spec);

/// Same with the reversed monodromy R_01 .. R_0N.
Vec aba_reversed_state(const ChainSpec& spec);

/// Explicit sum with an extra g(u_{a_p} - v_{n_p}) per magnon; proportional to the ABA state.
Vec aba_coordinate_state(const ChainSpec& spec);

struct StateComparison {
    double residual = 0.0; // collinearity residual
    cplx scalar{};         // fitted c with reference ~ c * candidate
    cplx predicted{};      // closed-form scalar, where one is printed
};

/// Oracle (k = N, all magnons) against the ABA state.
StateComparison aba_oracle_comparison(const ChainSpec& spec);

enum class OvchinnikovWeights {
    as_written, // prod_{q<p} 1 / s_{a_p a_q}
    transposed  // prod_{q<p} 1 / s_{a_q a_p}
};

/// Sector vector over (N, M) with g_{a_p,n_p} prod_{j > n_p} x_{a_p,j} tails.
Vec ovchinnikov_state(const ChainSpec& spec, OvchinnikovWeights w = OvchinnikovWeights::as_written);

/// prod_a f_{a1} / (g_{a1} f_{aN}) prod_{b != a} s_{ab} s_{ba}.
cplx ovchinnikov_prefactor(const ChainSpec& spec);

/// Oracle against the Ovchinnikov state.
StateComparison ovchinnikov_comparison(const ChainSpec& spec, OvchinnikovWeights w = OvchinnikovWeights::as_written);

/// Replacement s_ab -> sinh(u_a + i g) sinh(u_b + i g) / (sinh(i g) sinh(u_a - u_b + i g)) in the
/// explicit sum over the full chain; compared against the oracle. Homogeneous chains only.
StateComparison ruiz_amplitude_map(const ChainSpec& spec, bool signed_sum = false);

/// Replacement amplitude for a pair (1-based labels), rapidities measured from v_1.
cplx ruiz_scattering(int a, int b, const ChainSpec& spec);

} // namespace bethe
