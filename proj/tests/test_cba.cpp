#include "bethe/cba.hpp"
#include "bethe/index.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace bethe;

namespace {

std::vector<int> labels(int m) {
    std::vector<int> l;
    for (int a = 1; a <= m; ++a) l.push_back(a);
    return l;
}

/// B(u) from the dense monodromy on ancilla 0 and spins 1..N.
Mat dense_b(cplx u, const ChainSpec& s) {
    const int n = s.n_sites;
    const Eigen::Index dim = Eigen::Index{1} << (n + 1);
    Mat t = Mat::Identity(dim, dim);
    for (int j = 1; j <= n; ++j) t = oracle::embed2(oracle::r_matrix(u - s.inhomogeneities[j - 1], s.gamma), 0, j, n + 1) * t;
    const Eigen::Index h = dim / 2;
    return t.topRightCorner(h, h);
}

Vec dense_aba(const ChainSpec& s) {
    Vec psi = Vec::Zero(Eigen::Index{1} << s.n_sites);
    psi(0) = 1.0;
    for (int a = s.n_magnons; a >= 1; --a) psi = dense_b(s.rapidities[a - 1], s) * psi;
    return psi;
}

} // namespace

TEST(BetheState, ExplicitSumMatchesDenseOracle) {
    std::mt19937_64 rng(31);
    for (int n = 1; n <= 6; ++n)
        for (int m = 0; m <= std::min(n, 3); ++m) {
            const auto s = oracle::make_spec(n, m, rng);
            for (int k = 1; k <= n; ++k)
                for (int r = 0; r <= std::min(k, m); ++r)
                    for (const auto& sel : sector_basis(m, r)) {
                        const auto st = bethe_state_explicit(k, sel.positions, s);
                        ASSERT_EQ(st.amplitudes.size(), static_cast<Eigen::Index>(binomial(k, r)));
                        const Vec ref = oracle::bethe_dense(s, k, sel.positions);
                        EXPECT_LT((embed_sector(st.amplitudes, k, r) - ref).norm(), 1e-12 * std::max(1.0, ref.norm()));
                    }
        }
}

TEST(BetheState, VacuumAndSingleMagnon) {
    std::mt19937_64 rng(32);
    const auto s = oracle::make_spec(5, 2, rng);
    const auto vac = bethe_state_explicit(3, {}, s);
    ASSERT_EQ(vac.amplitudes.size(), 1);
    EXPECT_EQ(vac.amplitudes(0), cplx(1.0, 0.0));
    const auto one = bethe_state_explicit(4, {2}, s);
    const int jk = 2;
    for (int p = 1; p <= 4; ++p) {
        cplx expect = 1.0;
        for (int l = jk; l < jk + p - 1; ++l) expect *= oracle::x(s, 2, l);
        EXPECT_LT(std::abs(one.amplitudes(static_cast<Eigen::Index>(encode({4, {p}})) - 1) - expect), 1e-14);
    }
}

TEST(BetheState, RejectsBadSelections) {
    std::mt19937_64 rng(33);
    const auto s = oracle::make_spec(4, 2, rng);
    EXPECT_THROW(bethe_state_explicit(4, {2, 1}, s), InvalidInput);
    EXPECT_THROW(bethe_state_explicit(4, {3}, s), InvalidInput);
    EXPECT_THROW(bethe_state_explicit(1, {1, 2}, s), InvalidInput);
    EXPECT_THROW(bethe_state_explicit(5, {1}, s), InvalidInput);
}

TEST(MatrixProductState, ReproducesExplicitSum) {
    std::mt19937_64 rng(34);
    for (int n = 2; n <= 7; ++n)
        for (int m = 1; m <= std::min(n, 3); ++m) {
            const auto s = oracle::make_spec(n, m, rng);
            for (int k = 1; k <= n; ++k)
                for (int r = 0; r <= std::min(k, m); ++r)
                    for (const auto& sel : sector_basis(m, r)) {
                        const Vec ref = bethe_state_explicit(k, sel.positions, s).amplitudes;
                        for (auto reg : {MpsRegister::full, MpsRegister::reduced}) {
                            const Vec got = bethe_state_mps(k, sel.positions, s, reg).amplitudes;
                            EXPECT_LT((got - ref).norm(), 1e-10 * ref.norm());
                        }
                    }
        }
}

TEST(LambdaTensor, GaugedFBasisOperators) {
    std::mt19937_64 rng(35);
    const auto s = oracle::make_spec(3, 2, rng);
    for (int j = 1; j <= 3; ++j) {
        const cplx v = s.inhomogeneities[j - 1];
        const Mat dual = oracle::embed2(oracle::r_matrix(s.rapidities[0] - v, s.gamma), 0, 2, 3) *
                         oracle::embed2(oracle::r_matrix(s.rapidities[1] - v, s.gamma), 1, 2, 3);
        Mat f = Mat::Identity(4, 4);
        const cplx d = s.rapidities[0] - s.rapidities[1];
        f(2, 1) = oracle::g(d, s.gamma);
        f(2, 2) = oracle::f(d, s.gamma);
        const Mat fe = oracle::kron(f, Mat::Identity(2, 2));
        const Mat dressed = fe * dual * fe.inverse();
        Mat a(4, 4), c(4, 4);
        for (int r = 0; r < 4; ++r)
            for (int q = 0; q < 4; ++q) {
                a(r, q) = dressed(2 * r, 2 * q);
                c(r, q) = dressed(2 * r + 1, 2 * q);
            }
        auto gj = [&](int a) { return oracle::g(s.rapidities[a - 1] - v, s.gamma); };
        Mat v1 = Mat::Zero(2, 2), v2 = Mat::Zero(2, 2);
        v1(0, 0) = gj(1);
        v1(1, 1) = oracle::sc(s, 1, 2);
        v2(0, 0) = gj(2);
        v2(1, 1) = oracle::sc(s, 2, 1);
        const Mat gauge = oracle::kron(v1, v2);
        EXPECT_LT(max_abs(Mat(gauge - gauge_v(j, s))), 1e-14);
        const auto t = lambda_tensor(j, s);
        EXPECT_LT(max_abs(Mat(lambda_operator(t, 0) - gauge.inverse() * a * gauge)), 1e-12);
        EXPECT_LT(max_abs(Mat(lambda_operator(t, 1) - gauge.inverse() * c * gauge)), 1e-12);
        EXPECT_LT(lambda_gauge_residual(j, s), 1e-12);
    }
}

TEST(LambdaTensor, DiagonalZeroBlocks) {
    std::mt19937_64 rng(36);
    const auto s = oracle::make_spec(4, 3, rng);
    const auto t = lambda_tensor(2, s);
    for (int r = 0; r <= 3; ++r) {
        const auto basis = sector_basis(3, r);
        const Mat& b = t.block(0, r);
        for (std::size_t p = 0; p < basis.size(); ++p) {
            cplx expect = 1.0;
            for (int m : basis[p].positions) expect *= oracle::x(s, m, 2);
            EXPECT_LT(std::abs(b(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)) - expect), 1e-14);
        }
        EXPECT_LT(max_abs(Mat(b - Mat(b.diagonal().asDiagonal()))), 1e-15);
        EXPECT_EQ(t.block(1, r).rows(), static_cast<Eigen::Index>(binomial(3, r - 1)));
    }
}

TEST(AlgebraicAnsatz, HomogeneousStateIsCollinear) {
    std::mt19937_64 rng(37);
    for (int n = 2; n <= 6; ++n)
        for (int m = 1; m <= std::min(n, 3); ++m) {
            const auto s = oracle::make_spec(n, m, rng, true);
            const Vec aba = dense_aba(s);
            EXPECT_LT(max_abs(Vec(aba - aba_reference_state(s))), 1e-12);
            const Vec ref = oracle::bethe_dense(s, n, labels(m));
            const auto cmp = collinearity(ref, aba);
            EXPECT_LT(cmp.residual, 1e-10);
            cplx scalar = 1.0;
            for (int a = 1; a <= m; ++a) {
                scalar /= oracle::g(s.rapidities[a - 1], s.gamma);
                for (int b = 1; b <= m; ++b)
                    if (b != a) scalar *= oracle::sc(s, a, b);
            }
            EXPECT_LT(std::abs(cmp.scalar - scalar) / std::abs(scalar), 1e-9);
            const auto lib = aba_oracle_comparison(s);
            EXPECT_LT(lib.residual, 1e-10);
            EXPECT_LT(std::abs(lib.predicted - scalar) / std::abs(scalar), 1e-12);
        }
}

TEST(AlgebraicAnsatz, InhomogeneousStateCarriesSiteWeights) {
    std::mt19937_64 rng(38);
    for (int m = 1; m <= 3; ++m) {
        const auto s = oracle::make_spec(5, m, rng);
        const Vec aba = restrict_sector(dense_aba(s), 5, m);
        EXPECT_LT(collinearity(aba, aba_coordinate_state(s)).residual, 1e-12);
        EXPECT_GT(collinearity(aba, restrict_sector(oracle::bethe_dense(s, 5, labels(m)), 5, m)).residual, 1e-4);
    }
}

TEST(OvchinnikovForm, TransposedWeightsMatchReversedMonodromy) {
    std::mt19937_64 rng(39);
    for (int n = 2; n <= 6; ++n)
        for (int m = 1; m <= 2; ++m) {
            const auto s = oracle::make_spec(n, m, rng, true);
            const Vec rev = restrict_sector(aba_reversed_state(s), n, m);
            EXPECT_LT(collinearity(rev, ovchinnikov_state(s, OvchinnikovWeights::transposed)).residual, 1e-10);
        }
}

TEST(OvchinnikovForm, AsWrittenWeightsDifferForTwoMagnons) {
    std::mt19937_64 rng(40);
    const auto s = oracle::make_spec(5, 2, rng, true);
    EXPECT_GT(ovchinnikov_comparison(s).residual, 1e-3);
}

TEST(AmplitudeMap, CollinearWithPermutationSign) {
    std::mt19937_64 rng(41);
    for (int n = 2; n <= 6; ++n)
        for (int m = 1; m <= 2; ++m) {
            const auto s = oracle::make_spec(n, m, rng, true);
            EXPECT_LT(ruiz_amplitude_map(s, true).residual, 1e-10);
        }
    const auto s = oracle::make_spec(5, 2, rng, true);
    EXPECT_GT(ruiz_amplitude_map(s, false).residual, 1e-3);
    auto inh = oracle::make_spec(4, 2, rng);
    EXPECT_THROW(ruiz_amplitude_map(inh), InvalidInput);
}

TEST(PermutationSum, SizeGuard) {
    std::mt19937_64 rng(42);
    const auto s = oracle::make_spec(30, 10, rng);
    auto one = [](int, int) { return cplx{1.0, 0.0}; };
    EXPECT_THROW(permutation_sum(30, labels(10), 30, one, one), SizeGuard);
}
