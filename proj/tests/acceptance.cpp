// Acceptance criteria 1-14. One PASS/FAIL line per criterion, clause values indented below.

#include "bethe/cba.hpp"
#include "bethe/fbasis.hpp"
#include "bethe/index.hpp"
#include "bethe/simulator.hpp"
#include "bethe/synth.hpp"
#include "bethe/tensor.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace bethe;

namespace {

struct Clause {
    std::string name;
    double value;
    double tol;
    bool pass;
};

struct Criterion {
    int id;
    std::string title;
    std::vector<Clause> clauses;
    std::vector<std::string> notes;

    void below(const std::string& name, double value, double tol) { clauses.push_back({name, value, tol, value < tol}); }
    void at_most(const std::string& name, double value, double tol) { clauses.push_back({name, value, tol, value <= tol}); }
    void note(const std::string& text) { notes.push_back(text); }
    bool pass() const {
        return !clauses.empty() && std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.pass; });
    }
};

std::vector<int> labels(int m) {
    std::vector<int> l;
    for (int a = 1; a <= m; ++a) l.push_back(a);
    return l;
}

Permutation identity_perm(int m) {
    Permutation p(m);
    for (int a = 0; a < m; ++a) p[a] = a;
    return p;
}

double rel(const Mat& diff, const Mat& ref) { return max_abs(diff) / std::max(1e-300, max_abs(ref)); }

std::string fmt(const char* f, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// 1
Criterion yang_baxter() {
    Criterion c{1, "Yang-Baxter equation, 100 random complex triples", {}, {}};
    std::mt19937_64 rng(101);
    const cplx gamma{0.7, 0.15};
    double lib = 0.0, dense = 0.0;
    for (int t = 0; t < 100; ++t) {
        const cplx a = oracle::rnd(rng, 0.6), b = oracle::rnd(rng, 0.6), d = oracle::rnd(rng, 0.6);
        lib = std::max(lib, ybe_residual(a, b, d, gamma));
        const Mat r12 = oracle::embed2(build_r(a - b, gamma), 0, 1, 3);
        const Mat r13 = oracle::embed2(build_r(a - d, gamma), 0, 2, 3);
        const Mat r23 = oracle::embed2(build_r(b - d, gamma), 1, 2, 3);
        dense = std::max(dense, max_abs(Mat(r12 * r13 * r23 - r23 * r13 * r12)));
    }
    c.below("ybe_residual", lib, 1e-12);
    c.below("ybe_residual_dense_embedding", dense, 1e-12);
    return c;
}

// 2
Criterion regularity() {
    Criterion c{2, "R(0) equals the swap exactly; pseudo-unitarity over 100 random u", {}, {}};
    const cplx gamma{0.7, 0.15};
    Mat p = Mat::Zero(4, 4);
    p(0, 0) = p(1, 2) = p(2, 1) = p(3, 3) = 1.0;
    c.at_most("max|R(0) - P|", max_abs(Mat(build_r(0.0, gamma) - p)), 0.0);
    std::mt19937_64 rng(102);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const cplx u = oracle::rnd(rng, 0.6);
        const Mat r21 = p * build_r(-u, gamma) * p;
        worst = std::max(worst, max_abs(Mat(build_r(u, gamma) * r21 - Mat::Identity(4, 4))));
    }
    c.below("max|R12(u) R21(-u) - 1|", worst, 1e-12);
    return c;
}

// 3
Criterion f_basis_definitions() {
    Criterion c{3, "F-matrix factorisation, permuted factorisation on S3, two-site F", {}, {}};
    std::mt19937_64 rng(103);
    const cplx gamma{0.7, 0.15};
    double rff = 0.0;
    for (int t = 0; t < 100; ++t) rff = std::max(rff, rff_residual(oracle::rnd(rng, 0.6), gamma));
    c.below("R12(u) = F21(-u)^-1 F12(u)", rff, 1e-12);

    double rfm = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<cplx> u;
        for (int a = 0; a < 3; ++a) u.push_back(cplx{0.4 * a, 0.0} + oracle::rnd(rng, 0.15));
        Permutation sigma = identity_perm(3);
        do rfm = std::max(rfm, rfm_residual(sigma, u, gamma));
        while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    c.below("R^sigma = F_sigma^-1 F, all sigma in S3", rfm, 1e-10);

    double f2 = 0.0;
    for (int t = 0; t < 20; ++t) {
        const cplx u1 = oracle::rnd(rng, 0.5), u2 = oracle::rnd(rng, 0.5);
        Mat printed = Mat::Identity(4, 4);
        printed(2, 1) = oracle::g(u1 - u2, gamma);
        printed(2, 2) = oracle::f(u1 - u2, gamma);
        f2 = std::max(f2, max_abs(Mat(build_fM({u1, u2}, gamma) - printed)));
    }
    c.below("build_fM(M=2) vs printed two-site F", f2, 1e-14);
    return c;
}

// 4
Criterion exchange_symmetry() {
    Criterion c{4, "Exchange symmetry of dressed dual monodromies, all transpositions, M <= 4", {}, {}};
    std::mt19937_64 rng(104);
    double worst = 0.0;
    for (int m = 2; m <= 4; ++m) {
        const auto s = oracle::make_spec(3, m, rng);
        std::vector<cplx> vs = s.inhomogeneities;
        vs.push_back(oracle::rnd(rng, 0.4));
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q) {
                Permutation sigma = identity_perm(m);
                std::swap(sigma[p], sigma[q]);
                for (cplx v : vs) worst = std::max(worst, exchange_symmetry_residual(sigma, v, s.rapidities, s.gamma));
            }
    }
    c.below("max residual", worst, 1e-10);
    return c;
}

// 5
Criterion closed_forms() {
    Criterion c{5, "F-basis closed forms against dressed dual blocks, M <= 3", {}, {}};
    std::mt19937_64 rng(105);
    double worst = 0.0;
    for (int m = 1; m <= 3; ++m) {
        const auto s = oracle::make_spec(4, m, rng);
        const Mat f = build_fM(s.rapidities, s.gamma);
        const Mat fe = oracle::kron(f, Mat::Identity(2, 2));
        for (int j = 1; j <= s.n_sites; ++j) {
            const cplx v = s.inhomogeneities[j - 1];
            Mat dual = Mat::Identity(Eigen::Index{2} << m, Eigen::Index{2} << m);
            for (int a = 0; a < m; ++a) dual = dual * oracle::embed2(oracle::r_matrix(s.rapidities[a] - v, s.gamma), a, m, m + 1);
            const auto blocks = spin_blocks(Mat(fe * dual * fe.inverse()));
            const auto ops = fbasis_operators(j, s);
            worst = std::max({worst, rel(blocks.a - ops.a, blocks.a), rel(blocks.b - ops.b, blocks.b), rel(blocks.c - ops.c, blocks.c)});
        }
    }
    c.below("max relative deviation (A, B, C)", worst, 1e-10);
    return c;
}

// 6
Criterion oracle_equivalence() {
    Criterion c{6, "MPS contraction equals explicit sum, N <= 8, M <= 3, 20 random inhomogeneous specs", {}, {}};
    std::mt19937_64 rng(106);
    double mps = 0.0, dense = 0.0;
    int states = 0;
    for (int t = 0; t < 20; ++t) {
        const int n = 3 + t % 6;
        const int m = 1 + t % 3;
        const auto s = oracle::make_spec(n, m, rng);
        for (int k = 1; k <= n; ++k)
            for (int r = 0; r <= std::min(k, m); ++r)
                for (const auto& sel : sector_basis(m, r)) {
                    const Vec ref = bethe_state_explicit(k, sel.positions, s).amplitudes;
                    for (auto reg : {MpsRegister::full, MpsRegister::reduced})
                        mps = std::max(mps, (bethe_state_mps(k, sel.positions, s, reg).amplitudes - ref).norm() / ref.norm());
                    const Vec d = oracle::bethe_dense(s, k, sel.positions);
                    dense = std::max(dense, (embed_sector(ref, k, r) - d).norm() / d.norm());
                    ++states;
                }
    }
    c.below("mps vs explicit (relative)", mps, 1e-10);
    c.below("explicit vs brute-force plane-wave sum (relative)", dense, 1e-10);
    c.note(std::to_string(states) + " (k, r, selection) states compared");
    return c;
}

std::vector<ChainSpec> small_specs(std::mt19937_64& rng, bool homogeneous = false) {
    std::vector<ChainSpec> out;
    for (auto [n, m] : {std::pair{4, 2}, {5, 3}, {6, 2}, {6, 3}, {7, 3}, {8, 3}, {8, 2}, {3, 3}, {5, 1}})
        out.push_back(oracle::make_spec(n, m, rng, homogeneous));
    return out;
}

// 7
Criterion gram_schmidt() {
    Criterion c{7, "Orthonormalisation: triangular X, inverse, Cholesky identity, determinant formulas", {}, {}};
    std::mt19937_64 rng(107);
    double tri = 0.0, inv = 0.0, chol = 0.0, det = 0.0, orth = 0.0;
    int compared = 0;
    for (const auto& s : small_specs(rng)) {
        for (int k = 1; k <= s.n_sites; ++k)
            for (int r = 0; r <= std::min(k, s.n_magnons); ++r) {
                const auto x = orth_factor(k, r, s);
                const Eigen::Index d = x.x.rows();
                const Mat b = bethe_family(k, r, s);
                const Mat cg = b.adjoint() * b;
                tri = std::max({tri, max_abs(Mat(x.x.triangularView<Eigen::StrictlyLower>())),
                                max_abs(Mat(x.x_inv.triangularView<Eigen::StrictlyLower>()))});
                inv = std::max(inv, max_abs(Mat(x.x * x.x_inv - Mat::Identity(d, d))));
                chol = std::max(chol, rel(x.x_inv.adjoint() * x.x_inv - cg, cg));
                orth = std::max(orth, max_abs(Mat((b * x.x).adjoint() * (b * x.x) - Mat::Identity(d, d))));
                if (d <= 10) {
                    const auto y = orth_factor_determinant(k, r, s);
                    det = std::max({det, rel(y.x - x.x, x.x), rel(y.x_inv - x.x_inv, x.x_inv)});
                    ++compared;
                }
            }
    }
    c.at_most("strictly lower part of X and X^-1", tri, 0.0);
    c.below("max|X X^-1 - 1|", inv, 1e-10);
    c.below("Cholesky identity X^-1^dagger X^-1 = C (relative)", chol, 1e-10);
    c.below("determinant formulas vs triangular factor (relative)", det, 1e-8);
    c.note(fmt("orthonormality of B X: %.2e", orth));
    c.note(std::to_string(compared) + " sectors cross-checked against the determinant formulas");
    return c;
}

// 8
Criterion recursions() {
    Criterion c{8, "Unitarity recursions, long and short, N <= 8, M <= 3", {}, {}};
    std::mt19937_64 rng(108);
    double worst = 0.0;
    int entries = 0;
    for (bool h : {false, true})
        for (const auto& s : small_specs(rng, h)) {
            const auto rep = unitarity_recursions(s);
            worst = std::max(worst, rep.max_residual);
            entries += static_cast<int>(rep.entries.size());
        }
    c.below("max residual", worst, 1e-10);
    c.note(std::to_string(entries) + " (k, r) entries");
    return c;
}

/// Family at support k rebuilt from the short tensors alone.
Mat omega_family(int k, int r, const ChainSpec& s) {
    if (k == 0) return Mat::Identity(r == 0 ? 1 : 0, r == 0 ? 1 : 0);
    const auto om = short_tensor(s.n_sites - k + 1, s);
    const Mat& o0 = om.block(0, r);
    const Mat& o1 = om.block(1, r);
    const Mat top = o0.rows() ? Mat(omega_family(k - 1, r, s) * o0) : Mat(0, o0.cols());
    const Mat bottom = o1.rows() ? Mat(omega_family(k - 1, r - 1, s) * o1) : Mat(0, o1.cols());
    Mat out(top.rows() + bottom.rows(), top.cols());
    out << top, bottom;
    return out;
}

/// Dense 4x4 short tensor at site N-1 in the computational basis.
Mat dense_omega_n1(const ShortTensor& om) {
    Mat out = Mat::Zero(4, 4);
    out(0, 0) = om.block(0, 0)(0, 0);
    for (int a = 0; a < 2; ++a) {
        out(1, 1 + a) = om.block(0, 1)(0, a);
        out(2, 1 + a) = om.block(1, 1)(0, a);
    }
    out(3, 3) = om.block(1, 2)(0, 0);
    return out;
}

// 9
Criterion short_tensors() {
    Criterion c{9, "Short tensors: last site identity, site N-1 printed matrix, contraction reproduces states", {}, {}};
    std::mt19937_64 rng(109);
    double id = 0.0, printed = 0.0, corrected = 0.0, rebuild = 0.0;
    for (int m = 2; m <= 4; ++m)
        for (int n : {m, m + 2}) {
            const auto s = oracle::make_spec(n, m, rng);
            const auto last = short_tensor(n, s);
            id = std::max({id, std::abs(last.block(0, 0)(0, 0) - 1.0), std::abs(last.block(1, 1)(0, 0) - 1.0),
                           static_cast<double>(last.block(0, 1).size() + last.block(1, 0).size())});
            const Mat got = dense_omega_n1(short_tensor(n - 1, s));
            const cplx x1 = oracle::x(s, 1, n - 1), x2 = oracle::x(s, 2, n - 1);
            const cplx s12 = oracle::sc(s, 1, 2), s21 = oracle::sc(s, 2, 1);
            Mat book = Mat::Zero(4, 4);
            book(0, 0) = 1.0;
            book(1, 1) = x2;
            book(1, 2) = x1;
            book(2, 1) = 1.0;
            book(2, 2) = 1.0;
            book(3, 3) = s12 * x2 - s21 * x1;
            printed = std::max(printed, max_abs(Mat(got - book)));
            book(3, 3) = s12 * x2 + s21 * x1;
            corrected = std::max(corrected, max_abs(Mat(got - book)));
            for (int k = 1; k <= m; ++k)
                for (int r = 0; r <= k; ++r) {
                    const Mat ref = bethe_family(k, r, s);
                    rebuild = std::max(rebuild, rel(omega_family(k, r, s) - ref, ref));
                }
        }
    c.at_most("last-site tensor is the identity (exact)", id, 0.0);
    c.below("site N-1 tensor vs printed matrix, corner s12 x2 - s21 x1", printed, 1e-14);
    c.below("contraction reproduces Bethe families, k <= M <= 4 (relative)", rebuild, 1e-10);
    c.note(fmt("site N-1 tensor vs the same matrix with corner s12 x2 + s21 x1: %.2e", corrected));
    c.note("the two-site plane-wave sum gives s12 x2 + s21 x1 at |11>, so the printed minus sign cannot be met");
    return c;
}

// 10
Criterion l_matrix() {
    Criterion c{10, "Short tensor equals L times Lambda, homogeneous, k <= 3, M <= 3", {}, {}};
    std::mt19937_64 rng(110);
    double worst = 0.0;
    for (int m = 1; m <= 3; ++m)
        for (int n : {m, m + 1, m + 3}) {
            const auto s = oracle::make_spec(n, m, rng, true);
            for (int k = 1; k <= std::min(m, 3); ++k) worst = std::max(worst, ruiz_equivalence_check(n - k + 1, s));
        }
    c.below("max residual", worst, 1e-10);
    return c;
}

// 11
Criterion earlier_forms() {
    Criterion c{11, "Earlier coordinate forms collinear with the Bethe state, N <= 6, M <= 2", {}, {}};
    std::mt19937_64 rng(111);
    double ovch = 0.0, map = 0.0, ovch_rev = 0.0, map_signed = 0.0;
    for (int n = 2; n <= 6; ++n)
        for (int m = 1; m <= 2; ++m)
            for (bool h : {true, false}) {
                const auto s = oracle::make_spec(n, m, rng, h);
                ovch = std::max(ovch, ovchinnikov_comparison(s).residual);
                if (h) {
                    const Vec rev = restrict_sector(aba_reversed_state(s), n, m);
                    ovch_rev = std::max(ovch_rev, collinearity(rev, ovchinnikov_state(s, OvchinnikovWeights::transposed)).residual);
                    map = std::max(map, ruiz_amplitude_map(s, false).residual);
                    map_signed = std::max(map_signed, ruiz_amplitude_map(s, true).residual);
                }
            }
    c.below("tail-product state with weights 1/s_{a_p a_q}", ovch, 1e-10);
    c.below("amplitude map s_ab -> sinh(u_a+ig) sinh(u_b+ig) / (sinh(ig) sinh(u_a-u_b+ig))", map, 1e-10);
    c.note(fmt("tail-product state with weights 1/s_{a_q a_p} vs reversed-monodromy ABA state: %.2e", ovch_rev));
    c.note(fmt("amplitude map with the permutation sign included: %.2e", map_signed));
    return c;
}

// 12
Criterion end_to_end() {
    Criterion c{12, "End-to-end circuits: unitary gates and overlap with the normalised Bethe state", {}, {}};
    std::mt19937_64 rng(112);
    double unit = 0.0, defect = 0.0, drift = 0.0;
    for (auto [n, m] : {std::pair{4, 2}, {6, 2}, {6, 3}, {8, 3}, {4, 4}})
        for (bool h : {false, true})
            for (int rep = 0; rep < 3; ++rep) {
                const auto s = oracle::make_spec(n, m, rng, h, rep == 2 ? cplx{1.1, 0.0} : cplx{0.7, 0.1 * rep});
                const Circuit circ = synthesize_circuit(s);
                for (const auto& g : circ.gates) unit = std::max(unit, unitarity_residual(g.matrix));
                const StateVector out = run_circuit(circ);
                const Vec ref = oracle::bethe_dense(s, n, labels(m));
                defect = std::max(defect, 1.0 - oracle::overlap(out.amplitudes, ref / ref.norm()));
                drift = std::max(drift, std::abs(out.amplitudes.norm() - 1.0));
            }
    c.below("max gate unitarity residual", unit, 1e-10);
    c.at_most("max 1 - |<Phi|Psi>|", defect, 1e-8);
    c.note(fmt("norm drift of the circuit output: %.2e", drift));
    return c;
}

// 13
Criterion indexing() {
    Criterion c{13, "Collective index table and decode(encode) over all sectors k <= 10", {}, {}};
    struct Row {
        int m1, m2;
        std::uint64_t chi, alpha;
    };
    const Row rows[] = {{3, 4, 3, 1}, {2, 4, 5, 2}, {2, 3, 6, 3}, {1, 4, 9, 4}, {1, 3, 10, 5}, {1, 2, 12, 6}};
    double mismatches = 0.0;
    for (const auto& row : rows) {
        const MagnonString s{4, {row.m1, row.m2}};
        if (chi(s) != row.chi || encode(s) != row.alpha || !(decode(row.alpha, 4, 2) == s)) mismatches += 1.0;
    }
    double roundtrip = 0.0;
    for (int k = 0; k <= 10; ++k)
        for (int r = 0; r <= k; ++r) {
            const auto basis = sector_basis(k, r);
            if (basis.size() != binomial(k, r)) roundtrip += 1.0;
            for (std::size_t i = 0; i < basis.size(); ++i)
                if (encode(basis[i]) != i + 1 || !(decode(encode(basis[i]), k, r) == basis[i])) roundtrip += 1.0;
        }
    c.at_most("table rows mismatched", mismatches, 0.0);
    c.at_most("round-trip failures", roundtrip, 0.0);
    return c;
}

// 14
Criterion transfer_and_energy() {
    Criterion c{14, "Commuting transfer matrices, N <= 6; vacuum energy diagnostic", {}, {}};
    std::mt19937_64 rng(114);
    double comm = 0.0;
    for (int n = 1; n <= 6; ++n)
        for (int t = 0; t < 3; ++t) {
            const auto s = oracle::make_spec(n, 0, rng);
            const cplx u = oracle::rnd(rng, 0.5), w = oracle::rnd(rng, 0.5);
            const Mat tu = transfer_matrix(u, s), tw = transfer_matrix(w, s);
            comm = std::max(comm, max_abs(Mat(tu * tw - tw * tu)));
        }
    c.below("max|[t(u), t(v)]|", comm, 1e-10);
    double energy = 0.0, residual = 0.0;
    for (int n = 2; n <= 10; ++n) {
        ChainSpec s;
        s.n_sites = n;
        s.gamma = {0.7, 0.0};
        s.inhomogeneities.assign(static_cast<std::size_t>(n), 0.0);
        const auto e = hamiltonian_residual(basis_state(std::vector<int>(static_cast<std::size_t>(n), 0)), s);
        energy = std::max(energy, std::abs(e.energy - static_cast<double>(n) * s.delta()));
        residual = std::max(residual, e.residual);
    }
    c.below("|<H> - N Delta| on the vacuum", energy, 1e-12);
    c.at_most("residual on the vacuum", residual, 0.0);
    return c;
}

} // namespace

int main() {
    const std::vector<std::function<Criterion()>> all{yang_baxter, regularity, f_basis_definitions, exchange_symmetry,
                                                      closed_forms, oracle_equivalence, gram_schmidt, recursions,
                                                      short_tensors, l_matrix, earlier_forms, end_to_end,
                                                      indexing, transfer_and_energy};
    int failed = 0;
    for (const auto& run : all) {
        Criterion c{0, "", {}, {}};
        try {
            c = run();
        } catch (const std::exception& e) {
            c.note(std::string("exception: ") + e.what());
        }
        std::printf("criterion %2d: %s  %s\n", c.id, c.pass() ? "PASS" : "FAIL", c.title.c_str());
        for (const auto& cl : c.clauses)
            std::printf("    [%s] %s = %.3e (tol %.1e)\n", cl.pass ? "ok" : "x", cl.name.c_str(), cl.value, cl.tol);
        for (const auto& n : c.notes) std::printf("    note: %s\n", n.c_str());
        if (!c.pass()) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed == 0 ? 0 : 1;
}
