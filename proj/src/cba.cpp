#include "bethe/cba.hpp"

#include "bethe/fbasis.hpp"
#include "bethe/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace bethe {

namespace {

void check_selection(int k, const std::vector<int>& selection, const ChainSpec& spec) {
    if (k < 0 || k > spec.n_sites) throw InvalidInput("support length k out of range");
    int prev = 0;
    for (int m : selection) {
        if (m <= prev || m > spec.n_magnons) throw InvalidInput("selection must be increasing labels within 1..M");
        prev = m;
    }
    if (static_cast<int>(selection.size()) > k) throw InvalidInput("more magnons than sites");
}

double factorial(int n) {
    double out = 1.0;
    for (int i = 2; i <= n; ++i) out *= i;
    return out;
}

std::vector<int> all_labels(int m) {
    std::vector<int> out(m);
    std::iota(out.begin(), out.end(), 1);
    return out;
}

int inversions(const std::vector<int>& p) {
    int n = 0;
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = a + 1; b < p.size(); ++b)
            if (p[a] > p[b]) ++n;
    return n;
}

} // namespace

Mat gauge_v(int j, const ChainSpec& spec) {
    const int m = spec.n_magnons;
    std::vector<cplx> d0(m), d1(m);
    for (int a = 1; a <= m; ++a) {
        d0[a - 1] = magnon_g(a, j, spec);
        if (std::abs(d0[a - 1]) < spec.tol.pole) throw SingularMatrix("gauge_v: g_{aj} vanishes");
        cplx p = 1.0;
        for (int b = 1; b <= m; ++b)
            if (b != a) p *= scattering_amplitude(a, b, spec);
        if (std::abs(p) < spec.tol.pole) throw SingularMatrix("gauge_v: scattering product vanishes");
        d1[a - 1] = p;
    }
    const Eigen::Index dim = Eigen::Index{1} << m;
    Mat v = Mat::Zero(dim, dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
        cplx e = 1.0;
        for (int a = 0; a < m; ++a) e *= ((s >> (m - 1 - a)) & 1) ? d1[a] : d0[a];
        v(s, s) = e;
    }
    return v;
}

LambdaTensor lambda_tensor(int j, const ChainSpec& spec) {
    const int m = spec.n_magnons;
    if (j < 1 || j > spec.n_sites) throw InvalidInput("lambda_tensor: site out of range");
    std::vector<cplx> x(m + 1);
    for (int a = 1; a <= m; ++a) x[a] = quasi_momentum(a, j, spec);
    LambdaTensor t;
    t.site = j;
    t.n_magnons = m;
    for (int r = 0; r <= m; ++r) {
        const auto cols = sector_basis(m, r);
        const auto nc = static_cast<Eigen::Index>(cols.size());
        Mat l0 = Mat::Zero(nc, nc);
        Mat l1 = Mat::Zero(static_cast<Eigen::Index>(binomial(m, r - 1)), nc);
        for (Eigen::Index b = 0; b < nc; ++b) {
            const auto& s = cols[b].positions;
            cplx d = 1.0;
            for (int a : s) d *= x[a];
            l0(b, b) = d;
            for (int p = 0; p < r; ++p) {
                MagnonString reduced{m, {}};
                cplx e = 1.0;
                for (int q = 0; q < r; ++q) {
                    if (q == p) continue;
                    reduced.positions.push_back(s[q]);
                    e *= scattering_amplitude(s[p], s[q], spec) * x[s[q]];
                }
                l1(static_cast<Eigen::Index>(encode(reduced) - 1), b) += e;
            }
        }
        t.zero.push_back(l0);
        t.one.push_back(l1);
    }
    return t;
}

Mat lambda_operator(const LambdaTensor& t, int i) {
    const int m = t.n_magnons;
    const Eigen::Index dim = Eigen::Index{1} << m;
    Mat op = Mat::Zero(dim, dim);
    for (int r = i; r <= m; ++r) {
        const auto rows = sector_chis(m, r - i);
        const auto cols = sector_chis(m, r);
        const Mat& b = t.block(i, r);
        for (std::size_t a = 0; a < rows.size(); ++a)
            for (std::size_t c = 0; c < cols.size(); ++c)
                op(static_cast<Eigen::Index>(rows[a]), static_cast<Eigen::Index>(cols[c])) =
                    b(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(c));
    }
    return op;
}

double lambda_gauge_residual(int j, const ChainSpec& spec) {
    const auto t = lambda_tensor(j, spec);
    const auto blocks = spin_blocks(dress_dual(dual_monodromy(j, spec), build_fM(spec.rapidities, spec.gamma, spec.tol.pole)));
    const Mat v = gauge_v(j, spec);
    const Mat vinv = v.diagonal().cwiseInverse().asDiagonal();
    const double r0 = max_abs(Mat(lambda_operator(t, 0) - vinv * blocks.a * v));
    const double r1 = max_abs(Mat(lambda_operator(t, 1) - vinv * blocks.c * v));
    return std::max(r0, r1);
}

Vec permutation_sum(int k, const std::vector<int>& labels, int n_sites, const PairWeight& pair, const SiteWeight& site,
                    bool signed_sum) {
    const int r = static_cast<int>(labels.size());
    if (factorial(r) * static_cast<double>(binomial(k, r)) > 1e7) throw SizeGuard("permutation sum exceeds 1e7 terms");
    const int first = n_sites - k + 1;
    const auto basis = sector_basis(k, r);
    Vec out(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t idx = 0; idx < basis.size(); ++idx) {
        std::vector<int> order(r);
        std::iota(order.begin(), order.end(), 0);
        cplx amp = 0.0;
        do {
            cplx term = (signed_sum && inversions(order) % 2 == 1) ? -1.0 : 1.0;
            for (int p = 0; p < r; ++p) {
                const int ap = labels[order[p]];
                for (int q = 0; q < p; ++q) term *= pair(labels[order[q]], ap);
                term *= site(ap, first + basis[idx].positions[p] - 1);
            }
            amp += term;
        } while (std::next_permutation(order.begin(), order.end()));
        out(static_cast<Eigen::Index>(idx)) = amp;
    }
    return out;
}

BetheState bethe_state_explicit(int k, const std::vector<int>& selection, const ChainSpec& spec) {
    check_selection(k, selection, spec);
    const int first = spec.n_sites - k + 1;
    const int m = spec.n_magnons;
    // x[a][l] for sites first..N
    std::vector<std::vector<cplx>> x(m + 1, std::vector<cplx>(spec.n_sites + 1, 1.0));
    for (int a : selection)
        for (int l = first; l <= spec.n_sites; ++l) x[a][l] = quasi_momentum(a, l, spec);
    auto pair = [&](int a, int b) { return scattering_amplitude(a, b, spec); };
    auto site = [&](int a, int n) {
        cplx w = 1.0;
        for (int l = first; l < n; ++l) w *= x[a][l];
        return w;
    };
    return {k, static_cast<int>(selection.size()), selection, permutation_sum(k, selection, spec.n_sites, pair, site)};
}

BetheState bethe_state_mps(int k, const std::vector<int>& selection, const ChainSpec& spec, MpsRegister reg) {
    check_selection(k, selection, spec);
    const int r = static_cast<int>(selection.size());
    if (reg == MpsRegister::reduced) {
        const ChainSpec sub = spec.with_magnons(selection);
        auto out = bethe_state_mps(k, all_labels(r), sub, MpsRegister::full);
        out.selection = selection;
        return out;
    }
    const int m = spec.n_magnons;
    const int first = spec.n_sites - k + 1;
    struct Branch {
        std::uint64_t prefix;
        int flips_left;
        Vec bond;
    };
    Vec start = Vec::Zero(static_cast<Eigen::Index>(binomial(m, r)));
    start(static_cast<Eigen::Index>(encode(MagnonString{m, selection}) - 1)) = 1.0;
    std::vector<Branch> branches{{0, r, start}};
    for (int j = first; j <= spec.n_sites; ++j) {
        const auto t = lambda_tensor(j, spec);
        const int remaining = spec.n_sites - j; // sites after j
        std::vector<Branch> next;
        next.reserve(branches.size() * 2);
        for (const auto& b : branches) {
            if (b.flips_left <= remaining) next.push_back({b.prefix << 1, b.flips_left, t.block(0, b.flips_left) * b.bond});
            if (b.flips_left >= 1)
                next.push_back({(b.prefix << 1) | 1U, b.flips_left - 1, t.block(1, b.flips_left) * b.bond});
        }
        branches = std::move(next);
    }
    BetheState out{k, r, selection, Vec::Zero(static_cast<Eigen::Index>(binomial(k, r)))};
    for (const auto& b : branches) {
        const auto alpha = encode(from_chi(b.prefix, k));
        out.amplitudes(static_cast<Eigen::Index>(alpha - 1)) += b.bond(0);
    }
    return out;
}

namespace {

Vec aba_state_from(const ChainSpec& spec, bool reversed) {
    spec.validate();
    if (spec.n_sites > 10 || spec.n_magnons > 3) throw SizeGuard("ABA reference state: needs N <= 10 and M <= 3");
    const Eigen::Index dim = Eigen::Index{1} << spec.n_sites;
    Vec psi = Vec::Zero(dim);
    psi(0) = 1.0;
    for (int a = spec.n_magnons; a >= 1; --a) {
        const cplx u = spec.rapidities[a - 1];
        const Mat t = reversed ? build_monodromy_reversed(u, spec) : build_monodromy(u, spec);
        psi = monodromy_blocks(t).b * psi;
    }
    return psi;
}

} // namespace

Vec aba_reference_state(const ChainSpec& spec) { return aba_state_from(spec, false); }

Vec aba_reversed_state(const ChainSpec& spec) { return aba_state_from(spec, true); }

Vec aba_coordinate_state(const ChainSpec& spec) {
    const int n = spec.n_sites;
    auto pair = [&](int a, int b) { return scattering_amplitude(a, b, spec); };
    auto site = [&](int a, int s) {
        cplx w = magnon_g(a, s, spec);
        for (int l = 1; l < s; ++l) w *= quasi_momentum(a, l, spec);
        return w;
    };
    return permutation_sum(n, all_labels(spec.n_magnons), n, pair, site);
}

StateComparison aba_oracle_comparison(const ChainSpec& spec) {
    const int n = spec.n_sites;
    const int m = spec.n_magnons;
    const Vec oracle = embed_sector(bethe_state_explicit(n, all_labels(m), spec).amplitudes, n, m);
    const auto c = collinearity(oracle, aba_reference_state(spec));
    cplx predicted = 1.0;
    const int site = std::max(n - 1, 1);
    for (int a = 1; a <= m; ++a) {
        predicted /= magnon_g(a, site, spec);
        for (int b = 1; b <= m; ++b)
            if (b != a) predicted *= scattering_amplitude(a, b, spec);
    }
    return {c.residual, c.scalar, predicted};
}

Vec ovchinnikov_state(const ChainSpec& spec, OvchinnikovWeights w) {
    const int n = spec.n_sites;
    auto pair = [&](int aq, int ap) {
        return w == OvchinnikovWeights::as_written ? 1.0 / scattering_amplitude(ap, aq, spec)
                                                   : 1.0 / scattering_amplitude(aq, ap, spec);
    };
    auto site = [&](int a, int s) {
        cplx v = magnon_g(a, s, spec);
        for (int l = s + 1; l <= n; ++l) v *= quasi_momentum(a, l, spec);
        return v;
    };
    return permutation_sum(n, all_labels(spec.n_magnons), n, pair, site);
}

cplx ovchinnikov_prefactor(const ChainSpec& spec) {
    const int n = spec.n_sites;
    const int m = spec.n_magnons;
    cplx out = 1.0;
    for (int a = 1; a <= m; ++a) {
        out *= quasi_momentum(a, 1, spec) / (magnon_g(a, 1, spec) * quasi_momentum(a, n, spec));
        for (int b = 1; b <= m; ++b)
            if (b != a) out *= scattering_amplitude(a, b, spec) * scattering_amplitude(b, a, spec);
    }
    return out;
}

StateComparison ovchinnikov_comparison(const ChainSpec& spec, OvchinnikovWeights w) {
    const int n = spec.n_sites;
    const Vec oracle = bethe_state_explicit(n, all_labels(spec.n_magnons), spec).amplitudes;
    const auto c = collinearity(oracle, ovchinnikov_state(spec, w));
    return {c.residual, c.scalar, ovchinnikov_prefactor(spec)};
}

cplx ruiz_scattering(int a, int b, const ChainSpec& spec) {
    const cplx v = spec.inhomogeneities.front();
    const cplx ua = spec.rapidities.at(a - 1) - v;
    const cplx ub = spec.rapidities.at(b - 1) - v;
    const cplx g = spec.gamma;
    const cplx den = std::sinh(I * g) * std::sinh(ua - ub + I * g);
    if (std::abs(den) < spec.tol.pole) throw PoleError("ruiz_scattering: pole");
    return std::sinh(ua + I * g) * std::sinh(ub + I * g) / den;
}

StateComparison ruiz_amplitude_map(const ChainSpec& spec, bool signed_sum) {
    if (!spec.homogeneous()) throw InvalidInput("ruiz_amplitude_map: homogeneous chain required");
    const int n = spec.n_sites;
    const int m = spec.n_magnons;
    auto pair = [&](int a, int b) { return ruiz_scattering(a, b, spec); };
    auto site = [&](int a, int s) {
        cplx w = 1.0;
        for (int l = 1; l < s; ++l) w *= quasi_momentum(a, l, spec);
        return w;
    };
    const Vec mapped = permutation_sum(n, all_labels(m), n, pair, site, signed_sum);
    const Vec oracle = bethe_state_explicit(n, all_labels(m), spec).amplitudes;
    const auto c = collinearity(oracle, mapped);
    const cplx v = spec.inhomogeneities.front();
    const cplx g = spec.gamma;
    cplx predicted = 1.0;
    for (int a = 1; a <= m; ++a)
        for (int b = 1; b < a; ++b) {
            const cplx ua = spec.rapidities[a - 1] - v;
            const cplx ub = spec.rapidities[b - 1] - v;
            predicted *= std::sinh(I * g) * std::sinh(ua - ub + I * g) * std::sinh(ub - ua + I * g) /
                         (std::sinh(ua + I * g) * std::sinh(ub + I * g) * std::sinh(ua - ub));
        }
    return {c.residual, c.scalar, predicted};
}

} // namespace bethe
