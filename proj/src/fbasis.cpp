#include "bethe/fbasis.hpp"

#include <Eigen/LU>

namespace bethe {

namespace {

Mat projector(int bit) {
    Mat p = Mat::Zero(2, 2);
    p(bit, bit) = 1.0;
    return p;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat kron_all(const std::vector<Mat>& factors) {
    Mat out = Mat::Identity(1, 1);
    for (const auto& f : factors) out = kron(out, f);
    return out;
}

Mat diag2(cplx d0, cplx d1) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = d0;
    m(1, 1) = d1;
    return m;
}

Mat checked_inverse(const Mat& m, double tol, const char* what) {
    Eigen::FullPivLU<Mat> lu(m);
    if (!lu.isInvertible() || std::abs(lu.determinant()) < tol) throw SingularMatrix(what);
    return lu.inverse();
}

} // namespace

Mat build_f2(cplx u, cplx gamma, double tol) {
    const auto w = weights(u, gamma, tol);
    Mat f = Mat::Identity(4, 4);
    f(2, 1) = w.g;
    f(2, 2) = w.f;
    return f;
}

Mat build_fM(const std::vector<cplx>& rapidities, cplx gamma, double tol) {
    const int m = static_cast<int>(rapidities.size());
    if (m > 8) throw SizeGuard("build_fM: M > 8");
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (std::abs(rapidities[a] - rapidities[b]) < tol) throw DegenerateRapidities("build_fM: coincident rapidities");
    const Eigen::Index dim = Eigen::Index{1} << m;
    Mat f = Mat::Identity(dim, dim);
    for (int a = m - 2; a >= 0; --a) {
        Mat string = Mat::Identity(dim, dim);
        for (int b = a + 1; b < m; ++b) apply_left(build_r(rapidities[a] - rapidities[b], gamma, tol), {a, b}, string);
        // string = R_{aM} ... R_{a,a+1}: the b = a+1 factor acts first.
        Mat factor = embed(projector(0), {a}, m);
        Mat upper = string;
        apply_left(projector(1), {a}, upper);
        factor += upper;
        f = f * factor;
    }
    if (m >= 2 && std::abs(f.fullPivLu().determinant()) < tol) throw SingularMatrix("build_fM: singular F-matrix");
    return f;
}

Mat build_f_sigma(const Permutation& sigma, const std::vector<cplx>& rapidities, cplx gamma, double tol) {
    check_permutation(sigma);
    if (sigma.size() != rapidities.size()) throw InvalidInput("build_f_sigma: size mismatch");
    std::vector<cplx> permuted(rapidities.size());
    for (std::size_t p = 0; p < sigma.size(); ++p) permuted[p] = rapidities[sigma[p]];
    const Mat pi = permutation_matrix(sigma);
    return pi.adjoint() * build_fM(permuted, gamma, tol) * pi;
}

double rfm_residual(const Permutation& sigma, const std::vector<cplx>& rapidities, cplx gamma, double tol) {
    const Mat f = build_fM(rapidities, gamma, tol);
    const Mat fs = build_f_sigma(sigma, rapidities, gamma, tol);
    const Mat lhs = checked_inverse(fs, tol, "rfm_residual: singular F_sigma") * f;
    return max_abs(Mat(lhs - permutation_r(sigma, rapidities, gamma, tol)));
}

double rff_residual(cplx u, cplx gamma, double tol) {
    const Mat pi = swap_gate();
    const Mat f21 = pi * build_f2(-u, gamma, tol) * pi;
    return max_abs(Mat(build_r(u, gamma, tol) - checked_inverse(f21, tol, "rff_residual") * build_f2(u, gamma, tol)));
}

double twist_consistency_residual(const Permutation& sigma, const ChainSpec& spec) {
    const int m = spec.n_magnons;
    const int n = spec.n_sites;
    if (m > 3 || n > 2) throw SizeGuard("twist_consistency_residual: needs M <= 3 and N <= 2");
    check_permutation(sigma);
    if (static_cast<int>(sigma.size()) != m) throw InvalidInput("twist_consistency_residual: permutation size");
    const int total = m + n;
    std::vector<Mat> t;
    for (int a = 0; a < m; ++a) t.push_back(monodromy_on(spec.rapidities[a], spec, a, m, total));
    std::vector<int> anc(m);
    for (int a = 0; a < m; ++a) anc[a] = a;
    const Mat f = embed(build_fM(spec.rapidities, spec.gamma, spec.tol.pole), anc, total);
    const Mat fs = embed(build_f_sigma(sigma, spec.rapidities, spec.gamma, spec.tol.pole), anc, total);
    const Eigen::Index dim = Eigen::Index{1} << total;
    Mat lhs = Mat::Identity(dim, dim);
    Mat rhs = Mat::Identity(dim, dim);
    for (int a = 0; a < m; ++a) {
        lhs = lhs * t[a];
        rhs = rhs * t[sigma[a]];
    }
    lhs = f * lhs * checked_inverse(f, spec.tol.pole, "twist: singular F");
    rhs = fs * rhs * checked_inverse(fs, spec.tol.pole, "twist: singular F_sigma");
    return max_abs(Mat(lhs - rhs));
}

Mat dual_monodromy_at(cplx v, const std::vector<cplx>& rapidities, cplx gamma, double tol) {
    const int m = static_cast<int>(rapidities.size());
    if (m > 8) throw SizeGuard("dual_monodromy: M > 8");
    const Eigen::Index dim = Eigen::Index{1} << (m + 1);
    Mat t = Mat::Identity(dim, dim);
    for (int a = m - 1; a >= 0; --a) apply_left(build_r(rapidities[a] - v, gamma, tol), {a, m}, t);
    return t;
}

Mat dual_monodromy(int j, const ChainSpec& spec) {
    if (j < 1 || j > spec.n_sites) throw InvalidInput("dual_monodromy: site out of range");
    return dual_monodromy_at(spec.inhomogeneities[j - 1], spec.rapidities, spec.gamma, spec.tol.pole);
}

double dual_rtt_residual(cplx v1, cplx v2, const std::vector<cplx>& rapidities, cplx gamma, double tol, const Mat* f) {
    const int m = static_cast<int>(rapidities.size());
    const int total = m + 2;
    const Eigen::Index dim = Eigen::Index{1} << total;
    Mat t1 = Mat::Identity(dim, dim);
    Mat t2 = Mat::Identity(dim, dim);
    for (int a = m - 1; a >= 0; --a) {
        apply_left(build_r(rapidities[a] - v1, gamma, tol), {a, m}, t1);
        apply_left(build_r(rapidities[a] - v2, gamma, tol), {a, m + 1}, t2);
    }
    if (f != nullptr) {
        std::vector<int> anc(m);
        for (int a = 0; a < m; ++a) anc[a] = a;
        const Mat fe = embed(*f, anc, total);
        const Mat fi = checked_inverse(fe, tol, "dual_rtt_residual: singular F");
        t1 = fe * t1 * fi;
        t2 = fe * t2 * fi;
    }
    const Mat r = embed(build_r(v1 - v2, gamma, tol), {m, m + 1}, total);
    return max_abs(Mat(t1 * t2 * r - r * t2 * t1));
}

Mat dress_dual(const Mat& dual, const Mat& f) {
    const int total = qubit_count(dual);
    const int m = qubit_count(f);
    if (m + 1 != total) throw InvalidInput("dress_dual: F acts on the wrong number of ancillae");
    const Mat fe = kron(f, Mat::Identity(2, 2));
    return fe * dual * checked_inverse(fe, 1e-14, "dress_dual: singular F");
}

Mat dressed_dual_at(cplx v, const std::vector<cplx>& rapidities, cplx gamma, double tol) {
    return dress_dual(dual_monodromy_at(v, rapidities, gamma, tol), build_fM(rapidities, gamma, tol));
}

double exchange_symmetry_residual(const Permutation& sigma, cplx v, const std::vector<cplx>& rapidities, cplx gamma,
                                  double tol) {
    check_permutation(sigma);
    if (sigma.size() != rapidities.size()) throw InvalidInput("exchange_symmetry_residual: size mismatch");
    std::vector<cplx> permuted(rapidities.size());
    for (std::size_t p = 0; p < sigma.size(); ++p) permuted[p] = rapidities[sigma[p]];
    const Mat pi = kron(permutation_matrix(sigma), Mat::Identity(2, 2));
    const Mat lhs = pi.adjoint() * dressed_dual_at(v, permuted, gamma, tol) * pi;
    return max_abs(Mat(lhs - dressed_dual_at(v, rapidities, gamma, tol)));
}

SpinBlocks spin_blocks(const Mat& dual) {
    const Eigen::Index h = dual.rows() / 2;
    SpinBlocks s{Mat(h, h), Mat(h, h), Mat(h, h), Mat(h, h)};
    for (Eigen::Index r = 0; r < h; ++r)
        for (Eigen::Index c = 0; c < h; ++c) {
            s.a(r, c) = dual(2 * r, 2 * c);
            s.b(r, c) = dual(2 * r, 2 * c + 1);
            s.c(r, c) = dual(2 * r + 1, 2 * c);
            s.d(r, c) = dual(2 * r + 1, 2 * c + 1);
        }
    return s;
}

FBasisOperators fbasis_operators(int j, const ChainSpec& spec) {
    const int m = spec.n_magnons;
    if (m > 8) throw SizeGuard("fbasis_operators: M > 8");
    if (j < 1 || j > spec.n_sites) throw InvalidInput("fbasis_operators: site out of range");
    auto fj = [&](int a) { return quasi_momentum(a, j, spec); };
    auto gj = [&](int a) { return magnon_g(a, j, spec); };
    auto fab = [&](int a, int b) { return scattering_amplitude(a, b, spec); };

    std::vector<Mat> diag;
    for (int a = 1; a <= m; ++a) diag.push_back(diag2(1.0, fj(a)));
    FBasisOperators ops;
    ops.a = kron_all(diag);
    const Eigen::Index dim = Eigen::Index{1} << m;
    ops.b = Mat::Zero(dim, dim);
    ops.c = Mat::Zero(dim, dim);
    for (int a = 1; a <= m; ++a) {
        std::vector<Mat> fb;
        std::vector<Mat> fc;
        for (int b = 1; b <= m; ++b) {
            if (b == a) {
                Mat lower = Mat::Zero(2, 2);
                lower(1, 0) = gj(a);
                Mat upper = Mat::Zero(2, 2);
                upper(0, 1) = gj(a);
                fb.push_back(lower);
                fc.push_back(upper);
            } else {
                fb.push_back(diag2(1.0, fj(b) / fab(b, a)));
                fc.push_back(diag2(1.0 / fab(a, b), fj(b)));
            }
        }
        ops.b += kron_all(fb);
        ops.c += kron_all(fc);
    }
    return ops;
}

} // namespace bethe
