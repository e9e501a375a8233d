#include "bethe/synth.hpp"

#include "bethe/index.hpp"

#include <Eigen/QR>
#include <Eigen/LU>

#include <algorithm>
#include <numeric>
#include <string>

namespace bethe {

namespace {

std::vector<int> first_labels(int k) {
    std::vector<int> out(k);
    std::iota(out.begin(), out.end(), 1);
    return out;
}

cplx det(const Mat& m) { return m.rows() == 0 ? cplx{1.0, 0.0} : m.partialPivLu().determinant(); }

Mat with_column(const Mat& m, Eigen::Index col, const Vec& v) {
    Mat out = m;
    out.col(col) = v;
    return out;
}

Mat vstack(const Mat& top, const Mat& bottom) {
    if (top.rows() == 0) return bottom;
    if (bottom.rows() == 0) return top;
    Mat out(top.rows() + bottom.rows(), top.cols());
    out << top, bottom;
    return out;
}

double relative_to(const Mat& reference) { return std::max(1.0, max_abs(reference)); }

/// Columns of `fixed` (orthonormal) extended to a unitary by Gram-Schmidt over canonical vectors.
Mat complete_unitary(const Mat& fixed, Eigen::Index dim) {
    const Eigen::Index nf = fixed.cols();
    if (nf > 0) {
        const double iso = max_abs(Mat(fixed.adjoint() * fixed - Mat::Identity(nf, nf)));
        if (iso > 1e-8) throw SingularMatrix("completion: fixed columns are not orthonormal (deviation " + std::to_string(iso) + ")");
    }
    Mat q(dim, dim);
    q.leftCols(nf) = fixed;
    Eigen::Index filled = nf;
    for (Eigen::Index e = 0; e < dim && filled < dim; ++e) {
        Vec v = Vec::Zero(dim);
        v(e) = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index c = 0; c < filled; ++c) v -= q.col(c) * q.col(c).dot(v);
        const double n = v.norm();
        if (n > 1e-8) q.col(filled++) = v / n;
    }
    if (filled != dim) throw SingularMatrix("completion: could not span the sector");
    return q;
}

} // namespace

Mat bethe_family(int k, int r, const ChainSpec& spec) {
    const int fam = std::min(k, spec.n_magnons);
    const auto sels = sector_basis(fam, r);
    Mat b(static_cast<Eigen::Index>(binomial(k, r)), static_cast<Eigen::Index>(sels.size()));
    for (std::size_t c = 0; c < sels.size(); ++c)
        b.col(static_cast<Eigen::Index>(c)) = bethe_state_explicit(k, sels[c].positions, spec).amplitudes;
    return b;
}

Mat gram_matrix(int k, int r, const ChainSpec& spec) {
    const Mat b = bethe_family(k, r, spec);
    return b.adjoint() * b;
}

OrthFactor orth_factor(int k, int r, const ChainSpec& spec) {
    const Mat b = bethe_family(k, r, spec);
    const Eigen::Index n = b.cols();
    OrthFactor out{k, r, Mat(n, n), Mat(n, n)};
    if (n == 0) return out;
    // Householder QR of the family gives the Cholesky factor of C = B^dagger B without forming C.
    Eigen::HouseholderQR<Mat> qr(b);
    Mat upper = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    const double scale = b.colwise().norm().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double mag = std::abs(upper(i, i));
        if (!(mag > 1e-12 * scale))
            throw SingularMatrix("degenerate Gram matrix (k=" + std::to_string(k) + ", r=" + std::to_string(r) + "): near-coincident rapidities");
        upper.row(i) *= std::conj(upper(i, i)) / mag;
        upper(i, i) = mag;
    }
    out.x_inv = upper;
    out.x = upper.triangularView<Eigen::Upper>().solve(Mat::Identity(n, n));
    return out;
}

OrthFactor orth_factor_determinant(int k, int r, const ChainSpec& spec) {
    const Mat c = gram_matrix(k, r, spec);
    const Eigen::Index n = c.rows();
    if (n > 10) throw SizeGuard("determinant formulas limited to dimension 10");
    std::vector<double> minor(n + 1, 1.0);
    for (Eigen::Index a = 1; a <= n; ++a) {
        minor[a] = det(c.topLeftCorner(a, a)).real();
        if (!(minor[a] > 0.0)) throw SingularMatrix("degenerate Gram matrix: leading minor not positive");
    }
    OrthFactor out{k, r, Mat::Zero(n, n), Mat::Zero(n, n)};
    for (Eigen::Index a = 1; a <= n; ++a) {
        out.x(a - 1, a - 1) = std::sqrt(minor[a - 1] / minor[a]);
        for (Eigen::Index b = a + 1; b <= n; ++b) {
            const Mat sub = with_column(c.topLeftCorner(b - 1, b - 1), a - 1, c.col(b - 1).head(b - 1));
            out.x(a - 1, b - 1) = -det(sub) / std::sqrt(minor[b - 1] * minor[b]);
        }
        for (Eigen::Index b = a; b <= n; ++b) {
            const Mat sub = with_column(c.topLeftCorner(a, a), a - 1, c.col(b - 1).head(a));
            out.x_inv(a - 1, b - 1) = det(sub) / std::sqrt(minor[a - 1] * minor[a]);
        }
    }
    return out;
}

ShortTensor short_tensor(int j, const ChainSpec& spec) {
    const int k = spec.n_sites - j + 1;
    if (k < 1 || k > spec.n_magnons) throw InvalidInput("short_tensor: site outside the short range");
    ShortTensor t{j, k, {}, {}};
    for (int r = 0; r <= k; ++r) {
        const Mat psi = bethe_family(k, r, spec);
        const auto d0 = static_cast<Eigen::Index>(binomial(k - 1, r));
        const auto d1 = static_cast<Eigen::Index>(binomial(k - 1, r - 1));
        Mat o0(d0, psi.cols()), o1(d1, psi.cols());
        if (d0 > 0) {
            Eigen::FullPivLU<Mat> lu(bethe_family(k - 1, r, spec));
            if (!lu.isInvertible()) throw SingularMatrix("short_tensor: linearly dependent Bethe family");
            o0 = lu.solve(psi.topRows(d0));
        }
        if (d1 > 0) {
            Eigen::FullPivLU<Mat> lu(bethe_family(k - 1, r - 1, spec));
            if (!lu.isInvertible()) throw SingularMatrix("short_tensor: linearly dependent Bethe family");
            o1 = lu.solve(psi.bottomRows(d1));
        }
        t.zero.push_back(o0);
        t.one.push_back(o1);
    }
    return t;
}

ShortTensor short_tensor_cramer(int j, const ChainSpec& spec) {
    const int k = spec.n_sites - j + 1;
    if (k < 1 || k > spec.n_magnons) throw InvalidInput("short_tensor_cramer: site outside the short range");
    ShortTensor t{j, k, {}, {}};
    for (int r = 0; r <= k; ++r) {
        const Mat psi = bethe_family(k, r, spec);
        const auto d0 = static_cast<Eigen::Index>(binomial(k - 1, r));
        for (int i = 0; i <= 1; ++i) {
            const Mat base = bethe_family(k - 1, r - i, spec);
            const Eigen::Index rows = base.rows();
            Mat o(rows, psi.cols());
            if (rows > 0) {
                const cplx d = det(base);
                if (std::abs(d) < spec.tol.pole) throw SingularMatrix("short_tensor_cramer: singular Bethe family");
                const Mat target = i == 0 ? Mat(psi.topRows(rows)) : Mat(psi.middleRows(d0, rows));
                for (Eigen::Index b = 0; b < rows; ++b)
                    for (Eigen::Index a = 0; a < psi.cols(); ++a) o(b, a) = det(with_column(base, b, target.col(a))) / d;
            }
            (i == 0 ? t.zero : t.one).push_back(o);
        }
    }
    return t;
}

CircuitUnitary long_unitary(int j, const ChainSpec& spec) {
    const int n = spec.n_sites;
    const int m = spec.n_magnons;
    if (j < 1 || j > n - m) throw InvalidInput("long_unitary: site outside the long range");
    const int k = n - j + 1;
    const auto lam = lambda_tensor(j, spec);
    const int q = m + 1;
    const Eigen::Index dim = Eigen::Index{1} << q;
    CircuitUnitary g;
    g.site = j;
    g.kind = GateKind::long_gate;
    for (int p = 0; p < q; ++p) g.window.push_back(j - 1 + p);
    g.matrix = Mat::Zero(dim, dim);
    for (int r = 0; r <= q; ++r) {
        const auto out_idx = sector_chis(q, r);
        Mat fixed(static_cast<Eigen::Index>(out_idx.size()), 0);
        std::vector<std::uint64_t> in_idx;
        if (r <= m) {
            const Mat xk = orth_factor(k, r, spec).x;
            Mat top = orth_factor(k - 1, r, spec).x_inv * lam.block(0, r) * xk;
            Mat bottom(0, xk.cols());
            if (r >= 1) bottom = orth_factor(k - 1, r - 1, spec).x_inv * lam.block(1, r) * xk;
            fixed = vstack(top, bottom);
            for (auto c : sector_chis(m, r)) in_idx.push_back(c << 1);
        }
        for (auto c : sector_chis(m, r - 1)) in_idx.push_back((c << 1) | 1U);
        const Mat block = complete_unitary(fixed, static_cast<Eigen::Index>(out_idx.size()));
        for (std::size_t a = 0; a < out_idx.size(); ++a)
            for (std::size_t b = 0; b < in_idx.size(); ++b)
                g.matrix(static_cast<Eigen::Index>(out_idx[a]), static_cast<Eigen::Index>(in_idx[b])) =
                    block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
    return g;
}

CircuitUnitary short_unitary(int j, const ChainSpec& spec) {
    const int n = spec.n_sites;
    const int k = n - j + 1;
    if (j < 1 || k < 1 || k > spec.n_magnons) throw InvalidInput("short_unitary: site outside the short range");
    const auto omega = short_tensor(j, spec);
    const Eigen::Index dim = Eigen::Index{1} << k;
    CircuitUnitary g;
    g.site = j;
    g.kind = GateKind::short_gate;
    for (int p = 0; p < k; ++p) g.window.push_back(j - 1 + p);
    g.matrix = Mat::Zero(dim, dim);
    for (int r = 0; r <= k; ++r) {
        const Mat xk = orth_factor(k, r, spec).x;
        Mat top(0, xk.cols()), bottom(0, xk.cols());
        if (omega.block(0, r).rows() > 0) top = orth_factor(k - 1, r, spec).x_inv * omega.block(0, r) * xk;
        if (omega.block(1, r).rows() > 0) bottom = orth_factor(k - 1, r - 1, spec).x_inv * omega.block(1, r) * xk;
        const Mat p = vstack(top, bottom);
        const auto idx = sector_chis(k, r);
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b)
                g.matrix(static_cast<Eigen::Index>(idx[a]), static_cast<Eigen::Index>(idx[b])) =
                    p(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
    return g;
}

double ruiz_equivalence_check(int j, const ChainSpec& spec) {
    const int k = spec.n_sites - j + 1;
    if (k < 1 || k > spec.n_magnons) throw InvalidInput("ruiz_equivalence_check: site outside the short range");
    const auto omega = short_tensor(j, spec);
    const auto lam = lambda_tensor(j, spec.with_magnons(first_labels(k)));
    double worst = 0.0;
    for (int r = 0; r <= k; ++r) {
        for (int i = 0; i <= 1; ++i) {
            const int rr = r - i;
            const Mat& om = omega.block(i, r);
            if (om.rows() == 0 || om.cols() == 0) continue;
            const Mat b = bethe_family(k - 1, rr, spec);
            const Mat c = b.adjoint() * b;
            const auto wider = sector_basis(k, rr);
            Mat cross(c.rows(), static_cast<Eigen::Index>(wider.size()));
            for (std::size_t beta = 0; beta < wider.size(); ++beta)
                cross.col(static_cast<Eigen::Index>(beta)) =
                    b.adjoint() * bethe_state_explicit(k - 1, wider[beta].positions, spec).amplitudes;
            const cplx dc = det(c);
            if (std::abs(dc) < spec.tol.pole) throw SingularMatrix("ruiz_equivalence_check: singular Gram matrix");
            Mat l(c.rows(), cross.cols());
            for (Eigen::Index a = 0; a < l.rows(); ++a)
                for (Eigen::Index be = 0; be < l.cols(); ++be) l(a, be) = det(with_column(c, a, cross.col(be))) / dc;
            worst = std::max(worst, max_abs(Mat(om - l * lam.block(i, r))) / relative_to(om));
        }
    }
    return worst;
}

RecursionReport unitarity_recursions(const ChainSpec& spec) {
    const int n = spec.n_sites;
    const int m = spec.n_magnons;
    RecursionReport rep;
    auto record = [&](GateKind kind, int k, int r, const Mat& lhs, const Mat& rhs) {
        const double res = max_abs(Mat(lhs - rhs)) / relative_to(lhs);
        rep.entries.push_back({kind, k, r, res});
        rep.max_residual = std::max(rep.max_residual, res);
    };
    for (int k = m + 1; k <= n; ++k) {
        const auto lam = lambda_tensor(n - k + 1, spec);
        for (int r = 0; r <= m; ++r) {
            Mat rhs = lam.block(0, r).adjoint() * gram_matrix(k - 1, r, spec) * lam.block(0, r);
            if (r >= 1) rhs += lam.block(1, r).adjoint() * gram_matrix(k - 1, r - 1, spec) * lam.block(1, r);
            record(GateKind::long_gate, k, r, gram_matrix(k, r, spec), rhs);
        }
    }
    for (int k = 2; k <= std::min(m, n); ++k) {
        const auto om = short_tensor(n - k + 1, spec);
        for (int r = 0; r <= k; ++r) {
            Mat rhs = Mat::Zero(static_cast<Eigen::Index>(binomial(k, r)), static_cast<Eigen::Index>(binomial(k, r)));
            if (om.block(0, r).rows() > 0) rhs += om.block(0, r).adjoint() * gram_matrix(k - 1, r, spec) * om.block(0, r);
            if (om.block(1, r).rows() > 0)
                rhs += om.block(1, r).adjoint() * gram_matrix(k - 1, r - 1, spec) * om.block(1, r);
            record(GateKind::short_gate, k, r, gram_matrix(k, r, spec), rhs);
        }
    }
    return rep;
}

Circuit synthesize_circuit(const ChainSpec& spec) {
    spec.validate();
    const int n = spec.n_sites;
    const int m = spec.n_magnons;
    if (n > 16) throw SizeGuard("synthesize_circuit: N > 16");
    Circuit c;
    c.n_qubits = n;
    c.initial.assign(n, 0);
    for (int q = 0; q < m; ++q) c.initial[q] = 1;
    for (int j = 1; j <= n - 1; ++j) c.gates.push_back(j <= n - m ? long_unitary(j, spec) : short_unitary(j, spec));
    return c;
}

} // namespace bethe
