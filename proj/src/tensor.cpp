#include "bethe/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace bethe {

Mat build_r(cplx u, cplx gamma, double tol) {
    const auto w = weights(u, gamma, tol);
    Mat r = Mat::Zero(4, 4);
    r(0, 0) = 1.0;
    r(3, 3) = 1.0;
    r(1, 1) = r(2, 2) = w.f;
    r(1, 2) = r(2, 1) = w.g;
    return r;
}

Mat swap_gate() {
    Mat p = Mat::Zero(4, 4);
    p(0, 0) = p(3, 3) = 1.0;
    p(1, 2) = p(2, 1) = 1.0;
    return p;
}

WindowIndex window_index(const std::vector<int>& positions, int total) {
    const int k = static_cast<int>(positions.size());
    if (total < 0 || total > 30) throw SizeGuard("register too large");
    std::vector<bool> used(static_cast<std::size_t>(total), false);
    for (int q : positions) {
        if (q < 0 || q >= total) throw InvalidInput("qubit position " + std::to_string(q) + " out of range");
        if (used[q]) throw InvalidInput("repeated qubit position " + std::to_string(q));
        used[q] = true;
    }
    WindowIndex w;
    w.offsets.resize(std::size_t{1} << k);
    for (std::size_t s = 0; s < w.offsets.size(); ++s) {
        std::size_t off = 0;
        for (int t = 0; t < k; ++t)
            if ((s >> (k - 1 - t)) & 1U) off |= std::size_t{1} << (total - 1 - positions[t]);
        w.offsets[s] = off;
    }
    std::size_t mask = 0;
    for (int q : positions) mask |= std::size_t{1} << (total - 1 - q);
    const std::size_t dim = std::size_t{1} << total;
    w.bases.reserve(dim >> k);
    for (std::size_t i = 0; i < dim; ++i)
        if ((i & mask) == 0) w.bases.push_back(i);
    return w;
}

Mat embed(const Mat& op, const std::vector<int>& positions, int total) {
    if (total > max_dense_qubits) throw SizeGuard("embed: more than " + std::to_string(max_dense_qubits) + " qubits");
    Mat out = Mat::Identity(Eigen::Index{1} << total, Eigen::Index{1} << total);
    apply_left(op, positions, out);
    return out;
}

void apply_left(const Mat& op, const std::vector<int>& positions, Mat& target) {
    const int total = qubit_count(target.rows());
    if (op.rows() != (Eigen::Index{1} << positions.size()) || op.cols() != op.rows())
        throw InvalidInput("apply_left: operator arity does not match positions");
    const auto w = window_index(positions, total);
    const auto d = static_cast<Eigen::Index>(w.offsets.size());
    Vec in(d);
    for (Eigen::Index c = 0; c < target.cols(); ++c) {
        for (std::size_t base : w.bases) {
            for (Eigen::Index s = 0; s < d; ++s) in(s) = target(static_cast<Eigen::Index>(base + w.offsets[s]), c);
            const Vec out = op * in;
            for (Eigen::Index s = 0; s < d; ++s) target(static_cast<Eigen::Index>(base + w.offsets[s]), c) = out(s);
        }
    }
}

double ybe_residual(cplx u1, cplx u2, cplx u3, cplx gamma, double tol) {
    const Mat r12 = embed(build_r(u1 - u2, gamma, tol), {0, 1}, 3);
    const Mat r13 = embed(build_r(u1 - u3, gamma, tol), {0, 2}, 3);
    const Mat r23 = embed(build_r(u2 - u3, gamma, tol), {1, 2}, 3);
    return max_abs(Mat(r12 * r13 * r23 - r23 * r13 * r12));
}

Mat monodromy_on(cplx u, const ChainSpec& spec, int ancilla, int first_spin, int total) {
    if (total > max_dense_qubits) throw SizeGuard("monodromy: register exceeds dense guard");
    Mat t = Mat::Identity(Eigen::Index{1} << total, Eigen::Index{1} << total);
    for (int j = 1; j <= spec.n_sites; ++j)
        apply_left(build_r(u - spec.inhomogeneities[j - 1], spec.gamma, spec.tol.pole), {ancilla, first_spin + j - 1}, t);
    return t;
}

Mat build_monodromy(cplx u, const ChainSpec& spec) {
    if (spec.n_sites > 12) throw SizeGuard("build_monodromy: N > 12");
    return monodromy_on(u, spec, 0, 1, spec.n_sites + 1);
}

Mat build_monodromy_reversed(cplx u, const ChainSpec& spec) {
    if (spec.n_sites > 12) throw SizeGuard("build_monodromy_reversed: N > 12");
    const int total = spec.n_sites + 1;
    Mat t = Mat::Identity(Eigen::Index{1} << total, Eigen::Index{1} << total);
    for (int j = spec.n_sites; j >= 1; --j)
        apply_left(build_r(u - spec.inhomogeneities[j - 1], spec.gamma, spec.tol.pole), {0, j}, t);
    return t;
}

MonodromyBlocks monodromy_blocks(const Mat& t) {
    const Eigen::Index h = t.rows() / 2;
    return {t.topLeftCorner(h, h), t.topRightCorner(h, h), t.bottomLeftCorner(h, h), t.bottomRightCorner(h, h)};
}

Mat transfer_matrix(cplx u, const ChainSpec& spec) {
    const auto blocks = monodromy_blocks(build_monodromy(u, spec));
    return blocks.a + blocks.d;
}

double rtt_residual(cplx u, cplx w, const ChainSpec& spec) {
    const int total = spec.n_sites + 2;
    const Mat t1 = monodromy_on(u, spec, 0, 2, total);
    const Mat t2 = monodromy_on(w, spec, 1, 2, total);
    const Mat r = embed(build_r(u - w, spec.gamma, spec.tol.pole), {0, 1}, total);
    return max_abs(Mat(r * t1 * t2 - t2 * t1 * r));
}

void check_permutation(const Permutation& sigma) {
    std::vector<int> sorted = sigma;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != static_cast<int>(i)) throw InvalidInput("not a permutation");
}

Permutation compose(const Permutation& s, const Permutation& t) {
    check_permutation(s);
    check_permutation(t);
    if (s.size() != t.size()) throw InvalidInput("compose: size mismatch");
    Permutation out(s.size());
    for (std::size_t p = 0; p < s.size(); ++p) out[p] = s[t[p]];
    return out;
}

Permutation inverse(const Permutation& s) {
    check_permutation(s);
    Permutation out(s.size());
    for (std::size_t p = 0; p < s.size(); ++p) out[s[p]] = static_cast<int>(p);
    return out;
}

Mat permutation_matrix(const Permutation& sigma) {
    check_permutation(sigma);
    const int m = static_cast<int>(sigma.size());
    const Eigen::Index dim = Eigen::Index{1} << m;
    Mat p = Mat::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        Eigen::Index row = 0;
        for (int q = 0; q < m; ++q) {
            const auto bit = (col >> (m - 1 - sigma[q])) & 1;
            row |= bit << (m - 1 - q);
        }
        p(row, col) = 1.0;
    }
    return p;
}

std::vector<int> bubble_word(const Permutation& sigma) {
    check_permutation(sigma);
    const int m = static_cast<int>(sigma.size());
    std::vector<int> target_pos(m);
    for (int p = 0; p < m; ++p) target_pos[sigma[p]] = p;
    std::vector<int> arrangement(m);
    std::iota(arrangement.begin(), arrangement.end(), 0);
    std::vector<int> word;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int p = 0; p + 1 < m; ++p) {
            if (target_pos[arrangement[p]] > target_pos[arrangement[p + 1]]) {
                std::swap(arrangement[p], arrangement[p + 1]);
                word.push_back(p);
                changed = true;
            }
        }
    }
    return word;
}

Mat r_from_word(const std::vector<int>& word, const Permutation& sigma, const std::vector<cplx>& rapidities,
                cplx gamma, double tol) {
    check_permutation(sigma);
    const int m = static_cast<int>(sigma.size());
    if (static_cast<int>(rapidities.size()) != m) throw InvalidInput("permutation_r: rapidity count mismatch");
    if (m > 8) throw SizeGuard("permutation_r: M > 8");
    std::vector<int> arrangement(m);
    std::iota(arrangement.begin(), arrangement.end(), 0);
    Mat r = Mat::Identity(Eigen::Index{1} << m, Eigen::Index{1} << m);
    for (int p : word) {
        if (p < 0 || p + 1 >= m) throw InvalidInput("word letter out of range");
        const int a = arrangement[p];
        const int b = arrangement[p + 1];
        if (std::abs(rapidities[a] - rapidities[b]) < tol)
            throw DegenerateRapidities("coincident rapidities in permutation_r");
        apply_left(build_r(rapidities[a] - rapidities[b], gamma, tol), {a, b}, r);
        std::swap(arrangement[p], arrangement[p + 1]);
    }
    if (arrangement != sigma) throw InvalidInput("word does not realise the permutation");
    return r;
}

Mat permutation_r(const Permutation& sigma, const std::vector<cplx>& rapidities, cplx gamma, double tol) {
    return r_from_word(bubble_word(sigma), sigma, rapidities, gamma, tol);
}

} // namespace bethe
